#pragma once

#include <iosfwd>

namespace dvg {

/// Exit status: 0 success, 1 verdict failure, 2 input or usage error.
int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dvg
