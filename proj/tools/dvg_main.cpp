#include <iostream>

#include "dvg/cli.hpp"

int main(int argc, char** argv) { return dvg::cli_main(argc, argv, std::cin, std::cout, std::cerr); }
