#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dvg/cli.hpp"
#include "dvg/error.hpp"
#include "dvg/json_io.hpp"

namespace py = pybind11;
using namespace dvg;

namespace {

std::string dump(const Json& j) { return j.dump(); }

DieudonneModule module_arg(const std::string& text) { return module_from_json(parse_json(text)); }

std::vector<Matrix> matrices_arg(const WittRing& ring, const std::string& text) {
  const Json j = parse_json(text);
  if (!j.is_array()) throw Error(ErrorCode::MalformedInput, "expected a JSON array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(ring, m));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "JSON-in, JSON-out bindings; see dvg/__init__.py for the Python-facing API.";
  py::register_exception<Error>(m, "DvgError", PyExc_ValueError);

  m.def("np_of_module", [](const std::string& module) { return dump(to_json(np_of_module(module_arg(module)))); });
  m.def("polygon_string", [](const std::string& np) { return polygon_from_json(parse_json(np)).to_string(); });
  m.def("a_number", [](const std::string& module) { return a_number(module_arg(module)); });
  m.def(
      "qx",
      [](const std::string& module, int budget, std::uint64_t seed) -> std::optional<std::string> {
        const auto q = formula_one(module_arg(module), budget, seed);
        if (!q) return std::nullopt;
        return dump(to_json(*q));
      },
      py::arg("module"), py::arg("budget") = 64, py::arg("seed") = 0);
  m.def("dual", [](const std::string& module) { return dump(to_json(dual(module_arg(module)))); });
  m.def(
      "minimal",
      [](const std::string& np, std::uint64_t p, int deg, std::optional<int> precision) {
        const NewtonPolygon polygon = polygon_from_json(parse_json(np));
        const int n = precision.value_or(default_precision(deg, polygon.codim(), polygon.height()));
        return dump(to_json(build_minimal(WittRing::make({p, deg, n}), polygon)));
      },
      py::arg("np"), py::arg("p") = 2, py::arg("deg") = 1, py::arg("precision") = py::none());
  m.def(
      "witness",
      [](int c, int d, std::uint64_t p, int deg, int trials, std::uint64_t seed, std::optional<int> precision) {
        py::gil_scoped_release release;
        return dump(to_json(witness_lower(c, d, p, deg, trials, seed, precision)));
      },
      py::arg("c"), py::arg("d"), py::arg("p") = 2, py::arg("deg") = 1, py::arg("trials") = 0, py::arg("seed") = 0,
      py::arg("precision") = py::none());
  m.def(
      "verify",
      [](const std::string& module, int level, int trials, std::uint64_t seed, const std::string& inject,
         int threads) {
        const DieudonneModule mod = module_arg(module);
        const std::vector<Matrix> injected = inject.empty() ? std::vector<Matrix>{} : matrices_arg(mod.ring(), inject);
        py::gil_scoped_release release;
        return dump(to_json(verify_cutoff_upper(mod, level, trials, seed, injected, threads)));
      },
      py::arg("module"), py::arg("level"), py::arg("trials"), py::arg("seed"), py::arg("inject") = "",
      py::arg("threads") = 1);
  m.def("enumerate", [](int c, int d) {
    Json list = Json::array();
    for (const auto& np : np_enumerate(c, d)) list.push_back(to_json(np));
    return dump(list);
  });
  m.def("compare", [](const std::string& a, const std::string& b) {
    return std::string(to_string(np_compare(polygon_from_json(parse_json(a)), polygon_from_json(parse_json(b)))));
  });
  m.def("bounds", [](int c, int d) { return dump(to_json(bounds(c, d))); });
  m.def("bounds_table", [](int cmax, int dmax) { return dump(to_json(run_table(cmax, dmax))); });
  m.def(
      "cli",
      [](const std::vector<std::string>& args, const std::string& input) {
        std::vector<const char*> argv{"dvg"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("input") = "");
}
