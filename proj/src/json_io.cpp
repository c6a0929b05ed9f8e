#include "dvg/json_io.hpp"

#include <charconv>
#include <string>

#include "dvg/error.hpp"

namespace dvg {

namespace {

constexpr const char* kModuleDescription =
    "phi[i][j] is the e_i-coordinate of phi(e_j): column j of the matrix is phi(e_j)";

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<T>();
}

std::uint64_t parse_u64(const Json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x < 0) malformed("negative coefficient");
    return static_cast<std::uint64_t>(x);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) malformed("bad decimal '" + s + "'");
    return x;
  }
  malformed("expected a decimal string or integer");
}

std::string decimal(std::uint64_t x) { return std::to_string(x); }

Json valuation_json(const std::optional<int>& v) { return v ? Json(*v) : Json("inf"); }

Json outcome_json(const TrialOutcome& o) {
  return Json{{"trial", o.index}, {"injected", o.injected}, {"polygon", to_json(o.polygon)}, {"differs", o.differs}};
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

Json to_json(const WittElem& a) {
  Json out = Json::array();
  for (auto c : a.coeffs()) out.push_back(decimal(c));
  return out;
}

Json to_json(const WittRing& ring) {
  Json poly = Json::array();
  for (auto c : ring.defining_poly()) poly.push_back(decimal(c));
  return Json{{"p", ring.p()}, {"deg", ring.deg()}, {"precision", ring.precision()}, {"defining_poly", poly}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const DieudonneModule& m) {
  Json out{{"description", kModuleDescription},
           {"ring", to_json(m.ring())},
           {"rank", m.rank()},
           {"codim", m.codim()},
           {"dim", m.dim()},
           {"phi", to_json(m.phi())}};
  if (!m.provenance().empty()) out["provenance"] = m.provenance();
  return out;
}

Json to_json(const NewtonPolygon& np) {
  Json segs = Json::array();
  for (const auto& s : np.segments()) segs.push_back(Json{{"slope", s.slope.to_string()}, {"mult", s.mult}});
  return Json{{"segments", segs}};
}

Json to_json(const QxData& qx) {
  Json vals = Json::array(), coeffs = Json::array(), b = Json::array();
  for (const auto& v : qx.valuations) vals.push_back(valuation_json(v));
  for (const auto& a : qx.coeffs) coeffs.push_back(to_json(a));
  for (const auto& x : qx.b) b.push_back(to_json(x));
  return Json{{"c", qx.c}, {"d", qx.d}, {"valuations", vals}, {"coeffs", coeffs}, {"b", b},
              {"polygon", to_json(qx.polygon)}};
}

Json to_json(const CutoffBounds& b) {
  return Json{{"c", b.c}, {"d", b.d}, {"r", b.r}, {"j", b.j}, {"n_bound", b.n_bound},
              {"isosimple_q_bound", b.isosimple_q_bound}};
}

Json to_json(const std::vector<BoundsRow>& table) {
  Json rows = Json::array();
  for (const auto& r : table)
    rows.push_back(Json{{"c", r.c}, {"d", r.d}, {"j", r.j}, {"n_bound", r.n_bound},
                        {"witness_available", r.witness_available}});
  return Json{{"rows", rows}};
}

Json report_body(const ExperimentReport& r) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) outcomes.push_back(outcome_json(o));
  return Json{{"subject",
               {{"provenance", r.provenance},
                {"c", r.c},
                {"d", r.d},
                {"p", r.p},
                {"deg", r.deg},
                {"precision", r.precision},
                {"polygon", to_json(r.subject_polygon)}}},
              {"level", r.level},
              {"trials", r.trials},
              {"seed", r.seed},
              {"outcomes", outcomes},
              {"verdict", std::string(to_string(r.verdict))}};
}

Json to_json(const ExperimentReport& r) {
  return Json{{"schema", kReportSchema}, {"kind", "verify-cutoff-upper"}, {"body", report_body(r)},
              {"wall_time_s", r.wall_time_s}};
}

Json report_body(const WitnessReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}});
  return Json{{"c", r.c},
              {"d", r.d},
              {"j", r.j},
              {"p", r.p},
              {"deg", r.deg},
              {"precision", r.precision},
              {"congruence_level", r.congruence_level},
              {"expected_base_polygon", to_json(r.expected_base)},
              {"expected_twisted_polygon", to_json(r.expected_twisted)},
              {"base_polygon_linearization", to_json(r.base_linearization)},
              {"base_polygon_formula_one", r.base_qx ? to_json(r.base_qx->polygon) : Json(nullptr)},
              {"twisted_polygon_linearization", to_json(r.twisted_linearization)},
              {"twisted_polygon_formula_one", r.twisted_qx ? to_json(r.twisted_qx->polygon) : Json(nullptr)},
              {"base_qx", r.base_qx ? to_json(*r.base_qx) : Json(nullptr)},
              {"twisted_qx", r.twisted_qx ? to_json(*r.twisted_qx) : Json(nullptr)},
              {"experiment", report_body(r.experiment)},
              {"checks", checks},
              {"ok", r.ok()}};
}

Json to_json(const WitnessReport& r) {
  return Json{{"schema", kReportSchema}, {"kind", "witness-lower"}, {"body", report_body(r)},
              {"wall_time_s", r.experiment.wall_time_s}};
}

WittRing ring_from_json(const Json& j) {
  RingParams params;
  const Json& p = field(j, "p");
  params.p = parse_u64(p);
  params.deg = integer_field<int>(j, "deg");
  params.precision = integer_field<int>(j, "precision");
  if (!j.contains("defining_poly")) return WittRing::make(params);
  const Json& poly = j.at("defining_poly");
  if (!poly.is_array()) malformed("defining_poly must be an array");
  std::vector<std::uint64_t> coeffs;
  for (const auto& c : poly) coeffs.push_back(parse_u64(c));
  return WittRing::make(params, std::move(coeffs));
}

WittElem elem_from_json(const WittRing& ring, const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return ring.element([&] {
        std::vector<std::uint64_t> c(ring.deg(), 0);
        c[0] = j.get<std::uint64_t>() % ring.modulus();
        return c;
      }());
    return ring.from_int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    std::vector<std::uint64_t> c(ring.deg(), 0);
    c[0] = parse_u64(j) % ring.modulus();
    return ring.element(std::move(c));
  }
  if (!j.is_array() || static_cast<int>(j.size()) != ring.deg())
    malformed("element must be an array of deg = " + std::to_string(ring.deg()) + " coefficients");
  std::vector<std::uint64_t> c;
  for (const auto& x : j) c.push_back(parse_u64(x));
  return ring.element(std::move(c));
}

Matrix matrix_from_json(const WittRing& ring, const Json& j) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) malformed("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) malformed("ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = elem_from_json(ring, j[i][k]);
  }
  return m;
}

DieudonneModule module_from_json(const Json& j) {
  const WittRing ring = ring_from_json(field(j, "ring"));
  Matrix phi = matrix_from_json(ring, field(j, "phi"));
  if (j.contains("rank") && integer_field<int>(j, "rank") != static_cast<int>(phi.rows()))
    malformed("rank does not match phi");
  std::string provenance;
  if (j.contains("provenance")) {
    if (!j.at("provenance").is_string()) malformed("provenance must be a string");
    provenance = j.at("provenance").get<std::string>();
  }
  DieudonneModule m(std::move(phi), std::move(provenance));
  if (j.contains("codim") && integer_field<int>(j, "codim") != m.codim()) malformed("codim does not match phi");
  if (j.contains("dim") && integer_field<int>(j, "dim") != m.dim()) malformed("dim does not match phi");
  return m;
}

NewtonPolygon polygon_from_json(const Json& j) {
  const Json& segs = field(j, "segments");
  if (!segs.is_array()) malformed("segments must be an array");
  std::vector<Segment> out;
  for (const auto& s : segs) {
    const Json& slope = field(s, "slope");
    Rational q = slope.is_string() ? Rational::parse(slope.get<std::string>())
                 : slope.is_number_integer() ? Rational(slope.get<std::int64_t>())
                                             : (malformed("slope must be a fraction string"), Rational());
    out.push_back({q, integer_field<int>(s, "mult")});
  }
  return NewtonPolygon(std::move(out));
}

}  // namespace dvg
