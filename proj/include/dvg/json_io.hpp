#pragma once

// JSON schemas for every value the CLI and the Python bindings exchange.
//
//   element : ["c0", "c1", ...]  deg decimal strings, coefficients of 1, x, ..., x^{deg-1}
//   ring    : {"p", "deg", "precision", "defining_poly": [low-to-high decimal strings]}
//   module  : {"description", "ring", "rank", "codim", "dim", "phi", "provenance"?}
//             phi[i][j] is the e_i-coordinate of phi(e_j)
//   polygon : {"segments": [{"slope": "3/5", "mult": 5}, ...]}
//   qx      : {"c", "d", "valuations": [0, "inf", ...], "coeffs", "b", "polygon"}
//   report  : {"schema": "dvg-report/1", "body": {...}, "wall_time_s"}
//
// Parsers throw Error(MalformedInput) on anything they cannot interpret.

#include <json.hpp>

#include "dvg/harness.hpp"

namespace dvg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "dvg-report/1";

Json to_json(const WittElem& a);
Json to_json(const WittRing& ring);
Json to_json(const Matrix& m);
Json to_json(const DieudonneModule& m);
Json to_json(const NewtonPolygon& np);
Json to_json(const QxData& qx);
Json to_json(const CutoffBounds& b);
Json to_json(const std::vector<BoundsRow>& table);
/// Deterministic part of a report.
Json report_body(const ExperimentReport& report);
Json to_json(const ExperimentReport& report);
Json report_body(const WitnessReport& report);
Json to_json(const WitnessReport& report);

WittRing ring_from_json(const Json& j);
/// Accepts the element schema, a single integer, or a decimal string.
WittElem elem_from_json(const WittRing& ring, const Json& j);
Matrix matrix_from_json(const WittRing& ring, const Json& j);
DieudonneModule module_from_json(const Json& j);
NewtonPolygon polygon_from_json(const Json& j);

/// Parses text, mapping syntax errors to MalformedInput.
Json parse_json(std::string_view text);

}  // namespace dvg
