#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "robin/asympt.hpp"
#include "robin/bracket.hpp"
#include "robin/geometry.hpp"

namespace robin {

// Domain description in JSON:
//
//   {"exterior": false,
//    "arcs": [{"kind": "circle", "center": [0, 0], "radius": 1, "span": [0, 6.283185307179586]},
//             {"kind": "ellipse", "center": [0, 0], "semi_axes": [2, 1]},
//             {"kind": "segment", "from": [0, 0], "to": [1, 0]},
//             {"kind": "fourier", "x_cos": [...], "x_sin": [...], "y_cos": [...], "y_sin": [...]}]}
//
// "span" defaults to [0, 2π], "reversed" to false. Unknown keys are errors.
DomainBoundary parse_domain(const std::string& text, const std::string& source = "<string>");
DomainBoundary load_domain(const std::string& path);

// disk[:R], ellipse[:a,b], fourier[:eps] (r = 1 + eps·cos 3t).
DomainBoundary builtin_domain(const std::string& spec);

nlohmann::json to_json(const GroundStateCertificate& c);
GroundStateCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BracketResult& r);
BracketResult bracket_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepRecord& r);
SweepRecord record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitResult& f);
nlohmann::json to_json(const ValidationReport& report);

// Columns: beta,lower,upper,oracle,residual,width,method,status. Missing
// values are empty. `comment`, when given, is written first as "# ...".
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records,
               const std::optional<std::string>& comment = std::nullopt);
std::vector<SweepRecord> read_csv(std::istream& in);

// Log-log plot of |residual| and bracket width against β. Both axes are
// log10 with ticks at whole decades; the canvas is 720×480.
void write_svg(std::ostream& out, const std::vector<SweepRecord>& records, const std::string& title = "");

// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

}  // namespace robin
