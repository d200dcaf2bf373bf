#pragma once

// JSON and CSV forms of the library types.
//
// Set description: {"shape": "disk", "center": [x, y], "radius": r}
//                  {"shape": "ellipse", "center": [x, y], "a": a, "b": b, "angle": t}
//                  {"shape": "diamond", "epsilon": e}
//                  {"shape": "segment", "p": [x, y], "q": [x, y]}
//                  {"shape": "polygon", "vertices": [[x, y], ...]}
// Any of them may carry "affine": {"alpha": [re, im], "beta": [re, im]},
// applied after construction.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "turan/bounds.hpp"
#include "turan/constructions.hpp"
#include "turan/geometry.hpp"
#include "turan/polyroot.hpp"
#include "turan/proofcheck.hpp"
#include "turan/search.hpp"

namespace turan {

using Json = nlohmann::ordered_json;

/// Throws InvalidArgument on schema violations.
ConvexSet set_from_json(const Json& j);
Json to_json(const ConvexSet& k);

/// Inline JSON when the text starts with '{', otherwise a file path.
/// Throws InvalidArgument on unreadable files or malformed JSON.
ConvexSet parse_set(std::string_view text);

Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const AffineMap& t);

Json to_json(const RootPoly& p);
RootPoly root_poly_from_json(const Json& j);

Json to_json(const NormEstimate& e);
NormEstimate norm_estimate_from_json(const Json& j);

Json to_json(const BoundReport& b);
BoundReport bound_report_from_json(const Json& j);

Json to_json(const WitnessRatio& w);

Json to_json(const MarkovEstimate& e);
MarkovEstimate markov_estimate_from_json(const Json& j);

Json to_json(const CheckRecord& r);
CheckRecord check_record_from_json(const Json& j);
/// {"assumptions": [...], "records": [...]}.
Json to_json(const ProofReport& r);
ProofReport proof_report_from_json(const Json& j);

/// 17 significant digits, '.' decimal point; "inf", "-inf", "nan".
std::string format_double(double x);

/// Comma-separated, header row first.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& add(double x);
  CsvWriter& add(long long x);
  CsvWriter& add(int x) { return add(static_cast<long long>(x)); }
  CsvWriter& add(bool x);
  CsvWriter& add(std::string_view s);
  CsvWriter& add(const char* s) { return add(std::string_view(s)); }
  /// Throws InvalidArgument when the row length differs from the header.
  void end_row();
  std::string str() const;

 private:
  std::size_t columns_;
  std::vector<std::string> row_;
  std::string out_;
};

std::vector<std::string> bound_csv_header();
/// Appends one complete row.
void add_bound_row(CsvWriter& w, const BoundReport& b);

}  // namespace turan
