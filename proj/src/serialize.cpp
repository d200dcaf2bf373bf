#include "turan/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "turan/errors.hpp"

namespace turan {

namespace {

// Non-finite doubles become strings; JSON has no literal for them.
Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double to_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidArgument("expected a number, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double num_field(const Json& j, const char* key) { return to_double(field(j, key)); }

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Json to_json(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidArgument("expected [re, im], got " + j.dump());
  return {to_double(j[0]), to_double(j[1])};
}

Json to_json(const AffineMap& t) { return {{"alpha", to_json(t.alpha)}, {"beta", to_json(t.beta)}}; }

ConvexSet set_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("set description must be a JSON object");
  const std::string shape = get<std::string>(j, "shape");
  auto opt = [&](const char* key, double def) { return j.contains(key) ? num_field(j, key) : def; };
  auto k = [&]() -> ConvexSet {
    if (shape == "disk") {
      return ConvexSet::disk(j.contains("center") ? complex_from_json(j["center"]) : Complex{}, num_field(j, "radius"));
    }
    if (shape == "ellipse") {
      return ConvexSet::ellipse(j.contains("center") ? complex_from_json(j["center"]) : Complex{},
                                num_field(j, "a"), num_field(j, "b"), opt("angle", 0.0));
    }
    if (shape == "diamond") return ConvexSet::diamond(num_field(j, "epsilon"));
    if (shape == "segment") {
      return ConvexSet::segment(complex_from_json(field(j, "p")), complex_from_json(field(j, "q")));
    }
    if (shape == "polygon") {
      const Json& v = field(j, "vertices");
      if (!v.is_array()) throw InvalidArgument("\"vertices\" must be an array");
      std::vector<Complex> pts;
      for (const Json& p : v) pts.push_back(complex_from_json(p));
      return make_polygon(pts);
    }
    throw InvalidArgument("unknown shape \"" + shape + "\"");
  }();
  if (j.contains("affine")) {
    const Json& a = j["affine"];
    const AffineMap t = AffineMap::make(complex_from_json(field(a, "alpha")),
                                        a.contains("beta") ? complex_from_json(a["beta"]) : Complex{});
    k = affine(k, t);
  }
  return k;
}

Json to_json(const ConvexSet& k) {
  return std::visit(
      [](const auto& s) -> Json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disk>) {
          return {{"shape", "disk"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<S, Ellipse>) {
          return {{"shape", "ellipse"}, {"center", to_json(s.center)}, {"a", s.a}, {"b", s.b}, {"angle", s.angle}};
        } else if constexpr (std::is_same_v<S, Diamond>) {
          return {{"shape", "diamond"}, {"epsilon", s.epsilon}};
        } else if constexpr (std::is_same_v<S, Segment>) {
          return {{"shape", "segment"}, {"p", to_json(s.p)}, {"q", to_json(s.q)}};
        } else {
          Json v = Json::array();
          for (Complex z : s.vertices) v.push_back(to_json(z));
          return {{"shape", "polygon"}, {"vertices", v}};
        }
      },
      k.shape());
}

ConvexSet parse_set(std::string_view text) {
  std::string src(text);
  const auto first = src.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || src[first] != '{') {
    std::ifstream in(src);
    if (!in) throw InvalidArgument("cannot read set description file \"" + src + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    src = ss.str();
  }
  Json j;
  try {
    j = Json::parse(src);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed set JSON: ") + e.what());
  }
  return set_from_json(j);
}

Json to_json(const RootPoly& p) {
  Json r = Json::array();
  for (Complex z : p.roots()) r.push_back(to_json(z));
  return {{"lead", to_json(p.lead())}, {"roots", r}};
}

RootPoly root_poly_from_json(const Json& j) {
  std::vector<Complex> roots;
  const Json& r = field(j, "roots");
  if (!r.is_array()) throw InvalidArgument("\"roots\" must be an array");
  for (const Json& z : r) roots.push_back(complex_from_json(z));
  return RootPoly(complex_from_json(field(j, "lead")), std::move(roots));
}

Json to_json(const NormEstimate& e) {
  return {{"lower", num(e.lower())}, {"upper", num(e.upper())}, {"witness", to_json(e.witness)},
          {"mesh", num(e.mesh)},     {"capped", e.capped},      {"samples", e.samples}};
}

NormEstimate norm_estimate_from_json(const Json& j) {
  NormEstimate e;
  e.log_lower = std::log(num_field(j, "lower"));
  e.log_upper = std::log(num_field(j, "upper"));
  e.witness = complex_from_json(field(j, "witness"));
  e.mesh = num_field(j, "mesh");
  e.capped = get<bool>(j, "capped");
  if (j.contains("samples")) e.samples = j["samples"].get<std::size_t>();
  return e;
}

Json to_json(const BoundReport& b) {
  return {{"n", b.n},
          {"d", num(b.d)},
          {"w", num(b.w)},
          {"s", num(b.s)},
          {"lp_lower", num(b.lp_lower)},
          {"revesz_applicable", b.revesz_applicable},
          {"revesz_lower", num(b.revesz_lower)},
          {"n0", num(b.n0)},
          {"revesz_upper_applicable", b.revesz_upper_applicable},
          {"revesz_upper", num(b.revesz_upper)},
          {"two_sided_lower", num(b.two_sided_lower)},
          {"two_sided_upper", num(b.two_sided_upper)},
          {"corollary1_applicable", b.corollary1_applicable},
          {"corollary1_threshold", num(b.corollary1_threshold)},
          {"corollary1_active", b.corollary1_active},
          {"corollary1_upper", num(b.corollary1_upper)},
          {"sharpness_threshold", num(b.sharpness_threshold)},
          {"sharpness_regime", b.sharpness_regime},
          {"corollary2", b.corollary2},
          {"gamma", num(b.gamma)}};
}

BoundReport bound_report_from_json(const Json& j) {
  BoundReport b;
  b.n = get<int>(j, "n");
  b.d = num_field(j, "d");
  b.w = num_field(j, "w");
  b.s = num_field(j, "s");
  b.lp_lower = num_field(j, "lp_lower");
  b.revesz_applicable = get<bool>(j, "revesz_applicable");
  b.revesz_lower = num_field(j, "revesz_lower");
  b.n0 = num_field(j, "n0");
  b.revesz_upper_applicable = get<bool>(j, "revesz_upper_applicable");
  b.revesz_upper = num_field(j, "revesz_upper");
  b.two_sided_lower = num_field(j, "two_sided_lower");
  b.two_sided_upper = num_field(j, "two_sided_upper");
  b.corollary1_applicable = get<bool>(j, "corollary1_applicable");
  b.corollary1_threshold = num_field(j, "corollary1_threshold");
  b.corollary1_active = get<bool>(j, "corollary1_active");
  b.corollary1_upper = num_field(j, "corollary1_upper");
  b.sharpness_threshold = num_field(j, "sharpness_threshold");
  b.sharpness_regime = get<bool>(j, "sharpness_regime");
  b.corollary2 = get<bool>(j, "corollary2");
  b.gamma = num_field(j, "gamma");
  return b;
}

Json to_json(const WitnessRatio& w) {
  return {{"case", std::string(to_string(w.choice.case_tag))},
          {"m", w.choice.m},
          {"degree", w.choice.polynomial.degree()},
          {"map", to_json(w.map)},
          {"ratio_k1", {{"lower", num(w.on_k1.lower)}, {"upper", num(w.on_k1.upper)}}},
          {"lower", num(w.lower)},
          {"upper", num(w.upper)},
          {"bound", num(w.bound)},
          {"margin", num(w.bound - w.upper)},
          {"capped", w.on_k1.capped()}};
}

Json to_json(const MarkovEstimate& e) {
  Json r = Json::array();
  for (Complex z : e.roots) r.push_back(to_json(z));
  return {{"value", num(e.value)},         {"lower", num(e.lower)}, {"roots", r},
          {"evaluations", e.evaluations}, {"seed", e.seed},        {"method", e.method}};
}

MarkovEstimate markov_estimate_from_json(const Json& j) {
  MarkovEstimate e;
  e.value = num_field(j, "value");
  if (j.contains("lower")) e.lower = num_field(j, "lower");
  for (const Json& z : field(j, "roots")) e.roots.push_back(complex_from_json(z));
  e.evaluations = get<std::size_t>(j, "evaluations");
  e.seed = get<std::uint64_t>(j, "seed");
  e.method = get<std::string>(j, "method");
  if (e.method != "multistart" && e.method != "grid") throw InvalidArgument("unknown method \"" + e.method + "\"");
  return e;
}

Json to_json(const CheckRecord& r) {
  Json p = Json::object();
  for (const auto& [k, v] : r.params) p[k] = num(v);
  Json j = {{"check_id", r.check_id},
            {"params", p},
            {"status", std::string(to_string(r.status))},
            {"margin", num(r.margin)},
            {"method", std::string(to_string(r.method))}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

CheckRecord check_record_from_json(const Json& j) {
  CheckRecord r;
  r.check_id = get<std::string>(j, "check_id");
  for (const auto& [k, v] : field(j, "params").items()) r.params.emplace_back(k, to_double(v));
  const auto status = get<std::string>(j, "status");
  if (status != "pass" && status != "fail") throw InvalidArgument("unknown status \"" + status + "\"");
  r.status = status == "pass" ? CheckStatus::Pass : CheckStatus::Fail;
  r.margin = num_field(j, "margin");
  const auto method = get<std::string>(j, "method");
  if (method == "sampled") r.method = CheckMethod::Sampled;
  else if (method == "interval") r.method = CheckMethod::Interval;
  else if (method == "certified") r.method = CheckMethod::Certified;
  else throw InvalidArgument("unknown method \"" + method + "\"");
  if (j.contains("detail")) r.detail = j["detail"].get<std::string>();
  return r;
}

Json to_json(const ProofReport& r) {
  Json recs = Json::array();
  for (const auto& c : r.records) recs.push_back(to_json(c));
  return {{"passed", r.passed()}, {"failures", r.failures()}, {"assumptions", r.assumptions}, {"records", recs}};
}

ProofReport proof_report_from_json(const Json& j) {
  ProofReport r;
  for (const Json& c : field(j, "records")) r.records.push_back(check_record_from_json(c));
  if (j.contains("assumptions")) r.assumptions = j["assumptions"].get<std::vector<std::string>>();
  return r;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ += (i ? "," : "") + header[i];
  out_ += '\n';
}

CsvWriter& CsvWriter::add(double x) {
  row_.push_back(format_double(x));
  return *this;
}

CsvWriter& CsvWriter::add(long long x) {
  row_.push_back(std::to_string(x));
  return *this;
}

CsvWriter& CsvWriter::add(bool x) {
  row_.push_back(x ? "true" : "false");
  return *this;
}

CsvWriter& CsvWriter::add(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    row_.emplace_back(s);
  } else {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    row_.push_back(q + "\"");
  }
  return *this;
}

void CsvWriter::end_row() {
  if (row_.size() != columns_) throw InvalidArgument("CSV row length does not match the header");
  for (std::size_t i = 0; i < row_.size(); ++i) out_ += (i ? "," : "") + row_[i];
  out_ += '\n';
  row_.clear();
}

std::string CsvWriter::str() const { return out_; }

std::vector<std::string> bound_csv_header() {
  return {"n",
          "d",
          "w",
          "s",
          "lp_lower",
          "revesz_applicable",
          "revesz_lower",
          "n0",
          "revesz_upper_applicable",
          "revesz_upper",
          "two_sided_lower",
          "two_sided_upper",
          "corollary1_applicable",
          "corollary1_threshold",
          "corollary1_active",
          "corollary1_upper",
          "sharpness_threshold",
          "sharpness_regime",
          "corollary2",
          "gamma"};
}

void add_bound_row(CsvWriter& w, const BoundReport& b) {
  w.add(b.n).add(b.d).add(b.w).add(b.s).add(b.lp_lower).add(b.revesz_applicable).add(b.revesz_lower).add(b.n0);
  w.add(b.revesz_upper_applicable).add(b.revesz_upper).add(b.two_sided_lower).add(b.two_sided_upper);
  w.add(b.corollary1_applicable).add(b.corollary1_threshold).add(b.corollary1_active).add(b.corollary1_upper);
  w.add(b.sharpness_threshold).add(b.sharpness_regime).add(b.corollary2).add(b.gamma);
  w.end_row();
}

}  // namespace turan
