// turan: command-line front end.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification failure,
// 3 resource cap reached.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "turan/bounds.hpp"
#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/geometry.hpp"
#include "turan/kernels.hpp"
#include "turan/proofcheck.hpp"
#include "turan/search.hpp"
#include "turan/serialize.hpp"

using namespace turan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitCap = 3;

struct RunConfig {
  std::string subcommand;
  std::string set;
  std::string n = "";
  std::uint64_t seed = 1;
  std::size_t budget = 2000;
  double tol = 1e-6;
  std::string format = "json";
  std::string out;
  // verify
  std::vector<int> m_set = default_m_set();
  double w_step = 0.005;
  std::size_t samples = 2000;
  // reproduce
  std::string figure;
};

Json config_json(const RunConfig& c) {
  Json j = {{"subcommand", c.subcommand}};
  if (!c.set.empty()) j["set"] = c.set;
  if (!c.n.empty()) j["n"] = c.n;
  j["seed"] = c.seed;
  j["budget"] = c.budget;
  j["tol"] = c.tol;
  j["format"] = c.format;
  if (c.subcommand == "verify") {
    j["m"] = c.m_set;
    j["w_step"] = c.w_step;
    j["samples"] = c.samples;
  }
  if (!c.figure.empty()) j["figure"] = c.figure;
  return j;
}

// "7", "1..300" or "4,9,16".
std::vector<int> parse_n(const std::string& s) {
  std::vector<int> out;
  auto to_int = [&](const std::string& t) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != t.size() || t.empty()) throw InvalidArgument("bad degree \"" + t + "\" in --n");
    if (v < 1) throw InvalidArgument("degrees must be >= 1");
    return v;
  };
  if (s.empty()) throw InvalidArgument("--n is required");
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int a = to_int(s.substr(0, dots)), b = to_int(s.substr(dots + 2));
    if (a > b) throw InvalidArgument("empty range in --n");
    for (int i = a; i <= b; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(to_int(part));
  return out;
}

int single_n(const RunConfig& c) {
  const auto v = parse_n(c.n);
  if (v.size() != 1) throw InvalidArgument("this subcommand takes a single degree");
  return v.front();
}

class Output {
 public:
  explicit Output(const RunConfig& c) : cfg_(c) {}

  void json(Json result) const {
    Json doc = {{"config", config_json(cfg_)}, {"result", std::move(result)}};
    write(doc.dump(2) + "\n");
  }

  void csv(const CsvWriter& w) const {
    std::string head;
    const Json cfg = config_json(cfg_);
    for (const auto& [k, v] : cfg.items()) head += "# " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    write(head + w.str());
  }

  bool is_csv() const { return cfg_.format == "csv"; }

 private:
  void write(const std::string& s) const {
    if (cfg_.out.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(cfg_.out, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write \"" + cfg_.out + "\"");
    f << s;
  }
  const RunConfig& cfg_;
};

int cmd_geom(const RunConfig& c) {
  const ConvexSet k = parse_set(c.set);
  const Normalization norm = normalize(k);
  const double d = diameter(k), w = min_width(k);
  const Output out(c);
  if (out.is_csv()) {
    CsvWriter wr({"shape", "d", "w", "s", "alpha_re", "alpha_im", "beta_re", "beta_im"});
    wr.add(k.kind()).add(d).add(w).add(w / d).add(norm.map.alpha.real()).add(norm.map.alpha.imag());
    wr.add(norm.map.beta.real()).add(norm.map.beta.imag());
    wr.end_row();
    out.csv(wr);
  } else {
    out.json({{"set", to_json(k)},
              {"d", d},
              {"w", w},
              {"s", w / d},
              {"segment_like", k.is_segment_like()},
              {"normalize", to_json(norm.map)},
              {"normalized_set", to_json(norm.set)}});
  }
  return kExitOk;
}

int cmd_bounds(const RunConfig& c) {
  const ConvexSet k = parse_set(c.set);
  const Output out(c);
  if (out.is_csv()) {
    CsvWriter wr(bound_csv_header());
    for (int n : parse_n(c.n)) add_bound_row(wr, bound_report(k, n));
    out.csv(wr);
  } else {
    Json rows = Json::array();
    for (int n : parse_n(c.n)) rows.push_back(to_json(bound_report(k, n)));
    out.json(rows);
  }
  return kExitOk;
}

int cmd_witness(const RunConfig& c) {
  const ConvexSet k = parse_set(c.set);
  const int n = single_n(c);
  const WitnessRatio wr = witness_ratio(k, n, {c.tol, kDefaultSampleCap});
  const Output out(c);
  if (out.is_csv()) {
    CsvWriter w({"n", "case", "m", "lower", "upper", "bound", "margin", "capped"});
    w.add(n).add(to_string(wr.choice.case_tag)).add(wr.choice.m).add(wr.lower).add(wr.upper);
    w.add(wr.bound).add(wr.bound - wr.upper).add(wr.on_k1.capped());
    w.end_row();
    out.csv(w);
  } else {
    out.json(to_json(wr));
  }
  if (wr.on_k1.capped()) return kExitCap;
  return wr.upper <= wr.bound ? kExitOk : kExitVerify;
}

int cmd_verify(const RunConfig& c) {
  if (!(c.w_step > 0.0) || c.w_step >= 3.0 / 7.0) throw InvalidArgument("--w-step must be in (0, 3/7)");
  std::vector<double> grid;
  for (int i = 0; i * c.w_step < 3.0 / 7.0 - 1e-9; ++i) grid.push_back(i * c.w_step);
  grid.push_back(3.0 / 7.0 - 1e-9);
  const auto sets = default_set_family();
  const ProofReport rep = proof_certificate(grid, c.m_set, sets, c.samples, c.seed);
  const Output out(c);
  if (out.is_csv()) {
    CsvWriter w({"check_id", "status", "margin", "method", "params", "detail"});
    for (const auto& r : rep.records) {
      std::string p;
      for (const auto& [k, v] : r.params) p += (p.empty() ? "" : ";") + k + "=" + format_double(v);
      w.add(r.check_id).add(to_string(r.status)).add(r.margin).add(to_string(r.method)).add(p).add(r.detail);
      w.end_row();
    }
    out.csv(w);
  } else {
    out.json(to_json(rep));
  }
  return rep.passed() ? kExitOk : kExitVerify;
}

int cmd_estimate(const RunConfig& c) {
  const ConvexSet k = parse_set(c.set);
  const int n = single_n(c);
  SearchOptions opt;
  opt.final_tol = c.tol;
  const MarkovEstimate e = estimate_mn(k, n, c.budget, c.seed, opt);
  const BoundReport b = bound_report(k, n);
  // The estimate bounds an infimum from above; every lower bound must sit below it.
  const bool sandwich = b.two_sided_lower <= e.value && b.lp_lower <= e.value &&
                        (!b.revesz_applicable || b.revesz_lower <= e.value);
  const Output out(c);
  if (out.is_csv()) {
    CsvWriter w({"n", "value", "lower", "evaluations", "seed", "method", "two_sided_lower", "lp_lower",
                 "revesz_lower", "two_sided_upper", "sandwich"});
    w.add(n).add(e.value).add(e.lower).add(static_cast<long long>(e.evaluations)).add(static_cast<long long>(e.seed));
    w.add(e.method).add(b.two_sided_lower).add(b.lp_lower).add(b.revesz_lower).add(b.two_sided_upper).add(sandwich);
    w.end_row();
    out.csv(w);
  } else {
    out.json({{"estimate", to_json(e)}, {"bounds", to_json(b)}, {"sandwich", sandwich}});
  }
  return sandwich ? kExitOk : kExitVerify;
}

// ---------------------------------------------------------------------------
// reproduce

using Figure = int (*)(const RunConfig&);

void emit_table(const RunConfig& c, const CsvWriter& w, const std::vector<std::string>& header,
                const std::vector<Json>& rows) {
  const Output out(c);
  if (out.is_csv()) {
    out.csv(w);
    return;
  }
  Json arr = Json::array();
  for (const Json& r : rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
    arr.push_back(o);
  }
  out.json(arr);
}

int fig_disk(const RunConfig& c) {
  const std::vector<std::string> h{"n", "half_n", "estimate", "estimate_lower", "witness_lower", "witness_upper"};
  CsvWriter w(h);
  std::vector<Json> rows;
  const ConvexSet disk = ConvexSet::disk({0.0, 0.0}, 1.0);
  for (int n = 1; n <= 12; ++n) {
    SearchOptions opt;
    opt.final_tol = c.tol;
    const MarkovEstimate e = estimate_mn(disk, n, c.budget, c.seed, opt);
    const MarkovRatio r = markov_ratio(RootPoly(1.0, std::vector<Complex>(static_cast<std::size_t>(n), {-1.0, 0.0})), disk,
                                       {c.tol, kDefaultSampleCap});
    w.add(n).add(0.5 * n).add(e.value).add(e.lower).add(r.lower).add(r.upper);
    w.end_row();
    rows.push_back({n, 0.5 * n, e.value, e.lower, r.lower, r.upper});
  }
  emit_table(c, w, h, rows);
  return kExitOk;
}

int fig_interval(const RunConfig& c) {
  const std::vector<std::string> h{"n", "sqrt_n_over_6", "sqrt_n_over_e", "estimate", "sample_floor"};
  CsvWriter w(h);
  std::vector<Json> rows;
  const ConvexSet seg = ConvexSet::segment({-1.0, 0.0}, {1.0, 0.0});
  for (int n : {1, 2, 4, 8, 16, 32}) {
    SearchOptions opt;
    opt.final_tol = c.tol;
    const MarkovEstimate e = estimate_mn(seg, n, c.budget, c.seed, opt);
    const double floor = sample_ratio_floor(seg, n, 100, c.seed, {c.tol, kDefaultSampleCap});
    const double a = std::sqrt(n) / 6.0, b = std::sqrt(n / std::exp(1.0));
    w.add(n).add(a).add(b).add(e.value).add(floor);
    w.end_row();
    rows.push_back({n, a, b, e.value, floor});
  }
  emit_table(c, w, h, rows);
  return kExitOk;
}

int fig_diamond_sweep(const RunConfig& c) {
  const std::vector<std::string> h{"epsilon", "w",           "n",          "lp_lower",    "two_sided_lower",
                                   "revesz_lower", "two_sided_upper", "witness_case", "witness_upper"};
  CsvWriter w(h);
  std::vector<Json> rows;
  const int n = 200;
  for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0}) {
    const ConvexSet k = ConvexSet::diamond(eps);
    const BoundReport b = bound_report(k, n);
    const WitnessRatio wr = witness_ratio(k, n, {c.tol, kDefaultSampleCap});
    const std::string tag(to_string(wr.choice.case_tag));
    w.add(eps).add(b.w).add(n).add(b.lp_lower).add(b.two_sided_lower).add(b.revesz_lower).add(b.two_sided_upper);
    w.add(tag).add(wr.upper);
    w.end_row();
    rows.push_back({eps, b.w, n, b.lp_lower, b.two_sided_lower, b.revesz_lower, b.two_sided_upper, tag, wr.upper});
  }
  emit_table(c, w, h, rows);
  return kExitOk;
}

int fig_gamma_sweep(const RunConfig& c) {
  const std::vector<std::string> h{"epsilon", "s", "n", "gamma", "scale", "witness_upper", "witness_over_scale"};
  CsvWriter w(h);
  std::vector<Json> rows;
  for (double eps : {0.0, 0.01, 0.05, 0.2, 1.0}) {
    const ConvexSet k = eps == 0.0 ? ConvexSet::segment({-1.0, 0.0}, {1.0, 0.0}) : ConvexSet::diamond(eps);
    for (int n : {16, 64, 256}) {
      const BoundReport b = bound_report(k, n);
      const double scale = std::max(b.w * n / (b.d * b.d), std::sqrt(n) / b.d);
      const WitnessRatio wr = witness_ratio(k, n, {c.tol, kDefaultSampleCap});
      w.add(eps).add(b.s).add(n).add(b.gamma).add(scale).add(wr.upper).add(wr.upper / scale);
      w.end_row();
      rows.push_back({eps, b.s, n, b.gamma, scale, wr.upper, wr.upper / scale});
    }
  }
  emit_table(c, w, h, rows);
  return kExitOk;
}

const std::map<std::string, Figure>& figures() {
  static const std::map<std::string, Figure> f{
      {"disk", fig_disk}, {"interval", fig_interval}, {"diamond-sweep", fig_diamond_sweep}, {"gamma-sweep", fig_gamma_sweep}};
  return f;
}

int cmd_reproduce(const RunConfig& c) {
  const auto& f = figures();
  const auto it = f.find(c.figure);
  if (it == f.end()) {
    std::string ids;
    for (const auto& [k, v] : f) ids += (ids.empty() ? "" : ", ") + k;
    throw InvalidArgument("unknown figure \"" + c.figure + "\"; available: " + ids);
  }
  return it->second(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turan inverse Markov factor: bounds, witnesses, estimates and proof checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string kernel_name = "auto";
  app.add_option("--kernels", kernel_name, "Kernel table: auto, scalar or avx2")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto common = [&](CLI::App* s, bool need_set, bool need_n) {
    auto* o = s->add_option("--set", cfg.set, "Set description: inline JSON or a file path");
    if (need_set) o->required();
    auto* on = s->add_option("--n", cfg.n, "Degree, range a..b or list a,b,c");
    if (need_n) on->required();
    s->add_option("--seed", cfg.seed, "Random seed");
    s->add_option("--budget", cfg.budget, "Evaluation budget for the optimizer");
    s->add_option("--tol", cfg.tol, "Relative tolerance of certified norms")->check(CLI::PositiveNumber);
    s->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--out", cfg.out, "Output path (default stdout)");
  };
  auto* geom = app.add_subcommand("geom", "Diameter, width and normalization of a set");
  common(geom, true, false);
  auto* bounds = app.add_subcommand("bounds", "Published bounds for a range of degrees");
  common(bounds, true, true);
  auto* witness = app.add_subcommand("witness", "Certified ratio of the constructive witness");
  common(witness, true, true);
  auto* verify = app.add_subcommand("verify", "Run the proof certificate");
  common(verify, false, false);
  verify->add_option("--m", cfg.m_set, "Values of m")->delimiter(',');
  verify->add_option("--w-step", cfg.w_step, "Spacing of the w grid");
  verify->add_option("--samples", cfg.samples, "Sample points per set");
  auto* estimate = app.add_subcommand("estimate", "Optimize root placements for an upper estimate of M_n(K)");
  common(estimate, true, true);
  auto* reproduce = app.add_subcommand("reproduce", "Data series: disk, interval, diamond-sweep, gamma-sweep");
  common(reproduce, false, false);
  reproduce->add_option("figure", cfg.figure, "Figure id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (!kernels::select_kernels(kernel_name)) {
    std::cerr << "error: kernel table \"" << kernel_name << "\" is not available\n";
    return kExitUsage;
  }

  try {
    if (*geom) return cfg.subcommand = "geom", cmd_geom(cfg);
    if (*bounds) return cfg.subcommand = "bounds", cmd_bounds(cfg);
    if (*witness) return cfg.subcommand = "witness", cmd_witness(cfg);
    if (*verify) return cfg.subcommand = "verify", cmd_verify(cfg);
    if (*estimate) return cfg.subcommand = "estimate", cmd_estimate(cfg);
    if (*reproduce) return cfg.subcommand = "reproduce", cmd_reproduce(cfg);
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
