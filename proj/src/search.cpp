#include "turan/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <thread>

#include "turan/constructions.hpp"
#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

std::vector<Complex> sorted(std::vector<Complex> r) {
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

// Ratio on K of the polynomial with the given roots pulled back through
// K1 = t(K): ratio_K = |alpha| ratio_K1.
void pull_back(MarkovEstimate& e, const MarkovRatio& r, const AffineMap& t) {
  const double s = t.scale();
  e.value = std::nextafter(r.upper * s, kInf);
  e.lower = std::nextafter(r.lower * s, 0.0);
  const AffineMap inv = t.inverse();
  for (Complex& z : e.roots) z = inv(z);
  e.roots = sorted(std::move(e.roots));
}

struct StartResult {
  std::vector<Complex> roots;
  double value = kInf;
  std::size_t evaluations = 0;
};

class PatternSearch {
 public:
  PatternSearch(const ConvexSet& k1, const SearchOptions& opt, std::size_t budget)
      : k1_(k1), opt_(opt), budget_(budget) {}

  StartResult run(std::vector<Complex> x) {
    StartResult res;
    double fx = eval(x, res);
    static const Complex dirs[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    double step = 0.5;
    while (step >= opt_.min_step && res.evaluations < budget_) {
      bool improved = false;
      for (std::size_t j = 0; j < x.size() && res.evaluations < budget_; ++j) {
        for (const Complex& d : dirs) {
          if (res.evaluations >= budget_) break;
          const Complex c = project(k1_, x[j] + step * d);
          if (std::abs(c - x[j]) < 1e-15) continue;
          std::vector<Complex> y = x;
          y[j] = c;
          const double fy = eval(y, res);
          if (fy < fx) {
            x = std::move(y);
            fx = fy;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    res.roots = std::move(x);
    res.value = fx;
    return res;
  }

 private:
  double eval(const std::vector<Complex>& x, StartResult& res) {
    ++res.evaluations;
    return markov_ratio(RootPoly(1.0, x), k1_, {opt_.search_tol, kDefaultSampleCap}).upper;
  }

  const ConvexSet& k1_;
  SearchOptions opt_;
  std::size_t budget_;
};

}  // namespace

Complex random_point(const ConvexSet& k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (k.is_segment_like()) {
    const auto [p, q] = k.segment_endpoints();
    return p + u(rng) * (q - p);
  }
  const auto [lo, hi] = bounding_box(k);
  for (;;) {
    const Complex z(lo.real() + u(rng) * (hi.real() - lo.real()),
                    lo.imag() + u(rng) * (hi.imag() - lo.imag()));
    if (contains(k, z)) return z;
  }
}

MarkovEstimate estimate_mn(const ConvexSet& k, int n, std::size_t budget, std::uint64_t seed,
                           const SearchOptions& opt) {
  if (n < 1) throw InvalidArgument("estimate_mn: n must be >= 1");
  if (budget < 100) throw InvalidArgument("estimate_mn: budget must be >= 100");
  if (opt.starts < 1) throw InvalidArgument("estimate_mn: starts must be >= 1");
  const Normalization norm = normalize(k);
  const ConvexSet& k1 = norm.set;
  const std::size_t un = static_cast<std::size_t>(n);

  std::vector<std::vector<Complex>> starts;
  auto add = [&](std::vector<Complex> r) {
    r = sorted(std::move(r));
    if (std::find(starts.begin(), starts.end(), r) == starts.end()) starts.push_back(std::move(r));
  };
  add(std::vector<Complex>(un, Complex(1.0, 0.0)));
  add(std::vector<Complex>(un, Complex(-1.0, 0.0)));
  {
    std::vector<Complex> split(un, Complex(1.0, 0.0));
    for (std::size_t i = 0; i < un / 2; ++i) split[i] = Complex(-1.0, 0.0);
    add(std::move(split));
  }
  add(witness_for(n, k1).polynomial.roots());
  std::mt19937_64 rng(seed);
  while (starts.size() < static_cast<std::size_t>(opt.starts)) {
    std::vector<Complex> r(un);
    for (Complex& z : r) z = random_point(k1, rng);
    add(std::move(r));
  }
  starts.resize(static_cast<std::size_t>(opt.starts));

  const std::size_t per_start = std::max<std::size_t>(1, budget / starts.size());
  std::vector<StartResult> results(starts.size());
  auto work = [&](std::size_t i) { results[i] = PatternSearch(k1, opt, per_start).run(starts[i]); };
  if (opt.parallel && starts.size() > 1) {
    std::vector<std::future<void>> fs;
    for (std::size_t i = 0; i < starts.size(); ++i) fs.push_back(std::async(std::launch::async, work, i));
    for (auto& f : fs) f.get();
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i) work(i);
  }

  MarkovEstimate best;
  best.seed = seed;
  best.method = "multistart";
  best.value = kInf;
  std::size_t evals = 0;
  for (const auto& r : results) evals += r.evaluations;
  // Final certification of every start's endpoint; ties broken by roots.
  MarkovRatio best_ratio;
  for (const auto& r : results) {
    const MarkovRatio m = markov_ratio(RootPoly(1.0, r.roots), k1, {opt.final_tol, kDefaultSampleCap});
    ++evals;
    const auto rs = sorted(r.roots);
    if (m.upper < best_ratio.upper || best.roots.empty() ||
        (m.upper == best_ratio.upper && lex_less(rs, best.roots))) {
      best_ratio = m;
      best.roots = rs;
    }
  }
  best.evaluations = evals;
  pull_back(best, best_ratio, norm.map);
  return best;
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

struct Lattice {
  std::vector<double> re, im;
  std::size_t size() const { return re.size(); }
  Complex at(std::size_t i) const { return {re[i], im[i]}; }
};

Lattice lattice(const ConvexSet& k, double step) {
  Lattice l;
  if (k.is_segment_like()) {
    const auto [p, q] = k.segment_endpoints();
    const double len = std::abs(q - p);
    const Complex u = (q - p) / len;
    const auto count = static_cast<std::size_t>(std::floor(len / step + 1e-9));
    for (std::size_t j = 0; j <= count; ++j) {
      const Complex z = j == 0 ? p : (j * step >= len ? q : p + static_cast<double>(j) * step * u);
      l.re.push_back(z.real());
      l.im.push_back(z.imag());
    }
    return l;
  }
  const auto [lo, hi] = bounding_box(k);
  const double tol = 1e-12 * std::max(1.0, diameter(k));
  const auto i0 = static_cast<long long>(std::ceil(lo.real() / step - 1e-9));
  const auto i1 = static_cast<long long>(std::floor(hi.real() / step + 1e-9));
  const auto j0 = static_cast<long long>(std::ceil(lo.imag() / step - 1e-9));
  const auto j1 = static_cast<long long>(std::floor(hi.imag() / step + 1e-9));
  for (long long i = i0; i <= i1; ++i)
    for (long long j = j0; j <= j1; ++j) {
      const Complex z(static_cast<double>(i) * step, static_cast<double>(j) * step);
      if (contains(k, z, tol)) {
        l.re.push_back(z.real());
        l.im.push_back(z.imag());
      }
    }
  return l;
}

double multiset_count(std::size_t l, int n) {
  double c = 1.0;
  for (int i = 0; i < n; ++i) c = c * static_cast<double>(l + static_cast<std::size_t>(i)) / (i + 1);
  return c;
}

// Boundary samples of one refinement level. For every z in the sup-norm
// domain some sample lies within arc length h/2, so with all roots in K
//   ||P|| <= max_i |P(z_i)| + (h/2) n d^(n-1).
struct Level {
  std::vector<double> re, im;
  double lip_slack = 0.0;
};

Level make_level(const ConvexSet& k, double spacing, int n) {
  Level lv;
  for (const Complex& z : boundary_points(k, spacing)) {
    lv.re.push_back(z.real());
    lv.im.push_back(z.imag());
  }
  lv.lip_slack = 0.5 * spacing * n * std::pow(diameter(k), n - 1);
  return lv;
}

struct Candidate {
  double est;
  double lb;
  std::array<std::uint32_t, 3> idx;
  int n;
};

class Sweeper {
 public:
  Sweeper(const Lattice& l, const std::vector<Level>& levels, int n, bool adaptive)
      : l_(l), levels_(levels), n_(n), adaptive_(adaptive) {
    const auto& kt = kernels::active_kernels();
    sweep_ = kt.tuple_sweep;
  }

  // Processes every tuple whose first n-1 indices are `prefix`; survivors of
  // the final level with lb <= threshold are appended to `out`.
  void run(const std::array<std::uint32_t, 3>& prefix, double& threshold, double& min_est,
           std::vector<Candidate>& out) {
    const std::size_t first = n_ == 1 ? 0 : prefix[static_cast<std::size_t>(n_ - 2)];
    cand_.clear();
    for (std::size_t k = first; k < l_.size(); ++k) cand_.push_back(static_cast<std::uint32_t>(k));
    for (std::size_t li = 0; li < levels_.size() && !cand_.empty(); ++li) {
      const Level& lv = levels_[li];
      const bool last = li + 1 == levels_.size();
      set_prefix(lv, prefix);
      cre_.resize(cand_.size());
      cim_.resize(cand_.size());
      for (std::size_t c = 0; c < cand_.size(); ++c) {
        cre_[c] = l_.re[cand_[c]];
        cim_[c] = l_.im[cand_[c]];
      }
      p2_.resize(cand_.size());
      d2_.resize(cand_.size());
      kernels::SweepInput in{{lv.re.data(), lv.im.data(), lv.re.size()},
                             {are_.data(), aim_.data(), are_.size()},
                             {dre_.data(), dim_.data(), dre_.size()},
                             {cre_.data(), cim_.data(), cre_.size()}};
      sweep_(in, 0, cand_.size(), p2_.data(), d2_.data());
      next_.clear();
      for (std::size_t c = 0; c < cand_.size(); ++c) {
        const double pm = std::sqrt(p2_[c]);
        const double dm = std::sqrt(d2_[c]);
        const double lb = dm / (pm * (1.0 + 1e-12) + lv.lip_slack) * (1.0 - 1e-12);
        if (lb > threshold) continue;
        if (!last) {
          next_.push_back(cand_[c]);
          continue;
        }
        const double est = pm > 0.0 ? dm / pm : kInf;
        if (est < min_est) {
          min_est = est;
          if (adaptive_) threshold = std::min(threshold, factor_ * est);
        }
        Candidate cd{est, lb, prefix, n_};
        cd.idx[static_cast<std::size_t>(n_ - 1)] = cand_[c];
        out.push_back(cd);
      }
      cand_.swap(next_);
    }
  }

  static constexpr double factor_ = 1.02;

 private:
  void set_prefix(const Level& lv, const std::array<std::uint32_t, 3>& prefix) {
    const std::size_t m = lv.re.size();
    are_.assign(m, 1.0);
    aim_.assign(m, 0.0);
    dre_.assign(m, 0.0);
    dim_.assign(m, 0.0);
    for (int j = 0; j + 1 < n_; ++j) {
      const double rr = l_.re[prefix[static_cast<std::size_t>(j)]];
      const double ri = l_.im[prefix[static_cast<std::size_t>(j)]];
      for (std::size_t i = 0; i < m; ++i) {
        // (A, A') <- (A (z - r), A' (z - r) + A)
        const double br = lv.re[i] - rr, bi = lv.im[i] - ri;
        const double ar = are_[i], ai = aim_[i];
        const double nd_r = dre_[i] * br - dim_[i] * bi + ar;
        const double nd_i = dre_[i] * bi + dim_[i] * br + ai;
        are_[i] = ar * br - ai * bi;
        aim_[i] = ar * bi + ai * br;
        dre_[i] = nd_r;
        dim_[i] = nd_i;
      }
    }
  }

  const Lattice& l_;
  const std::vector<Level>& levels_;
  int n_;
  bool adaptive_;
  kernels::TupleSweepFn sweep_;
  std::vector<std::uint32_t> cand_, next_;
  std::vector<double> cre_, cim_, p2_, d2_, are_, aim_, dre_, dim_;
};

}  // namespace

MarkovEstimate brute_force_mn(const ConvexSet& k, int n, double step, std::size_t cap,
                              double final_tol) {
  if (n < 1 || n > 3) throw InvalidArgument("brute_force_mn: n must be in 1..3");
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("brute_force_mn: step must be positive");
  const Lattice l = lattice(k, step);
  if (l.size() == 0) throw InvalidArgument("brute_force_mn: lattice misses K");
  if (l.size() > std::numeric_limits<std::uint32_t>::max() ||
      multiset_count(l.size(), n) > static_cast<double>(cap))
    throw ResourceLimit("brute_force_mn: grid too fine for the tuple cap");

  const double d = diameter(k);
  const double perim = k.is_segment_like() ? d : 4.0 * d;  // perimeter <= pi d < 4 d
  std::vector<Level> levels;
  for (double m : {64.0, 512.0, 4096.0}) levels.push_back(make_level(k, perim / m, n));

  // Prefixes i_1 <= ... <= i_{n-1}, split across threads in a fixed order.
  std::vector<std::array<std::uint32_t, 3>> prefixes;
  if (n == 1) {
    prefixes.push_back({0, 0, 0});
  } else {
    for (std::uint32_t a = 0; a < l.size(); ++a) {
      if (n == 2) {
        prefixes.push_back({a, 0, 0});
      } else {
        for (std::uint32_t b = a; b < l.size(); ++b) prefixes.push_back({a, b, 0});
      }
    }
  }

  double threshold = kInf;
  std::vector<Candidate> cands;
  for (int pass = 0; pass < 2; ++pass) {
    const unsigned nt = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
    std::vector<std::vector<Candidate>> outs(nt);
    std::vector<double> thr(nt, threshold), mins(nt, kInf);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    double shared_thr = threshold;
    auto worker = [&](unsigned t) {
      Sweeper sw(l, levels, n, pass == 0);
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= prefixes.size()) break;
        {
          std::lock_guard<std::mutex> g(mu);
          thr[t] = std::min(thr[t], shared_thr);
        }
        sw.run(prefixes[i], thr[t], mins[t], outs[t]);
        std::lock_guard<std::mutex> g(mu);
        shared_thr = std::min(shared_thr, thr[t]);
      }
    };
    std::vector<std::thread> ts;
    for (unsigned t = 0; t < nt; ++t) ts.emplace_back(worker, t);
    for (auto& th : ts) th.join();

    double min_est = kInf;
    for (double v : mins) min_est = std::min(min_est, v);
    cands.clear();
    for (auto& o : outs) cands.insert(cands.end(), o.begin(), o.end());
    // Pruned tuples had lb above the threshold in force at the time, which
    // never drops below factor * min_est.
    const double floor_thr = pass == 0 ? Sweeper::factor_ * min_est : threshold;
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      return a.est != b.est ? a.est < b.est : a.idx < b.idx;
    });

    MarkovEstimate best;
    best.method = "grid";
    best.value = kInf;
    MarkovRatio best_ratio;
    std::size_t evals = 0;
    for (const Candidate& c : cands) {
      if (c.lb > best.value) continue;
      std::vector<Complex> roots;
      for (int j = 0; j < n; ++j) roots.push_back(l.at(c.idx[static_cast<std::size_t>(j)]));
      const MarkovRatio m = markov_ratio(RootPoly(1.0, roots), k, {final_tol, kDefaultSampleCap});
      ++evals;
      roots = sorted(std::move(roots));
      if (m.upper < best.value || (m.upper == best.value && lex_less(roots, best.roots))) {
        best.value = m.upper;
        best.lower = m.lower;
        best.roots = std::move(roots);
      }
    }
    best.evaluations = evals + static_cast<std::size_t>(multiset_count(l.size(), n));
    if (best.value <= floor_thr || pass == 1) {
      if (best.value > floor_thr) throw Error("brute_force_mn: pruning threshold below the certified minimum");
      return best;
    }
    threshold = best.value;  // rerun with a threshold known to be safe
  }
  throw Error("brute_force_mn: unreachable");
}

double sample_ratio_floor(const ConvexSet& k, int n, std::size_t count, std::uint64_t seed,
                          const NormOptions& opt) {
  if (n < 1) throw InvalidArgument("sample_ratio_floor: n must be >= 1");
  if (count < 1) throw InvalidArgument("sample_ratio_floor: count must be >= 1");
  std::mt19937_64 rng(seed);
  double floor = kInf;
  std::vector<Complex> r(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < count; ++s) {
    for (Complex& z : r) z = random_point(k, rng);
    floor = std::min(floor, markov_ratio(RootPoly(1.0, r), k, opt).lower);
  }
  return floor;
}

}  // namespace turan
