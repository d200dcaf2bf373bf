// One PASS/FAIL line per acceptance criterion, with the measured runtime
// against its limit. Exit status 0 iff every line is PASS.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "turan/bounds.hpp"
#include "turan/constructions.hpp"
#include "turan/proofcheck.hpp"
#include "turan/search.hpp"

using namespace turan;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << "exception: " << e.what() << "; ";
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) o.detail << "runtime over limit; ";
  const bool pass = o.ok && s <= limit_s;
  if (!pass) ++failures;
  std::printf("%s %2d %-32s %8.2f s / %5.0f s  %s\n", pass ? "PASS" : "FAIL", id, name, s, limit_s,
              o.detail.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.10g", x);
  return b;
}

const ConvexSet kDisk = ConvexSet::disk({0, 0}, 1);
const ConvexSet kSeg = ConvexSet::segment({-1, 0}, {1, 0});

std::vector<ConvexSet> battery() {
  const Complex tri[] = {{-1, 0}, {1, 0}, {0.2, 0.25}};
  return {kDisk, kSeg, ConvexSet::diamond(0.2), ConvexSet::ellipse({0, 0}, 1, 0.1),
          affine(make_polygon(tri), AffineMap::make(std::polar(3.0, 0.5), {2, -1}))};
}

}  // namespace

int main() {
  criterion(1, "disk equality", 10, [](Outcome& o) {
    double worst = 0;
    for (int n = 1; n <= 12; ++n) {
      const MarkovRatio r = markov_ratio(RootPoly(1.0, std::vector<Complex>(n, Complex(-1, 0))), kDisk,
                                         {2.5e-7, kDefaultSampleCap});
      const double h = n / 2.0;
      o.require(r.lower <= h && h <= r.upper, "n=" + std::to_string(n) + " interval misses n/2");
      o.require(r.width() <= 1e-6 * n, "n=" + std::to_string(n) + " width " + fmt(r.width()));
      const double floor = sample_ratio_floor(kDisk, n, 1000, 100 + n);
      o.require(floor >= h - 1e-6, "n=" + std::to_string(n) + " sample floor " + fmt(floor));
      worst = std::max(worst, r.width() / n);
    }
    o.detail << "max width/n " << fmt(worst);
  });

  criterion(2, "interval floor", 30, [](Outcome& o) {
    for (int n : {4, 9, 16, 25, 49}) {
      const double floor = sample_ratio_floor(kSeg, n, 1000, n);
      o.require(floor > std::sqrt(n) / 6, "n=" + std::to_string(n) + " floor " + fmt(floor));
      o.detail << "n=" << n << ":" << fmt(floor) << " ";
    }
  });

  criterion(3, "interval upper behavior", 10, [](Outcome& o) {
    for (int m : {2, 10, 50, 100}) {
      const MarkovRatio r = markov_ratio(p_poly(m), kSeg);
      const double exact = oracle::segment_pm_ratio(m);
      o.require(r.upper <= std::sqrt(2.0 * m), "m=" + std::to_string(m) + " above sqrt(2m)");
      o.require(std::abs(r.upper / exact - 1) <= 1e-6 && std::abs(r.lower / exact - 1) <= 1e-6,
                "m=" + std::to_string(m) + " misses closed form");
    }
  });

  const std::vector<ConvexSet> thm_sets{ConvexSet::diamond(0.05), ConvexSet::diamond(0.2),
                                        normalize(ConvexSet::ellipse({0, 0}, 1, 0.1)).set};

  criterion(4, "theorem 1a at scale", 60, [&](Outcome& o) {
    double margin = INFINITY;
    for (const ConvexSet& k : thm_sets)
      for (int m : {100, 150}) {
        const double w = min_width(k);
        const MarkovRatio r = markov_ratio(p_poly(m), k);
        const double bound = std::sqrt(3.0) * std::max(w * 2 * m, 2 * std::sqrt(2.0 * m));
        o.require(!r.capped() && r.upper <= bound, "m=" + std::to_string(m) + " w=" + fmt(w));
        margin = std::min(margin, bound / r.upper);
      }
    o.detail << "min bound/ratio " << fmt(margin);
  });

  criterion(5, "theorem 1b at scale", 60, [&](Outcome& o) {
    double margin = INFINITY;
    for (const ConvexSet& k : thm_sets)
      for (int m : {100, 150}) {
        const double w = min_width(k);
        const int n = 2 * m + 1;
        const MarkovRatio r = markov_ratio(big_p_poly(m), k);
        const double bound = 7 * std::max(w * n, 2 * std::sqrt(static_cast<double>(n)));
        o.require(!r.capped() && r.upper <= bound, "m=" + std::to_string(m) + " w=" + fmt(w));
        margin = std::min(margin, bound / r.upper);
      }
    const double a0 = 2 + 1 / (28 * std::sqrt(3.0));
    const double lhs = 2 * a0 * std::sqrt(3.0), rhs = 4 * std::sqrt(3.0) + 1.0 / 14;
    o.require(std::abs(lhs - rhs) <= 1e-12 && rhs < 7, "constant identity");
    o.detail << "min bound/ratio " << fmt(margin) << ", 2 a0 sqrt3 = " << fmt(lhs);
  });

  criterion(6, "full theorem 1 sweep", 300, [](Outcome& o) {
    double worst_up = 0, worst_low = INFINITY;
    for (const ConvexSet& k : battery()) {
      const double d = diameter(k), w = min_width(k);
      for (int n = 1; n <= 300; ++n) {
        const double big = std::max(w * n / (d * d), std::sqrt(static_cast<double>(n)) / d);
        const WitnessRatio wr = witness_ratio(k, n);
        o.require(!wr.on_k1.capped() && wr.upper <= 28 * big, std::string(k.kind()) + " n=" + std::to_string(n) + " witness");
        worst_up = std::max(worst_up, wr.upper / (28 * big));
        const double floor = sample_ratio_floor(k, n, 8, 1000 * n + 7, {1e-3, kDefaultSampleCap});
        o.require(floor >= 0.0003 * big, std::string(k.kind()) + " n=" + std::to_string(n) + " sample");
        worst_low = std::min(worst_low, floor / (0.0003 * big));
      }
    }
    o.detail << "max witness/(28 max) " << fmt(worst_up) << ", min sample/(c1 max) " << fmt(worst_low);
  });

  criterion(7, "proof certificate", 60, [](Outcome& o) {
    const auto grid = default_w_grid();
    const auto ms = default_m_set();
    const auto sets = default_set_family();
    const ProofReport r = proof_certificate(grid, ms, sets);
    std::size_t interval = 0;
    for (const CheckRecord& c : r.records) {
      interval += c.method == CheckMethod::Interval;
      o.require(c.passed(), c.check_id + " " + c.detail);
    }
    o.detail << r.records.size() << " records, " << interval << " interval, " << r.failures() << " failed";
  });

  criterion(8, "corollary thresholds", 1, [](Outcome& o) {
    for (int n = 1; n <= 100; ++n) {
      const BoundReport b = bound_report(2.0, 0.5, n);
      o.require(b.corollary1_active == (n > 16), "activity at n=" + std::to_string(n));
      if (b.corollary1_active)
        o.require(std::abs(b.corollary1_upper - 28 * 0.5 * n / 4) <= 1e-12 * n, "upper at n=" + std::to_string(n));
    }
    const SharpnessReport s = sharpness_check(2.0, 0.001, 10);
    o.require(s.regime && s.strict, "sharpness regime");
    o.detail << fmt(s.upper) << " < " << fmt(s.lower);
  });

  criterion(9, "geometry oracle", 1, [](Outcome& o) {
    double worst = 0;
    for (int i = 1; i <= 20; ++i) {
      const double eps = i / 20.0;
      const Complex v[] = {{1, 0}, {0, eps}, {-1, 0}, {0, -eps}};
      const double w = min_width(make_polygon(v));
      const double err = std::abs(w - 2 * eps / std::sqrt(1 + eps * eps));
      o.require(err <= 1e-9, "eps=" + fmt(eps));
      worst = std::max(worst, err);
    }
    o.detail << "max error " << fmt(worst);
  });

  criterion(10, "optimizer vs brute force", 120, [](Outcome& o) {
    const ConvexSet sets[] = {kDisk, kSeg, ConvexSet::diamond(0.3)};
    for (const ConvexSet& k : sets)
      for (int n : {1, 2}) {
        const MarkovEstimate bf = brute_force_mn(k, n, 0.02);
        const MarkovEstimate es = estimate_mn(k, n, 2000, 1);
        o.require(es.value <= bf.value + 1e-6, std::string(k.kind()) + " n=" + std::to_string(n));
        o.detail << k.kind() << "/" << n << ": " << fmt(es.value) << " vs " << fmt(bf.value) << "  ";
      }
    const AffineMap t = AffineMap::make(std::polar(2.5, -0.4), {1, 3});
    for (const ConvexSet& k : sets)
      for (int n : {2, 4}) {
        const MarkovEstimate a = estimate_mn(k, n, 1500, 2);
        const MarkovEstimate b = estimate_mn(affine(k, t), n, 1500, 2);
        const double width = (a.value - a.lower) / 2.5 + (b.value - b.lower) + 1e-12 * a.value;
        o.require(std::abs(b.value - a.value / 2.5) <= width, std::string(k.kind()) + " affine n=" + std::to_string(n));
      }
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
