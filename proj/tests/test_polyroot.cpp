#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/polyroot.hpp"

using namespace turan;

namespace {

std::vector<Complex> repeat(Complex r, int k) { return std::vector<Complex>(static_cast<std::size_t>(k), r); }

RootPoly pm(int m) {
  auto r = repeat({1, 0}, m);
  auto s = repeat({-1, 0}, m);
  r.insert(r.end(), s.begin(), s.end());
  return RootPoly(1.0, r);
}

}  // namespace

TEST_CASE("RootPoly validation") {
  CHECK_THROWS_AS(RootPoly(0.0, {{1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(RootPoly(1.0, {}), InvalidArgument);
  CHECK_THROWS_AS(RootPoly(1.0, {{NAN, 0}}), InvalidArgument);
  CHECK(RootPoly(2.0, repeat({1, 0}, 7)).degree() == 7);
}

TEST_CASE("eval_log examples") {
  const LogValue a = eval_log(RootPoly(1.0, repeat({1, 0}, 2)), {3, 0});
  CHECK(a.log_magnitude == doctest::Approx(std::log(4.0)));
  CHECK(std::abs(a.value() - Complex(4, 0)) < 1e-13);

  const LogValue b = eval_log(pm(100), {0, 1});
  CHECK(b.log_magnitude == doctest::Approx(100 * std::log(2.0)).epsilon(1e-14));

  CHECK(eval_log(RootPoly(1.0, repeat({1, 0}, 5)), {1, 0}).is_zero());
}

TEST_CASE("eval_log matches the naive product") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int t = 0; t < 300; ++t) {
    std::vector<Complex> r;
    for (int j = 0; j < 9; ++j) r.emplace_back(u(rng), u(rng));
    const Complex lead(u(rng), u(rng));
    const Complex z(u(rng), u(rng));
    const Complex expect = oracle::poly(r, z, lead);
    CHECK(std::abs(eval_log(RootPoly(lead, r), z).value() - expect) <= 1e-12 * std::abs(expect));
  }
}

TEST_CASE("LogValue keeps long products representable") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> e(-2, 2);
  LogValue acc;
  double expect = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double mag = std::pow(10.0, e(rng));
    acc = acc * LogValue{std::log(mag), 0.3};
    expect += std::log(mag);
  }
  CHECK(std::isfinite(acc.log_magnitude));
  CHECK(acc.log_magnitude == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("eval_derivative_log examples") {
  CHECK(eval_derivative_log(RootPoly(1.0, repeat({1, 0}, 5)), {-1, 0}).magnitude() == doctest::Approx(80.0));
  CHECK(eval_derivative_log(pm(3), {0.5, 0}).magnitude() == doctest::Approx(1.6875));
  CHECK(eval_derivative_log(RootPoly(3.0, {{0, 0}, {2, 0}}), {0, 0}).magnitude() == doctest::Approx(6.0));
  // At a multiple root the derivative vanishes.
  CHECK(eval_derivative_log(RootPoly(1.0, repeat({1, 0}, 3)), {1, 0}).is_zero());
}

TEST_CASE("derivative agrees with finite differences and the naive sum") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  int checked = 0;
  while (checked < 1000) {
    std::vector<Complex> r;
    for (int j = 0; j < 6; ++j) r.emplace_back(u(rng), u(rng));
    const Complex z(1.5 * u(rng), 1.5 * u(rng));
    double dmin = INFINITY;
    for (Complex x : r) dmin = std::min(dmin, std::abs(z - x));
    if (dmin < 0.05) continue;
    const RootPoly p(1.0, r);
    const double h = 1e-5;
    const Complex fd = (eval_log(p, z + h).value() - eval_log(p, z - h).value()) / (2 * h);
    const Complex d = eval_derivative_log(p, z).value();
    CHECK(std::abs(d - fd) <= 1e-6 * std::abs(d));
    CHECK(std::abs(d - oracle::dpoly(r, z)) <= 1e-11 * std::abs(d));
    ++checked;
  }
}

TEST_CASE("both derivative branches agree near the switch radius") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1), ph(0, 2 * std::numbers::pi);
  for (int t = 0; t < 200; ++t) {
    std::vector<Complex> r;
    for (int j = 0; j < 8; ++j) r.emplace_back(u(rng), u(rng));
    const RootPoly p(1.0, r);
    for (double rad : {1e-7, 1e-6, 1e-5}) {
      const Complex z = r[0] + std::polar(rad, ph(rng));
      const Complex q = eval_derivative_log_quotient(p, z).value();
      const Complex s = eval_derivative_log_products(p, z).value();
      CHECK(std::abs(q - s) <= 1e-9 * std::abs(s));
    }
  }
}

TEST_CASE("degree 200 evaluation neither overflows nor underflows") {
  const RootPoly p = pm(100);
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      const Complex z(-2 + 0.1 * i, -2 + 0.1 * j);
      if (std::abs(z) > 2 || std::abs(z * z - 1.0) == 0.0) continue;
      const LogValue v = eval_log(p, z);
      const LogValue d = eval_derivative_log(p, z);
      CHECK(std::isfinite(v.log_magnitude));
      CHECK(v.log_magnitude == doctest::Approx(100 * std::log(std::abs(z * z - 1.0))).epsilon(1e-12));
      // p_m' vanishes only at 0 and +-1.
      if (std::abs(z) > 0.0) CHECK(std::isfinite(d.log_magnitude));
    }
}

TEST_CASE("sup_norm contains known norms at several tolerances") {
  const ConvexSet disk = ConvexSet::disk({0, 0}, 1);
  const ConvexSet seg = ConvexSet::segment({-1, 0}, {1, 0});
  for (double tol : {1e-2, 1e-4, 1e-6}) {
    const NormOptions opt{tol, kDefaultSampleCap};
    for (int n : {1, 3, 8, 20}) {
      const NormEstimate e = sup_norm(RootPoly(1.0, repeat({-1, 0}, n)), disk, opt);
      const double exact = std::pow(2.0, n);
      CHECK(e.lower() <= exact * (1 + 1e-14));
      CHECK(e.upper() >= exact * (1 - 1e-14));
      CHECK(e.upper() <= e.lower() * (1 + tol) * (1 + 1e-12));
      CHECK_FALSE(e.capped);
    }
    for (int m : {1, 5, 100}) {
      const NormEstimate s = sup_norm(pm(m), seg, opt);
      CHECK(s.lower() <= 1.0 + 1e-14);
      CHECK(s.upper() >= 1.0 - 1e-14);
      // |z^2 - 1|^m on the unit circle peaks at +-i with 2^m.
      const NormEstimate c = sup_norm(pm(m), disk, opt);
      CHECK(c.lower() <= std::pow(2.0, m) * (1 + 1e-13));
      CHECK(c.upper() >= std::pow(2.0, m) * (1 - 1e-13));
    }
  }
}

TEST_CASE("sup_norm upper end dominates dense sampling") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::vector<ConvexSet> sets{ConvexSet::disk({0, 0}, 1), ConvexSet::diamond(0.3),
                                    ConvexSet::segment({-1, 0}, {1, 0})};
  const std::vector<std::vector<oracle::C>> samples{
      oracle::circle(0.0, 1.0, 20000), oracle::polygon({{1, 0}, {0, 0.3}, {-1, 0}, {0, -0.3}}, 5000),
      oracle::segment(-1.0, 1.0, 20000)};
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (int t = 0; t < 20; ++t) {
      std::vector<Complex> r;
      while (r.size() < 7) {
        const Complex z(u(rng), s == 2 ? 0.0 : u(rng));
        if (contains(sets[s], z)) r.push_back(z);
      }
      const MarkovRatio m = markov_ratio(RootPoly(1.0, r), sets[s]);
      const auto [pn, dn] = oracle::sampled_norms(r, samples[s]);
      CHECK(m.poly.upper() >= pn * (1 - 1e-13));
      CHECK(m.derivative.upper() >= dn * (1 - 1e-13));
      // The dense samples come within the tolerance of the certified values.
      CHECK(m.poly.lower() <= pn * (1 + 1e-5));
      CHECK(m.lower <= m.upper);
    }
  }
}

TEST_CASE("norm floors on normalized sets") {
  const ConvexSet k1 = ConvexSet::diamond(0.2);
  CHECK(sup_norm(RootPoly(1.0, repeat({1, 0}, 12)), k1).lower() >= std::pow(2.0, 12) * (1 - 1e-12));
  CHECK(sup_norm(pm(50), k1).lower() >= 1.0);
}

TEST_CASE("markov_ratio examples") {
  const ConvexSet disk = ConvexSet::disk({0, 0}, 1);
  for (int n = 1; n <= 12; ++n) {
    const MarkovRatio r = markov_ratio(RootPoly(1.0, repeat({-1, 0}, n)), disk, {2.5e-7, kDefaultSampleCap});
    CHECK(r.lower <= n / 2.0);
    CHECK(r.upper >= n / 2.0);
    CHECK(r.width() <= 1e-6 * n);
  }
  const MarkovRatio z = markov_ratio(RootPoly(1.0, {{0, 0}}), disk);
  CHECK(z.lower <= 1.0);
  CHECK(z.upper >= 1.0);

  for (const ConvexSet& k1 : {ConvexSet::diamond(0.05), ConvexSet::diamond(0.5), disk}) {
    for (int n : {3, 17, 60}) CHECK(markov_ratio(q_poly(n), k1).lower <= n / 2.0);
  }
  CHECK_THROWS_AS(markov_ratio(RootPoly(1.0, {{2, 0}}), disk), PreconditionError);
}

TEST_CASE("markov_ratio is invariant under scaling of the lead") {
  const ConvexSet k = ConvexSet::diamond(0.4);
  const std::vector<Complex> r{{0.3, 0.1}, {-0.5, 0}, {0.9, 0}, {0, -0.2}};
  const MarkovRatio base = markov_ratio(RootPoly(1.0, r), k);
  for (double c : {1e-8, 1.0, 1e8}) {
    const MarkovRatio m = markov_ratio(RootPoly(c, r), k);
    CHECK(m.lower == doctest::Approx(base.lower).epsilon(1e-12));
    CHECK(m.upper == doctest::Approx(base.upper).epsilon(1e-12));
  }
}

TEST_CASE("compose follows the affine rule") {
  const ConvexSet k = ConvexSet::ellipse({1, 2}, 3, 0.7, 0.4);
  const Normalization n = normalize(k);
  const RootPoly q = pm(3);
  const RootPoly p = compose(q, n.map);
  CHECK(roots_in(p, k));
  const MarkovRatio on_k = markov_ratio(p, k);
  const MarkovRatio on_k1 = markov_ratio(q, n.set);
  CHECK(on_k.upper == doctest::Approx(on_k1.upper * n.map.scale()).epsilon(2e-6));
  const Complex z(0.3, 0.2);
  CHECK(std::abs(eval_log(p, z).value() - eval_log(q, n.map(z)).value()) <= 1e-12 * std::abs(eval_log(p, z).value()));
}

TEST_CASE("pointwise derivative bound 2m|z| for p_m on a normalized set") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  const ConvexSet k1 = ConvexSet::diamond(0.2);
  for (int m : {100, 150}) {
    const RootPoly p = pm(m);
    const NormEstimate norm = sup_norm(p, k1);
    int seen = 0;
    while (seen < 1000) {
      const Complex z(u(rng), 0.2 * u(rng));
      if (!contains(k1, z)) continue;
      ++seen;
      const LogValue d = eval_derivative_log(p, z);
      if (d.is_zero()) continue;
      const double r = std::exp(d.log_magnitude - norm.log_lower);
      CHECK(r <= 2.0 * m * std::abs(z) * (1 + 1e-9));
    }
  }
}
