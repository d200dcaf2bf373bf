#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "turan/bounds.hpp"
#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/search.hpp"

using namespace turan;
using oracle::C;

namespace {

const ConvexSet kDisk = ConvexSet::disk({0, 0}, 1);
const ConvexSet kSeg = ConvexSet::segment({-1, 0}, {1, 0});

void check_feasible(const MarkovEstimate& e, const ConvexSet& k, int n) {
  CHECK(e.roots.size() == static_cast<std::size_t>(n));
  for (Complex r : e.roots) CHECK(contains(k, r, 1e-9));
  CHECK(e.lower <= e.value);
}

}  // namespace

TEST_CASE("estimate_mn examples") {
  const MarkovEstimate d4 = estimate_mn(kDisk, 4, 100000, 1);
  CHECK(d4.value >= 2.0);
  CHECK(d4.value <= 2.02);
  CHECK(d4.method == "multistart");
  CHECK(d4.seed == 1);
  check_feasible(d4, kDisk, 4);

  // M_1 of [-1, 1] is 1/2, attained by a root at an endpoint.
  const MarkovEstimate s1 = estimate_mn(kSeg, 1, 1000, 1);
  CHECK(s1.value == doctest::Approx(0.5).epsilon(1e-6));
  check_feasible(s1, kSeg, 1);

  const ConvexSet d2 = ConvexSet::diamond(0.2);
  const MarkovEstimate big = estimate_mn(d2, 200, 150, 1);
  CHECK(big.value <= upper_bound(2.0, min_width(d2), 200));
  CHECK(big.value <= witness_ratio(d2, 200).upper * (1 + 1e-9));
  check_feasible(big, d2, 200);

  CHECK_THROWS_AS(estimate_mn(kDisk, 0, 1000, 1), InvalidArgument);
  CHECK_THROWS_AS(estimate_mn(kDisk, 3, 99, 1), InvalidArgument);
}

TEST_CASE("brute_force_mn examples") {
  const MarkovEstimate d1 = brute_force_mn(kDisk, 1, 0.05);
  CHECK(d1.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(d1.method == "grid");
  check_feasible(d1, kDisk, 1);
  const MarkovEstimate s2 = brute_force_mn(kSeg, 2, 0.02);
  CHECK(s2.value == doctest::Approx(1.0).epsilon(1e-6));
  check_feasible(s2, kSeg, 2);
  CHECK_THROWS_AS(brute_force_mn(kDisk, 4, 0.5), InvalidArgument);
  CHECK_THROWS_AS(brute_force_mn(kDisk, 3, 0.001, 1000), ResourceLimit);
}

TEST_CASE("brute force agrees with a dense-sampling oracle on the same lattice") {
  const double step = 0.1, eps = 0.3;
  const ConvexSet k = ConvexSet::diamond(eps);
  std::vector<C> lattice;
  for (int i = -10; i <= 10; ++i)
    for (int j = -3; j <= 3; ++j) {
      const C z(i * step, j * step);
      if (std::abs(z.real()) + std::abs(z.imag()) / eps <= 1 + 1e-12) lattice.push_back(z);
    }
  const std::vector<C> verts{{1, 0}, {0, eps}, {-1, 0}, {0, -eps}};
  const auto bd = oracle::polygon(verts, 2000);
  double best = INFINITY;
  for (std::size_t a = 0; a < lattice.size(); ++a)
    for (std::size_t b = a; b < lattice.size(); ++b) {
      const auto [p, d] = oracle::sampled_norms({lattice[a], lattice[b]}, bd);
      best = std::min(best, d / p);
    }
  const MarkovEstimate e = brute_force_mn(k, 2, step);
  CHECK(e.value == doctest::Approx(best).epsilon(1e-4));
}

TEST_CASE("oracle dominance for n in {1, 2}") {
  const ConvexSet sets[] = {kDisk, kSeg, ConvexSet::diamond(0.3)};
  for (const ConvexSet& k : sets)
    for (int n : {1, 2}) {
      const MarkovEstimate bf = brute_force_mn(k, n, 0.05);
      const MarkovEstimate es = estimate_mn(k, n, 2000, 3);
      INFO(k.kind() << " n " << n);
      CHECK(es.value <= bf.value + 1e-6);
    }
}

TEST_CASE("affine equivariance") {
  const ConvexSet base = ConvexSet::diamond(0.3);
  const AffineMap t = AffineMap::make(std::polar(2.5, -0.4), {1, 3});
  const ConvexSet img = affine(base, t);
  for (int n : {2, 5}) {
    const MarkovEstimate a = estimate_mn(base, n, 1500, 9);
    const MarkovEstimate b = estimate_mn(img, n, 1500, 9);
    CHECK(b.value == doctest::Approx(a.value / 2.5).epsilon(1e-5));
    check_feasible(b, img, n);
  }
}

TEST_CASE("sandwich against published lower bounds") {
  const ConvexSet sets[] = {kDisk, kSeg, ConvexSet::diamond(0.2), ConvexSet::ellipse({1, 1}, 3, 0.5, 0.3)};
  for (const ConvexSet& k : sets)
    for (int n : {1, 3, 8}) {
      const MarkovEstimate e = estimate_mn(k, n, 400, 5);
      const BoundReport r = bound_report(k, n);
      CHECK(e.value >= r.two_sided_lower);
      CHECK(e.value >= r.lp_lower);
      CHECK(e.value >= r.revesz_lower);
      CHECK(e.value <= r.two_sided_upper);
    }
}

TEST_CASE("determinism") {
  const ConvexSet k = ConvexSet::diamond(0.3);
  SearchOptions serial;
  serial.parallel = false;
  const MarkovEstimate a = estimate_mn(k, 4, 800, 11);
  const MarkovEstimate b = estimate_mn(k, 4, 800, 11);
  const MarkovEstimate c = estimate_mn(k, 4, 800, 11, serial);
  for (const MarkovEstimate* x : {&b, &c}) {
    CHECK(x->value == a.value);
    CHECK(x->lower == a.lower);
    CHECK(x->roots == a.roots);
    CHECK(x->evaluations == a.evaluations);
  }
  CHECK(sample_ratio_floor(k, 5, 50, 4) == sample_ratio_floor(k, 5, 50, 4));
}

TEST_CASE("sample_ratio_floor respects published lower bounds") {
  CHECK(sample_ratio_floor(kSeg, 25, 1000, 1) > 5.0 / 6);
  CHECK(sample_ratio_floor(kDisk, 10, 1000, 2) >= 5.0 * (1 - 1e-6));
  const ConvexSet d2 = ConvexSet::diamond(0.2);
  const double w = min_width(d2);
  CHECK(sample_ratio_floor(d2, 50, 300, 3) >= std::max(0.0003 * w * 50 / 4, std::sqrt(50.0) / 40));
}

TEST_CASE("random_point stays in K and covers it") {
  std::mt19937_64 rng(8);
  const ConvexSet sets[] = {kDisk, kSeg, ConvexSet::diamond(0.1), ConvexSet::ellipse({2, 0}, 1, 0.2, 1.0)};
  for (const ConvexSet& k : sets) {
    double sx = 0;
    for (int i = 0; i < 4000; ++i) {
      const Complex z = random_point(k, rng);
      CHECK(contains(k, z, 1e-12));
      sx += z.real();
    }
    if (&k == &sets[0]) CHECK(std::abs(sx / 4000) < 0.05);
  }
  // Uniform along the segment: mean of x close to 0, spread close to 1/3.
  double m = 0, v = 0;
  for (int i = 0; i < 20000; ++i) {
    const double x = random_point(kSeg, rng).real();
    m += x;
    v += x * x;
  }
  CHECK(std::abs(m / 20000) < 0.02);
  CHECK(std::abs(v / 20000 - 1.0 / 3) < 0.02);
}
