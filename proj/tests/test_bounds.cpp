#include <cmath>

#include "doctest.h"
#include "turan/bounds.hpp"
#include "turan/errors.hpp"
#include "turan/geometry.hpp"

using namespace turan;

TEST_CASE("bound_report examples") {
  const BoundReport a = bound_report(2.0, 0.2, 200);
  CHECK(a.two_sided_upper == doctest::Approx(280.0).epsilon(1e-14));
  CHECK(a.two_sided_lower == doctest::Approx(0.003).epsilon(1e-14));

  const BoundReport seg = bound_report(ConvexSet::segment({-1, 0}, {1, 0}), 100);
  CHECK(seg.d == 2.0);
  CHECK(seg.w == 0.0);
  CHECK(seg.lp_lower == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_FALSE(seg.revesz_applicable);
  CHECK_FALSE(seg.revesz_upper_applicable);
  CHECK_FALSE(seg.corollary1_applicable);
  CHECK(seg.revesz_lower == 0.0);
  CHECK(seg.revesz_upper == 0.0);
  CHECK(seg.gamma == 0.5);

  const BoundReport c = bound_report(2.0, 0.5, 17);
  CHECK(c.corollary1_threshold == 16.0);
  CHECK(c.corollary1_active);
  CHECK(c.corollary1_upper == doctest::Approx(59.5).epsilon(1e-14));
  CHECK_FALSE(bound_report(2.0, 0.5, 16).corollary1_active);

  // n0 with the natural logarithm: d / 16w = 10 gives 200 ln 10.
  const BoundReport r = bound_report(2.0, 2.0 / 160, 500);
  CHECK(r.n0 == doctest::Approx(200 * std::log(10.0)).epsilon(1e-12));
  CHECK(r.revesz_upper_applicable);
  CHECK_FALSE(bound_report(2.0, 2.0 / 160, 460).revesz_upper_applicable);
  CHECK(bound_report(2.0, 1.0, 1).n0 == 1.0);

  CHECK_THROWS_AS(bound_report(2.0, 0.2, 0), InvalidArgument);
  CHECK_THROWS_AS(bound_report(0.0, 0.0, 3), InvalidArgument);
  CHECK_THROWS_AS(bound_report(2.0, 3.0, 3), InvalidArgument);
  CHECK_THROWS_AS(bound_report(2.0, -0.1, 3), InvalidArgument);
}

TEST_CASE("sharpness_check examples") {
  const SharpnessReport a = sharpness_check(2.0, 0.001, 10);
  CHECK(a.threshold == doctest::Approx(std::pow(2 / 0.56, 2)).epsilon(1e-12));
  CHECK(a.regime);
  CHECK(a.upper == doctest::Approx(0.07).epsilon(1e-14));
  CHECK(a.lower == doctest::Approx(std::sqrt(10.0) / 40).epsilon(1e-14));
  CHECK(a.strict);

  const SharpnessReport b = sharpness_check(2.0, 0.3, 100);
  CHECK_FALSE(b.regime);
  CHECK(b.threshold == doctest::Approx(4 / (168.0 * 168.0)).epsilon(1e-12));

  // d = 560, w = 1: threshold 1 and both sides equal 1/11200 at n = 1.
  const SharpnessReport e = sharpness_check(560.0, 1.0, 1);
  CHECK(e.at_threshold);
  CHECK_FALSE(e.regime);
  CHECK(e.upper == doctest::Approx(e.lower).epsilon(1e-15));

  CHECK_THROWS_AS(sharpness_check(2.0, 0.0, 5), InvalidArgument);
}

TEST_CASE("sharpness regime implies the strict inequality") {
  for (double d : {0.5, 2.0, 37.0})
    for (double w : {1e-5, 1e-4, 1e-3, 3e-3})
      for (int n = 1; n < 5000; n += 7) {
        const SharpnessReport r = sharpness_check(d, w, n);
        if (r.regime) CHECK(r.strict);
        // Equivalent form: sqrt(n) < d / (560 w).
        CHECK(r.regime == (std::sqrt(static_cast<long double>(n)) < d / (560.0L * w)));
      }
}

TEST_CASE("exponent_class examples") {
  CHECK(exponent_class(std::pow(1000.0, -1.0 / 3), 1000) == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(exponent_class(0.0, 1000) == 0.5);
  CHECK(exponent_class(1.0, 1000) == 1.0);
  CHECK(exponent_class(0.01, 100) == 0.5);
  CHECK(exponent_class(0.5, 1) == 0.5);
  CHECK_THROWS_AS(exponent_class(1.5, 10), InvalidArgument);
}

TEST_CASE("diamond_width examples") {
  CHECK(diamond_width(0.0) == 0.0);
  CHECK(diamond_width(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(diamond_width(0.3) == doctest::Approx(0.5746958).epsilon(1e-7));
  const Complex sq[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(min_width(make_polygon(sq)) == doctest::Approx(diamond_width(1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(diamond_width(1.2), InvalidArgument);
}

TEST_CASE("grid invariants") {
  for (double d : {0.5, 2.0, 10.0})
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double w = d * i / 19.0;
        const int n = 1 + j * j * 3;
        const BoundReport r = bound_report(d, w, n);
        const long double a = static_cast<long double>(w) * n / (static_cast<long double>(d) * d);
        const long double b = std::sqrt(static_cast<long double>(n)) / d;
        const long double big = std::max(a, b);
        CHECK(r.two_sided_lower < r.two_sided_upper);
        CHECK(r.two_sided_lower <= std::max(r.revesz_lower, r.lp_lower) * (1 + 1e-12));
        CHECK(std::abs(r.two_sided_lower - 0.0003L * big) <= 1e-15L * big);
        CHECK(std::abs(r.two_sided_upper - 28.0L * big) <= 1e-14L * big);
        CHECK((a + b) / 2 <= big);
        CHECK(big <= a + b);
        CHECK(r.s == doctest::Approx(w / d));
        if (r.corollary1_active) CHECK(r.two_sided_upper == doctest::Approx(r.corollary1_upper).epsilon(1e-14));
        if (r.corollary2) CHECK(r.two_sided_upper == doctest::Approx(28 * std::sqrt(n) / d).epsilon(1e-14));
        CHECK(r.corollary2 == (w <= d / std::sqrt(n)));
        CHECK(r.gamma >= 0.5);
        CHECK(r.gamma <= 1.0);
      }
}

TEST_CASE("the k = sqrt(459) improvement chain") {
  CHECK(28 * std::sqrt(459.0) <= 600);
  for (double d : {1.0, 2.0, 5.0})
    for (double w : {0.01, 0.1, 0.5}) {
      const double t = d * d / (459 * w * w);
      const BoundReport r = bound_report(d, w, static_cast<int>(std::ceil(t)) + 1);
      CHECK(r.corollary1_threshold >= t);
      CHECK(28 * std::sqrt(459.0) * w * r.n / (d * d) <= 600 * w * r.n / (d * d));
    }
}

TEST_CASE("affine consistency") {
  const ConvexSet sets[] = {ConvexSet::diamond(0.3), ConvexSet::disk({1, 1}, 0.7),
                            ConvexSet::segment({0, 0}, {1, 2}), ConvexSet::ellipse({0, 0}, 2, 0.3, 0.4)};
  for (const ConvexSet& k : sets)
    for (double s : {0.01, 3.0, 250.0}) {
      const ConvexSet img = affine(k, AffineMap::make(std::polar(s, 1.1), {4, -2}));
      for (int n : {1, 17, 300}) {
        const BoundReport a = bound_report(k, n), b = bound_report(img, n);
        CHECK(b.lp_lower == doctest::Approx(a.lp_lower / s).epsilon(1e-12));
        CHECK(b.two_sided_lower == doctest::Approx(a.two_sided_lower / s).epsilon(1e-12));
        CHECK(b.two_sided_upper == doctest::Approx(a.two_sided_upper / s).epsilon(1e-12));
        CHECK(b.revesz_lower == doctest::Approx(a.revesz_lower / s).epsilon(1e-12));
        CHECK(b.revesz_upper == doctest::Approx(a.revesz_upper / s).epsilon(1e-12));
        CHECK(b.corollary1_upper == doctest::Approx(a.corollary1_upper / s).epsilon(1e-12));
        CHECK(b.s == doctest::Approx(a.s).epsilon(1e-12));
        CHECK(b.revesz_upper_applicable == a.revesz_upper_applicable);
      }
    }
}
