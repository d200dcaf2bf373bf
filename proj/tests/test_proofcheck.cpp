#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/proofcheck.hpp"

using namespace turan;

namespace {

const CheckRecord* find(const ProofReport& r, std::string_view id) {
  for (const CheckRecord& c : r.records)
    if (c.check_id == id) return &c;
  return nullptr;
}

bool all_pass(const ProofReport& r) {
  for (const CheckRecord& c : r.records)
    if (!c.passed()) {
      MESSAGE(c.check_id << " failed: " << c.detail);
      return false;
    }
  return r.passed() && r.failures() == 0;
}

}  // namespace

TEST_CASE("t_star examples") {
  const TStar a = t_star(100, 0.1);
  CHECK(a.value == doctest::Approx(0.0003).epsilon(1e-12));
  CHECK_FALSE(a.interior);
  const TStar b = t_star(100, 0.05);
  CHECK(b.value == doctest::Approx(0.007575).epsilon(1e-12));
  CHECK(b.interior);
  for (int m : {100, 137, 1000})
    for (double w = 0; w < 3.0 / 7; w += 0.01) {
      const TStar t = t_star(m, w);
      CHECK(t.value <= 1.0 / m + 1e-18);
      CHECK(t.interior == (m - 1 < 1 / (3 * w * w)));
    }
  CHECK_THROWS_AS(t_star(99, 0.1), PreconditionError);
}

TEST_CASE("h_func examples") {
  const Interval h1 = h_func(Interval(1.0), Interval(0.4));
  CHECK(h1.contains(4 * 0.16 + 0.0256));
  CHECK(h1.mid() == doctest::Approx(0.6656).epsilon(1e-14));
  const Interval h2 = h_func(Interval(1 - 0.4), Interval(0.4));
  CHECK(h2.mid() == doctest::Approx(0.6976).epsilon(1e-14));
  const Interval h3 = h_func(Interval(0.5), Interval(0.2));
  CHECK(h3.mid() == doctest::Approx(0.3716).epsilon(1e-14));
  CHECK(h3.hi() <= 0.58);
  // Boxes enclose all corners.
  const Interval hb = h_func(Interval(0.3, 0.6), Interval(0.1, 0.2));
  for (double t : {0.3, 0.6})
    for (double w : {0.1, 0.2}) CHECK(hb.contains((1 + w * w - t) * (1 + w * w - t) + 4 * w * w * t));
}

TEST_CASE("g_funcs examples") {
  for (double w : {0.0, 0.05, 0.2, 0.4}) {
    const GPair g = g_funcs(Interval(2 * w * w), Interval(w), 100);
    CHECK(g.g1.contains(3 * w * w));
    // h(2w^2) = 1 - 2w^2 + 9w^4.
    const double h = 1 - 2 * w * w + 9 * w * w * w * w;
    CHECK(g.g.mid() == doctest::Approx(3 * w * w * std::pow(h, 99)).epsilon(1e-10));
  }
  CHECK(g_funcs(Interval(0.0), Interval(0.0), 100).g.hi() == 0.0);

  const double w = 0.05;
  const TStar ts = t_star(100, w);
  const GPair gs = g_funcs(Interval(ts.value), Interval(w), 100);
  CHECK(gs.g1.hi() < (1 + 3 * w * w) / 100);
  CHECK((1 + 3 * w * w) / 100 == doctest::Approx(0.010075).epsilon(1e-14));

  const GPair sp = g_funcs(Interval(0.5), Interval(0.2), 100);
  CHECK(sp.g.hi() <= sp.g1.hi());
  CHECK(std::log(sp.g1.mid()) == doctest::Approx(std::log(0.54) + 99 * std::log(0.58)).epsilon(1e-12));
  CHECK(sp.g1.hi() < 0.02);

  CHECK_THROWS_AS(g_funcs(Interval(0.5), Interval(0.2), 1), PreconditionError);
  CHECK_THROWS_AS(g_funcs(Interval(-0.1, 0.5), Interval(0.2), 10), PreconditionError);
  CHECK_THROWS_AS(g_funcs(Interval(1.5), Interval(0.2), 10), PreconditionError);
}

TEST_CASE("subcase 1") {
  const ProofReport all = verify_subcase1(Interval(0.0, 3.0 / 7 - 1e-9), 100);
  CHECK(all_pass(all));
  CHECK(find(all, "s1.g_le_3w2") != nullptr);
  const ProofReport pt = verify_subcase1(Interval(0.42), 100);
  CHECK(all_pass(pt));
  const CheckRecord* c = find(pt, "s1.5w2_le_45_49");
  REQUIRE(c != nullptr);
  CHECK(c->margin > 0);
  CHECK(c->method == CheckMethod::Interval);
  CHECK_THROWS_AS(verify_subcase1(Interval(0.45), 100), PreconditionError);
  CHECK_THROWS_AS(verify_subcase1(Interval(0.2), 99), PreconditionError);
  CHECK_THROWS_AS(verify_subcase1(Interval(0.0, 3.0 / 7), 100), PreconditionError);
}

TEST_CASE("subcase 2") {
  for (int m : {100, 200, 1000}) {
    const ProofReport r = verify_subcase2(Interval(0.0, 3.0 / 7 - 1e-9), m);
    CHECK(all_pass(r));
    CHECK(find(r, "s2.g_le_max") != nullptr);
  }
  CHECK_THROWS_AS(verify_subcase2(Interval(0.45), 100), PreconditionError);
}

TEST_CASE("subcase conclusion against a dense long double oracle") {
  // g(t) <= max{3w^2, 2/m} on [2w^2, 1].
  for (int m : {100, 200, 1000})
    for (double w = 0; w < 3.0 / 7; w += 0.0125) {
      const long double w2 = static_cast<long double>(w) * w;
      const long double cap = std::max(3 * w2, 2.0L / m);
      long double worst = 0;
      for (int i = 0; i <= 20000; ++i) {
        const long double t = 2 * w2 + (1 - 2 * w2) * i / 20000.0L;
        const long double h = (1 + w2 - t) * (1 + w2 - t) + 4 * w2 * t;
        worst = std::max(worst, (t + w2) * std::pow(h, static_cast<long double>(m - 1)));
      }
      CHECK(worst <= cap);
    }
}

TEST_CASE("m chain and constants") {
  for (int m : {100, 200, 1000}) CHECK(all_pass(verify_m_chain(m)));
  CHECK_THROWS_AS(verify_m_chain(50), PreconditionError);
  const ProofReport c = verify_constants();
  CHECK(all_pass(c));
  for (const char* id : {"c.alpha0_lt_7", "c.sqrt201_gt_14", "c.power_2_53", "c.case9_small_n", "c.case9_wide"})
    CHECK(find(c, id) != nullptr);
  CHECK(c.assumptions.size() == 2);

  const double a0 = 2 + 1 / (28 * std::sqrt(3.0));
  CHECK(2 * a0 * std::sqrt(3.0) == doctest::Approx(4 * std::sqrt(3.0) + 1.0 / 14).epsilon(1e-12));
  CHECK(2 * a0 * std::sqrt(3.0) > 6.9996);
  CHECK(2 * a0 * std::sqrt(3.0) < 7);
  CHECK(std::sqrt(201.0) > 14);
  CHECK(0.5 * std::sqrt(199.0) < 8);
}

TEST_CASE("claim 11 and theorem 1b on concrete sets") {
  const ConvexSet d2 = ConvexSet::diamond(0.2);
  const ProofReport c = verify_claim_11(d2, 100, 10000, 1);
  CHECK(all_pass(c));
  for (const char* id : {"c11.claim", "c11.strip", "c11.norm_floor", "c11.eq10", "c11.f_even", "c11.f_monotone_y", "c11.theorem_1a"}) {
    const CheckRecord* r = find(c, id);
    REQUIRE(r != nullptr);
  }
  CHECK(find(c, "c11.claim")->method == CheckMethod::Sampled);

  const ConvexSet el = normalize(ConvexSet::ellipse({0, 0}, 1, 0.1)).set;
  const ProofReport e = verify_claim_11(el, 150, 2000, 2);
  CHECK(all_pass(e));
  CHECK(find(e, "c11.claim")->margin > 0);

  CHECK_THROWS_AS(verify_claim_11(ConvexSet::disk({0, 0}, 1), 100, 100, 1), PreconditionError);
  CHECK_THROWS_AS(verify_claim_11(d2, 50, 100, 1), PreconditionError);

  const ProofReport b = verify_theorem_1b(d2, 100, 2000, 3);
  CHECK(all_pass(b));
  for (const char* id : {"t1b.eq14", "t1b.branch_a", "t1b.branch_b", "t1b.theorem_1b", "t1b.derivative_formula"})
    CHECK(find(b, id) != nullptr);
  CHECK_THROWS_AS(verify_theorem_1b(ConvexSet::disk({0, 0}, 1), 100, 100, 1), PreconditionError);
}

TEST_CASE("theorem 1a and 1b bounds with certified norms") {
  for (const ConvexSet& k : {ConvexSet::diamond(0.05), ConvexSet::diamond(0.2), normalize(ConvexSet::ellipse({0, 0}, 1, 0.1)).set}) {
    const double w = min_width(k);
    for (int m : {100, 150}) {
      const MarkovRatio a = markov_ratio(p_poly(m), k);
      CHECK(a.upper <= std::sqrt(3.0) * std::max(w * 2 * m, 2 * std::sqrt(2.0 * m)));
      const int n = 2 * m + 1;
      const MarkovRatio b = markov_ratio(big_p_poly(m), k);
      CHECK(b.upper <= 7 * std::max(w * n, 2 * std::sqrt(static_cast<double>(n))));
    }
  }
}

TEST_CASE("full default certificate") {
  const auto grid = default_w_grid();
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 3.0 / 7 - 1e-9);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  const auto ms = default_m_set();
  const auto sets = default_set_family();
  CHECK(sets.size() == 4);
  for (const ConvexSet& k : sets) CHECK(is_normalized(k));

  const ProofReport r = proof_certificate(grid, ms, sets);
  CHECK(all_pass(r));
  CHECK(r.records.size() > 1000);
  CHECK(std::is_sorted(r.records.begin(), r.records.end(),
                       [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; }));
  std::set<std::string> methods;
  for (const CheckRecord& c : r.records) methods.insert(std::string(to_string(c.method)));
  CHECK(methods.size() == 3);
  CHECK(find(r, "case9.q_ratio") != nullptr);
  CHECK(find(r, "s2.g_le_max") != nullptr);

  const ProofReport again = proof_certificate(grid, ms, sets);
  REQUIRE(again.records.size() == r.records.size());
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    CHECK(again.records[i].check_id == r.records[i].check_id);
    CHECK(again.records[i].margin == r.records[i].margin);
  }
}
