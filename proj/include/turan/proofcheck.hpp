#pragma once

// Ledger of every inequality step behind the upper bound
//   ||P'|| <= 7 max{w n, 2 sqrt(n)} ||P||   on a normalized set K1
// with P = (z - 1)^n, (z^2 - 1)^m or (z - 1)(z^2 - 1)^m.
//
// Three kinds of evidence are recorded:
//   certified  exact polynomial identities (checked on an integer grid that
//              determines the polynomial) and exact integer facts;
//   interval   inequalities proved for every parameter in a box by interval
//              arithmetic with outward rounding, monotonicity reduction and
//              bisection;
//   sampled    statements about polynomial norms on a concrete set, checked
//              at sample points with certified norm enclosures.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "turan/geometry.hpp"
#include "turan/interval.hpp"

namespace turan {

enum class CheckStatus { Pass, Fail };
enum class CheckMethod { Sampled, Interval, Certified };

std::string_view to_string(CheckStatus s);
std::string_view to_string(CheckMethod m);

struct CheckRecord {
  std::string check_id;
  std::vector<std::pair<std::string, double>> params;
  CheckStatus status = CheckStatus::Pass;
  double margin = 0.0;  // smallest slack seen; negative on failure
  CheckMethod method = CheckMethod::Interval;
  std::string detail;   // violating sub-box or sample on failure

  bool passed() const { return status == CheckStatus::Pass; }
};

struct ProofReport {
  std::vector<CheckRecord> records;
  std::vector<std::string> assumptions;

  bool passed() const;
  std::size_t failures() const;
  void append(ProofReport other);
  /// Stable sort by check_id.
  void sort();
};

/// h(t) = (1 + w^2 - t)^2 + 4 w^2 t.
Interval h_func(Interval t, Interval w);

struct GPair {
  Interval g;   // (t + w^2) h(t)^(m-1)
  Interval g1;  // (t + w^2) (1 + 2w^2 - t)^(m-1)
};

/// Requires m >= 2, t >= 0 and 1 + 2w^2 - t >= 0 on the box.
GPair g_funcs(Interval t, Interval w, int m);

struct TStar {
  double value = 0.0;     // (1 - (m - 3) w^2) / m
  bool interior = false;  // t* > 2 w^2, equivalently m - 1 < 1 / (3 w^2)
};

/// Throws PreconditionError for m < 100.
TStar t_star(int m, double w);

/// Subcase 1 (t in [1 - w, 1]) over all w in w_box. Throws PreconditionError
/// unless w_box lies in [0, 3/7) and m >= 100.
ProofReport verify_subcase1(Interval w_box, int m);

/// Subcase 2 (t in [2 w^2, 1 - w]) over all w in w_box; same preconditions.
ProofReport verify_subcase2(Interval w_box, int m);

/// Checks that depend on m only: exponent facts, derivative and branch
/// identities, and the final constant chain. Throws for m < 100.
ProofReport verify_m_chain(int m);

/// Absolute constants: alpha0, sqrt(201) > 14, 5 (45/49)^8 <= 2.53,
/// the small-degree and wide-set case constants.
ProofReport verify_constants();

/// Samples points of K1 and checks |p_m'(z)| / ||p_m|| <= sqrt(3) max{2mw, 2 sqrt(2m)}
/// with the supporting facts (strip bounds, norm floor, R(z) <= 2m|z|,
/// symmetry and monotonicity of f). Throws PreconditionError unless K1 is
/// normalized with w(K1) < 3/7 and m >= 100.
ProofReport verify_claim_11(const ConvexSet& k1, int m, std::size_t sample_count,
                            std::uint64_t seed);

/// The odd-degree step: ||p_m|| <= 2 ||P_m||, the alpha0 dichotomy at sample
/// points and the final ratio bound for P_m. Same preconditions.
ProofReport verify_theorem_1b(const ConvexSet& k1, int m, std::size_t sample_count,
                              std::uint64_t seed);

/// {0, 0.005, ..., 0.425, 3/7 - 1e-9}; consecutive entries bound the w boxes.
std::vector<double> default_w_grid();
std::vector<int> default_m_set();
/// Diamond(0.05), Diamond(0.2), the ellipse with b/a = 0.1 and a thin triangle,
/// all normalized.
std::vector<ConvexSet> default_set_family();

/// Everything above: constants, per-m chains, both subcases on every box
/// [w_grid[i], w_grid[i+1]], and the sampled checks on each set.
ProofReport proof_certificate(std::span<const double> w_grid, std::span<const int> m_set,
                              std::span<const ConvexSet> sets, std::size_t sample_count = 2000,
                              std::uint64_t seed = 1);

}  // namespace turan
