#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "turan/geometry.hpp"
#include "turan/kernels.hpp"

namespace turan {

/// Complex value stored as log-magnitude and phase. Products of many factors
/// stay representable long after the linear value would overflow.
struct LogValue {
  double log_magnitude = 0.0;  // -inf for an exact zero
  double phase = 0.0;          // in (-pi, pi]; meaningless when is_zero()

  bool is_zero() const;
  double magnitude() const;
  Complex value() const;
  friend LogValue operator*(const LogValue& a, const LogValue& b);
};

/// P(z) = lead * prod_j (z - r_j), exact degree = number of roots >= 1.
class RootPoly {
 public:
  /// Throws InvalidArgument when lead == 0, roots is empty, or a value is
  /// not finite.
  RootPoly(Complex lead, std::vector<Complex> roots);

  Complex lead() const { return lead_; }
  const std::vector<Complex>& roots() const { return roots_; }
  std::size_t degree() const { return roots_.size(); }

  /// Structure-of-arrays view of the roots for the kernels.
  kernels::ComplexView view() const { return {re_.data(), im_.data(), re_.size()}; }

  RootPoly scaled(Complex c) const;

 private:
  Complex lead_;
  std::vector<Complex> roots_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// P(z) = Q(t(z)): roots t^{-1}(r_j), lead * alpha^n. For z in K and
/// K1 = t(K): ||P||_K = ||Q||_K1 and ||P'||_K = |alpha| ||Q'||_K1.
RootPoly compose(const RootPoly& q, const AffineMap& t);

LogValue eval_log(const RootPoly& p, Complex z);

/// P'(z). Away from the roots (distance > switch_radius) uses
/// P'(z) = P(z) * sum_j 1/(z - r_j); closer in, the sum-of-products form
/// lead * sum_j prod_{k != j} (z - r_k) in scaled arithmetic. A negative
/// switch_radius selects 1e-6 times the spread of the roots (at least 1e-6).
LogValue eval_derivative_log(const RootPoly& p, Complex z, double switch_radius = -1.0);

/// The two branches of eval_derivative_log, exposed for cross-checking.
LogValue eval_derivative_log_quotient(const RootPoly& p, Complex z);
LogValue eval_derivative_log_products(const RootPoly& p, Complex z);

/// Certified enclosure of a sup-norm over K, log scale internally.
struct NormEstimate {
  double log_lower = 0.0;
  double log_upper = 0.0;
  Complex witness;        // boundary point attaining the lower value
  double mesh = 0.0;      // finest boundary piece used
  bool capped = false;    // sample cap hit before the tolerance was met
  std::size_t samples = 0;

  double lower() const;
  double upper() const;
};

struct NormOptions {
  double rel_tol = 1e-6;
  std::size_t sample_cap = kDefaultSampleCap;
};

/// ||P||_K. The sup is taken over the boundary of K (maximum modulus), or
/// over the segment itself for segment-like K. On return
/// upper / lower <= 1 + rel_tol unless `capped`.
NormEstimate sup_norm(const RootPoly& p, const ConvexSet& k, const NormOptions& opt = {});

/// ||P'||_K with the same contract.
NormEstimate sup_norm_derivative(const RootPoly& p, const ConvexSet& k,
                                 const NormOptions& opt = {});

/// Certified enclosure of ||P'||_K / ||P||_K.
struct MarkovRatio {
  double lower = 0.0;
  double upper = 0.0;
  NormEstimate poly;
  NormEstimate derivative;

  bool capped() const { return poly.capped || derivative.capped; }
  double width() const { return upper - lower; }
};

/// Throws PreconditionError when a root of P lies outside K (beyond
/// kGeomTol scaled by d(K)/2).
MarkovRatio markov_ratio(const RootPoly& p, const ConvexSet& k, const NormOptions& opt = {});

/// True when every root lies in K within kGeomTol * max(1, d(K)/2).
bool roots_in(const RootPoly& p, const ConvexSet& k);

}  // namespace turan
