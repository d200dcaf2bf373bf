#include "turan/polyroot.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "scaled_complex.hpp"
#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_phase(double phi) { return std::remainder(phi, 2.0 * std::numbers::pi); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double default_switch_radius(const RootPoly& p) {
  Complex centroid = 0.0;
  for (const Complex& r : p.roots()) centroid += r;
  centroid /= static_cast<double>(p.degree());
  double spread = 0.0;
  for (const Complex& r : p.roots()) spread = std::max(spread, 2.0 * std::abs(r - centroid));
  return 1e-6 * std::max(1.0, spread);
}

LogValue from_scaled(const detail::ScaledComplex& s, Complex lead) {
  if (s.is_zero()) return LogValue{-kInf, 0.0};
  return LogValue{s.log_abs() + std::log(std::abs(lead)), wrap_phase(s.arg() + std::arg(lead))};
}

}  // namespace

// ---------------------------------------------------------------------------
// LogValue

bool LogValue::is_zero() const { return log_magnitude == -kInf; }

double LogValue::magnitude() const { return std::exp(log_magnitude); }

Complex LogValue::value() const {
  if (is_zero()) return 0.0;
  return std::polar(std::exp(log_magnitude), phase);
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.is_zero() || b.is_zero()) return LogValue{-kInf, 0.0};
  return LogValue{a.log_magnitude + b.log_magnitude, wrap_phase(a.phase + b.phase)};
}

// ---------------------------------------------------------------------------
// RootPoly

RootPoly::RootPoly(Complex lead, std::vector<Complex> roots)
    : lead_(lead), roots_(std::move(roots)) {
  if (lead_ == Complex(0.0, 0.0) || !finite(lead_))
    throw InvalidArgument("RootPoly: leading coefficient must be finite and nonzero");
  if (roots_.empty()) throw InvalidArgument("RootPoly: degree must be at least 1");
  re_.reserve(roots_.size());
  im_.reserve(roots_.size());
  for (const Complex& r : roots_) {
    if (!finite(r)) throw InvalidArgument("RootPoly: non-finite root");
    re_.push_back(r.real());
    im_.push_back(r.imag());
  }
}

RootPoly RootPoly::scaled(Complex c) const { return RootPoly(lead_ * c, roots_); }

RootPoly compose(const RootPoly& q, const AffineMap& t) {
  const AffineMap inv = t.inverse();
  std::vector<Complex> roots;
  roots.reserve(q.degree());
  for (const Complex& r : q.roots()) roots.push_back(inv(r));
  const Complex lead = q.lead() * std::pow(t.alpha, static_cast<int>(q.degree()));
  return RootPoly(lead, std::move(roots));
}

// ---------------------------------------------------------------------------
// Evaluation

LogValue eval_log(const RootPoly& p, Complex z) {
  kernels::PointSums s;
  kernels::active_kernels().point_sums(p.view(), z.real(), z.imag(), s);
  return from_scaled(detail::ScaledComplex{Complex(s.prod_re, s.prod_im), s.prod_exp2},
                     p.lead());
}

LogValue eval_derivative_log_quotient(const RootPoly& p, Complex z) {
  kernels::PointSums s;
  kernels::active_kernels().point_sums(p.view(), z.real(), z.imag(), s);
  const detail::ScaledComplex prod{Complex(s.prod_re, s.prod_im), s.prod_exp2};
  const Complex s1(s.s1_re, s.s1_im);
  return from_scaled(prod * detail::ScaledComplex::from(s1), p.lead());
}

LogValue eval_derivative_log_products(const RootPoly& p, Complex z) {
  const auto& roots = p.roots();
  const std::size_t n = roots.size();
  std::vector<detail::ScaledComplex> suffix(n + 1);
  suffix[n] = detail::ScaledComplex{};
  for (std::size_t j = n; j-- > 0;)
    suffix[j] = suffix[j + 1] * detail::ScaledComplex::from(z - roots[j]);
  detail::ScaledComplex prefix{};
  detail::ScaledComplex sum{Complex(0.0, 0.0), 0};
  for (std::size_t j = 0; j < n; ++j) {
    sum = sum + prefix * suffix[j + 1];
    prefix = prefix * detail::ScaledComplex::from(z - roots[j]);
  }
  return from_scaled(sum, p.lead());
}

LogValue eval_derivative_log(const RootPoly& p, Complex z, double switch_radius) {
  if (switch_radius < 0.0) switch_radius = default_switch_radius(p);
  kernels::PointSums s;
  kernels::active_kernels().point_sums(p.view(), z.real(), z.imag(), s);
  if (std::sqrt(s.min_dist2) <= switch_radius) return eval_derivative_log_products(p, z);
  const detail::ScaledComplex prod{Complex(s.prod_re, s.prod_im), s.prod_exp2};
  return from_scaled(prod * detail::ScaledComplex::from(Complex(s.s1_re, s.s1_im)), p.lead());
}

double NormEstimate::lower() const { return std::exp(log_lower); }
double NormEstimate::upper() const { return std::exp(log_upper); }

bool roots_in(const RootPoly& p, const ConvexSet& k) {
  const double tol = kGeomTol * std::max(1.0, 0.5 * diameter(k));
  for (const Complex& r : p.roots())
    if (!contains(k, r, tol)) return false;
  return true;
}

MarkovRatio markov_ratio(const RootPoly& p, const ConvexSet& k, const NormOptions& opt) {
  if (!roots_in(p, k)) throw PreconditionError("markov_ratio: a root lies outside K");
  MarkovRatio out;
  out.poly = sup_norm(p, k, opt);
  out.derivative = sup_norm_derivative(p, k, opt);
  // The leading coefficient enters both norms identically; subtracting logs
  // makes the ratio independent of it up to one rounding.
  out.lower = std::exp(out.derivative.log_lower - out.poly.log_upper);
  out.upper = std::exp(out.derivative.log_upper - out.poly.log_lower);
  return out;
}

}  // namespace turan
