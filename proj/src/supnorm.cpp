// Certified sup-norms of P and P' over a convex set by best-first refinement
// of the boundary.
//
// The boundary is covered by pieces. A straight piece is a segment [a, b] of
// the boundary; a curved piece is an arc of an ellipse, enclosed in the
// triangle spanned by its end points and the intersection v of the end
// tangents. By the maximum modulus principle the sup over the triangle is
// attained on its three edges, so an arc is bounded by three segment bounds.
// Values at v are used for upper bounds only.
//
// For a segment of length h with direction u, per-root sums from the kernels
// give
//   |P^(k)| <= B_k = prod dmax_j * (sum 1/dmax_j)^k            (crude)
//   log|P| <= max(log|P(a)|, log|P(b)|) + h^2/8 sum 1/dmin_j^2  (log-convexity)
//   |P^(k)(a + s u)| <= max(|P^(k)(a)|, |P^(k)(a) + h u P^(k+1)(a)|) + h^2/2 B_{k+2}
// and the best of these bounds the piece. All arithmetic is in log scale with
// the leading coefficient removed; it is added back at the end.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "turan/errors.hpp"
#include "turan/polyroot.hpp"

namespace turan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

double log_add(double x, double y) {
  if (x == -kInf) return y;
  if (y == -kInf) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

// log |X + c Y|
double log_abs_sum(const LogValue& x, Complex c, const LogValue& y) {
  const double cy = y.is_zero() || c == Complex(0.0, 0.0) ? -kInf : y.log_magnitude + std::log(std::abs(c));
  const double m = std::max(x.log_magnitude, cy);
  if (m == -kInf) return -kInf;
  Complex s = 0.0;
  if (!x.is_zero()) s += std::polar(std::exp(x.log_magnitude - m), x.phase);
  if (cy != -kInf) s += std::polar(std::exp(cy - m), y.phase + std::arg(c));
  const double a = std::abs(s);
  return a == 0.0 ? -kInf : m + std::log(a);
}

struct Eval {
  Complex z;
  LogValue p;    // P(z), lead 1
  LogValue d;    // P'(z), lead 1
  Complex s1;    // sum 1/(z - r_j)
  Complex s2;    // sum 1/(z - r_j)^2
  double pad_d = 0.0;
  bool near = false;
  bool on_set = false;
};

struct Piece {
  double bound;
  std::uint32_t a, b, v;  // v == kNone for straight pieces
  double ta, tb;
  double length;
  bool operator<(const Piece& o) const { return bound < o.bound; }
};

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

class Engine {
 public:
  Engine(const RootPoly& p, const ConvexSet& k, int order, const NormOptions& opt)
      : unit_(Complex(1.0, 0.0), p.roots()),
        order_(order),
        opt_(opt),
        kern_(kernels::active_kernels()),
        n_(static_cast<double>(p.degree())) {
    pad_ = 8.0 * n_ * kEps + 1e-15;
    switch_radius_ = 1e-6 * std::max(1.0, diameter(k));
    curved_ = !k.is_segment_like() && as_ellipse(k, ellipse_);
  }

  NormEstimate run(const ConvexSet& k) {
    seed(k);
    NormEstimate out;
    const double target = std::log1p(opt_.rel_tol);
    double upper = -kInf;
    while (true) {
      const double top = heap_.empty() ? -kInf : heap_.top().bound;
      upper = std::max(top, best_raw_) + pad_;
      if (upper - best_ <= target || heap_.empty()) break;
      if (evals_.size() + 3 > opt_.sample_cap) {
        out.capped = true;
        break;
      }
      const Piece pc = heap_.top();
      heap_.pop();
      split(pc);
    }
    out.log_lower = best_;
    out.log_upper = std::max(upper, best_);
    out.witness = witness_;
    out.mesh = mesh_;
    out.samples = evals_.size();
    return out;
  }

 private:
  double value(const Eval& e) const { return order_ == 0 ? e.p.log_magnitude : e.d.log_magnitude; }
  double pad_of(const Eval& e) const { return order_ == 0 ? pad_ : e.pad_d; }

  std::uint32_t evaluate(Complex z, bool on_set) {
    kernels::PointSums s;
    kern_.point_sums(unit_.view(), z.real(), z.imag(), s);
    Eval e;
    e.z = z;
    e.on_set = on_set;
    const Complex prod(s.prod_re, s.prod_im);
    if (prod == Complex(0.0, 0.0)) {
      e.p = LogValue{-kInf, 0.0};
    } else {
      e.p = LogValue{std::log(std::abs(prod)) + static_cast<double>(s.prod_exp2) * std::numbers::ln2,
                     std::arg(prod)};
    }
    const double dist = std::sqrt(s.min_dist2);
    e.near = dist <= switch_radius_;
    if (e.near) {
      e.d = eval_derivative_log_products(unit_, z);
      e.pad_d = pad_ + 16.0 * n_ * kEps;
    } else {
      e.s1 = Complex(s.s1_re, s.s1_im);
      e.s2 = Complex(s.s2_re, s.s2_im);
      const double a = std::abs(e.s1);
      e.d = a == 0.0 ? LogValue{-kInf, 0.0}
                     : e.p * LogValue{std::log(a), std::arg(e.s1)};
      // Cancellation in sum 1/(z - r_j) costs up to eps * sum 1/|z - r_j| absolutely.
      e.pad_d = a == 0.0 ? kInf : pad_ + 4.0 * kEps * n_ / (dist * a);
    }
    if (on_set) {
      const double v = value(e);
      const double pad = pad_of(e);
      if (v != -kInf && v - pad > best_) {
        best_ = v - pad;
        witness_ = z;
      }
      best_raw_ = std::max(best_raw_, v);
    }
    evals_.push_back(e);
    return static_cast<std::uint32_t>(evals_.size() - 1);
  }

  // Taylor bound started at endpoint e towards direction dir over length h.
  double taylor(const Eval& e, Complex step, double log_b) const {
    if (order_ == 0) {
      const double lin = log_abs_sum(e.p, step, e.d);
      return log_add(std::max(e.p.log_magnitude, lin), log_b);
    }
    if (e.near) return kInf;
    const Complex q = e.s1 + step * (e.s1 * e.s1 - e.s2);
    const double lq = std::abs(q) == 0.0 ? -kInf : e.p.log_magnitude + std::log(std::abs(q));
    return log_add(std::max(e.d.log_magnitude, lq), log_b);
  }

  double segment_bound(const Eval& a, const Eval& b) const {
    const Complex diff = b.z - a.z;
    const double h = std::abs(diff);
    if (h == 0.0) return std::max(value(a), value(b));
    kernels::SegmentSums ss;
    kern_.segment_sums(unit_.view(), a.z.real(), a.z.imag(), b.z.real(), b.z.imag(), ss);
    const double log_prod = std::log(ss.dmax_mant) + static_cast<double>(ss.dmax_exp2) * std::numbers::ln2;
    const double log_sum = std::log(ss.inv_dmax);
    auto log_bk = [&](int k) {
      return static_cast<double>(k) > n_ ? -kInf : log_prod + k * log_sum;
    };
    double best = log_bk(order_);
    if (order_ == 0 && std::isfinite(ss.inv_dmin2)) {
      const double top = std::max(a.p.log_magnitude, b.p.log_magnitude);
      if (top != -kInf) best = std::min(best, top + h * h / 8.0 * ss.inv_dmin2);
    }
    const double log_rem = 2.0 * std::log(h) - std::numbers::ln2 + log_bk(order_ + 2);
    best = std::min(best, taylor(a, diff, log_rem));
    best = std::min(best, taylor(b, -diff, log_rem));
    return best;
  }

  void push_line(std::uint32_t a, std::uint32_t b) {
    const double len = std::abs(evals_[b].z - evals_[a].z);
    heap_.push(Piece{segment_bound(evals_[a], evals_[b]), a, b, kNone, 0.0, 0.0, len});
    mesh_ = std::min(mesh_, len);
  }

  void push_arc(std::uint32_t a, std::uint32_t b, double ta, double tb) {
    const std::uint32_t v = evaluate(ellipse_.tangent_corner(ta, tb), false);
    const Eval& ea = evals_[a];
    const Eval& eb = evals_[b];
    const Eval& ev = evals_[v];
    const double bound = std::max({segment_bound(ea, ev), segment_bound(ev, eb), segment_bound(ea, eb)});
    const double len = std::abs(eb.z - ea.z);
    heap_.push(Piece{bound, a, b, v, ta, tb, len});
    mesh_ = std::min(mesh_, len);
  }

  void seed(const ConvexSet& k) {
    const std::size_t n0 = std::clamp<std::size_t>(8 * unit_.degree(), 64, 4096);
    if (k.is_segment_like()) {
      const auto [p, q] = k.segment_endpoints();
      line_chain(p, q, n0);
      return;
    }
    if (curved_) {
      const std::size_t m = std::max<std::size_t>(n0, 16);
      const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
      const std::uint32_t first = evaluate(ellipse_.point(0.0), true);
      std::uint32_t prev = first;
      for (std::size_t i = 1; i <= m; ++i) {
        const double t0 = step * static_cast<double>(i - 1);
        const double t1 = step * static_cast<double>(i);
        const std::uint32_t cur = i == m ? first : evaluate(ellipse_.point(t1), true);
        push_arc(prev, cur, t0, t1);
        prev = cur;
      }
      return;
    }
    const Polygon poly = k.as_polygon();
    const auto& vs = poly.vertices;
    double perimeter = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) perimeter += std::abs(vs[(i + 1) % vs.size()] - vs[i]);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Complex a = vs[i], b = vs[(i + 1) % vs.size()];
      const auto c = static_cast<std::size_t>(
          std::ceil(static_cast<double>(n0) * std::abs(b - a) / perimeter));
      line_chain(a, b, std::max<std::size_t>(c, 1));
    }
  }

  void line_chain(Complex a, Complex b, std::size_t count) {
    std::uint32_t prev = evaluate(a, true);
    for (std::size_t i = 1; i <= count; ++i) {
      const Complex z = i == count ? b : a + (b - a) * (static_cast<double>(i) / static_cast<double>(count));
      const std::uint32_t cur = evaluate(z, true);
      push_line(prev, cur);
      prev = cur;
    }
  }

  void split(const Piece& pc) {
    if (pc.v == kNone) {
      const std::uint32_t m = evaluate(0.5 * (evals_[pc.a].z + evals_[pc.b].z), true);
      push_line(pc.a, m);
      push_line(m, pc.b);
      return;
    }
    const double tm = 0.5 * (pc.ta + pc.tb);
    const std::uint32_t m = evaluate(ellipse_.point(tm), true);
    push_arc(pc.a, m, pc.ta, tm);
    push_arc(m, pc.b, tm, pc.tb);
  }

  RootPoly unit_;
  int order_;
  NormOptions opt_;
  const kernels::KernelTable& kern_;
  double n_;
  double pad_ = 0.0;
  double switch_radius_ = 0.0;
  bool curved_ = false;
  Ellipse ellipse_;
  std::vector<Eval> evals_;
  std::priority_queue<Piece> heap_;
  double best_ = -kInf;
  double best_raw_ = -kInf;
  Complex witness_;
  double mesh_ = kInf;
};

NormEstimate certify(const RootPoly& p, const ConvexSet& k, int order, const NormOptions& opt) {
  if (!(opt.rel_tol > 0.0)) throw InvalidArgument("sup_norm: rel_tol must be positive");
  if (opt.sample_cap < 16) throw InvalidArgument("sup_norm: sample_cap too small");
  Engine engine(p, k, order, opt);
  NormEstimate out = engine.run(k);
  const double ll = std::log(std::abs(p.lead()));
  out.log_lower += ll;
  out.log_upper += ll;
  return out;
}

}  // namespace

NormEstimate sup_norm(const RootPoly& p, const ConvexSet& k, const NormOptions& opt) {
  return certify(p, k, 0, opt);
}

NormEstimate sup_norm_derivative(const RootPoly& p, const ConvexSet& k, const NormOptions& opt) {
  return certify(p, k, 1, opt);
}

}  // namespace turan
