#include "turan/proofcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <type_traits>

#include "turan/constructions.hpp"
#include "turan/errors.hpp"
#include "turan/polyroot.hpp"

namespace turan {

std::string to_string(const Interval& x) {
  std::ostringstream os;
  os.precision(17);
  os << '[' << x.lo() << ", " << x.hi() << ']';
  return os.str();
}

std::string_view to_string(CheckStatus s) { return s == CheckStatus::Pass ? "pass" : "fail"; }

std::string_view to_string(CheckMethod m) {
  switch (m) {
    case CheckMethod::Sampled: return "sampled";
    case CheckMethod::Interval: return "interval";
    case CheckMethod::Certified: return "certified";
  }
  return "?";
}

bool ProofReport::passed() const { return failures() == 0; }

std::size_t ProofReport::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const CheckRecord& r) { return !r.passed(); }));
}

void ProofReport::append(ProofReport other) {
  for (auto& r : other.records) records.push_back(std::move(r));
  for (auto& a : other.assumptions)
    if (std::find(assumptions.begin(), assumptions.end(), a) == assumptions.end())
      assumptions.push_back(std::move(a));
}

void ProofReport::sort() {
  std::stable_sort(records.begin(), records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
}

namespace {

using Params = std::vector<std::pair<std::string, double>>;

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval max_of(Interval a, Interval b) { return max(a, b); }

// Where neither argument dominates, the gradient of the max lies in the hull
// of both gradients.
template <int N>
IntervalDual<N> max_of(const IntervalDual<N>& a, const IntervalDual<N>& b) {
  if (a.v.lo() >= b.v.hi()) return a;
  if (b.v.lo() >= a.v.hi()) return b;
  IntervalDual<N> r(max(a.v, b.v));
  for (int i = 0; i < N; ++i) r.d[i] = hull(a.d[i], b.d[i]);
  return r;
}

CheckRecord record(std::string id, Params params, bool ok, double margin, CheckMethod method,
                   std::string detail = {}) {
  return CheckRecord{std::move(id), std::move(params), ok ? CheckStatus::Pass : CheckStatus::Fail,
                     margin, method, std::move(detail)};
}

// ---------------------------------------------------------------------------
// Box certifier: proves f <= 0 (or f < 0) on a box.

template <int N>
using Box = std::array<Interval, N>;

template <int N>
std::string box_string(const Box<N>& b) {
  std::string s;
  for (int i = 0; i < N; ++i) s += (i ? " x " : "") + to_string(b[i]);
  return s;
}

template <int N, class F>
std::optional<Interval> plain(const F& f, const Box<N>& box) {
  try {
    return f(box);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Natural enclosure tightened by the monotonicity test: where a partial
// derivative has constant sign the variable is pinned to the endpoint that
// maximizes (or minimizes) f.
template <int N, class F>
std::optional<double> upper_bound(const F& f, const Box<N>& box) {
  const auto base = plain<N>(f, box);
  double hi = base ? base->hi() : kInf;
  try {
    std::array<IntervalDual<N>, N> xs;
    for (int i = 0; i < N; ++i) xs[i] = IntervalDual<N>::variable(box[i], i);
    const IntervalDual<N> r = f(xs);
    Box<N> pinned = box;
    bool any = false;
    for (int i = 0; i < N; ++i) {
      if (r.d[i].lo() >= 0.0) {
        pinned[i] = Interval(box[i].hi());
        any = true;
      } else if (r.d[i].hi() <= 0.0) {
        pinned[i] = Interval(box[i].lo());
        any = true;
      }
    }
    if (any) {
      if (const auto p = plain<N>(f, pinned)) hi = std::min(hi, p->hi());
    }
  } catch (const Error&) {
  }
  if (hi == kInf && !base) return std::nullopt;
  return hi;
}

struct Certificate {
  bool ok = true;
  double margin = kInf;
  std::size_t boxes = 0;
  std::string detail;
};

template <int N, class F>
Certificate certify_nonpositive(const F& f, const Box<N>& box, bool strict, int max_depth = 48,
                                std::size_t max_boxes = 1u << 20) {
  Certificate c;
  std::vector<std::pair<Box<N>, int>> stack{{box, 0}};
  while (!stack.empty()) {
    auto [b, depth] = stack.back();
    stack.pop_back();
    ++c.boxes;
    const auto hi = upper_bound<N>(f, b);
    const bool good = hi && (strict ? *hi < 0.0 : *hi <= 0.0);
    if (good) {
      c.margin = std::min(c.margin, -*hi);
      continue;
    }
    int dim = 0;
    for (int i = 1; i < N; ++i)
      if (b[i].width() > b[dim].width()) dim = i;
    const double mid = b[dim].mid();
    const bool splittable = b[dim].lo() < mid && mid < b[dim].hi();
    if (depth >= max_depth || c.boxes >= max_boxes || !splittable) {
      c.ok = false;
      c.margin = std::min(c.margin, hi ? -*hi : -kInf);
      if (c.detail.empty()) c.detail = "violating box " + box_string<N>(b);
      continue;
    }
    Box<N> left = b, right = b;
    left[dim] = Interval(b[dim].lo(), mid);
    right[dim] = Interval(mid, b[dim].hi());
    stack.emplace_back(right, depth + 1);
    stack.emplace_back(left, depth + 1);
  }
  if (c.margin == kInf) c.margin = 0.0;
  return c;
}

template <class F>
CheckRecord interval_check_1d(std::string id, Params params, const F& f, Interval w, bool strict) {
  const Certificate c = certify_nonpositive<1>(f, Box<1>{w}, strict);
  params.emplace_back("boxes", static_cast<double>(c.boxes));
  return record(std::move(id), std::move(params), c.ok, c.margin, CheckMethod::Interval, c.detail);
}

template <class F>
CheckRecord interval_check_2d(std::string id, Params params, const F& f, Box<2> box, bool strict,
                              int max_depth = 48) {
  const Certificate c = certify_nonpositive<2>(f, box, strict, max_depth);
  params.emplace_back("boxes", static_cast<double>(c.boxes));
  return record(std::move(id), std::move(params), c.ok, c.margin, CheckMethod::Interval, c.detail);
}

// Constant (parameter-free) strict or non-strict inequality x <= 0.
CheckRecord constant_check(std::string id, Params params, Interval x, bool strict) {
  const bool ok = strict ? x.hi() < 0.0 : x.hi() <= 0.0;
  return record(std::move(id), std::move(params), ok, -x.hi(), CheckMethod::Interval,
                ok ? std::string{} : "enclosure " + to_string(x));
}

// A polynomial of degree <= deg in each of two variables that vanishes on the
// grid {0..deg}^2 is identically zero. Integer arguments keep every
// intermediate exact in double precision for the small degrees used here.
template <class F>
CheckRecord identity_check(std::string id, Params params, const F& diff, int deg) {
  for (int a = 0; a <= deg; ++a)
    for (int b = 0; b <= deg; ++b) {
      const double v = diff(static_cast<double>(a), static_cast<double>(b));
      if (v != 0.0) {
        std::ostringstream os;
        os << "nonzero difference " << v << " at (" << a << ", " << b << ")";
        return record(std::move(id), std::move(params), false, -std::abs(v), CheckMethod::Certified,
                      os.str());
      }
    }
  return record(std::move(id), std::move(params), true, 0.0, CheckMethod::Certified);
}

template <class T>
T h_expr(const T& t, const T& w) {
  const T w2 = sqr(w);
  return sqr(T(1.0) + w2 - t) + T(4.0) * w2 * t;
}

double h_exact(double t, double w) {
  const double w2 = w * w;
  return (1.0 + w2 - t) * (1.0 + w2 - t) + 4.0 * w2 * t;
}

Interval three_sevenths() { return Interval::ratio(3.0, 7.0); }

void check_box(Interval w_box, int m) {
  if (m < 100) throw PreconditionError("proof check: m must be >= 100");
  if (w_box.lo() < 0.0 || !(w_box.hi() < three_sevenths().lo()))
    throw PreconditionError("proof check: w box must lie in [0, 3/7)");
}

Params box_params(Interval w, int m) { return {{"w_lo", w.lo()}, {"w_hi", w.hi()}, {"m", m}}; }

}  // namespace

// ---------------------------------------------------------------------------

Interval h_func(Interval t, Interval w) { return h_expr(t, w); }

GPair g_funcs(Interval t, Interval w, int m) {
  if (m < 2) throw PreconditionError("g_funcs: m must be >= 2");
  if (t.lo() < 0.0) throw PreconditionError("g_funcs: t must be nonnegative");
  const Interval w2 = sqr(w);
  const Interval u = Interval(1.0) + Interval(2.0) * w2 - t;
  if (u.lo() < 0.0) throw PreconditionError("g_funcs: 1 + 2w^2 - t must be nonnegative");
  const Interval lead = t + w2;
  const double k = static_cast<double>(m - 1);
  return GPair{lead * pow(h_func(t, w), k), lead * pow(u, k)};
}

TStar t_star(int m, double w) {
  if (m < 100) throw PreconditionError("t_star: m must be >= 100");
  if (!(w >= 0.0)) throw InvalidArgument("t_star: w must be nonnegative");
  const double mm = static_cast<double>(m);
  const double v = (1.0 - (mm - 3.0) * w * w) / mm;
  // m (t* - 2 w^2) = 1 - 3 (m - 1) w^2, so the branch is decided without
  // the rounding of t*.
  return TStar{v, 1.0 - 3.0 * (mm - 1.0) * w * w > 0.0};
}

ProofReport verify_subcase1(Interval w_box, int m) {
  check_box(w_box, m);
  ProofReport rep;
  const Params p = box_params(w_box, m);
  const double mm = static_cast<double>(m);

  // h(1) <= h(1 - w) <= 5 w^2 through h(1 - w) - h(1) = w^2 (1 - 2w) and
  // 5 w^2 - h(1 - w) = w^3 (2 - w); h is a convex parabola in t.
  rep.records.push_back(interval_check_1d(
      "s1.h1_le_h1mw", p, [](const auto& x) { return -(sqr(x[0]) * (1.0 - 2.0 * x[0])); }, w_box, false));
  rep.records.push_back(interval_check_1d(
      "s1.h1mw_le_5w2", p, [](const auto& x) { return -(sqr(x[0]) * x[0] * (2.0 - x[0])); }, w_box, false));
  rep.records.push_back(interval_check_1d(
      "s1.5w2_le_45_49", p,
      [](const auto& x) { return 5.0 * sqr(x[0]) - Interval::ratio(45.0, 49.0); }, w_box, false));
  rep.records.push_back(interval_check_1d(
      "s1.t_plus_w2", p,
      [](const auto& x) { return sqr(x[0]) - Interval::ratio(9.0, 49.0); }, w_box, false));

  // Direct bound g(t) <= 3 w^2 on t = 1 - lambda w, lambda in [0, 1], using
  // h(1 - lambda w) = w^2 ((w + lambda)^2 + 4 (1 - lambda w)).
  auto g_scaled = [mm](const auto& x) {
    const auto& lam = x[0];
    const auto& w = x[1];
    const auto hn = sqr(w + lam) + 4.0 * (1.0 - lam * w);
    return log(1.0 - lam * w + sqr(w)) + (2.0 * (mm - 2.0)) * log(w) + (mm - 1.0) * log(hn) -
           log(Interval(3.0));
  };
  rep.records.push_back(interval_check_2d("s1.g_le_3w2", p, g_scaled, Box<2>{Interval(0.0, 1.0), w_box}, false));
  return rep;
}

ProofReport verify_subcase2(Interval w_box, int m) {
  check_box(w_box, m);
  ProofReport rep;
  const Params p = box_params(w_box, m);
  const double mm = static_cast<double>(m);

  rep.records.push_back(interval_check_1d(
      "s2.nonempty", p, [](const auto& x) { return 2.0 * sqr(x[0]) - (1.0 - x[0]); }, w_box, true));
  // Convexity of h(t) + t reduces the bound h(t) <= 1 + 2w^2 - t to the end
  // points: 1 + 2w^2 - (h(2w^2) + 2w^2) = w^2 (2 - 9w^2) and
  // 1 + 2w^2 - (h(1-w) + 1 - w) = w ((1 - w)^3 - w^2).
  rep.records.push_back(interval_check_1d(
      "s2.left_endpoint", p, [](const auto& x) { return -(sqr(x[0]) * (2.0 - 9.0 * sqr(x[0]))); }, w_box,
      false));
  rep.records.push_back(interval_check_1d(
      "s2.right_endpoint", p,
      [](const auto& x) {
        const auto v = 1.0 - x[0];
        return sqr(x[0]) - sqr(v) * v;
      },
      w_box, true));
  // u(t) = 1 + 2w^2 - t is decreasing, u(1 - w) = w + 2w^2 >= 0.
  rep.records.push_back(interval_check_1d(
      "s2.u_nonnegative", p, [](const auto& x) { return -(x[0] + 2.0 * sqr(x[0])); }, w_box, false));
  rep.records.push_back(interval_check_1d(
      "s2.tstar_le_inv_m", p, [mm](const auto& x) { return -((mm - 3.0) * sqr(x[0])); }, w_box, false));
  rep.records.push_back(interval_check_1d(
      "s2.tstar_lt_1mw", p, [mm](const auto& x) { return Interval::ratio(1.0, mm) - (1.0 - x[0]); }, w_box,
      true));

  // Branch on the sign of m (t* - 2w^2) = 1 - 3 (m - 1) w^2.
  const Interval q = Interval(1.0) - Interval(3.0 * (mm - 1.0)) * sqr(w_box);
  Params pb = p;
  pb.emplace_back("branch", q.lo() > 0.0 ? 1.0 : q.hi() <= 0.0 ? -1.0 : 0.0);
  if (q.lo() <= 0.0) {
    // g1 decreasing on [2w^2, 1 - w]; g1(2w^2) = 3w^2 (u(2w^2) = 1 exactly).
    rep.records.push_back(identity_check(
        "s2.monotone_branch", pb, [](double, double s) { return (1.0 + 2.0 * s - 2.0 * s) - 1.0; }, 2));
  }
  if (q.hi() > 0.0) {
    // 0 < u(t*) < 1 so g1(t*) < t* + w^2 = (1 + 3w^2)/m < 2/m.
    rep.records.push_back(interval_check_1d(
        "s2.interior_u_positive", pb,
        [mm](const auto& x) { return Interval::ratio(1.0, mm) - (1.0 + 2.0 * sqr(x[0])); }, w_box, true));
    rep.records.push_back(interval_check_1d(
        "s2.interior_bound", pb, [](const auto& x) { return (1.0 + 3.0 * sqr(x[0])) - 2.0; }, w_box, true));
  }

  // Sampled form of h(t) <= 1 + 2w^2 - t on the box.
  {
    double margin = kInf;
    std::string detail;
    for (int i = 0; i <= 40; ++i) {
      const double w = w_box.lo() + (w_box.hi() - w_box.lo()) * i / 40.0;
      const double a = 2.0 * w * w, b = 1.0 - w;
      for (int j = 0; j <= 200; ++j) {
        const double t = a + (b - a) * j / 200.0;
        const double slack = (1.0 + 2.0 * w * w - t) - h_exact(t, w);
        const double tol = 1e-15 * (1.0 + std::abs(t));
        if (slack + tol < margin) margin = slack + tol;
        if (slack < -tol && detail.empty()) detail = "w=" + std::to_string(w) + " t=" + std::to_string(t);
      }
    }
    rep.records.push_back(record("s2.eq13_sampled", p, detail.empty(), margin, CheckMethod::Sampled, detail));
  }

  // Direct bound g(t) <= max{3w^2, 2/m} on t = 2w^2 + mu (1 - w - 2w^2).
  auto g_direct = [mm](const auto& x) {
    const auto& mu = x[0];
    const auto& w = x[1];
    const auto w2 = sqr(w);
    const auto t = 2.0 * w2 + mu * (1.0 - w - 2.0 * w2);
    using T = std::decay_t<decltype(t)>;
    return log(t + w2) + (mm - 1.0) * log(h_expr<T>(t, w)) -
           log(max_of(3.0 * w2, T(Interval::ratio(2.0, mm))));
  };
  rep.records.push_back(interval_check_2d("s2.g_le_max", p, g_direct, Box<2>{Interval(0.0, 1.0), w_box}, false));
  return rep;
}


ProofReport verify_m_chain(int m) {
  if (m < 100) throw PreconditionError("verify_m_chain: m must be >= 100");
  ProofReport rep;
  const double mm = static_cast<double>(m);
  const Params p{{"m", mm}};

  rep.records.push_back(record("m.exponent_ge_9", p, m - 1 >= 9, m - 1 - 9, CheckMethod::Certified));
  // g1'(t) = u^(m-2) (u - (m-1)(t + w^2)) and u - (m-1)(t + w^2) = 1 - (m-3)w^2 - m t
  // with u = 1 + 2w^2 - t; variables (t, s = w^2).
  rep.records.push_back(identity_check(
      "m.g1_derivative", p,
      [mm](double t, double s) {
        const double u = 1.0 + 2.0 * s - t;
        return (u - (mm - 1.0) * (t + s)) - (1.0 - (mm - 3.0) * s - mm * t);
      },
      1));
  // m (t* - 2w^2) = 1 - 3 (m - 1) w^2: t* > 2w^2 iff m - 1 < 1/(3w^2).
  rep.records.push_back(identity_check(
      "m.tstar_branch", p,
      [mm](double, double s) { return ((1.0 - (mm - 3.0) * s) - 2.0 * mm * s) - (1.0 - 3.0 * (mm - 1.0) * s); },
      1));
  rep.records.push_back(identity_check(
      "m.tstar_plus_w2", p,
      [mm](double, double s) { return ((1.0 - (mm - 3.0) * s) + mm * s) - (1.0 + 3.0 * s); }, 1));
  rep.records.push_back(record("m.inv_m_le_0_01", p, m >= 100, m - 100, CheckMethod::Certified));
  // 2m max{sqrt(3) w, sqrt(2/m)} <= sqrt(3) max{2mw, 2 sqrt(2m)}: the first
  // terms agree and 2m sqrt(2/m) = 2 sqrt(2m) < sqrt(3) 2 sqrt(2m).
  {
    const Interval a = Interval(2.0 * mm) * sqrt(Interval::ratio(2.0, mm));
    const Interval b = sqrt(Interval(3.0)) * Interval(2.0) * sqrt(Interval(2.0 * mm));
    rep.records.push_back(constant_check("m.r_chain", p, a - b, true));
  }
  // Theorem 1b uses n = 2m + 1: 2 sqrt(2m) < 2 sqrt(n); 2mw <= nw is immediate.
  rep.records.push_back(constant_check("m.odd_degree", p,
                                       sqrt(Interval(2.0 * mm)) - sqrt(Interval(2.0 * mm + 1.0)), true));
  return rep;
}

ProofReport verify_constants() {
  ProofReport rep;
  const Interval s3 = sqrt(Interval(3.0));
  const Interval alpha0 = Interval(2.0) + Interval(1.0) / (Interval(28.0) * s3);
  const Interval lhs = Interval(2.0) * alpha0 * s3;
  const Interval rhs = Interval(4.0) * s3 + Interval::ratio(1.0, 14.0);
  {
    const Interval diff = lhs - rhs;
    const bool ok = diff.contains(0.0) && diff.width() <= 1e-12;
    rep.records.push_back(record("c.alpha0_identity", {{"value", rhs.mid()}}, ok, 1e-12 - diff.width(),
                                 CheckMethod::Interval, ok ? "" : "enclosure " + to_string(diff)));
  }
  rep.records.push_back(constant_check("c.alpha0_lt_7", {{"value", rhs.mid()}}, rhs - Interval(7.0), true));
  {
    const Interval eq = lhs - Interval::ratio(1.0, 14.0) * alpha0 / (alpha0 - Interval(2.0));
    const bool ok = eq.contains(0.0) && eq.width() <= 1e-10;
    rep.records.push_back(record("c.alpha0_equation", {{"alpha0", alpha0.mid()}}, ok, 1e-10 - eq.width(),
                                 CheckMethod::Interval, ok ? "" : "enclosure " + to_string(eq)));
  }
  rep.records.push_back(constant_check("c.sqrt201_gt_14", {{"n", 201}}, Interval(14.0) - sqrt(Interval(201.0)), true));

  const Interval r45 = Interval::ratio(45.0, 49.0);
  rep.records.push_back(identity_check("c.5w2_at_3_7", {},
                                       [](double, double) { return 5.0 * 9.0 * 49.0 - 45.0 * 49.0; }, 0));
  rep.records.push_back(constant_check("c.45_49_lt_1", {}, r45 - Interval(1.0), true));
  {
    const Interval p8 = sqr(sqr(sqr(r45)));
    rep.records.push_back(constant_check("c.power_2_53", {}, Interval(5.0) * p8 - Interval::ratio(253.0, 100.0), false));
  }
  rep.records.push_back(constant_check(
      "c.subcase1_3", {}, (Interval(1.0) + Interval::ratio(9.0, 49.0)) * Interval::ratio(253.0, 100.0) - Interval(3.0),
      false));
  rep.records.push_back(constant_check("c.subcase2_27_49", {}, Interval(1.0) + Interval::ratio(27.0, 49.0) - Interval(2.0), true));
  rep.records.push_back(identity_check("c.domain_at_3_7", {},
                                       [](double, double) { return (18.0 < 28.0) ? 0.0 : 1.0; }, 0));

  // Case (z - 1)^n: n = (1/2) sqrt(n) 2 sqrt(n) < 8 * 2 sqrt(n) for n <= 199,
  // and n/2 < 4 * 2 sqrt(n).
  {
    double margin = kInf;
    double margin4 = kInf;
    bool ok = true, ok4 = true;
    for (int n = 1; n <= kSmallDegree; ++n) {
      const Interval rn = sqrt(Interval(static_cast<double>(n)));
      const Interval a = Interval(0.5) * rn - Interval(8.0);
      const Interval b = Interval(0.5 * n) - Interval(8.0) * rn;
      ok = ok && a.hi() < 0.0;
      ok4 = ok4 && b.hi() < 0.0;
      margin = std::min(margin, -a.hi());
      margin4 = std::min(margin4, -b.hi());
    }
    rep.records.push_back(record("c.case9_small_n", {{"n_max", kSmallDegree}}, ok, margin, CheckMethod::Interval));
    rep.records.push_back(record("c.case9_half_n", {{"n_max", kSmallDegree}}, ok4, margin4, CheckMethod::Interval));
  }
  // w >= 3/7: n <= (7/3) w n, equality at w = 3/7 (7 * 3 = 3 * 7); and
  // n/2 <= 4 w n since 3/7 >= 1/8.
  rep.records.push_back(identity_check("c.case9_wide", {{"w", 3.0 / 7.0}},
                                       [](double, double) { return 7.0 * 3.0 - 3.0 * 7.0; }, 0));
  rep.records.push_back(identity_check("c.case9_wide_half", {{"w", 3.0 / 7.0}},
                                       [](double, double) { return 8.0 * 3.0 >= 7.0 ? 0.0 : 1.0; }, 0));

  // Polynomial identities in (t, w); each side has degree <= 4 in each variable.
  rep.records.push_back(identity_check("id.h_at_1", {}, [](double, double w) {
    return h_exact(1.0, w) - (4.0 * w * w + w * w * w * w);
  }, 4));
  rep.records.push_back(identity_check("id.h_at_1mw", {}, [](double, double w) {
    return h_exact(1.0 - w, w) - (5.0 * w * w - 2.0 * w * w * w + w * w * w * w);
  }, 4));
  rep.records.push_back(identity_check("id.h1mw_minus_h1", {}, [](double, double w) {
    return (h_exact(1.0 - w, w) - h_exact(1.0, w)) - w * w * (1.0 - 2.0 * w);
  }, 4));
  rep.records.push_back(identity_check("id.5w2_minus_h1mw", {}, [](double, double w) {
    return (5.0 * w * w - h_exact(1.0 - w, w)) - w * w * w * (2.0 - w);
  }, 4));
  rep.records.push_back(identity_check("id.h_at_2w2", {}, [](double, double w) {
    return (h_exact(2.0 * w * w, w) + 2.0 * w * w) - (1.0 + 9.0 * w * w * w * w);
  }, 4));
  rep.records.push_back(identity_check("id.h_at_1mw_plus", {}, [](double, double w) {
    const double v = 1.0 - w;
    return (h_exact(v, w) + v) - (1.0 + 2.0 * w * w - w * (v * v * v - w * w));
  }, 4));
  // h(t) and h(t) + t have second difference 2 in t: convex parabolas.
  rep.records.push_back(identity_check("id.h_convex", {}, [](double t, double w) {
    return (h_exact(t + 1.0, w) - 2.0 * h_exact(t, w) + h_exact(t - 1.0, w)) - 2.0;
  }, 4));
  rep.records.push_back(identity_check("id.h_scaled", {}, [](double lam, double w) {
    return h_exact(1.0 - lam * w, w) - w * w * ((w + lam) * (w + lam) + 4.0 * (1.0 - lam * w));
  }, 4));

  rep.assumptions.push_back("n0 in the Revesz upper bound uses the natural logarithm");
  rep.assumptions.push_back("w boxes end at 3/7 - 1e-9 to respect w < 3/7");
  return rep;
}

// ---------------------------------------------------------------------------
// Sampled checks on concrete sets

namespace {

void check_set(const ConvexSet& k1, int m) {
  if (m < 100) throw PreconditionError("proof check: m must be >= 100");
  if (!is_normalized(k1)) throw PreconditionError("proof check: set is not normalized");
  if (!(min_width(k1) < 3.0 / 7.0)) throw PreconditionError("proof check: width must be below 3/7");
}

double perimeter(const ConvexSet& k) {
  const auto pts = boundary_points(k, 0.05);
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += std::abs(pts[i] - pts[i - 1]);
  if (!k.is_segment_like()) s += std::abs(pts.front() - pts.back());
  return s;
}

// Half on the boundary, half uniform in K by rejection, plus 0 and +-1.
std::vector<Complex> sample_points(const ConvexSet& k, std::size_t count, std::uint64_t seed) {
  std::vector<Complex> out{Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(-1.0, 0.0)};
  const std::size_t nb = std::max<std::size_t>(count / 2, 8);
  const auto bd = boundary_points(k, perimeter(k) / static_cast<double>(nb));
  out.insert(out.end(), bd.begin(), bd.end());
  std::mt19937_64 rng(seed);
  const auto [lo, hi] = bounding_box(k);
  std::uniform_real_distribution<double> ux(lo.real(), hi.real());
  std::uniform_real_distribution<double> uy(lo.imag(), hi.imag());
  const std::size_t want = count > nb ? count - nb : 0;
  std::size_t got = 0;
  for (std::size_t tries = 0; got < want && tries < 1000 * want; ++tries) {
    Complex z(ux(rng), uy(rng));
    if (k.is_segment_like()) z = project(k, z);
    if (contains(k, z)) {
      out.push_back(z);
      ++got;
    }
  }
  return out;
}

// Rounding slack for point evaluations in log scale.
constexpr double kPointSlack = 1e-9;

Params set_params(const ConvexSet& k1, int m) {
  return {{"m", m}, {"w", min_width(k1)}, {"d", diameter(k1)}};
}

std::string point_string(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "z=(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

struct Worst {
  double margin = kInf;
  std::string detail;
  std::size_t count = 0;
  void see(double slack, Complex z) {
    ++count;
    if (slack < margin) {
      margin = slack;
      if (slack < 0.0) detail = point_string(z);
    }
  }
  bool ok(bool strict = false) const { return strict ? margin > 0.0 : margin >= 0.0; }
};

// log f(x, y) with f = |z (z^2 - 1)^(m-1)|.
double log_f(double x, double y, int m) {
  const double a = 1.0 + y * y - x * x;
  return 0.5 * std::log(x * x + y * y) + 0.5 * (m - 1) * std::log(a * a + 4.0 * x * x * y * y);
}

}  // namespace

ProofReport verify_claim_11(const ConvexSet& k1, int m, std::size_t sample_count, std::uint64_t seed) {
  check_set(k1, m);
  ProofReport rep;
  const Params p = set_params(k1, m);
  const double w = min_width(k1);
  const double mm = static_cast<double>(m);
  const RootPoly pm = p_poly(m);
  const auto pts = sample_points(k1, sample_count, seed);

  {
    Worst s;
    const double tol = 1e-9;
    for (const Complex& z : boundary_points(k1, perimeter(k1) / 2000.0)) {
      s.see(std::min(w + tol - std::abs(z.imag()), 1.0 + tol - std::abs(z.real())), z);
    }
    rep.records.push_back(record("c11.strip", p, s.ok(), s.margin, CheckMethod::Sampled, s.detail));
  }
  // ||p_m|| >= |p_m(0)| = 1 since 0 lies on the segment [-1, 1] inside K1.
  const LogValue at0 = eval_log(pm, Complex(0.0, 0.0));
  const bool floor_ok = contains(k1, Complex(0.0, 0.0), kGeomTol) && at0.log_magnitude == 0.0;
  rep.records.push_back(record("c11.norm_floor", p, floor_ok, -at0.log_magnitude, CheckMethod::Certified));

  const MarkovRatio r = markov_ratio(pm, k1);
  const double log_norm = std::max(r.poly.log_lower, 0.0);
  const double bound = std::sqrt(3.0) * std::max(2.0 * mm * w, 2.0 * std::sqrt(2.0 * mm));

  Worst eq10, claim, split;
  double max_r = 0.0;
  for (const Complex& z : pts) {
    const LogValue d = eval_derivative_log(pm, z);
    const double rz = d.is_zero() ? 0.0 : std::exp(d.log_magnitude + kPointSlack - log_norm);
    max_r = std::max(max_r, rz);
    const double two_m_z = 2.0 * mm * std::abs(z);
    eq10.see(two_m_z * (1.0 + 1e-8) - rz, z);
    claim.see(bound - rz, z);
    if (std::abs(z.real()) <= std::sqrt(2.0) * w) split.see(std::sqrt(3.0) * 2.0 * mm * w * (1.0 + 1e-12) - two_m_z, z);
  }
  Params pc = p;
  pc.emplace_back("samples", static_cast<double>(pts.size()));
  pc.emplace_back("max_r", max_r);
  pc.emplace_back("bound", bound);
  rep.records.push_back(record("c11.eq10", pc, eq10.ok(), eq10.margin, CheckMethod::Sampled, eq10.detail));
  rep.records.push_back(record("c11.claim", pc, claim.ok(), claim.margin, CheckMethod::Sampled, claim.detail));
  Params ps = p;
  ps.emplace_back("samples", static_cast<double>(split.count));
  rep.records.push_back(record("c11.near_axis", ps, split.ok(), split.count ? split.margin : 0.0,
                               CheckMethod::Sampled, split.detail));

  {
    // f is even in x and y, and nondecreasing in |y|.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> ux(std::sqrt(2.0) * w, 1.0);
    std::uniform_real_distribution<double> uy(0.0, std::max(w, 1e-300));
    bool even = true;
    Worst mono;
    for (int i = 0; i < 500; ++i) {
      const double x = ux(rng);
      double y1 = uy(rng), y2 = uy(rng);
      if (y1 > y2) std::swap(y1, y2);
      const double f = log_f(x, y1, m);
      even = even && f == log_f(-x, y1, m) && f == log_f(x, -y1, m) && f == log_f(-x, -y1, m);
      mono.see(log_f(x, y2, m) - f + 1e-12 * (1.0 + std::abs(f)), Complex(x, y1));
    }
    rep.records.push_back(record("c11.f_even", p, even, 0.0, CheckMethod::Sampled));
    rep.records.push_back(record("c11.f_monotone_y", p, mono.ok(), mono.margin, CheckMethod::Sampled, mono.detail));
  }
  {
    const double n = 2.0 * mm;
    const double b1a = std::sqrt(3.0) * std::max(w * n, 2.0 * std::sqrt(n));
    Params pn = p;
    pn.emplace_back("ratio_upper", r.upper);
    pn.emplace_back("bound", b1a);
    rep.records.push_back(record("c11.theorem_1a", pn, r.upper <= b1a && !r.capped(), b1a - r.upper,
                                 CheckMethod::Sampled, r.capped() ? "norm certification capped" : ""));
  }
  return rep;
}

ProofReport verify_theorem_1b(const ConvexSet& k1, int m, std::size_t sample_count, std::uint64_t seed) {
  check_set(k1, m);
  ProofReport rep;
  const Params p = set_params(k1, m);
  const double w = min_width(k1);
  const double mm = static_cast<double>(m);
  const double n = 2.0 * mm + 1.0;
  const double alpha0 = 2.0 + 1.0 / (28.0 * std::sqrt(3.0));
  const RootPoly pm = p_poly(m);
  const RootPoly big = big_p_poly(m);

  const NormEstimate np = sup_norm(pm, k1);
  const MarkovRatio rb = markov_ratio(big, k1);
  // Both norms are at least 1: |p_m(0)| = |P_m(0)| = 1.
  const double log_np_lo = std::max(np.log_lower, 0.0);
  const double log_nb_lo = std::max(rb.poly.log_lower, 0.0);

  {
    const double slack = std::log(2.0) + log_nb_lo - np.log_upper;
    rep.records.push_back(record("t1b.eq14", p, slack >= 0.0 && !np.capped, slack, CheckMethod::Sampled));
  }
  {
    const double dist = std::abs(np.witness - Complex(1.0, 0.0));
    const double slack = dist - 0.5 * std::exp(-np.log_upper + np.log_lower - 1e-12);
    Params pz = p;
    pz.emplace_back("z0_re", np.witness.real());
    pz.emplace_back("z0_im", np.witness.imag());
    rep.records.push_back(record("t1b.z0_distance", pz, slack >= 0.0, slack, CheckMethod::Sampled));
  }

  const auto pts = sample_points(k1, sample_count, seed);
  const double b1a = std::sqrt(3.0) * std::max(w * n, 2.0 * std::sqrt(n));
  const double bound = 7.0 * std::max(w * n, 2.0 * std::sqrt(n));
  Worst formula, branch_a, branch_b, pointwise;
  for (const Complex& z : pts) {
    const LogValue dbig = eval_derivative_log(big, z);
    const LogValue dp = eval_derivative_log(pm, z);
    const LogValue vp = eval_log(pm, z);
    // P_m'(z) = (z - 1)(z^2 - 1)^(m-1)(z + 1 + 2mz)
    const Complex z2 = z * z - 1.0;
    const Complex c = z + 1.0 + 2.0 * mm * z;
    if (std::abs(z - 1.0) > 1e-3 && std::abs(z2) > 1e-3 && std::abs(c) > 0.0 && !dbig.is_zero()) {
      const double lf = std::log(std::abs(z - 1.0)) + (mm - 1.0) * std::log(std::abs(z2)) + std::log(std::abs(c));
      formula.see(1e-9 * (1.0 + std::abs(lf)) - std::abs(lf - dbig.log_magnitude), z);
    }
    const double lhs = std::abs(z - 1.0) * std::abs((z + 1.0) / (2.0 * mm) + z);
    const double ratio = dbig.is_zero() ? 0.0 : std::exp(dbig.log_magnitude + kPointSlack - log_nb_lo);
    if (lhs <= alpha0 * std::abs(z)) {
      // |P_m'(z)| <= alpha0 |p_m'(z)|, then ||p_m|| <= 2 ||P_m|| and claim (11).
      const double lp = dp.is_zero() ? -kInf : dp.log_magnitude;
      const double la = dbig.is_zero() ? -kInf : dbig.log_magnitude;
      const double s1 = la == -kInf ? kInf : std::log(alpha0) + lp + kPointSlack - la;
      const double via = 2.0 * alpha0 * (dp.is_zero() ? 0.0 : std::exp(lp + kPointSlack - log_np_lo));
      branch_a.see(std::min(s1, 2.0 * alpha0 * b1a - std::max(via, ratio)), z);
    } else {
      // 2m|z| < 2|z+1|/(alpha0 - 2) and |P_m'(z)| <= |p_m(z)| alpha0/(alpha0 - 2).
      const double s1 = 2.0 * std::abs(z + 1.0) / (alpha0 - 2.0) - 2.0 * mm * std::abs(z);
      const double la = dbig.is_zero() ? -kInf : dbig.log_magnitude;
      const double s2 = la == -kInf ? kInf : vp.log_magnitude + std::log(alpha0 / (alpha0 - 2.0)) + kPointSlack - la;
      const double s3 = 2.0 * std::sqrt(n) / 14.0 * alpha0 / (alpha0 - 2.0) - ratio;
      branch_b.see(std::min({s1, s2, s3}), z);
    }
    pointwise.see(bound - ratio, z);
  }
  Params pc = p;
  pc.emplace_back("samples", static_cast<double>(pts.size()));
  rep.records.push_back(record("t1b.derivative_formula", pc, formula.ok(), formula.margin, CheckMethod::Sampled, formula.detail));
  Params pa = p;
  pa.emplace_back("samples", static_cast<double>(branch_a.count));
  rep.records.push_back(record("t1b.branch_a", pa, branch_a.ok(), branch_a.count ? branch_a.margin : 0.0,
                               CheckMethod::Sampled, branch_a.detail));
  Params pbb = p;
  pbb.emplace_back("samples", static_cast<double>(branch_b.count));
  rep.records.push_back(record("t1b.branch_b", pbb, branch_b.ok(true) || branch_b.count == 0,
                               branch_b.count ? branch_b.margin : 0.0, CheckMethod::Sampled, branch_b.detail));
  rep.records.push_back(record("t1b.pointwise", pc, pointwise.ok(true), pointwise.margin, CheckMethod::Sampled, pointwise.detail));
  {
    Params pn = p;
    pn.emplace_back("ratio_upper", rb.upper);
    pn.emplace_back("bound", bound);
    rep.records.push_back(record("t1b.theorem_1b", pn, rb.upper < bound && !rb.capped(), bound - rb.upper,
                                 CheckMethod::Sampled, rb.capped() ? "norm certification capped" : ""));
  }
  return rep;
}

std::vector<double> default_w_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 85; ++i) g.push_back(0.005 * i);
  g.push_back(3.0 / 7.0 - 1e-9);
  return g;
}

std::vector<int> default_m_set() { return {100, 200, 1000}; }

std::vector<ConvexSet> default_set_family() {
  const Complex tri[] = {Complex(-1.0, 0.0), Complex(1.0, 0.0), Complex(0.2, 0.25)};
  return {ConvexSet::diamond(0.05), ConvexSet::diamond(0.2), ConvexSet::ellipse(0.0, 1.0, 0.1),
          normalize(make_polygon(tri)).set};
}

ProofReport proof_certificate(std::span<const double> w_grid, std::span<const int> m_set,
                              std::span<const ConvexSet> sets, std::size_t sample_count, std::uint64_t seed) {
  if (w_grid.size() < 2 || m_set.empty()) throw InvalidArgument("proof_certificate: empty grid");
  ProofReport rep = verify_constants();
  for (int m : m_set) {
    rep.append(verify_m_chain(m));
    for (std::size_t i = 0; i + 1 < w_grid.size(); ++i) {
      const Interval box(w_grid[i], w_grid[i + 1]);
      rep.append(verify_subcase1(box, m));
      rep.append(verify_subcase2(box, m));
    }
  }
  for (const ConvexSet& k : sets) {
    const Params p{{"w", min_width(k)}};
    for (int n : {1, 50, kSmallDegree}) {
      const MarkovRatio r = markov_ratio(q_poly(n), k);
      Params pn = p;
      pn.emplace_back("n", n);
      pn.emplace_back("ratio_upper", r.upper);
      const double slack = 0.5 * n * (1.0 + 4e-6) - r.upper;
      rep.records.push_back(record("case9.q_ratio", pn, slack >= 0.0, slack, CheckMethod::Sampled));
    }
    for (int m : m_set) {
      rep.append(verify_claim_11(k, m, sample_count, seed));
      rep.append(verify_theorem_1b(k, m, sample_count, seed));
    }
  }
  rep.sort();
  return rep;
}

}  // namespace turan
