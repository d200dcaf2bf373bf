#include "turan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <limits>

#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

bool lex_less(Complex a, Complex b) {
  return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex closest_on_segment(Complex z, Complex p, Complex q) {
  const Complex d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return p;
  double t = std::clamp(((z - p) * std::conj(d)).real() / len2, 0.0, 1.0);
  return p + t * d;
}

Polygon diamond_polygon(double eps) {
  return Polygon{{Complex(1, 0), Complex(0, eps), Complex(-1, 0), Complex(0, -eps)}};
}

// Andrew's monotone chain; drops collinear points so the result is strictly
// convex and counterclockwise.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Complex& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

struct Calipers {
  double width = 0.0;
  double diameter = 0.0;
  Complex p, q;
};

// Rotating calipers over a strictly convex CCW polygon: for every edge the
// farthest vertex is advanced monotonically. Widths come from edge/vertex
// pairs, the diameter from the antipodal vertex pairs visited on the way.
Calipers rotating_calipers(const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  Calipers out;
  out.width = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ni = (i + 1) % n;
    while (cross(v[i], v[ni], v[(j + 1) % n]) > cross(v[i], v[ni], v[j])) j = (j + 1) % n;
    const double edge = std::abs(v[ni] - v[i]);
    out.width = std::min(out.width, cross(v[i], v[ni], v[j]) / edge);
    pairs.emplace_back(i, j);
    pairs.emplace_back(ni, j);
    // parallel edges: the next vertex is equally far and also antipodal
    const std::size_t nj = (j + 1) % n;
    if (cross(v[i], v[ni], v[nj]) == cross(v[i], v[ni], v[j])) {
      pairs.emplace_back(i, nj);
      pairs.emplace_back(ni, nj);
    }
  }
  for (auto [a, b] : pairs) out.diameter = std::max(out.diameter, std::abs(v[a] - v[b]));
  bool have = false;
  const double cutoff = out.diameter * (1.0 - 1e-12);
  for (auto [a, b] : pairs) {
    if (std::abs(v[a] - v[b]) < cutoff) continue;
    Complex p = v[a], q = v[b];
    if (lex_less(q, p)) std::swap(p, q);
    if (!have || lex_less(p, out.p) || (p == out.p && lex_less(q, out.q))) {
      out.p = p;
      out.q = q;
      have = true;
    }
  }
  return out;
}

Complex rotate(double angle) { return std::polar(1.0, angle); }

// Closest point on the ellipse x^2/e0^2 + y^2/e1^2 = 1 (e0 >= e1 > 0) to a
// first-quadrant point (y0, y1), by bisection on the Lagrange parameter.
std::pair<double, double> ellipse_closest_first_quadrant(double e0, double e1, double y0,
                                                         double y1) {
  if (y1 > 0) {
    if (y0 > 0) {
      const double z0 = y0 / e0, z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g == 0.0) return {y0, y1};
      const double r0 = (e0 / e1) * (e0 / e1);
      const double n0 = r0 * z0;
      double s0 = z1 - 1.0;
      double s1 = g < 0 ? 0.0 : std::hypot(n0, z1) - 1.0;
      double s = 0.0;
      for (int it = 0; it < 1100; ++it) {
        s = 0.5 * (s0 + s1);
        if (s == s0 || s == s1) break;
        const double a = n0 / (s + r0), b = z1 / (s + 1.0);
        const double gs = a * a + b * b - 1.0;
        if (gs > 0)
          s0 = s;
        else if (gs < 0)
          s1 = s;
        else
          break;
      }
      return {r0 * y0 / (s + r0), y1 / (s + 1.0)};
    }
    return {0.0, e1};
  }
  const double numer = e0 * y0, denom = e0 * e0 - e1 * e1;
  if (numer < denom) {
    const double xd = numer / denom;
    return {e0 * xd, e1 * std::sqrt(std::max(0.0, 1.0 - xd * xd))};
  }
  return {e0, 0.0};
}

Complex ellipse_project(const Ellipse& e, Complex z) {
  const Complex local = (z - e.center) * rotate(-e.angle);
  const double x = local.real(), y = local.imag();
  if (e.b == 0.0) {
    const Complex c = Complex(std::clamp(x, -e.a, e.a), 0.0);
    return e.center + c * rotate(e.angle);
  }
  if ((x / e.a) * (x / e.a) + (y / e.b) * (y / e.b) <= 1.0) return z;
  auto [px, py] = ellipse_closest_first_quadrant(e.a, e.b, std::abs(x), std::abs(y));
  const Complex c(std::copysign(px, x), std::copysign(py, y));
  return e.center + c * rotate(e.angle);
}

double ellipse_speed(const Ellipse& e, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  return std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
}

void check_spacing(double max_spacing) {
  if (!(max_spacing > 0.0) || !std::isfinite(max_spacing))
    throw InvalidArgument("max_spacing must be positive and finite");
}

void append_subdivided(std::vector<Complex>& out, Complex p, Complex q, double spacing,
                       bool include_end, std::size_t cap) {
  const double len = std::abs(q - p);
  const double pieces = std::max(1.0, std::ceil(len / spacing));
  if (static_cast<double>(out.size()) + pieces + 1 > static_cast<double>(cap))
    throw ResourceLimit("boundary sample cap exceeded");
  const auto count = static_cast<std::size_t>(pieces);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(p + (q - p) * (static_cast<double>(i) / static_cast<double>(count)));
  if (include_end) out.push_back(q);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ellipse helpers

Complex Ellipse::point(double theta) const {
  return center + rotate(angle) * Complex(a * std::cos(theta), b * std::sin(theta));
}

Complex Ellipse::tangent(double theta) const {
  return rotate(angle) * Complex(-a * std::sin(theta), b * std::cos(theta));
}

Complex Ellipse::tangent_corner(double theta1, double theta2) const {
  // Affine image of the circle case, where the tangents at theta1 and theta2
  // meet at radius 1/cos(half-angle) on the bisecting ray.
  const double mid = 0.5 * (theta1 + theta2);
  const double half = 0.5 * (theta2 - theta1);
  const double k = 1.0 / std::cos(half);
  return center + rotate(angle) * Complex(a * k * std::cos(mid), b * k * std::sin(mid));
}

// ---------------------------------------------------------------------------
// AffineMap

AffineMap AffineMap::make(Complex alpha, Complex beta) {
  if (alpha == Complex(0.0, 0.0) || !finite(alpha) || !finite(beta))
    throw InvalidArgument("affine map requires finite alpha != 0 and finite beta");
  return AffineMap{alpha, beta};
}

AffineMap AffineMap::inverse() const {
  const Complex inv = 1.0 / alpha;
  return AffineMap{inv, -beta * inv};
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  return AffineMap{alpha * inner.alpha, alpha * inner.beta + beta};
}

// ---------------------------------------------------------------------------
// ConvexSet construction

ConvexSet ConvexSet::disk(Complex center, double radius) {
  if (!finite(center) || !(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("disk requires a finite center and positive radius");
  return ConvexSet(Disk{center, radius});
}

ConvexSet ConvexSet::ellipse(Complex center, double a, double b, double angle) {
  if (!finite(center) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(angle))
    throw InvalidArgument("ellipse parameters must be finite");
  if (!(a > 0.0) || b < 0.0 || b > a)
    throw InvalidArgument("ellipse requires semi-axes a >= b >= 0 with a > 0");
  return ConvexSet(Ellipse{center, a, b, angle});
}

ConvexSet ConvexSet::diamond(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw InvalidArgument("diamond epsilon must lie in [0, 1]");
  return ConvexSet(Diamond{epsilon});
}

ConvexSet ConvexSet::segment(Complex p, Complex q) {
  if (!finite(p) || !finite(q)) throw InvalidArgument("segment endpoints must be finite");
  if (p == q) throw InvalidArgument("segment endpoints must be distinct");
  return ConvexSet(Segment{p, q});
}

ConvexSet make_polygon(std::span<const Complex> points) {
  if (points.empty()) throw InvalidArgument("make_polygon: empty point list");
  for (const Complex& z : points)
    if (!finite(z)) throw InvalidArgument("make_polygon: non-finite coordinate");
  std::vector<Complex> hull = convex_hull({points.begin(), points.end()});
  if (hull.size() == 1) throw InvalidArgument("make_polygon: all points coincide");
  if (hull.size() == 2) return ConvexSet(Segment{hull[0], hull[1]});
  return ConvexSet(Polygon{std::move(hull)});
}

std::string_view ConvexSet::kind() const {
  static constexpr std::string_view names[] = {"polygon", "disk", "ellipse", "diamond",
                                               "segment"};
  return names[shape_.index()];
}

Polygon ConvexSet::as_polygon() const {
  if (const auto* p = std::get_if<Polygon>(&shape_)) return *p;
  if (const auto* d = std::get_if<Diamond>(&shape_); d && d->epsilon > 0.0)
    return diamond_polygon(d->epsilon);
  throw InvalidArgument("set has no polygon form");
}

bool ConvexSet::is_segment_like() const {
  if (std::holds_alternative<Segment>(shape_)) return true;
  if (const auto* d = std::get_if<Diamond>(&shape_)) return d->epsilon == 0.0;
  if (const auto* e = std::get_if<Ellipse>(&shape_)) return e->b == 0.0;
  return false;
}

std::pair<Complex, Complex> ConvexSet::segment_endpoints() const {
  if (const auto* s = std::get_if<Segment>(&shape_)) return {s->p, s->q};
  if (const auto* d = std::get_if<Diamond>(&shape_); d && d->epsilon == 0.0)
    return {Complex(-1, 0), Complex(1, 0)};
  if (const auto* e = std::get_if<Ellipse>(&shape_); e && e->b == 0.0)
    return {e->point(kPi), e->point(0.0)};
  throw InvalidArgument("set is not segment-like");
}

bool as_ellipse(const ConvexSet& k, Ellipse& out) {
  if (const auto* d = std::get_if<Disk>(&k.shape())) {
    out = Ellipse{d->center, d->radius, d->radius, 0.0};
    return true;
  }
  if (const auto* e = std::get_if<Ellipse>(&k.shape())) {
    out = *e;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Measures

double diameter(const ConvexSet& k) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return rotating_calipers(s.vertices).diameter;
        } else if constexpr (std::is_same_v<T, Disk>) {
          return 2.0 * s.radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return 2.0 * s.a;
        } else if constexpr (std::is_same_v<T, Diamond>) {
          return 2.0;
        } else {
          return std::abs(s.q - s.p);
        }
      },
      k.shape());
}

double min_width(const ConvexSet& k) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return rotating_calipers(s.vertices).width;
        } else if constexpr (std::is_same_v<T, Disk>) {
          return 2.0 * s.radius;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return 2.0 * s.b;
        } else if constexpr (std::is_same_v<T, Diamond>) {
          return 2.0 * s.epsilon / std::sqrt(1.0 + s.epsilon * s.epsilon);
        } else {
          return 0.0;
        }
      },
      k.shape());
}

std::pair<Complex, Complex> diameter_pair(const ConvexSet& k) {
  return std::visit(
      [](const auto& s) -> std::pair<Complex, Complex> {
        using T = std::decay_t<decltype(s)>;
        std::pair<Complex, Complex> out;
        if constexpr (std::is_same_v<T, Polygon>) {
          const Calipers c = rotating_calipers(s.vertices);
          out = {c.p, c.q};
        } else if constexpr (std::is_same_v<T, Disk>) {
          out = {s.center - s.radius, s.center + s.radius};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          out = {s.point(kPi), s.point(0.0)};
        } else if constexpr (std::is_same_v<T, Diamond>) {
          out = {Complex(-1, 0), Complex(1, 0)};
        } else {
          out = {s.p, s.q};
        }
        if (lex_less(out.second, out.first)) std::swap(out.first, out.second);
        return out;
      },
      k.shape());
}

// ---------------------------------------------------------------------------
// Membership and projection

double distance(const ConvexSet& k, Complex z) {
  return std::abs(z - project(k, z));
}

bool contains(const ConvexSet& k, Complex z, double tol) {
  if (tol < 0.0) throw InvalidArgument("contains: tol must be nonnegative");
  if (!finite(z)) return false;
  return distance(k, z) <= tol;
}

Complex project(const ConvexSet& k, Complex z) {
  if (k.is_segment_like()) {
    auto [p, q] = k.segment_endpoints();
    return closest_on_segment(z, p, q);
  }
  if (const auto* d = std::get_if<Disk>(&k.shape())) {
    const Complex off = z - d->center;
    const double r = std::abs(off);
    if (r <= d->radius) return z;
    return d->center + off * (d->radius / r);
  }
  if (const auto* e = std::get_if<Ellipse>(&k.shape())) return ellipse_project(*e, z);
  const Polygon poly = k.as_polygon();
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool inside = true;
  for (std::size_t i = 0; i < n && inside; ++i)
    if (cross(v[i], v[(i + 1) % n], z) < 0) inside = false;
  if (inside) return z;
  Complex best = v[0];
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex c = closest_on_segment(z, v[i], v[(i + 1) % n]);
    const double d = std::abs(z - c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::pair<Complex, Complex> bounding_box(const ConvexSet& k) {
  return std::visit(
      [&](const auto& s) -> std::pair<Complex, Complex> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {s.center - Complex(s.radius, s.radius), s.center + Complex(s.radius, s.radius)};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          const double c = std::cos(s.angle), sn = std::sin(s.angle);
          const double hx = std::sqrt(s.a * s.a * c * c + s.b * s.b * sn * sn);
          const double hy = std::sqrt(s.a * s.a * sn * sn + s.b * s.b * c * c);
          return {s.center - Complex(hx, hy), s.center + Complex(hx, hy)};
        } else if constexpr (std::is_same_v<T, Diamond>) {
          return {Complex(-1, -s.epsilon), Complex(1, s.epsilon)};
        } else {
          std::vector<Complex> pts;
          if constexpr (std::is_same_v<T, Polygon>) {
            pts = s.vertices;
          } else {
            pts = {s.p, s.q};
          }
          double x0 = pts[0].real(), x1 = x0, y0 = pts[0].imag(), y1 = y0;
          for (const Complex& p : pts) {
            x0 = std::min(x0, p.real());
            x1 = std::max(x1, p.real());
            y0 = std::min(y0, p.imag());
            y1 = std::max(y1, p.imag());
          }
          return {Complex(x0, y0), Complex(x1, y1)};
        }
      },
      k.shape());
}

// ---------------------------------------------------------------------------
// Boundary sampling

std::vector<double> ellipse_parameters(const Ellipse& e, double max_spacing, std::size_t cap) {
  check_spacing(max_spacing);
  std::vector<double> thetas;
  // The speed |z'(theta)| is monotone on each quadrant, so its maximum over a
  // step inside one quadrant sits at an endpoint of the step.
  for (int quadrant = 0; quadrant < 4; ++quadrant) {
    const double start = quadrant * kPi / 2;
    const double end = (quadrant + 1) * kPi / 2;
    double theta = start;
    while (theta < end) {
      thetas.push_back(theta);
      if (thetas.size() > cap) throw ResourceLimit("boundary sample cap exceeded");
      double step = max_spacing / std::max(ellipse_speed(e, theta), 1e-300);
      for (int it = 0; it < 8; ++it) {
        const double next = std::min(theta + step, end);
        const double vmax = std::max(ellipse_speed(e, theta), ellipse_speed(e, next));
        if (vmax * (next - theta) <= max_spacing) break;
        step = 0.999 * max_spacing / vmax;
      }
      if (theta + step >= end) break;
      theta += step;
    }
  }
  return thetas;
}

std::vector<Complex> boundary_points(const ConvexSet& k, double max_spacing, std::size_t cap) {
  check_spacing(max_spacing);
  std::vector<Complex> out;
  if (k.is_segment_like()) {
    auto [p, q] = k.segment_endpoints();
    append_subdivided(out, p, q, max_spacing, true, cap);
    return out;
  }
  Ellipse e;
  if (as_ellipse(k, e)) {
    for (double theta : ellipse_parameters(e, max_spacing, cap)) out.push_back(e.point(theta));
    return out;
  }
  const Polygon poly = k.as_polygon();
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    append_subdivided(out, v[i], v[(i + 1) % v.size()], max_spacing, false, cap);
  return out;
}

// ---------------------------------------------------------------------------
// Affine images and normalization

ConvexSet affine(const ConvexSet& k, const AffineMap& t) {
  const AffineMap m = AffineMap::make(t.alpha, t.beta);
  const double s = m.scale();
  const double turn = std::arg(m.alpha);
  return std::visit(
      [&](const auto& sh) -> ConvexSet {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          Polygon out;
          for (const Complex& z : sh.vertices) out.vertices.push_back(m(z));
          return ConvexSet(std::move(out));
        } else if constexpr (std::is_same_v<T, Disk>) {
          return ConvexSet(Disk{m(sh.center), s * sh.radius});
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return ConvexSet(Ellipse{m(sh.center), s * sh.a, s * sh.b, sh.angle + turn});
        } else if constexpr (std::is_same_v<T, Diamond>) {
          if (sh.epsilon == 0.0) return ConvexSet(Segment{m(Complex(-1, 0)), m(Complex(1, 0))});
          Polygon out;
          for (const Complex& z : diamond_polygon(sh.epsilon).vertices)
            out.vertices.push_back(m(z));
          return ConvexSet(std::move(out));
        } else {
          return ConvexSet(Segment{m(sh.p), m(sh.q)});
        }
      },
      k.shape());
}

Normalization normalize(const ConvexSet& k) {
  if (std::holds_alternative<Diamond>(k.shape())) return {k, AffineMap::identity()};
  const auto [p, q] = diameter_pair(k);
  if (p == q) throw InvalidArgument("normalize: degenerate set");
  const Complex alpha = 2.0 / (q - p);
  const Complex beta = -1.0 - alpha * p;
  const AffineMap t = AffineMap::make(alpha, beta);
  ConvexSet image = affine(k, t);
  // Pin the endpoints exactly; rounding in alpha*p + beta is ~1 ulp.
  if (auto* poly = std::get_if<Polygon>(&image.shape_)) {
    for (Complex& z : poly->vertices) {
      if (std::abs(z - Complex(-1, 0)) < 1e-12) z = Complex(-1, 0);
      if (std::abs(z - Complex(1, 0)) < 1e-12) z = Complex(1, 0);
    }
  } else if (auto* seg = std::get_if<Segment>(&image.shape_)) {
    if (std::abs(seg->p - Complex(-1, 0)) < 1e-12) seg->p = Complex(-1, 0);
    if (std::abs(seg->q - Complex(1, 0)) < 1e-12) seg->q = Complex(1, 0);
  } else if (auto* disk = std::get_if<Disk>(&image.shape_)) {
    if (std::abs(disk->center) < 1e-12) disk->center = 0.0;
    if (std::abs(disk->radius - 1.0) < 1e-12) disk->radius = 1.0;
  } else if (auto* ell = std::get_if<Ellipse>(&image.shape_)) {
    if (std::abs(ell->center) < 1e-12) ell->center = 0.0;
    if (std::abs(ell->a - 1.0) < 1e-12) ell->a = 1.0;
    // an ellipse is symmetric under a half turn
    ell->angle -= std::round(ell->angle / kPi) * kPi;
    if (std::abs(ell->angle) < 1e-12) ell->angle = 0.0;
  }
  return {std::move(image), t};
}

bool is_normalized(const ConvexSet& k, double tol) {
  return std::abs(diameter(k) - 2.0) <= tol && contains(k, Complex(1, 0), tol) &&
         contains(k, Complex(-1, 0), tol);
}

}  // namespace turan
