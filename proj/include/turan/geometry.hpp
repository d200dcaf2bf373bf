#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace turan {

using Complex = std::complex<double>;

/// Default absolute tolerance for geometric predicates on the d ~ 2 scale.
inline constexpr double kGeomTol = 1e-9;

/// Default cap on the number of boundary samples produced for one call.
inline constexpr std::size_t kDefaultSampleCap = 2'000'000;

// ---------------------------------------------------------------------------
// Shapes

/// Strictly convex polygon, counterclockwise, no three vertices collinear.
struct Polygon {
  std::vector<Complex> vertices;
};

struct Disk {
  Complex center;
  double radius = 1.0;
};

/// Ellipse with semi-axes a >= b >= 0, major axis rotated by `angle` radians.
/// b == 0 is the degenerate ellipse (a segment of length 2a).
struct Ellipse {
  Complex center;
  double a = 1.0;
  double b = 1.0;
  double angle = 0.0;

  Complex point(double theta) const;
  Complex tangent(double theta) const;
  /// Intersection of the tangent lines at theta1 < theta2 (theta2 - theta1 < pi).
  Complex tangent_corner(double theta1, double theta2) const;
};

/// Convex hull of {+1, -1, +i eps, -i eps}, eps in [0, 1].
struct Diamond {
  double epsilon = 0.0;
};

struct Segment {
  Complex p;
  Complex q;
};

/// t(z) = alpha z + beta with alpha != 0.
struct AffineMap {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  static AffineMap identity() { return {}; }
  /// Throws InvalidArgument when alpha is zero or non-finite.
  static AffineMap make(Complex alpha, Complex beta);

  Complex operator()(Complex z) const { return alpha * z + beta; }
  AffineMap inverse() const;
  /// (*this) o inner, i.e. z -> this(inner(z)).
  AffineMap compose(const AffineMap& inner) const;
  double scale() const { return std::abs(alpha); }
};

/// A convex compact planar set. Immutable after construction.
class ConvexSet {
 public:
  using Shape = std::variant<Polygon, Disk, Ellipse, Diamond, Segment>;

  static ConvexSet disk(Complex center, double radius);
  static ConvexSet ellipse(Complex center, double a, double b, double angle = 0.0);
  static ConvexSet diamond(double epsilon);
  static ConvexSet segment(Complex p, Complex q);

  const Shape& shape() const { return shape_; }
  std::string_view kind() const;

  /// Canonical polygon for Diamond(eps > 0); the shape itself for Polygon.
  /// Throws InvalidArgument for curved or degenerate shapes.
  Polygon as_polygon() const;

  /// True when K is a segment (Segment, Diamond(0), Ellipse with b == 0).
  bool is_segment_like() const;
  /// Endpoints of a segment-like set.
  std::pair<Complex, Complex> segment_endpoints() const;

 private:
  explicit ConvexSet(Shape s) : shape_(std::move(s)) {}
  Shape shape_;

  friend ConvexSet make_polygon(std::span<const Complex> points);
  friend ConvexSet affine(const ConvexSet& k, const AffineMap& t);
  friend struct Normalization normalize(const ConvexSet& k);
};

/// Convex hull of the given points. Two or more collinear points give a
/// Segment. Throws InvalidArgument on empty input, non-finite coordinates, or
/// a single (possibly repeated) point.
ConvexSet make_polygon(std::span<const Complex> points);

double diameter(const ConvexSet& k);
double min_width(const ConvexSet& k);

/// Pair of points of K realizing the diameter. For polygons, the
/// lexicographically smallest pair among all maximizing vertex pairs; the
/// first point is lexicographically smaller than the second.
std::pair<Complex, Complex> diameter_pair(const ConvexSet& k);

/// Euclidean distance from z to K (0 inside).
double distance(const ConvexSet& k, Complex z);
bool contains(const ConvexSet& k, Complex z, double tol = 0.0);

/// Closest point of K to z.
Complex project(const ConvexSet& k, Complex z);

/// Axis-aligned bounding box as (lower-left, upper-right).
std::pair<Complex, Complex> bounding_box(const ConvexSet& k);

/// Boundary samples with consecutive spacing (chord for straight pieces, arc
/// length for curved ones) at most max_spacing. Polygon vertices are always
/// included. For segment-like sets the samples cover the segment itself.
/// Throws ResourceLimit when more than `cap` points would be produced.
std::vector<Complex> boundary_points(const ConvexSet& k, double max_spacing,
                                     std::size_t cap = kDefaultSampleCap);

/// Ellipse parameters theta_0 = 0 < theta_1 < ... < 2 pi (last excluded) with
/// arc length between consecutive parameters at most max_spacing.
std::vector<double> ellipse_parameters(const Ellipse& e, double max_spacing,
                                       std::size_t cap = kDefaultSampleCap);

/// Image t(K). Throws InvalidArgument when t.alpha == 0.
ConvexSet affine(const ConvexSet& k, const AffineMap& t);

struct Normalization {
  ConvexSet set;
  AffineMap map;  // set == affine(original, map)
};

/// Affine image with diameter 2 whose diameter pair lands on -1 and +1.
/// A Diamond is already normalized and is returned unchanged.
Normalization normalize(const ConvexSet& k);

/// True when d(K) = 2 and +-1 lie in K, both within tol.
bool is_normalized(const ConvexSet& k, double tol = kGeomTol);

/// Ellipse view of a Disk or Ellipse; returns false for other shapes.
bool as_ellipse(const ConvexSet& k, Ellipse& out);

}  // namespace turan
