#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "isokit/rational.hpp"

namespace isokit {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

template <class T>
using Point3 = std::array<T, 3>;
using Point3d = Point3<double>;
using Point3q = Point3<Rational>;

/// Exact rational 3x3 matrix, row-major.
using Mat3q = std::array<std::array<Rational, 3>, 3>;

template <class T>
Point3<T> operator-(const Point3<T>& a, const Point3<T>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class T>
T dot(const Point3<T>& a, const Point3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Point3<T> cross(const Point3<T>& a, const Point3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

template <class T>
T det3(const Point3<T>& a, const Point3<T>& b, const Point3<T>& c) {
  return dot(a, cross(b, c));
}

inline Vec3 to_vec(const Point3d& p) { return {p[0], p[1], p[2]}; }
inline Point3d to_point(const Vec3& v) { return {v[0], v[1], v[2]}; }
inline Point3d to_double(const Point3q& p) {
  return {p[0].get_d(), p[1].get_d(), p[2].get_d()};
}
inline Point3q to_rational(const Point3d& p) {
  return {Rational(p[0]), Rational(p[1]), Rational(p[2])};
}

enum class NumberMode { rational, floating };

/// Convex polytope stored as the list of its extreme points together with an
/// outward-oriented triangulation of its boundary. Instances can only be made
/// through convex_hull (or a linear image of an existing polytope), so the
/// vertex list is always deduplicated, extreme and full-dimensional.
///
/// In rational mode the exact coordinates are kept next to their double
/// images; float-mode polytopes only carry doubles.
class Polytope {
 public:
  NumberMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == NumberMode::rational; }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point3d>& vertices() const { return vertices_; }
  /// Throws ModeError for float-mode polytopes.
  const std::vector<Point3q>& exact_vertices() const;
  const std::vector<std::array<int, 3>>& facets() const { return facets_; }

  /// Image under x -> A x. The result is float mode; A must be invertible.
  Polytope transformed(const Mat3& A) const;
  /// Exact image under an invertible rational matrix (rational mode only).
  Polytope transformed(const Mat3q& A) const;

 private:
  friend Polytope convex_hull(std::span<const Point3d> points);
  friend Polytope convex_hull(std::span<const Point3q> points);

  NumberMode mode_ = NumberMode::floating;
  std::vector<Point3d> vertices_;
  std::vector<Point3q> exact_;
  std::vector<std::array<int, 3>> facets_;
};

/// Extreme points of the input. Float mode uses plane tests with tolerance
/// 1e-10 times the bounding-box diagonal; rational mode is exact.
/// Throws DegenerateInput for fewer than 4 points or a flat point set.
Polytope convex_hull(std::span<const Point3d> points);
Polytope convex_hull(std::span<const Point3q> points);

double volume(const Polytope& P);
/// Throws ModeError for float-mode polytopes.
Rational exact_volume(const Polytope& P);

double diameter(const Polytope& P);
Rational exact_diameter_squared(const Polytope& P);

/// conv{v - w : v, w vertices of P}, in the same number mode as P.
Polytope difference_body(const Polytope& P);

/// |det(y1, y2, y3)| / 3!, a lower bound for the volume of any convex body
/// containing segments parallel to and as long as y1, y2, y3.
double simplex_volume_lower_bound(const Vec3& y1, const Vec3& y2, const Vec3& y3);

}  // namespace isokit
