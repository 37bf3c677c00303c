#include "isokit/lattice.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "isokit/error.hpp"
#include "isokit/john.hpp"
#include "isokit/mvee.hpp"

namespace isokit {

LatticeDirection::LatticeDirection(std::int64_t a, std::int64_t b, std::int64_t c) {
  const std::int64_t g = std::gcd(std::gcd(a, b), c);
  if (g == 0) throw PreconditionError("lattice direction must be nonzero");
  u_ = {a / g, b / g, c / g};
  for (auto v : u_) {
    if (v == 0) continue;
    if (v < 0) {
      for (auto& w : u_) w = -w;
    }
    break;
  }
}

LatticeBasis::LatticeBasis(const Mat3q& B) : B_(B) {
  const Point3q c0 = {B[0][0], B[1][0], B[2][0]};
  const Point3q c1 = {B[0][1], B[1][1], B[2][1]};
  const Point3q c2 = {B[0][2], B[1][2], B[2][2]};
  covolume_ = abs(det3(c0, c1, c2));
  if (covolume_ == 0) throw SingularLattice("lattice basis is singular");
}

LatticeBasis LatticeBasis::integer() {
  Mat3q I;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) I[i][j] = i == j ? 1 : 0;
  }
  return LatticeBasis(I);
}

Polytope exact_copy(const Polytope& P) {
  if (P.is_exact()) return P;
  std::vector<Point3q> pts;
  pts.reserve(P.size());
  for (const auto& v : P.vertices()) pts.push_back(to_rational(v));
  return convex_hull(pts);
}

namespace {

Rational width_exact(const std::vector<Point3q>& verts, const std::array<std::int64_t, 3>& u) {
  const Point3q uq = {Rational(static_cast<long>(u[0])), Rational(static_cast<long>(u[1])),
                      Rational(static_cast<long>(u[2]))};
  Rational lo = dot(verts[0], uq), hi = lo;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    const Rational d = dot(verts[i], uq);
    if (d < lo) lo = d;
    if (d > hi) hi = d;
  }
  return hi - lo;
}

double width_double(const std::vector<Point3d>& verts, const std::array<std::int64_t, 3>& u) {
  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const double d = verts[i][0] * u[0] + verts[i][1] * u[1] + verts[i][2] * u[2];
    if (i == 0 || d < lo) lo = d;
    if (i == 0 || d > hi) hi = d;
  }
  return hi - lo;
}

bool canonical_primitive(std::int64_t a, std::int64_t b, std::int64_t c) {
  const std::int64_t first = a != 0 ? a : (b != 0 ? b : c);
  return first > 0 && std::gcd(std::gcd(a, b), c) == 1;
}

}  // namespace

Rational exact_width_in_direction(const Polytope& P, const LatticeDirection& u) {
  return width_exact(exact_copy(P).exact_vertices(), u.u());
}

double width_in_direction(const Polytope& P, const LatticeDirection& u) {
  return P.is_exact() ? exact_width_in_direction(P, u).get_d() : width_double(P.vertices(), u.u());
}

LatticeWidth lattice_width(const Polytope& input) {
  const Polytope P = exact_copy(input);
  const auto& exact = P.exact_vertices();
  const auto& approx = P.vertices();

  LatticeWidth result;
  for (const LatticeDirection e : {LatticeDirection(0, 0, 1), LatticeDirection(0, 1, 0), LatticeDirection(1, 0, 0)}) {
    const Rational w = width_exact(exact, e.u());
    if (result.candidates == 0 || w < result.omega || (w == result.omega && e > result.direction)) {
      result.omega = w;
      result.direction = e;
    }
    ++result.candidates;
  }

  const Polytope diff = difference_body(P.transformed(Mat3::Identity()));
  std::vector<Vec3> pts;
  for (const auto& v : diff.vertices()) pts.push_back(to_vec(v));
  const Ellipsoid E = mvee_centered(pts, 1e-9);
  const double radius = std::sqrt(3.0) * result.omega.get_d() * 1.01;
  for (int i = 0; i < 3; ++i) {
    result.extent[i] = static_cast<std::int64_t>(std::floor(radius * std::sqrt(E.M(i, i)) + 1e-9));
  }

  double best = result.omega.get_d();
  const auto [ex, ey, ez] = result.extent;
  for (std::int64_t a = 0; a <= ex; ++a) {
    for (std::int64_t b = a == 0 ? 0 : -ey; b <= ey; ++b) {
      for (std::int64_t c = (a == 0 && b == 0) ? 1 : -ez; c <= ez; ++c) {
        if (!canonical_primitive(a, b, c)) continue;
        const std::array<std::int64_t, 3> u = {a, b, c};
        if (width_double(approx, u) > best + 1e-9 * (1.0 + best)) continue;
        ++result.candidates;
        const LatticeDirection d(a, b, c);
        const Rational w = width_exact(exact, u);
        if (w < result.omega || (w == result.omega && d > result.direction)) {
          result.omega = w;
          result.direction = d;
          best = w.get_d();
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(result.direction[i]) > result.extent[i]) {
      throw InvariantError("lattice width minimizer outside the searched box");
    }
  }
  return result;
}

bool is_nonseparable_unit_lattice(const Polytope& P) {
  const Rational omega = lattice_width(P).omega;
  if (!P.is_exact() && std::abs(omega.get_d() - 1.0) < 1e-9) {
    throw ModeError("lattice width is within 1e-9 of 1; use rational input to decide");
  }
  return omega >= 1;
}

Rational exact_density(const Polytope& P, const LatticeBasis& B) {
  return exact_volume(exact_copy(P)) / B.covolume();
}

double density(const Polytope& P, const LatticeBasis& B) {
  return P.is_exact() ? exact_density(P, B).get_d() : volume(P) / B.covolume().get_d();
}

WidthVolumeReport verify_width_volume_corollary(const Polytope& input) {
  const Polytope P = exact_copy(input);
  const LatticeWidth w = lattice_width(P);
  WidthVolumeReport r;
  r.omega = w.omega;
  r.direction = w.direction;
  r.volume = exact_volume(P);
  r.bound = w.omega * w.omega * w.omega / 12;
  r.slack = r.volume - r.bound;
  r.satisfied = sgn(r.slack) >= 0;
  r.nonseparable = w.omega >= 1;
  return r;
}

CorollaryChain corollary_chain(const Polytope& P, double tol) {
  const NormalizationResult n = normalize(P, tol);
  const double d = diameter(n.image);
  CorollaryChain c;
  c.volume = volume(P);
  c.middle = std::sqrt(2.0) / 12.0 * d * d * d / std::abs(n.T.determinant());
  c.nonseparable = lattice_width(P).omega >= 1;
  c.first_holds = c.volume >= c.middle - 1e-6;
  c.second_holds = !c.nonseparable || c.middle >= 1.0 / 12.0 - 1e-6;
  return c;
}

}  // namespace isokit
