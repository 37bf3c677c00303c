#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "isokit/geom.hpp"

namespace testsupport {

using isokit::Mat3;
using isokit::Point3d;
using isokit::Point3q;
using isokit::Rational;

inline std::vector<Point3d> regular_tetrahedron() {
  const double s3 = std::sqrt(3.0);
  return {{0, 0, 0}, {1, 0, 0}, {0.5, s3 / 2, 0}, {0.5, s3 / 6, std::sqrt(2.0 / 3.0)}};
}

inline std::vector<Point3d> unit_cube() {
  std::vector<Point3d> v;
  for (int i = 0; i < 8; ++i) v.push_back({double(i & 1), double(i >> 1 & 1), double(i >> 2 & 1)});
  return v;
}

inline std::vector<Point3q> extremal_simplex() {
  const Rational h(1, 2);
  return {{0, 0, 0}, {1, h, h}, {h, 1, h}, {h, h, 1}};
}

inline std::vector<Point3d> random_points(std::mt19937_64& rng, int n, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point3d> v(n);
  for (auto& p : v) p = {u(rng), u(rng), u(rng)};
  return v;
}

inline std::vector<Point3d> random_sphere_points(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<Point3d> v(n);
  for (auto& p : v) {
    double x = g(rng), y = g(rng), z = g(rng);
    const double r = std::sqrt(x * x + y * y + z * z);
    p = {x / r, y / r, z / r};
  }
  return v;
}

inline Mat3 random_matrix(std::mt19937_64& rng, double min_abs_det = 0.2) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    Mat3 A;
    for (int i = 0; i < 9; ++i) A(i / 3, i % 3) = u(rng);
    if (std::abs(A.determinant()) >= min_abs_det) return A;
  }
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  Mat3 A = random_matrix(rng);
  Eigen::HouseholderQR<Mat3> qr(A);
  Mat3 Q = qr.householderQ();
  return Q;
}

}  // namespace testsupport
