#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "isokit/error.hpp"
#include "isokit/geom.hpp"

namespace isokit {

/// Ten values a_ij, 1 <= i < j <= 5, stored in the order
/// 12, 13, 14, 15, 23, 24, 25, 34, 35, 45. Reading a_ji gives -a_ij and the
/// diagonal reads as 0.
struct AdmissibleSet {
  std::array<double, 10> a{};

  /// Position of (i, j), i < j, in `a`.
  static constexpr int slot(int i, int j) {
    constexpr int base[5] = {0, 4, 7, 9, 10};
    return base[i - 1] + (j - i - 1);
  }

  double get(int i, int j) const {
    if (i == j) return 0.0;
    return i < j ? a[slot(i, j)] : -a[slot(j, i)];
  }
  void set(int i, int j, double v) {
    if (i < j) {
      a[slot(i, j)] = v;
    } else {
      a[slot(j, i)] = -v;
    }
  }

  double max_abs() const;
  std::array<double, 10> squares() const;
};

/// Six nonnegative weights summing to 3 with the last one largest.
class LambdaVector {
 public:
  /// Throws InvariantError unless the weights are nonnegative, sum to 3
  /// within 1e-9 and lambda_6 is a maximum.
  explicit LambdaVector(const std::array<double, 6>& values);

  static LambdaVector uniform() { return LambdaVector({0.5, 0.5, 0.5, 0.5, 0.5, 0.5}); }

  /// 1-based.
  double operator[](int i) const { return values_[i - 1]; }
  const std::array<double, 6>& values() const { return values_; }

 private:
  std::array<double, 6> values_;
};

/// a_ij = det(u_i, u_j, u_6).
AdmissibleSet from_contact_vectors(const std::array<Vec3, 6>& u);

/// Residuals of the five determinant relations, in the order
/// (13.24 - 14.23 - 12.34), (13.25 - 15.23 - 12.35), (14.25 - 15.24 - 12.45),
/// (14.35 - 15.34 - 13.45), (24.35 - 25.34 - 23.45).
std::array<double, 5> relation_residuals(const AdmissibleSet& A);
bool check_relations(const AdmissibleSet& A, double tol = 1e-9);

/// sum_{i<j<=5} lambda_i lambda_j a_ij^2
double objective(const AdmissibleSet& A, const std::array<double, 6>& lambda);
inline double objective(const AdmissibleSet& A, const LambdaVector& L) {
  return objective(A, L.values());
}
/// Same sum; equals 1 for sets built from a genuine decomposition.
inline double parseval_sum(const AdmissibleSet& A, const LambdaVector& L) { return objective(A, L); }

/// Permuted set b_ij = a_{p(i) p(j)}, p given 0-based on {0..4}.
AdmissibleSet permuted(const AdmissibleSet& A, const std::array<int, 5>& p);

/// The six edge directions of a regular tetrahedron, unit length, in the
/// order (1,1,0), (1,-1,0), (1,0,1), (1,0,-1), (0,1,1), (0,1,-1), all / sqrt 2.
std::array<Vec3, 6> tetrahedron_edge_directions();

/// The set built from those directions, multiplied by sqrt 2 so every entry
/// is 0 or +-1. Its objective at lambda = 1/2 is exactly 2.
AdmissibleSet tetrahedron_witness();

/// Peculiar set with |a14|, |a15| given: |a12| = |a13| = |a24| = |a35| =
/// |a45| = 1, |a23| = (|a14| + |a15| - 1) / |a14 a15|,
/// |a25| = (1 - |a15|) / |a14|, |a34| = (1 - |a14|) / |a15|.
/// Signs come from an exhaustive search with a12 = a13 = +1; `sign_seed`
/// picks among the valid assignments (modulo their count).
/// Throws InfeasibleMagnitudes when a magnitude is outside (0, 1] or
/// |a14| + |a15| < 1, NoSignAssignment if no sign pattern works.
AdmissibleSet peculiar_from(double a14_abs, double a15_abs, unsigned sign_seed = 0);

/// Number of sign patterns accepted by the search in peculiar_from.
std::size_t peculiar_sign_count(double a14_abs, double a15_abs);

// Region calculus. Templated so boundary cases can be checked exactly with
// Rational as well as in double.

/// Closed region {x >= 1/2, y >= 1/2, xy <= 1/2, 2y - xy <= 1, 2x - xy <= 1}.
template <class T>
bool omega_contains(const T& x, const T& y) {
  const T half(1, 2);
  const T xy = x * y;
  return x >= half && y >= half && xy <= half && 2 * y - xy <= 1 && 2 * x - xy <= 1;
}

template <>
inline bool omega_contains<double>(const double& x, const double& y) {
  const double xy = x * y;
  return x >= 0.5 && y >= 0.5 && xy <= 0.5 && 2.0 * y - xy <= 1.0 && 2.0 * x - xy <= 1.0;
}

/// (x, y) -> ((1 - x) / (1 - xy), 1 - xy). Throws SingularPoint at xy = 1.
template <class T>
std::pair<T, T> g_map(const T& x, const T& y) {
  const T d = 1 - x * y;
  if (d == 0) throw SingularPoint("g is undefined where xy = 1");
  return {(1 - x) / d, d};
}

/// max(x^2, y^2, (1-xy)^2, ((1-x)/(1-xy))^2, ((1-y)/(1-xy))^2).
template <class T>
T five_square_max(const T& x, const T& y) {
  const T d = 1 - x * y;
  if (d == 0) throw SingularPoint("five_square_max is undefined where xy = 1");
  const T p = (1 - x) / d;
  const T q = (1 - y) / d;
  T m = x * x;
  for (const T& v : {T(y * y), T(d * d), T(p * p), T(q * q)}) {
    if (v > m) m = v;
  }
  return m;
}

/// l1 l5 ((y-1)/(xy-1))^2 + l1 l4 ((x-1)/(xy-1))^2 + l2 l3 (1-xy)^2
///   + l2 l5 y^2 + l3 l4 x^2. Throws SingularPoint at xy = 1.
double f_eval(double x, double y, const std::array<double, 6>& lambda);

/// l1 l2 + l1 l3 + l2 l4 + l3 l5 + l4 l5 + f(x, y); at most 2 for every
/// admissible weight vector.
double peculiar_bound_value(double x, double y, const std::array<double, 6>& lambda);

}  // namespace isokit
