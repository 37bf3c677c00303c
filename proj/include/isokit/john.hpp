#pragma once

#include <array>
#include <span>
#include <vector>

#include "isokit/geom.hpp"
#include "isokit/mvee.hpp"

namespace isokit {

/// Six unit vectors with nonnegative weights such that
/// sum_i lambda_i u_i u_i^T = Id. Entries are sorted by weight so that
/// lambda[5] is the largest; unused slots carry weight 0.
struct JohnDecomposition {
  std::array<Vec3, 6> u;
  std::array<double, 6> lambda{};

  /// Frobenius norm of sum lambda_i u_i u_i^T - Id.
  double residual() const;
};

struct Witness {
  std::array<int, 3> ijk{};  // 0-based indices into the decomposition
  double value = 0.0;        // |det(u_i, u_j, u_k)|
};

struct NormalizationResult {
  Mat3 T = Mat3::Identity();
  double idq = 0.0;
  JohnDecomposition decomposition;
  Witness witness;
  Polytope image;  // T applied to the input
};

/// The symmetric square root of M, so that T maps E onto the unit ball.
Mat3 transform_to_ball(const Ellipsoid& E);

/// Nonnegative weights on the given unit contact directions decomposing the
/// identity. Solved as a nonnegative least-squares problem over the
/// six-dimensional space of symmetric matrices, then reduced to at most six
/// supporting directions. Throws NoDecomposition if the Frobenius residual
/// stays above 1e-7 or fewer than three directions are given.
JohnDecomposition john_weights(std::span<const Vec3> contacts);

/// The index triple maximizing |det(u_i, u_j, u_k)| over all 20 triples.
Witness witness_triple(const JohnDecomposition& D);

/// Vol(P) / Diam(P)^3.
double isodiametric_quotient(const Polytope& P);

/// difference body -> MVEE -> T = M^{1/2} -> John decomposition of the
/// contact points of T(P - P) -> witness triple.
NormalizationResult normalize(const Polytope& P, double tol = 1e-9);

}  // namespace isokit
