#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "isokit/geom.hpp"

namespace isokit {

/// Origin-centred ellipsoid {x : x^T M x <= 1}, M symmetric positive definite.
struct Ellipsoid {
  Mat3 M = Mat3::Identity();
};

struct MveeOptions {
  double tol = 1e-9;
  /// 0 selects the default cap of 100 * m * log(1/tol) iterations.
  std::size_t max_iterations = 0;
  /// Record log det of the weighted moment matrix after every iteration.
  bool record_trace = false;
};

struct MveeResult {
  Ellipsoid ellipsoid;
  /// Weights on the antipodal classes of the input (one per entry of
  /// `representatives`), summing to 1.
  std::vector<double> weights;
  std::vector<Vec3> representatives;
  std::size_t iterations = 0;
  /// max(kappa_max / 3 - 1, 1 - kappa_min / 3) over the weight support.
  double gap = 0.0;
  std::vector<double> log_det_trace;
};

/// Minimum-volume origin-centred ellipsoid containing an origin-symmetric
/// point set.
///
/// Coordinate ascent on the dual weights (Khachiyan's barycentric update,
/// with Todd-Yildirim away steps for linear convergence). Each point and its
/// negative contribute the same outer product, so the solver works on one
/// representative per antipodal pair. On exit the duality gap is at most
/// tol / 4 and M is scaled so that max_s s^T M s == 1 exactly.
///
/// Throws NotFullDimensional if the points lie in a plane and NoConvergence
/// if the iteration cap is reached first.
MveeResult mvee_centered_detailed(std::span<const Vec3> points, const MveeOptions& options = {});

inline Ellipsoid mvee_centered(std::span<const Vec3> points, double tol = 1e-9) {
  MveeOptions options;
  options.tol = tol;
  return mvee_centered_detailed(points, options).ellipsoid;
}

/// Points with s^T M s >= 1 - tol, one per antipodal pair, each reported with
/// the lexicographically larger sign. Throws TooFewContacts when the contact
/// directions do not span R^3.
std::vector<Vec3> contact_points(const Ellipsoid& E, std::span<const Vec3> points, double tol = 1e-9);

}  // namespace isokit
