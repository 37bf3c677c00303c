#include "isokit/mvee.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "isokit/error.hpp"

namespace isokit {
namespace {

constexpr double kDim = 3.0;

// Sign convention for antipodal classes: first nonzero coordinate positive.
Vec3 canonical_sign(const Vec3& s) {
  for (int k = 0; k < 3; ++k) {
    if (s[k] > 0) return s;
    if (s[k] < 0) return -s;
  }
  return s;
}

bool lex_less(const Vec3& a, const Vec3& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(), b.data() + 3);
}

std::vector<Vec3> antipodal_classes(std::span<const Vec3> points) {
  std::vector<Vec3> reps;
  reps.reserve(points.size());
  for (const auto& p : points) {
    if (p.isZero(0.0)) continue;
    reps.push_back(canonical_sign(p));
  }
  std::sort(reps.begin(), reps.end(), lex_less);
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

// Ratio of smallest to largest eigenvalue of sum s s^T over unit directions.
double spread(std::span<const Vec3> points) {
  Mat3 S = Mat3::Zero();
  for (const auto& p : points) {
    const double n = p.norm();
    if (n > 0) S += (p / n) * (p / n).transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(S, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev[2] > 0 ? ev[0] / ev[2] : 0.0;
}

Mat3 moment(const std::vector<Vec3>& reps, const std::vector<double>& w) {
  Mat3 X = Mat3::Zero();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (w[i] > 0) X.noalias() += w[i] * reps[i] * reps[i].transpose();
  }
  return X;
}

}  // namespace

MveeResult mvee_centered_detailed(std::span<const Vec3> points, const MveeOptions& options) {
  if (!(options.tol > 0)) throw PreconditionError("MVEE tolerance must be positive");
  MveeResult result;
  auto& reps = result.representatives;
  reps = antipodal_classes(points);
  if (reps.size() < 3 || spread(reps) < 1e-12) {
    throw NotFullDimensional("point set does not span R^3");
  }

  const std::size_t m = reps.size();
  const double target = options.tol / 4.0;
  const std::size_t cap =
      options.max_iterations > 0
          ? options.max_iterations
          : static_cast<std::size_t>(100.0 * static_cast<double>(m) * std::log(1.0 / options.tol)) + 100;

  auto& w = result.weights;
  w.assign(m, 1.0 / static_cast<double>(m));
  Mat3 X = moment(reps, w);
  Mat3 Xinv = X.inverse();
  std::vector<double> kappa(m);

  std::size_t iter = 0;
  for (;; ++iter) {
    if (iter % 64 == 0) {
      X = moment(reps, w);
      Xinv = X.inverse();
    }
    std::size_t up = 0, down = m;
    for (std::size_t i = 0; i < m; ++i) {
      kappa[i] = reps[i].dot(Xinv * reps[i]);
      if (kappa[i] > kappa[up]) up = i;
      if (w[i] > 0 && (down == m || kappa[i] < kappa[down])) down = i;
    }
    const double eps_up = kappa[up] / kDim - 1.0;
    const double eps_down = 1.0 - kappa[down] / kDim;
    result.gap = std::max(eps_up, eps_down);
    if (options.record_trace) result.log_det_trace.push_back(std::log(X.determinant()));
    if (result.gap <= target) break;
    if (iter >= cap) {
      throw NoConvergence("MVEE ascent hit the iteration cap with gap " + std::to_string(result.gap));
    }

    std::size_t idx;
    double beta;
    if (eps_up >= eps_down) {
      idx = up;
      beta = (kappa[up] - kDim) / (kDim * (kappa[up] - 1.0));
    } else {
      idx = down;
      const double floor = -w[down] / (1.0 - w[down]);
      beta = kappa[down] > 1.0 ? std::max((kappa[down] - kDim) / (kDim * (kappa[down] - 1.0)), floor)
                               : floor;
    }

    const double keep = 1.0 - beta;
    for (auto& wi : w) wi *= keep;
    w[idx] += beta;
    if (w[idx] < 1e-300) w[idx] = 0.0;

    // Sherman-Morrison on X <- keep * (X + c s s^T).
    const Vec3& s = reps[idx];
    const double c = beta / keep;
    const Vec3 Xs = Xinv * s;
    X = keep * X + beta * s * s.transpose();
    Xinv = (Xinv - (c / (1.0 + c * kappa[idx])) * Xs * Xs.transpose()) / keep;
  }
  result.iterations = iter;

  X = moment(reps, w);
  Xinv = X.inverse();
  double kmax = 0;
  for (const auto& s : reps) kmax = std::max(kmax, s.dot(Xinv * s));
  Mat3 M = Xinv / kmax;
  result.ellipsoid.M = 0.5 * (M + M.transpose());
  return result;
}

std::vector<Vec3> contact_points(const Ellipsoid& E, std::span<const Vec3> points, double tol) {
  std::vector<Vec3> contacts;
  for (const auto& s : points) {
    if (s.dot(E.M * s) >= 1.0 - tol) contacts.push_back(canonical_sign(s));
  }
  std::sort(contacts.begin(), contacts.end(), lex_less);
  contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());
  if (contacts.size() < 3 || spread(contacts) < 1e-10) {
    throw TooFewContacts("contact directions do not span R^3 (" + std::to_string(contacts.size()) +
                         " antipodal classes found)");
  }
  return contacts;
}

}  // namespace isokit
