#include "isokit/john.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "isokit/error.hpp"

namespace isokit {
namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Cols6 = Eigen::Matrix<double, 6, Eigen::Dynamic>;

constexpr double kNnlsTol = 1e-10;
constexpr double kResidualLimit = 1e-7;

// u u^T as a vector in R^6 under the Frobenius inner product.
Vec6 sym_outer(const Vec3& u) {
  const double r2 = std::sqrt(2.0);
  Vec6 v;
  v << u[0] * u[0], u[1] * u[1], u[2] * u[2], r2 * u[0] * u[1], r2 * u[0] * u[2], r2 * u[1] * u[2];
  return v;
}

// Lawson-Hanson active set method for min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Cols6& A, const Vec6& b) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);

  const auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Cols6 Ap(6, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    const Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    z.setZero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[static_cast<Eigen::Index>(k)];
  };

  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Eigen::VectorXd grad = A.transpose() * (b - A * x);
    Eigen::Index t = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && grad[j] > kNnlsTol && (t < 0 || grad[j] > grad[t])) t = j;
    }
    if (t < 0) break;
    passive[t] = true;

    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      Eigen::VectorXd z;
      solve_passive(z);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z[j] <= 0) feasible = false;
      }
      if (feasible) {
        x = z;
        break;
      }
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z[j] <= 0) alpha = std::min(alpha, x[j] / (x[j] - z[j]));
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x[j] <= 1e-15) {
          passive[j] = false;
          x[j] = 0;
        }
      }
    }
  }
  return x;
}

// Caratheodory: while the support columns are dependent, slide along a null
// vector until one weight vanishes. Keeps A x unchanged.
void reduce_support(const Cols6& A, Eigen::VectorXd& x) {
  for (;;) {
    std::vector<Eigen::Index> supp;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (x[j] > 0) supp.push_back(j);
    }
    Cols6 As(6, static_cast<Eigen::Index>(supp.size()));
    for (std::size_t k = 0; k < supp.size(); ++k) As.col(static_cast<Eigen::Index>(k)) = A.col(supp[k]);
    Eigen::FullPivLU<Cols6> lu(As);
    lu.setThreshold(1e-10);
    if (supp.size() <= 6 && lu.rank() == static_cast<Eigen::Index>(supp.size())) return;
    const Eigen::MatrixXd kernel = lu.kernel();
    Eigen::VectorXd d = kernel.col(0);
    if (d.maxCoeff() <= 0) d = -d;
    double step = std::numeric_limits<double>::infinity();
    Eigen::Index hit = -1;
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      if (d[k] > 0) {
        const double s = x[supp[k]] / d[k];
        if (s < step) step = s, hit = k;
      }
    }
    for (Eigen::Index k = 0; k < d.size(); ++k) x[supp[k]] = std::max(0.0, x[supp[k]] - step * d[k]);
    x[supp[hit]] = 0.0;
  }
}

}  // namespace

double JohnDecomposition::residual() const {
  Mat3 S = -Mat3::Identity();
  for (int i = 0; i < 6; ++i) S += lambda[i] * u[i] * u[i].transpose();
  return S.norm();
}

Mat3 transform_to_ball(const Ellipsoid& E) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (E.M + E.M.transpose()));
  const Vec3 root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Mat3 T = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (T + T.transpose());
}

JohnDecomposition john_weights(std::span<const Vec3> contacts) {
  if (contacts.size() < 3) throw NoDecomposition("need at least three contact directions");
  const auto n = static_cast<Eigen::Index>(contacts.size());
  Cols6 A(6, n);
  for (Eigen::Index j = 0; j < n; ++j) A.col(j) = sym_outer(contacts[static_cast<std::size_t>(j)]);
  Vec6 b;
  b << 1, 1, 1, 0, 0, 0;

  Eigen::VectorXd x = nnls(A, b);
  reduce_support(A, x);

  std::vector<std::size_t> support, spare;
  for (std::size_t j = 0; j < contacts.size(); ++j) (x[static_cast<Eigen::Index>(j)] > 0 ? support : spare).push_back(j);
  if (support.empty()) throw NoDecomposition("no contact direction received weight");
  // Pad with unused contacts first, then with repeats of supporting ones.
  std::vector<std::size_t> slots = support;
  for (std::size_t j : spare) {
    if (slots.size() == 6) break;
    slots.push_back(j);
  }
  for (std::size_t k = 0; slots.size() < 6; ++k) slots.push_back(support[k % support.size()]);

  std::array<std::size_t, 6> order;
  std::iota(order.begin(), order.end(), 0);
  std::array<double, 6> w{};
  for (std::size_t k = 0; k < 6; ++k) w[k] = k < support.size() ? x[static_cast<Eigen::Index>(slots[k])] : 0.0;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });

  JohnDecomposition D;
  for (std::size_t k = 0; k < 6; ++k) {
    D.u[k] = contacts[slots[order[k]]];
    D.lambda[k] = w[order[k]];
  }
  const double res = D.residual();
  if (!(res <= kResidualLimit)) {
    throw NoDecomposition("identity decomposition residual " + std::to_string(res) + " exceeds 1e-7");
  }
  return D;
}

Witness witness_triple(const JohnDecomposition& D) {
  Witness best;
  best.value = -1.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (int k = j + 1; k < 6; ++k) {
        Mat3 m;
        m << D.u[i], D.u[j], D.u[k];
        const double v = std::abs(m.determinant());
        if (v > best.value) best = {{i, j, k}, v};
      }
    }
  }
  return best;
}

double isodiametric_quotient(const Polytope& P) {
  const double d = diameter(P);
  return volume(P) / (d * d * d);
}

NormalizationResult normalize(const Polytope& P, double tol) {
  const Polytope body = P.is_exact() ? P.transformed(Mat3::Identity()) : P;
  const Polytope diff = difference_body(body);
  std::vector<Vec3> pts;
  pts.reserve(diff.size());
  for (const auto& v : diff.vertices()) pts.push_back(to_vec(v));

  MveeOptions options;
  options.tol = tol;
  const Ellipsoid E = mvee_centered_detailed(pts, options).ellipsoid;

  NormalizationResult r;
  r.T = transform_to_ball(E);
  std::vector<Vec3> directions;
  for (const auto& s : contact_points(E, pts, tol)) directions.push_back((r.T * s).normalized());
  r.decomposition = john_weights(directions);
  r.witness = witness_triple(r.decomposition);
  r.image = body.transformed(r.T);
  r.idq = isodiametric_quotient(r.image);
  return r;
}

}  // namespace isokit
