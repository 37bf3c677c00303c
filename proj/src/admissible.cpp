#include "isokit/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/LU>

namespace isokit {

double AdmissibleSet::max_abs() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

std::array<double, 10> AdmissibleSet::squares() const {
  std::array<double, 10> s;
  for (int k = 0; k < 10; ++k) s[k] = a[k] * a[k];
  return s;
}

LambdaVector::LambdaVector(const std::array<double, 6>& values) : values_(values) {
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw InvariantError("weights must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 3.0) > 1e-9) throw InvariantError("weights must sum to 3");
  if (*std::max_element(values.begin(), values.end()) > values[5]) {
    throw InvariantError("the sixth weight must be the largest");
  }
}

AdmissibleSet from_contact_vectors(const std::array<Vec3, 6>& u) {
  AdmissibleSet A;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      Mat3 m;
      m << u[i - 1], u[j - 1], u[5];
      A.set(i, j, m.determinant());
    }
  }
  return A;
}

std::array<double, 5> relation_residuals(const AdmissibleSet& A) {
  const auto a = [&](int i, int j) { return A.get(i, j); };
  return {
      a(1, 3) * a(2, 4) - a(1, 4) * a(2, 3) - a(1, 2) * a(3, 4),
      a(1, 3) * a(2, 5) - a(1, 5) * a(2, 3) - a(1, 2) * a(3, 5),
      a(1, 4) * a(2, 5) - a(1, 5) * a(2, 4) - a(1, 2) * a(4, 5),
      a(1, 4) * a(3, 5) - a(1, 5) * a(3, 4) - a(1, 3) * a(4, 5),
      a(2, 4) * a(3, 5) - a(2, 5) * a(3, 4) - a(2, 3) * a(4, 5),
  };
}

bool check_relations(const AdmissibleSet& A, double tol) {
  for (double r : relation_residuals(A)) {
    if (!(std::abs(r) <= tol)) return false;
  }
  return true;
}

double objective(const AdmissibleSet& A, const std::array<double, 6>& l) {
  double s = 0.0;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      const double v = A.a[AdmissibleSet::slot(i, j)];
      s += l[i - 1] * l[j - 1] * v * v;
    }
  }
  return s;
}

AdmissibleSet permuted(const AdmissibleSet& A, const std::array<int, 5>& p) {
  AdmissibleSet B;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) B.set(i, j, A.get(p[i - 1] + 1, p[j - 1] + 1));
  }
  return B;
}

std::array<Vec3, 6> tetrahedron_edge_directions() {
  const double s = 1.0 / std::sqrt(2.0);
  return {Vec3(1, 1, 0) * s, Vec3(1, -1, 0) * s, Vec3(1, 0, 1) * s,
          Vec3(1, 0, -1) * s, Vec3(0, 1, 1) * s, Vec3(0, 1, -1) * s};
}

AdmissibleSet tetrahedron_witness() {
  // Integer determinants of the unnormalized directions, halved: the exact
  // value of sqrt(2) * det(u_i, u_j, u_6).
  const std::array<Point3<int>, 6> v = {{{1, 1, 0}, {1, -1, 0}, {1, 0, 1},
                                         {1, 0, -1}, {0, 1, 1}, {0, 1, -1}}};
  AdmissibleSet A;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) A.set(i, j, det3(v[i - 1], v[j - 1], v[5]) / 2.0);
  }
  return A;
}

namespace {

// Entries whose sign is searched, everything except 12 and 13.
constexpr std::array<std::pair<int, int>, 8> kFree = {
    {{1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};

std::vector<AdmissibleSet> peculiar_candidates(double p, double q) {
  if (!(p > 0.0 && p <= 1.0 && q > 0.0 && q <= 1.0) || p + q < 1.0) {
    throw InfeasibleMagnitudes("peculiar magnitudes need 0 < |a14|, |a15| <= 1 and |a14| + |a15| >= 1");
  }
  AdmissibleSet mag;
  mag.set(1, 2, 1.0);
  mag.set(1, 3, 1.0);
  mag.set(2, 4, 1.0);
  mag.set(3, 5, 1.0);
  mag.set(4, 5, 1.0);
  mag.set(1, 4, p);
  mag.set(1, 5, q);
  mag.set(2, 3, (p + q - 1.0) / (p * q));
  mag.set(2, 5, (1.0 - q) / p);
  mag.set(3, 4, (1.0 - p) / q);

  std::vector<AdmissibleSet> found;
  for (unsigned bits = 0; bits < (1u << kFree.size()); ++bits) {
    AdmissibleSet A = mag;
    bool redundant = false;
    for (std::size_t k = 0; k < kFree.size(); ++k) {
      if (!(bits >> k & 1u)) continue;
      const auto [i, j] = kFree[k];
      const double v = A.get(i, j);
      if (v == 0.0) {
        redundant = true;  // -0 is the same set as +0
        break;
      }
      A.set(i, j, -v);
    }
    if (!redundant && check_relations(A, 1e-9)) found.push_back(A);
  }
  return found;
}

}  // namespace

AdmissibleSet peculiar_from(double a14_abs, double a15_abs, unsigned sign_seed) {
  const auto found = peculiar_candidates(a14_abs, a15_abs);
  if (found.empty()) throw NoSignAssignment("no sign pattern satisfies the determinant relations");
  return found[sign_seed % found.size()];
}

std::size_t peculiar_sign_count(double a14_abs, double a15_abs) {
  return peculiar_candidates(a14_abs, a15_abs).size();
}

double f_eval(double x, double y, const std::array<double, 6>& l) {
  const double d = x * y - 1.0;
  if (d == 0.0) throw SingularPoint("f is undefined where xy = 1");
  const double p = (y - 1.0) / d;
  const double q = (x - 1.0) / d;
  return l[0] * l[4] * p * p + l[0] * l[3] * q * q + l[1] * l[2] * d * d + l[1] * l[4] * y * y +
         l[2] * l[3] * x * x;
}

double peculiar_bound_value(double x, double y, const std::array<double, 6>& l) {
  return l[0] * l[1] + l[0] * l[2] + l[1] * l[3] + l[2] * l[4] + l[3] * l[4] + f_eval(x, y, l);
}

}  // namespace isokit
