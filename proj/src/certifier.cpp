#include "isokit/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include "isokit/parallel.hpp"

namespace isokit {
namespace {

// Free variables of one of the two parametrizations. x[0] is the divisor
// (a12, or a13 when a12 = 0); the rest enter the set affinely.
struct Param {
  bool a12_zero = false;
  std::array<double, 7> x{};
  int size() const { return a12_zero ? 6 : 7; }
};

AdmissibleSet expand(const Param& p) {
  AdmissibleSet A;
  const auto& x = p.x;
  if (!p.a12_zero) {
    const double r = x[0], a13 = x[1], a14 = x[2], a15 = x[3], a23 = x[4], a24 = x[5], a25 = x[6];
    A.a = {r,   a13, a14, a15, a23, a24, a25, (a13 * a24 - a14 * a23) / r, (a13 * a25 - a15 * a23) / r,
           (a14 * a25 - a15 * a24) / r};
  } else {
    const double s = x[0], a14 = x[1], a15 = x[2], a23 = x[3], a34 = x[4], a35 = x[5];
    A.a = {0.0, s, a14, a15, a23, a14 * a23 / s, a15 * a23 / s, a34, a35, (a14 * a35 - a15 * a34) / s};
  }
  return A;
}

std::optional<Param> param_from_set(const AdmissibleSet& A, double eps) {
  Param p;
  if (std::abs(A.get(1, 2)) >= eps) {
    p.x = {A.get(1, 2), A.get(1, 3), A.get(1, 4), A.get(1, 5), A.get(2, 3), A.get(2, 4), A.get(2, 5)};
    return p;
  }
  if (A.get(1, 2) == 0.0 && std::abs(A.get(1, 3)) >= eps) {
    p.a12_zero = true;
    p.x = {A.get(1, 3), A.get(1, 4), A.get(1, 5), A.get(2, 3), A.get(3, 4), A.get(3, 5), 0.0};
    return p;
  }
  return std::nullopt;
}

// Slots of the entries proportional to 1 / x[0].
constexpr std::array<int, 3> kDerivedFull = {7, 8, 9};   // 34, 35, 45
constexpr std::array<int, 3> kDerivedZero = {5, 6, 9};   // 24, 25, 45

// Every admissible set is a_ij = det(p_i, p_j) for five points of the
// plane: with (i, j) a largest entry, p_i = (1, 0), p_j = (0, a_ij) and
// p_k = (-a_jk / a_ij, a_ik).
using Planar = std::array<std::array<double, 2>, 5>;

AdmissibleSet set_from_planar(const Planar& p) {
  AdmissibleSet A;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) A.set(i + 1, j + 1, p[i][0] * p[j][1] - p[i][1] * p[j][0]);
  }
  return A;
}

std::optional<Planar> planar_from_set(const AdmissibleSet& A) {
  int bi = 1, bj = 2;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      if (std::abs(A.get(i, j)) > std::abs(A.get(bi, bj))) bi = i, bj = j;
    }
  }
  const double d = A.get(bi, bj);
  if (d == 0.0) return std::nullopt;
  Planar p;
  for (int k = 1; k <= 5; ++k) p[k - 1] = {-A.get(bj, k) / d, A.get(bi, k)};
  p[bi - 1] = {1.0, 0.0};
  p[bj - 1] = {0.0, d};
  return p;
}

class Ascent {
 public:
  Ascent(const std::array<double, 6>& lambda, double eps, double tol)
      : lambda_(lambda), eps_(eps), tol_(tol) {}

  double value(const Param& p) const { return objective(expand(p), lambda_); }

  // Coordinate ascent from a feasible start; returns the final value.
  double run(Param& p) const {
    double v = value(p);
    for (int sweep = 0; sweep < 500; ++sweep) {
      const double before = v;
      move_divisor(p, v);
      for (int c = 1; c < p.size(); ++c) move_affine(p, c, v);
      if (v - before <= tol_ * (1.0 + v)) break;
    }
    return v;
  }

  // Same scheme on the planar form: one coordinate of one point moves, the
  // four entries of that row change affinely.
  double run(Planar& p) const {
    double v = objective(set_from_planar(p), lambda_);
    for (int sweep = 0; sweep < 500; ++sweep) {
      const double before = v;
      for (int i = 0; i < 5; ++i) {
        for (int k = 0; k < 2; ++k) {
          double lo = -std::numeric_limits<double>::infinity();
          double hi = std::numeric_limits<double>::infinity();
          for (int j = 0; j < 5; ++j) {
            if (j == i) continue;
            const double a = p[i][0] * p[j][1] - p[i][1] * p[j][0];
            const double s = k == 0 ? p[j][1] : -p[j][0];
            if (std::abs(s) < 1e-300) continue;
            double d1 = (-1.0 - a) / s, d2 = (1.0 - a) / s;
            if (d1 > d2) std::swap(d1, d2);
            lo = std::max(lo, d1);
            hi = std::min(hi, d2);
          }
          if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) continue;
          for (double d : {lo, hi}) {
            Planar q = p;
            q[i][k] += d;
            const AdmissibleSet A = set_from_planar(q);
            if (!(A.max_abs() <= 1.0 + 1e-12)) continue;
            const double w = objective(A, lambda_);
            if (w > v) v = w, p = q;
          }
        }
      }
      if (v - before <= tol_ * (1.0 + v)) break;
    }
    return v;
  }

 private:
  void try_candidate(Param& p, int c, double t, double& v) const {
    Param q = p;
    q.x[c] = t;
    const AdmissibleSet A = expand(q);
    if (!(A.max_abs() <= 1.0 + 1e-12)) return;
    const double w = objective(A, lambda_);
    if (w > v) {
      v = w;
      p = q;
    }
  }

  void move_divisor(Param& p, double& v) const {
    const AdmissibleSet A = expand(p);
    const double r = p.x[0];
    double lo = eps_;
    for (int k : p.a12_zero ? kDerivedZero : kDerivedFull) lo = std::max(lo, std::abs(A.a[k] * r));
    if (lo > 1.0) return;
    const double sign = r < 0 ? -1.0 : 1.0;
    try_candidate(p, 0, sign * lo, v);
    try_candidate(p, 0, sign * 1.0, v);
  }

  void move_affine(Param& p, int c, double& v) const {
    const double t0 = p.x[c];
    const AdmissibleSet A0 = expand(p);
    Param q = p;
    q.x[c] = t0 + 1.0;
    const AdmissibleSet A1 = expand(q);
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 10; ++k) {
      const double s = A1.a[k] - A0.a[k];
      if (std::abs(s) < 1e-300) continue;
      double d1 = (-1.0 - A0.a[k]) / s, d2 = (1.0 - A0.a[k]) / s;
      if (d1 > d2) std::swap(d1, d2);
      lo = std::max(lo, d1);
      hi = std::min(hi, d2);
    }
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) return;
    try_candidate(p, c, t0 + lo, v);
    try_candidate(p, c, t0 + hi, v);
  }

  std::array<double, 6> lambda_;
  double eps_;
  double tol_;
};

// Random feasible start: divisor away from 0, rows on the faces of the cube,
// then the whole set scaled into [-1, 1] (entries are homogeneous of degree 1).
Param random_start(std::mt19937_64& rng, bool a12_zero, double eps) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(eps, 1.0);
  std::uniform_int_distribution<int> pick(0, 2);
  std::bernoulli_distribution coin(0.5);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Param p;
    p.a12_zero = a12_zero;
    p.x[0] = coin(rng) ? mag(rng) : -mag(rng);
    for (int c = 1; c < p.size(); ++c) p.x[c] = unit(rng);
    if (!a12_zero) {
      p.x[1 + pick(rng)] = coin(rng) ? 1.0 : -1.0;
      p.x[4 + pick(rng)] = coin(rng) ? 1.0 : -1.0;
    }
    const double m = expand(p).max_abs();
    if (m > 1.0) {
      for (int c = 0; c < p.size(); ++c) p.x[c] /= m;
    }
    if (std::abs(p.x[0]) >= eps && expand(p).max_abs() <= 1.0 + 1e-12) return p;
  }
  Param p;
  p.a12_zero = a12_zero;
  p.x[0] = 1.0;
  return p;
}

constexpr int kKicks = 32;

Param perturbed(const Param& p, std::mt19937_64& rng, double eps, double scale) {
  std::normal_distribution<double> noise(0.0, scale);
  Param q = p;
  for (int c = 0; c < q.size(); ++c) q.x[c] += noise(rng);
  if (std::abs(q.x[0]) < eps) q.x[0] = q.x[0] < 0 ? -eps : eps;
  const double m = expand(q).max_abs();
  if (m > 1.0) {
    for (int c = 0; c < q.size(); ++c) q.x[c] /= m;
  }
  if (std::abs(q.x[0]) < eps || !(expand(q).max_abs() <= 1.0 + 1e-12)) return p;
  return q;
}

Planar perturbed(const Planar& p, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> noise(0.0, scale);
  Planar q = p;
  for (auto& pt : q) {
    pt[0] += noise(rng);
    pt[1] += noise(rng);
  }
  const double m = set_from_planar(q).max_abs();
  if (m > 1.0) {
    const double f = 1.0 / std::sqrt(m);  // entries are quadratic in the points
    for (auto& pt : q) pt[0] *= f, pt[1] *= f;
  }
  return set_from_planar(q).max_abs() <= 1.0 + 1e-12 ? q : p;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

double boundary_fraction(const AdmissibleSet& A) {
  int rows = 0;
  for (int i = 1; i <= 5; ++i) {
    double m = 0.0;
    for (int j = 1; j <= 5; ++j) m = std::max(m, std::abs(A.get(i, j)));
    if (m >= 1.0 - 1e-6) ++rows;
  }
  return rows / 5.0;
}

std::vector<std::array<int, 5>> all_permutations() {
  std::vector<std::array<int, 5>> out;
  std::array<int, 5> p = {0, 1, 2, 3, 4};
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

const std::vector<std::array<int, 5>>& permutations() {
  static const auto perms = all_permutations();
  return perms;
}

bool matches_peculiar(const AdmissibleSet& B, double tol) {
  const auto near = [&](double v, double target) { return std::abs(std::abs(v) - target) <= tol; };
  for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}}) {
    if (!near(B.get(i, j), 1.0)) return false;
  }
  const double p = std::abs(B.get(1, 4)), q = std::abs(B.get(1, 5));
  if (p <= tol || q <= tol || p + q < 1.0 - tol) return false;
  return near(B.get(2, 3), (p + q - 1.0) / (p * q)) && near(B.get(2, 5), (1.0 - q) / p) &&
         near(B.get(3, 4), (1.0 - p) / q);
}

}  // namespace

CertificateReport maximize_objective(const LambdaVector& L, const SearchOptions& options) {
  const Ascent ascent(L.values(), options.epsilon, options.tol);
  CertificateReport report;
  report.lambda = L.values();
  report.restarts = options.restarts;
  report.best_value = -1.0;

  const auto consider = [&](Param p) {
    const double v = ascent.run(p);
    if (v > report.best_value) {
      report.best_value = v;
      report.best_set = expand(p);
    }
  };

  if (options.tetrahedron_starts) {
    const AdmissibleSet base = tetrahedron_witness();
    for (const auto& perm : permutations()) {
      if (auto p = param_from_set(permuted(base, perm), options.epsilon)) consider(*p);
    }
  }
  for (std::size_t r = 0; r < options.restarts; ++r) {
    auto rng = make_rng(options.seed, options.stream, r);
    Param p = random_start(rng, r % 4 == 3, options.epsilon);
    double v = ascent.run(p);
    // Coordinate moves stall at corners; kick and re-climb a few times.
    for (int kick = 0; kick < kKicks; ++kick) {
      Param q = perturbed(p, rng, options.epsilon, kick % 2 ? 0.05 : 0.3);
      const double w = ascent.run(q);
      if (w > v) v = w, p = q;
    }
    AdmissibleSet best = expand(p);
    if (auto planar = planar_from_set(best)) {
      Planar x = *planar;
      double pv = ascent.run(x);
      for (int kick = 0; kick < kKicks; ++kick) {
        Planar y = perturbed(x, rng, kick % 2 ? 0.05 : 0.3);
        const double w = ascent.run(y);
        if (w > pv) pv = w, x = y;
      }
      if (pv > v) v = pv, best = set_from_planar(x);
    }
    if (v > report.best_value) {
      report.best_value = v;
      report.best_set = best;
    }
  }
  if (report.best_value < 0) report.best_value = 0.0;  // no restarts and no seeds
  report.boundary_diagnostic = boundary_fraction(report.best_set);
  return report;
}

std::string_view to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::skipped:
      return "skipped";
    case BoundaryClass::contains_zero:
      return "contains_zero";
    case BoundaryClass::peculiar:
      return "peculiar";
    case BoundaryClass::unclassified:
      return "unclassified";
  }
  return "unknown";
}

BoundaryClass boundary_structure_check(const CertificateReport& report) {
  constexpr double tol = 1e-4;
  if (report.best_value < 2.0 - 0.05) return BoundaryClass::skipped;
  for (double v : report.best_set.a) {
    if (std::abs(v) <= tol) return BoundaryClass::contains_zero;
  }
  for (const auto& perm : permutations()) {
    if (matches_peculiar(permuted(report.best_set, perm), tol)) return BoundaryClass::peculiar;
  }
  return BoundaryClass::unclassified;
}

std::array<double, 6> sample_lambda(std::uint64_t seed, std::size_t index, bool zero_first) {
  auto rng = make_rng(seed, index, zero_first ? 0x5a5a5a5aULL : 0xa5a5a5a5ULL);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const int first = zero_first ? 1 : 0;
  const int cuts = 5 - first;
  std::array<double, 5> c{};
  for (int k = 0; k < cuts; ++k) c[k] = u(rng);
  std::sort(c.begin(), c.begin() + cuts);
  std::array<double, 6> l{};
  double prev = 0.0;
  for (int k = 0; k < cuts; ++k) {
    l[first + k] = c[k] - prev;
    prev = c[k];
  }
  l[5] = 3.0 - prev;
  const auto top = std::max_element(l.begin() + first, l.end());
  std::iter_swap(top, l.begin() + 5);
  return l;
}

CertifySummary certify_random(std::size_t count, std::uint64_t seed, std::size_t restarts, double tol,
                              bool zero_first) {
  CertifySummary s;
  s.samples = count;
  s.restarts = restarts;
  s.zero_first = zero_first;
  s.bound = zero_first ? 9.0 / 5.0 : 2.0;
  s.global_max = -1.0;
  if (!zero_first) {
    s.witness_value = objective(tetrahedron_witness(), LambdaVector::uniform());
    s.global_max = s.witness_value;
    s.argmax_lambda = LambdaVector::uniform().values();
  }

  std::vector<CertificateReport> reports(count);
  parallel_for(count, [&](std::size_t i) {
    SearchOptions options;
    options.restarts = restarts;
    options.seed = seed;
    options.stream = (zero_first ? (1ULL << 63) : 0ULL) | i;
    reports[i] = maximize_objective(LambdaVector(sample_lambda(seed, i, zero_first)), options);
  });

  for (const auto& r : reports) {
    if (r.best_value > s.global_max) {
      s.global_max = r.best_value;
      s.argmax_lambda = r.lambda;
    }
    if (r.best_value > s.bound + tol) s.violations.push_back({r.lambda, r.best_value});
    ++s.classes[static_cast<std::size_t>(boundary_structure_check(r))];
  }
  if (s.global_max < 0) s.global_max = 0.0;
  return s;
}

}  // namespace isokit
