#include "isokit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isokit/kernels.hpp"
#include "isokit/parallel.hpp"

namespace isokit {
namespace {

constexpr double kSlack = 1e-12;
constexpr std::size_t kMaxReportedViolations = 100;

BoundCheck make_check(double value, double bound) { return {value, bound, value <= bound + kSlack}; }

double pair_sum(const LambdaVector& L) {
  double s = 0.0;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) s += L[i] * L[j];
  }
  return s;
}

void require_distinct(std::initializer_list<int> idx, int lo) {
  for (auto a = idx.begin(); a != idx.end(); ++a) {
    if (*a < lo || *a > 5) throw IndexError("index " + std::to_string(*a) + " out of range");
    for (auto b = a + 1; b != idx.end(); ++b) {
      if (*a == *b) throw IndexError("indices must be distinct");
    }
  }
}

}  // namespace

BoundCheck pair_drop_sum(const LambdaVector& L, int k, int l, int m, int n) {
  require_distinct({k, l, m, n}, 1);
  return make_check(pair_sum(L) - L[k] * L[l] - L[m] * L[n], 2.0);
}

BoundCheck triple_drop_sum(const LambdaVector& L, int k, int l, int n) {
  require_distinct({k, l, n}, 1);
  return make_check(pair_sum(L) - L[k] * L[l] - L[l] * L[n] - L[k] * L[n], 9.0 / 5.0);
}

BoundCheck zero_lambda_drop(const LambdaVector& L, int k, int l) {
  if (L[1] != 0.0) throw PreconditionError("zero_lambda_drop needs lambda_1 == 0");
  require_distinct({k, l}, 2);
  return make_check(pair_sum(L) - L[k] * L[l], 9.0 / 5.0);
}

BoundCheck weighted_sum(const LambdaVector& L) {
  const double light = L[1] * L[5] + L[1] * L[4] + L[2] * L[3] + L[2] * L[5] + L[3] * L[4];
  const double heavy = L[1] * L[2] + L[1] * L[3] + L[2] * L[4] + L[3] * L[5] + L[4] * L[5];
  return make_check(3.0 * light / 5.0 + heavy, 2.0);
}

BoundCheck ignore_term_bound(double a, double b, double c, double x, double y, double z) {
  if (!(a >= 0 && b >= 0 && c >= 0)) throw PreconditionError("coefficients must be nonnegative");
  if (!(std::abs(x) <= 1 && std::abs(y) <= 1 && std::abs(z) <= 1)) {
    throw PreconditionError("x, y, z must lie in [-1, 1]");
  }
  if (!(std::abs(x + y + z) <= 1e-12)) throw PreconditionError("x + y + z must vanish");
  return make_check(a * x * x + b * y * y + c * z * z, a + b + c - std::min({a, b, c}));
}

namespace {

struct Chunk {
  std::size_t points = 0;
  std::size_t violation_count = 0;
  std::array<FamilyReport, 4> families;
  std::vector<LemmaViolation> violations;
};

// All compositions with first part k1, in lexicographic order of
// (k2, k3, k4, k5), flushed to `sink` in blocks.
template <class Sink>
void enumerate_first(int N, int k1, Sink&& sink) {
  constexpr std::size_t kBlock = 4096;
  std::array<std::vector<double>, 6> cols;
  const auto flush = [&] {
    if (!cols[0].empty()) sink(cols);
    for (auto& c : cols) c.clear();
  };
  const double scale = 3.0;
  for (int k2 = 0; k1 + k2 <= N; ++k2) {
    for (int k3 = 0; k1 + k2 + k3 <= N; ++k3) {
      for (int k4 = 0; k1 + k2 + k3 + k4 <= N; ++k4) {
        for (int k5 = 0; k1 + k2 + k3 + k4 + k5 <= N; ++k5) {
          const int k6 = N - k1 - k2 - k3 - k4 - k5;
          if (k6 < std::max({k1, k2, k3, k4, k5})) continue;
          const int k[6] = {k1, k2, k3, k4, k5, k6};
          for (int t = 0; t < 6; ++t) cols[t].push_back(scale * k[t] / N);
          if (cols[0].size() == kBlock) flush();
        }
      }
    }
  }
  flush();
}

}  // namespace

LemmaGridReport grid_verify_all(double step) {
  if (!(step > 0.0 && step <= 0.25)) throw ConfigError("grid step must lie in (0, 0.25]");
  const int N = static_cast<int>(std::ceil(3.0 / step - 1e-9));

  const std::array<std::pair<const char*, double>, 4> families = {
      {{"pair_drop", 2.0}, {"triple_drop", 9.0 / 5.0}, {"zero_lambda_drop", 9.0 / 5.0}, {"weighted_sum", 2.0}}};

  // One task per value of the first part.
  const std::size_t first_count = static_cast<std::size_t>(N) + 1;
  std::vector<Chunk> chunks(first_count);
  parallel_for(first_count, [&](std::size_t k1) {
    Chunk& chunk = chunks[k1];
    for (int f = 0; f < 4; ++f) {
      chunk.families[f].name = families[f].first;
      chunk.families[f].bound = families[f].second;
    }
    std::array<std::vector<double>, 4> out;
    enumerate_first(N, static_cast<int>(k1), [&](const std::array<std::vector<double>, 6>& cols) {
      const std::size_t n = cols[0].size();
      for (auto& o : out) o.resize(n);
      kernels::LambdaColumns in;
      for (int t = 0; t < 6; ++t) in.lambda[t] = cols[t];
      kernels::lemma_batch(in, {out[0], out[1], out[2], out[3]});
      chunk.points += n;
      for (std::size_t i = 0; i < n; ++i) {
        for (int f = 0; f < 4; ++f) {
          const double v = out[f][i];
          auto& fam = chunk.families[f];
          if (v > fam.max_value) {
            fam.max_value = v;
            for (int t = 0; t < 6; ++t) fam.argmax_lambda[t] = cols[t][i];
          }
          if (v > fam.bound + kSlack && chunk.violation_count++ < kMaxReportedViolations) {
            LemmaViolation viol{fam.name, {}, v};
            for (int t = 0; t < 6; ++t) viol.lambda[t] = cols[t][i];
            chunk.violations.push_back(viol);
          }
        }
      }
    });
  });

  LemmaGridReport report;
  report.step = step;
  report.families = chunks[0].families;
  report.max_value = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const Chunk& chunk = chunks[c];
    report.points += chunk.points;
    report.violation_count += chunk.violation_count;
    for (int f = 0; f < 4; ++f) {
      if (c > 0 && chunk.families[f].max_value > report.families[f].max_value) {
        report.families[f].max_value = chunk.families[f].max_value;
        report.families[f].argmax_lambda = chunk.families[f].argmax_lambda;
      }
    }
    for (const auto& v : chunk.violations) {
      if (report.violations.size() < kMaxReportedViolations) report.violations.push_back(v);
    }
  }
  for (const auto& fam : report.families) {
    if (fam.max_value > report.max_value) {
      report.max_value = fam.max_value;
      report.argmax_lambda = fam.argmax_lambda;
    }
  }
  return report;
}

}  // namespace isokit
