#pragma once

#include <array>
#include <string>
#include <vector>

#include "isokit/admissible.hpp"

namespace isokit {

/// Value of an inequality's left side together with its bound.
struct BoundCheck {
  double value = 0.0;
  double bound = 0.0;
  bool satisfied = true;  // value <= bound + 1e-12
};

/// sum_{i<j<=5} l_i l_j - l_k l_l - l_m l_n, bound 2. Indices 1-based and
/// distinct in 1..5, else IndexError.
BoundCheck pair_drop_sum(const LambdaVector& L, int k, int l, int m, int n);

/// sum - l_k l_l - l_l l_n - l_k l_n, bound 9/5.
BoundCheck triple_drop_sum(const LambdaVector& L, int k, int l, int n);

/// sum - l_k l_l for k != l in 2..5, bound 9/5. PreconditionError unless
/// l_1 == 0.
BoundCheck zero_lambda_drop(const LambdaVector& L, int k, int l);

/// (3/5)(l1 l5 + l1 l4 + l2 l3 + l2 l5 + l3 l4)
///   + l1 l2 + l1 l3 + l2 l4 + l3 l5 + l4 l5, bound 2.
BoundCheck weighted_sum(const LambdaVector& L);

/// a x^2 + b y^2 + c z^2 against a + b + c - min(a, b, c). Requires
/// a, b, c >= 0, |x|, |y|, |z| <= 1 and |x + y + z| <= 1e-12, else
/// PreconditionError.
BoundCheck ignore_term_bound(double a, double b, double c, double x, double y, double z);

struct FamilyReport {
  std::string name;
  double bound = 0.0;
  double max_value = -1e300;
  std::array<double, 6> argmax_lambda{};
};

struct LemmaViolation {
  std::string family;
  std::array<double, 6> lambda{};
  double value = 0.0;
};

struct LemmaGridReport {
  double step = 0.0;
  std::size_t points = 0;  // grid points with lambda_6 maximal
  std::array<FamilyReport, 4> families;  // pair_drop, triple_drop, zero_lambda_drop, weighted_sum
  std::vector<LemmaViolation> violations;  // first 100
  std::size_t violation_count = 0;
  /// Largest value seen in any family and where it occurred.
  double max_value = 0.0;
  std::array<double, 6> argmax_lambda{};
};

/// Every lambda = 3 k / N with k a composition of N = ceil(3 / step) into
/// six parts and k_6 maximal, evaluated against all index combinations of
/// the four bounds. ConfigError unless step is in (0, 0.25].
LemmaGridReport grid_verify_all(double step);

}  // namespace isokit
