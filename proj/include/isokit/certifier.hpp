#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "isokit/admissible.hpp"

namespace isokit {

struct CertificateReport {
  std::array<double, 6> lambda{};
  double best_value = 0.0;
  AdmissibleSet best_set;
  std::size_t restarts = 0;
  /// Share of the five rows (a_ij)_{j != i} whose largest entry has
  /// magnitude 1 within 1e-6.
  double boundary_diagnostic = 0.0;
};

struct SearchOptions {
  std::size_t restarts = 64;
  /// Stop a local ascent once a full sweep gains less than tol * (1 + value).
  double tol = 1e-10;
  /// |a12| is kept at least this far from 0 in the a12 != 0 branch.
  double epsilon = 1e-3;
  std::uint64_t seed = 42;
  /// Distinguishes independent searches sharing a seed.
  std::uint64_t stream = 0;
  /// Also start from the 120 index permutations of the tetrahedron set.
  bool tetrahedron_starts = true;
};

/// Multi-start coordinate ascent for max sum l_i l_j a_ij^2 over admissible
/// sets with |a_ij| <= 1.
///
/// Two parametrizations cover all admissible sets. With a12 != 0 the free
/// variables are a12 and the rows (a13, a14, a15), (a23, a24, a25); the
/// remaining entries follow as a34 = (a13 a24 - a14 a23) / a12 and so on.
/// With a12 = 0 the free variables are a13 != 0, a14, a15, a23, a34, a35 and
/// a24 = a14 a23 / a13, a25 = a15 a23 / a13, a45 = (a14 a35 - a15 a34) / a13.
/// Along any one free variable every entry is affine (or, for the divisor,
/// proportional to its inverse), so the objective is convex on an exactly
/// computable feasible interval and the move goes to the better endpoint.
/// Restart r uses the a12 = 0 form when r % 4 == 3. Each restart draws from
/// its own generator seeded with (seed, stream, r).
CertificateReport maximize_objective(const LambdaVector& L, const SearchOptions& options = {});

enum class BoundaryClass { skipped, contains_zero, peculiar, unclassified };
std::string_view to_string(BoundaryClass c);

/// Structural check of a near-maximal set (best_value >= 1.95): does it
/// contain an entry of magnitude <= 1e-4, or match the peculiar pattern
/// within 1e-4 after some relabelling of 1..5? Sets below 1.95 are skipped.
BoundaryClass boundary_structure_check(const CertificateReport& report);

struct CertifyViolation {
  std::array<double, 6> lambda{};
  double value = 0.0;
};

struct CertifySummary {
  std::size_t samples = 0;
  std::size_t restarts = 0;
  bool zero_first = false;
  double bound = 2.0;
  /// Objective of the tetrahedron set at lambda = 1/2 (not used when
  /// zero_first).
  double witness_value = 0.0;
  /// Largest value over all samples and, unless zero_first, the witness.
  double global_max = 0.0;
  std::array<double, 6> argmax_lambda{};
  std::vector<CertifyViolation> violations;  // samples above bound + tol
  std::array<std::size_t, 4> classes{};      // indexed by BoundaryClass
};

/// Draws `count` weight vectors (Dirichlet via sorted uniforms, then the
/// largest moved to position 6), maximizes each, and collects the ceiling.
/// With zero_first the first weight is fixed at 0 and the bound is 9/5.
CertifySummary certify_random(std::size_t count, std::uint64_t seed, std::size_t restarts,
                              double tol, bool zero_first = false);

/// The weight vector certify_random uses for sample `index`.
std::array<double, 6> sample_lambda(std::uint64_t seed, std::size_t index, bool zero_first);

}  // namespace isokit
