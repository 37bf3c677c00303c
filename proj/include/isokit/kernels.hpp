#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2 version; the public entry points dispatch at runtime.
// Both variants perform the same IEEE operations in the same order (no FMA
// contraction), so their results are expected to agree bit for bit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace isokit::kernels {

enum class Isa { scalar, avx2 };

/// The variant used by the dispatching entry points. Defaults to the best the
/// CPU supports; ISOKIT_ISA=scalar in the environment forces the reference.
Isa active_isa();
/// Overrides the dispatch choice (tests). Requests for an unavailable ISA
/// fall back to scalar; returns what was actually selected.
Isa set_isa(Isa isa);
bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

/// Six weights stored column-wise: lambda[k][i] is the (k+1)-th weight of
/// the i-th vector. All spans must have the same length.
struct LambdaColumns {
  std::array<std::span<const double>, 6> lambda;
  std::size_t size() const { return lambda[0].size(); }
};

/// Per-vector maxima of the four lambda-product bound families.
struct LemmaColumns {
  std::span<double> pair_drop;    // max over (k,l,m,n) of sum - l_k l_l - l_m l_n
  std::span<double> triple_drop;  // max over {k,l,n} of sum - the three products
  std::span<double> zero_drop;    // max over k<l in 2..5 of sum - l_k l_l; -inf unless l_1 == 0
  std::span<double> weighted;     // the 3/5-weighted sum
};

/// Bit flags produced by omega_batch.
inline constexpr std::uint8_t kInOmega = 1;
inline constexpr std::uint8_t kImageInOmega = 2;

// --- dispatching entry points -------------------------------------------

/// max_{i<j} |p_i - p_j|^2; 0 for fewer than two points.
double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z);

/// For each (x, y): membership of the point and of its image under
/// (x, y) -> ((1-x)/(1-xy), 1-xy) in the closed region
/// {x >= 1/2, y >= 1/2, xy <= 1/2, 2y - xy <= 1, 2x - xy <= 1}, plus the
/// maximum of x^2, y^2, (1-xy)^2, ((1-x)/(1-xy))^2, ((1-y)/(1-xy))^2.
void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max);

/// out[i] = sum_{1<=p<q<=5} lambda_p lambda_q a_pq^2 for one fixed set of
/// squared entries (ordered 12,13,14,15,23,24,25,34,35,45) against many
/// weight vectors.
void objective_batch(const std::array<double, 10>& a_squared, const LambdaColumns& lambdas,
                     std::span<double> out);

void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out);

// --- explicit variants (equivalence tests) --------------------------------

namespace scalar {
double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z);
void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max);
void objective_batch(const std::array<double, 10>& a_squared, const LambdaColumns& lambdas,
                     std::span<double> out);
void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out);
}  // namespace scalar

/// Only meaningful when isa_available(Isa::avx2); otherwise these forward to
/// the scalar versions.
namespace avx2 {
double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z);
void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max);
void objective_batch(const std::array<double, 10>& a_squared, const LambdaColumns& lambdas,
                     std::span<double> out);
void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out);
}  // namespace avx2

}  // namespace isokit::kernels
