#include <atomic>
#include <cstdlib>
#include <cstring>

#include "isokit/kernels.hpp"

namespace isokit::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(ISOKIT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("ISOKIT_ISA"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::scalar;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
  if (!isa_available(isa)) isa = Isa::scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z) {
  return active_isa() == Isa::avx2 ? avx2::max_pair_distance_sq(x, y, z)
                                   : scalar::max_pair_distance_sq(x, y, z);
}

void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max) {
  if (active_isa() == Isa::avx2) {
    avx2::omega_batch(x, y, flags, five_square_max);
  } else {
    scalar::omega_batch(x, y, flags, five_square_max);
  }
}

void objective_batch(const std::array<double, 10>& a_squared, const LambdaColumns& lambdas,
                     std::span<double> out) {
  if (active_isa() == Isa::avx2) {
    avx2::objective_batch(a_squared, lambdas, out);
  } else {
    scalar::objective_batch(a_squared, lambdas, out);
  }
}

void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out) {
  if (active_isa() == Isa::avx2) {
    avx2::lemma_batch(lambdas, out);
  } else {
    scalar::lemma_batch(lambdas, out);
  }
}

#ifndef ISOKIT_BUILD_AVX2
namespace avx2 {
double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z) {
  return scalar::max_pair_distance_sq(x, y, z);
}
void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max) {
  scalar::omega_batch(x, y, flags, five_square_max);
}
void objective_batch(const std::array<double, 10>& a_squared, const LambdaColumns& lambdas,
                     std::span<double> out) {
  scalar::objective_batch(a_squared, lambdas, out);
}
void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out) {
  scalar::lemma_batch(lambdas, out);
}
}  // namespace avx2
#endif

}  // namespace isokit::kernels
