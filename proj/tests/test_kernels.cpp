#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "isokit/kernels.hpp"

using namespace isokit::kernels;

namespace {

bool same_bits(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct LambdaBank {
  std::array<std::vector<double>, 6> col;
  LambdaColumns view() const {
    LambdaColumns c;
    for (int k = 0; k < 6; ++k) c.lambda[k] = col[k];
    return c;
  }
};

// Random weight vectors summing to 3 with the last entry the largest; a share
// of them get an exact zero first entry.
LambdaBank random_lambdas(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 1);
  LambdaBank b;
  for (auto& c : b.col) c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 6> l;
    double s = 0;
    for (auto& v : l) s += v = u(rng);
    for (auto& v : l) v *= 3 / s;
    std::swap(*std::max_element(l.begin(), l.end()), l[5]);
    if (i % 7 == 0) l[0] = 0;
    for (int k = 0; k < 6; ++k) b.col[k][i] = l[k];
  }
  return b;
}

// Oracles written from the definitions.
double pair_drop_oracle(const std::array<double, 6>& l) {
  double s = 0;
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) s += l[p] * l[q];
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k)
    for (int m = 0; m < 5; ++m)
      for (int a = 0; a < 5; ++a)
        for (int c = 0; c < 5; ++c) {
          if (k == m || a == c) continue;
          std::array<int, 4> idx{k, m, a, c};
          std::sort(idx.begin(), idx.end());
          if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) continue;
          best = std::max(best, s - l[k] * l[m] - l[a] * l[c]);
        }
  return best;
}

double triple_drop_oracle(const std::array<double, 6>& l) {
  double s = 0;
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) s += l[p] * l[q];
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k)
    for (int m = k + 1; m < 5; ++m)
      for (int n = m + 1; n < 5; ++n) best = std::max(best, s - l[k] * l[m] - l[k] * l[n] - l[m] * l[n]);
  return best;
}

}  // namespace

TEST_CASE("dispatch reports and honours the selected ISA") {
  CHECK(isa_available(Isa::scalar));
  const Isa before = active_isa();
  CHECK(set_isa(Isa::scalar) == Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(set_isa(Isa::avx2) == (isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar));
  set_isa(before);
  CHECK(isa_name(Isa::scalar) == "scalar");
  CHECK(isa_name(Isa::avx2) == "avx2");
  MESSAGE("active ISA: " << isa_name(active_isa()));
}

TEST_CASE("max_pair_distance_sq matches the definition and the scalar kernel") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 129u}) {
    std::vector<double> x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = u(rng), y[i] = u(rng), z[i] = u(rng);
    double oracle = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = x[i] - x[j], dy = y[i] - y[j], dz = z[i] - z[j];
        oracle = std::max(oracle, dx * dx + dy * dy + dz * dz);
      }
    const double s = scalar::max_pair_distance_sq(x, y, z);
    const double v = avx2::max_pair_distance_sq(x, y, z);
    CHECK(s == oracle);
    CHECK(std::bit_cast<std::uint64_t>(s) == std::bit_cast<std::uint64_t>(v));
    CHECK(max_pair_distance_sq(x, y, z) == s);
  }
}

TEST_CASE("omega_batch agrees bitwise and with the definition") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.4, 0.8);
  const std::size_t n = 10007;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = u(rng), y[i] = u(rng);
  // Boundary points of the region.
  x[0] = 0.5, y[0] = 0.5;
  x[1] = 0.75, y[1] = 2.0 / 3.0;
  x[2] = 1, y[2] = 1;
  std::vector<std::uint8_t> fs(n), fv(n);
  std::vector<double> ms(n), mv(n);
  scalar::omega_batch(x, y, fs, ms);
  avx2::omega_batch(x, y, fv, mv);
  CHECK(fs == fv);
  CHECK(same_bits(ms, mv));
  auto in = [](double a, double b) {
    return a >= 0.5 && b >= 0.5 && a * b <= 0.5 && 2 * b - a * b <= 1 && 2 * a - a * b <= 1;
  };
  int mismatches = 0;
  for (std::size_t i = 2; i < n; ++i) {
    const double d = 1 - x[i] * y[i];
    const double gx = (1 - x[i]) / d;
    std::uint8_t f = (in(x[i], y[i]) ? kInOmega : 0) | (in(gx, d) ? kImageInOmega : 0);
    mismatches += f != fs[i];
    const double m = std::max({x[i] * x[i], y[i] * y[i], d * d, gx * gx, (1 - y[i]) / d * ((1 - y[i]) / d)});
    CHECK(ms[i] == doctest::Approx(m).epsilon(1e-15));
  }
  CHECK(mismatches == 0);
  CHECK((fs[0] & kInOmega));
}

TEST_CASE("objective_batch agrees bitwise and with the definition") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 1000u}) {
    const auto bank = random_lambdas(rng, n);
    std::array<double, 10> a2;
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& v : a2) v = u(rng);
    std::vector<double> s(n), v(n);
    scalar::objective_batch(a2, bank.view(), s);
    avx2::objective_batch(a2, bank.view(), v);
    CHECK(same_bits(s, v));
    static constexpr int P[10] = {0, 0, 0, 0, 1, 1, 1, 2, 2, 3};
    static constexpr int Q[10] = {1, 2, 3, 4, 2, 3, 4, 3, 4, 4};
    for (std::size_t i = 0; i < n; ++i) {
      double o = 0;
      for (int t = 0; t < 10; ++t) o += bank.col[P[t]][i] * bank.col[Q[t]][i] * a2[t];
      CHECK(s[i] == doctest::Approx(o).epsilon(1e-14));
    }
  }
}

TEST_CASE("lemma_batch agrees bitwise and with the definitions") {
  std::mt19937_64 rng(4);
  for (std::size_t n : {1u, 2u, 4u, 5u, 9u, 4096u}) {
    const auto bank = random_lambdas(rng, n);
    std::array<std::vector<double>, 4> s, v;
    for (auto& c : s) c.resize(n);
    for (auto& c : v) c.resize(n);
    scalar::lemma_batch(bank.view(), {s[0], s[1], s[2], s[3]});
    avx2::lemma_batch(bank.view(), {v[0], v[1], v[2], v[3]});
    for (int f = 0; f < 4; ++f) CHECK(same_bits(s[f], v[f]));
    for (std::size_t i = 0; i < n; ++i) {
      std::array<double, 6> l;
      for (int k = 0; k < 6; ++k) l[k] = bank.col[k][i];
      CHECK(s[0][i] == doctest::Approx(pair_drop_oracle(l)).epsilon(1e-14));
      CHECK(s[1][i] == doctest::Approx(triple_drop_oracle(l)).epsilon(1e-14));
      if (l[0] == 0) {
        double sum = 0, best = -1e300;
        for (int p = 1; p < 5; ++p)
          for (int q = p + 1; q < 5; ++q) sum += l[p] * l[q];
        for (int p = 1; p < 5; ++p)
          for (int q = p + 1; q < 5; ++q) best = std::max(best, sum - l[p] * l[q]);
        CHECK(s[2][i] == doctest::Approx(best).epsilon(1e-14));
      } else {
        CHECK(std::isinf(s[2][i]));
        CHECK(s[2][i] < 0);
      }
      const double light = l[0] * l[4] + l[0] * l[3] + l[1] * l[2] + l[1] * l[4] + l[2] * l[3];
      const double heavy = l[0] * l[1] + l[0] * l[2] + l[1] * l[3] + l[2] * l[4] + l[3] * l[4];
      CHECK(s[3][i] == doctest::Approx(0.6 * light + heavy).epsilon(1e-14));
    }
  }
}
