// Compiled with -mavx2 only. No FMA: every lane must round exactly like the
// scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "isokit/kernels.hpp"

namespace isokit::kernels::avx2 {
namespace {

constexpr std::size_t kWidth = 4;

inline __m256d load(std::span<const double> s, std::size_t i) { return _mm256_loadu_pd(s.data() + i); }

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

// Same comparison chain as the scalar in_omega.
inline __m256d in_omega(__m256d x, __m256d y) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d xy = _mm256_mul_pd(x, y);
  __m256d m = _mm256_cmp_pd(x, half, _CMP_GE_OQ);
  m = _mm256_and_pd(m, _mm256_cmp_pd(y, half, _CMP_GE_OQ));
  m = _mm256_and_pd(m, _mm256_cmp_pd(x, one, _CMP_LE_OQ));
  m = _mm256_and_pd(m, _mm256_cmp_pd(y, one, _CMP_LE_OQ));
  m = _mm256_and_pd(m, _mm256_cmp_pd(xy, half, _CMP_LE_OQ));
  m = _mm256_and_pd(m, _mm256_cmp_pd(_mm256_sub_pd(_mm256_mul_pd(two, y), xy), one, _CMP_LE_OQ));
  m = _mm256_and_pd(m, _mm256_cmp_pd(_mm256_sub_pd(_mm256_mul_pd(two, x), xy), one, _CMP_LE_OQ));
  return m;
}

// max(m, v) with the scalar std::max(m, v) semantics for a NaN in v.
inline __m256d vmax(__m256d m, __m256d v) { return _mm256_max_pd(v, m); }

}  // namespace

double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z) {
  const std::size_t n = x.size();
  __m256d best4 = _mm256_setzero_pd();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(x[i]);
    const __m256d yi = _mm256_set1_pd(y[i]);
    const __m256d zi = _mm256_set1_pd(z[i]);
    std::size_t j = i + 1;
    for (; j + kWidth <= n; j += kWidth) {
      const __m256d dx = _mm256_sub_pd(xi, load(x, j));
      const __m256d dy = _mm256_sub_pd(yi, load(y, j));
      const __m256d dz = _mm256_sub_pd(zi, load(z, j));
      const __m256d d = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                      _mm256_mul_pd(dz, dz));
      best4 = _mm256_max_pd(best4, d);
    }
    for (; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double dz = z[i] - z[j];
      best = std::max(best, dx * dx + dy * dy + dz * dz);
    }
  }
  return std::max(best, hmax(best4));
}

void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max) {
  const std::size_t n = x.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kWidth <= n; i += kWidth) {
    const __m256d xi = load(x, i);
    const __m256d yi = load(y, i);
    const __m256d d = _mm256_sub_pd(one, _mm256_mul_pd(xi, yi));
    const __m256d gx = _mm256_div_pd(_mm256_sub_pd(one, xi), d);
    const __m256d hy = _mm256_div_pd(_mm256_sub_pd(one, yi), d);
    const int inside = _mm256_movemask_pd(in_omega(xi, yi));
    const int image = _mm256_movemask_pd(
        _mm256_and_pd(in_omega(gx, d), _mm256_cmp_pd(d, zero, _CMP_NEQ_OQ)));
    for (std::size_t k = 0; k < kWidth; ++k) {
      std::uint8_t f = 0;
      if (inside & (1 << k)) f |= kInOmega;
      if (image & (1 << k)) f |= kImageInOmega;
      flags[i + k] = f;
    }
    __m256d m = _mm256_mul_pd(xi, xi);
    m = vmax(m, _mm256_mul_pd(yi, yi));
    m = vmax(m, _mm256_mul_pd(d, d));
    m = vmax(m, _mm256_mul_pd(gx, gx));
    m = vmax(m, _mm256_mul_pd(hy, hy));
    _mm256_storeu_pd(five_square_max.data() + i, m);
  }
  if (i < n) {
    scalar::omega_batch(x.subspan(i), y.subspan(i), flags.subspan(i), five_square_max.subspan(i));
  }
}

void objective_batch(const std::array<double, 10>& a2, const LambdaColumns& lambdas,
                     std::span<double> out) {
  const auto& L = lambdas.lambda;
  const std::size_t n = lambdas.size();
  __m256d c[10];
  for (int k = 0; k < 10; ++k) c[k] = _mm256_set1_pd(a2[k]);
  std::size_t i = 0;
  for (; i + kWidth <= n; i += kWidth) {
    const __m256d l1 = load(L[0], i), l2 = load(L[1], i), l3 = load(L[2], i), l4 = load(L[3], i),
                  l5 = load(L[4], i);
    __m256d s = _mm256_mul_pd(_mm256_mul_pd(l1, l2), c[0]);
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l1, l3), c[1]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l1, l4), c[2]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l1, l5), c[3]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l2, l3), c[4]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l2, l4), c[5]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l2, l5), c[6]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l3, l4), c[7]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l3, l5), c[8]));
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_mul_pd(l4, l5), c[9]));
    _mm256_storeu_pd(out.data() + i, s);
  }
  if (i < n) {
    LambdaColumns tail;
    for (int k = 0; k < 6; ++k) tail.lambda[k] = L[k].subspan(i);
    scalar::objective_batch(a2, tail, out.subspan(i));
  }
}

void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out) {
  const auto& L = lambdas.lambda;
  const std::size_t n = lambdas.size();
  const __m256d neg_inf = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  const __m256d zero = _mm256_setzero_pd();
  const __m256d three = _mm256_set1_pd(3.0);
  const __m256d five = _mm256_set1_pd(5.0);
  const auto add = [](__m256d a, __m256d b) { return _mm256_add_pd(a, b); };
  const auto sub = [](__m256d a, __m256d b) { return _mm256_sub_pd(a, b); };
  std::size_t i = 0;
  for (; i + kWidth <= n; i += kWidth) {
    const __m256d l1 = load(L[0], i), l2 = load(L[1], i), l3 = load(L[2], i), l4 = load(L[3], i),
                  l5 = load(L[4], i);
    const __m256d p12 = _mm256_mul_pd(l1, l2), p13 = _mm256_mul_pd(l1, l3),
                  p14 = _mm256_mul_pd(l1, l4), p15 = _mm256_mul_pd(l1, l5),
                  p23 = _mm256_mul_pd(l2, l3), p24 = _mm256_mul_pd(l2, l4),
                  p25 = _mm256_mul_pd(l2, l5), p34 = _mm256_mul_pd(l3, l4),
                  p35 = _mm256_mul_pd(l3, l5), p45 = _mm256_mul_pd(l4, l5);
    __m256d s = add(p12, p13);
    s = add(s, p14);
    s = add(s, p15);
    s = add(s, p23);
    s = add(s, p24);
    s = add(s, p25);
    s = add(s, p34);
    s = add(s, p35);
    s = add(s, p45);

    const __m256d pairs[15] = {
        add(p23, p45), add(p24, p35), add(p25, p34), add(p13, p45), add(p14, p35),
        add(p15, p34), add(p12, p45), add(p14, p25), add(p15, p24), add(p12, p35),
        add(p13, p25), add(p15, p23), add(p12, p34), add(p13, p24), add(p14, p23),
    };
    __m256d pd = sub(s, pairs[0]);
    for (int k = 1; k < 15; ++k) pd = vmax(pd, sub(s, pairs[k]));

    const __m256d triples[10] = {
        add(add(p12, p23), p13), add(add(p12, p24), p14), add(add(p12, p25), p15),
        add(add(p13, p34), p14), add(add(p13, p35), p15), add(add(p14, p45), p15),
        add(add(p23, p34), p24), add(add(p23, p35), p25), add(add(p24, p45), p25),
        add(add(p34, p45), p35),
    };
    __m256d td = sub(s, triples[0]);
    for (int k = 1; k < 10; ++k) td = vmax(td, sub(s, triples[k]));

    const __m256d drops[6] = {p23, p24, p25, p34, p35, p45};
    __m256d zd = sub(s, drops[0]);
    for (int k = 1; k < 6; ++k) zd = vmax(zd, sub(s, drops[k]));
    zd = _mm256_blendv_pd(neg_inf, zd, _mm256_cmp_pd(l1, zero, _CMP_EQ_OQ));

    __m256d light = add(p15, p14);
    light = add(light, p23);
    light = add(light, p25);
    light = add(light, p34);
    __m256d heavy = add(p12, p13);
    heavy = add(heavy, p24);
    heavy = add(heavy, p35);
    heavy = add(heavy, p45);
    const __m256d w = add(_mm256_div_pd(_mm256_mul_pd(three, light), five), heavy);

    _mm256_storeu_pd(out.pair_drop.data() + i, pd);
    _mm256_storeu_pd(out.triple_drop.data() + i, td);
    _mm256_storeu_pd(out.zero_drop.data() + i, zd);
    _mm256_storeu_pd(out.weighted.data() + i, w);
  }
  if (i < n) {
    LambdaColumns tail;
    for (int k = 0; k < 6; ++k) tail.lambda[k] = L[k].subspan(i);
    scalar::lemma_batch(tail, {out.pair_drop.subspan(i), out.triple_drop.subspan(i),
                               out.zero_drop.subspan(i), out.weighted.subspan(i)});
  }
}

}  // namespace isokit::kernels::avx2
