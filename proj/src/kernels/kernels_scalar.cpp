#include <algorithm>
#include <limits>

#include "isokit/kernels.hpp"

namespace isokit::kernels::scalar {

double max_pair_distance_sq(std::span<const double> x, std::span<const double> y,
                            std::span<const double> z) {
  double best = 0.0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      const double dz = z[i] - z[j];
      const double d = dx * dx + dy * dy + dz * dz;
      best = std::max(best, d);
    }
  }
  return best;
}

namespace {

bool in_omega(double x, double y) {
  const double xy = x * y;
  return x >= 0.5 && y >= 0.5 && x <= 1.0 && y <= 1.0 && xy <= 0.5 && 2.0 * y - xy <= 1.0 &&
         2.0 * x - xy <= 1.0;
}

}  // namespace

void omega_batch(std::span<const double> x, std::span<const double> y,
                 std::span<std::uint8_t> flags, std::span<double> five_square_max) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i], yi = y[i];
    const double d = 1.0 - xi * yi;
    const double gx = (1.0 - xi) / d;
    const double gy = d;
    const double hy = (1.0 - yi) / d;
    std::uint8_t f = 0;
    if (in_omega(xi, yi)) f |= kInOmega;
    if (d != 0.0 && in_omega(gx, gy)) f |= kImageInOmega;
    flags[i] = f;
    double m = xi * xi;
    m = std::max(m, yi * yi);
    m = std::max(m, d * d);
    m = std::max(m, gx * gx);
    m = std::max(m, hy * hy);
    five_square_max[i] = m;
  }
}

void objective_batch(const std::array<double, 10>& a2, const LambdaColumns& lambdas,
                     std::span<double> out) {
  const auto& L = lambdas.lambda;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l1 = L[0][i], l2 = L[1][i], l3 = L[2][i], l4 = L[3][i], l5 = L[4][i];
    double s = l1 * l2 * a2[0];
    s += l1 * l3 * a2[1];
    s += l1 * l4 * a2[2];
    s += l1 * l5 * a2[3];
    s += l2 * l3 * a2[4];
    s += l2 * l4 * a2[5];
    s += l2 * l5 * a2[6];
    s += l3 * l4 * a2[7];
    s += l3 * l5 * a2[8];
    s += l4 * l5 * a2[9];
    out[i] = s;
  }
}

void lemma_batch(const LambdaColumns& lambdas, const LemmaColumns& out) {
  const auto& L = lambdas.lambda;
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l1 = L[0][i], l2 = L[1][i], l3 = L[2][i], l4 = L[3][i], l5 = L[4][i];
    const double p12 = l1 * l2, p13 = l1 * l3, p14 = l1 * l4, p15 = l1 * l5, p23 = l2 * l3,
                 p24 = l2 * l4, p25 = l2 * l5, p34 = l3 * l4, p35 = l3 * l5, p45 = l4 * l5;
    const double s = p12 + p13 + p14 + p15 + p23 + p24 + p25 + p34 + p35 + p45;

    // Two disjoint pairs: drop one index, split the other four three ways.
    const double pairs[15] = {
        p23 + p45, p24 + p35, p25 + p34,  // without 1
        p13 + p45, p14 + p35, p15 + p34,  // without 2
        p12 + p45, p14 + p25, p15 + p24,  // without 3
        p12 + p35, p13 + p25, p15 + p23,  // without 4
        p12 + p34, p13 + p24, p14 + p23,  // without 5
    };
    double pd = s - pairs[0];
    for (int k = 1; k < 15; ++k) pd = std::max(pd, s - pairs[k]);

    const double triples[10] = {
        p12 + p23 + p13, p12 + p24 + p14, p12 + p25 + p15, p13 + p34 + p14, p13 + p35 + p15,
        p14 + p45 + p15, p23 + p34 + p24, p23 + p35 + p25, p24 + p45 + p25, p34 + p45 + p35,
    };
    double td = s - triples[0];
    for (int k = 1; k < 10; ++k) td = std::max(td, s - triples[k]);

    double zd = kNegInf;
    if (l1 == 0.0) {
      const double drops[6] = {p23, p24, p25, p34, p35, p45};
      zd = s - drops[0];
      for (int k = 1; k < 6; ++k) zd = std::max(zd, s - drops[k]);
    }

    const double light = p15 + p14 + p23 + p25 + p34;
    const double heavy = p12 + p13 + p24 + p35 + p45;
    out.pair_drop[i] = pd;
    out.triple_drop[i] = td;
    out.zero_drop[i] = zd;
    out.weighted[i] = 3.0 * light / 5.0 + heavy;
  }
}

}  // namespace isokit::kernels::scalar
