#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "isokit/bounds.hpp"
#include "isokit/error.hpp"
#include "isokit/rational.hpp"

using namespace isokit;

namespace {

LambdaVector half() { return LambdaVector::uniform(); }
LambdaVector l000111() { return LambdaVector({0, 0, 0, 1, 1, 1}); }

struct ExactMaxima {
  std::array<Rational, 4> max;
  std::size_t points = 0;
};

// Exhaustive rational evaluation of the four families over lambda = 3k/N.
ExactMaxima exact_grid(int N) {
  ExactMaxima r;
  for (auto& m : r.max) m = -1000;
  std::array<int, 6> k{};
  const std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == 5) {
      k[5] = left;
      if (*std::max_element(k.begin(), k.begin() + 5) > k[5]) return;
      ++r.points;
      std::array<Rational, 5> l;
      for (int i = 0; i < 5; ++i) l[i] = Rational(3 * k[i], N);
      auto p = [&](int a, int b) { return Rational(l[a - 1] * l[b - 1]); };
      Rational s = 0;
      for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) s += p(a, b);
      for (int a = 1; a <= 5; ++a)
        for (int b = 1; b <= 5; ++b)
          for (int c = 1; c <= 5; ++c)
            for (int d = 1; d <= 5; ++d) {
              std::set<int> u{a, b, c, d};
              if (u.size() == 4) r.max[0] = std::max(r.max[0], Rational(s - p(a, b) - p(c, d)));
              std::set<int> t{a, b, c};
              if (d == 1 && t.size() == 3) r.max[1] = std::max(r.max[1], Rational(s - p(a, b) - p(b, c) - p(a, c)));
              if (c == 1 && d == 1 && k[0] == 0 && a != b && a > 1 && b > 1)
                r.max[2] = std::max(r.max[2], Rational(s - p(a, b)));
            }
      const Rational light = p(1, 5) + p(1, 4) + p(2, 3) + p(2, 5) + p(3, 4);
      const Rational heavy = p(1, 2) + p(1, 3) + p(2, 4) + p(3, 5) + p(4, 5);
      r.max[3] = std::max(r.max[3], Rational(Rational(3, 5) * light + heavy));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, N);
  return r;
}

}  // namespace

TEST_CASE("pair drop examples") {
  const auto c = pair_drop_sum(half(), 2, 3, 1, 4);
  CHECK(c.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.bound == 2.0);
  CHECK(c.satisfied);
  CHECK(pair_drop_sum(l000111(), 1, 2, 3, 4).value == doctest::Approx(1.0));
  for (int k = 1; k <= 5; ++k) CHECK(pair_drop_sum(l000111(), k % 5 + 1, (k + 1) % 5 + 1, (k + 2) % 5 + 1, (k + 3) % 5 + 1).value <= 1.0);
  CHECK_THROWS_AS(LambdaVector({3, 0, 0, 0, 0, 0}), InvariantError);
  CHECK_THROWS_AS(pair_drop_sum(half(), 1, 1, 2, 3), IndexError);
  CHECK_THROWS_AS(pair_drop_sum(half(), 0, 1, 2, 3), IndexError);
  CHECK_THROWS_AS(pair_drop_sum(half(), 6, 1, 2, 3), IndexError);
}

TEST_CASE("triple drop examples") {
  const LambdaVector L({0.4, 0.4, 0.4, 0.6, 0.6, 0.6});
  const auto c = triple_drop_sum(L, 1, 2, 3);
  CHECK(c.value == doctest::Approx(1.8).epsilon(1e-15));
  CHECK(c.bound == 1.8);
  CHECK(c.satisfied);
  CHECK(triple_drop_sum(half(), 1, 2, 3).value == doctest::Approx(1.75));
  CHECK(triple_drop_sum(l000111(), 1, 2, 3).value == doctest::Approx(1.0));
  CHECK_THROWS_AS(triple_drop_sum(half(), 1, 2, 2), IndexError);
}

TEST_CASE("zero lambda drop examples") {
  const LambdaVector L({0, 0.45, 0.45, 0.6, 0.6, 0.9});
  CHECK(zero_lambda_drop(L, 2, 3).satisfied);
  CHECK(zero_lambda_drop(L, 2, 3).value <= 1.8);
  CHECK_THROWS_AS(LambdaVector({0, 0.75, 0.75, 0.75, 0.75, 0}), InvariantError);
  CHECK(zero_lambda_drop(l000111(), 4, 5).value == 0.0);
  CHECK_THROWS_AS(zero_lambda_drop(half(), 2, 3), PreconditionError);
  CHECK_THROWS_AS(zero_lambda_drop(L, 1, 3), IndexError);
  CHECK_THROWS_AS(zero_lambda_drop(L, 3, 3), IndexError);
}

TEST_CASE("weighted sum examples") {
  CHECK(weighted_sum(half()).value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(weighted_sum(half()).satisfied);
  CHECK(weighted_sum(l000111()).value == doctest::Approx(1.0));
  CHECK(weighted_sum(LambdaVector({0.6, 0.6, 0.6, 0.4, 0.2, 0.6})).satisfied);
}

TEST_CASE("ignore term bound examples") {
  auto c = ignore_term_bound(1, 1, 1, 1, -1, 0);
  CHECK(c.value == 2.0);
  CHECK(c.bound == 2.0);
  CHECK(c.satisfied);
  c = ignore_term_bound(2, 3, 5, 1, 0, -1);
  CHECK(c.value == 7.0);
  CHECK(c.bound == 8.0);
  CHECK(ignore_term_bound(2, 3, 5, 0, 0, 0).value == 0.0);
  CHECK_THROWS_AS(ignore_term_bound(-1, 1, 1, 0, 0, 0), PreconditionError);
  CHECK_THROWS_AS(ignore_term_bound(1, 1, 1, 0.5, 0.5, 0), PreconditionError);
  CHECK_THROWS_AS(ignore_term_bound(1, 1, 1, 2, -1, -1), PreconditionError);
}

TEST_CASE("ignore term bound holds on random admissible inputs") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0, 1), v(-1, 1);
  for (int t = 0; t < 100000; ++t) {
    const double x = v(rng), y = std::clamp(v(rng), -1 - x, 1 - x);
    const double z = -x - y;
    if (std::abs(z) > 1) continue;
    CHECK(ignore_term_bound(u(rng), u(rng), u(rng), x, y, z).satisfied);
  }
}

TEST_CASE("pair drop symmetries") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 200; ++t) {
    std::array<double, 6> l;
    double s = 0;
    for (auto& v : l) s += v = u(rng);
    for (auto& v : l) v *= 3 / s;
    std::swap(*std::max_element(l.begin(), l.end()), l[5]);
    const LambdaVector L(l);
    std::array<int, 5> p{1, 2, 3, 4, 5};
    std::shuffle(p.begin(), p.end(), rng);
    const double v = pair_drop_sum(L, p[0], p[1], p[2], p[3]).value;
    CHECK(pair_drop_sum(L, p[2], p[3], p[0], p[1]).value == doctest::Approx(v).epsilon(1e-14));
    CHECK(pair_drop_sum(L, p[1], p[0], p[3], p[2]).value == doctest::Approx(v).epsilon(1e-14));
    // Relabel the first five weights together with the indices.
    std::array<int, 5> q{0, 1, 2, 3, 4};
    std::shuffle(q.begin(), q.end(), rng);
    std::array<double, 6> m = l;
    for (int i = 0; i < 5; ++i) m[q[i]] = l[i];
    const LambdaVector M(m);
    CHECK(pair_drop_sum(M, q[p[0] - 1] + 1, q[p[1] - 1] + 1, q[p[2] - 1] + 1, q[p[3] - 1] + 1).value ==
          doctest::Approx(v).epsilon(1e-14));
  }
}

TEST_CASE("grid report matches an exact enumeration") {
  for (double step : {0.25, 0.2}) {
    const auto rep = grid_verify_all(step);
    const int N = static_cast<int>(std::ceil(3 / step - 1e-9));
    const auto ex = exact_grid(N);
    CHECK(rep.points == ex.points);
    CHECK(rep.violation_count == 0);
    CHECK(rep.violations.empty());
    const std::array<Rational, 4> bounds{Rational(2), Rational(9, 5), Rational(9, 5), Rational(2)};
    for (int f = 0; f < 4; ++f) {
      CHECK(ex.max[f] <= bounds[f]);
      CHECK(rep.families[f].max_value == doctest::Approx(ex.max[f].get_d()).epsilon(1e-12));
      CHECK(rep.families[f].bound == doctest::Approx(bounds[f].get_d()).epsilon(1e-15));
    }
  }
}

TEST_CASE("grid examples and tight witnesses") {
  const auto rep = grid_verify_all(0.25);
  CHECK(rep.violation_count == 0);
  CHECK(rep.families[0].name == "pair_drop");
  CHECK(rep.families[0].max_value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.families[3].max_value == doctest::Approx(2.0).epsilon(1e-12));
  for (double v : rep.families[0].argmax_lambda) CHECK(v == doctest::Approx(0.5));
  CHECK(rep.max_value == doctest::Approx(2.0).epsilon(1e-12));

  const auto fine = grid_verify_all(0.05);
  CHECK(fine.violation_count == 0);
  CHECK(fine.points > 100000);
  CHECK(fine.families[1].max_value == doctest::Approx(1.8).epsilon(1e-12));

  CHECK_THROWS_AS(grid_verify_all(0.5), ConfigError);
  CHECK_THROWS_AS(grid_verify_all(0.0), ConfigError);
  CHECK_THROWS_AS(grid_verify_all(-0.1), ConfigError);
}
