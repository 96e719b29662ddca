#include <cmath>

#include <doctest.h>

#include "smk/numerics.hpp"
#include "smk/rng.hpp"
#include "smk/sphere.hpp"

using namespace smk;

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoOverPi = 0.63661977236758134307553505349006;
}

TEST_SUITE("sphere") {

TEST_CASE("mc_directions basics") {
  const DirectionSet one = mc_directions(2, 1, 7);
  CHECK(one.size() == 1);
  const auto& w = one.directions()[0];
  CHECK(std::abs(w[0] * w[0] + w[1] * w[1] - 1.0) <= 1e-12);
  CHECK_THROWS_AS(mc_directions(2, 0, 7), EmptySet);

  const DirectionSet d3 = mc_directions(3, 10000, 42);
  double mean_sq = 0.0;
  for (const auto& v : d3.directions()) mean_sq += v[0] * v[0];
  CHECK(std::abs(mean_sq / 10000.0 - 1.0 / 3.0) <= 0.02);

  const DirectionSet d2 = mc_directions(2, 10000, 43);
  double mean_abs = 0.0;
  for (const auto& v : d2.directions()) mean_abs += std::abs(v[0]);
  CHECK(std::abs(mean_abs / 10000.0 - kTwoOverPi) <= 0.02);

  // deterministic per seed
  const DirectionSet again = mc_directions(3, 16, 42);
  const DirectionSet ref = mc_directions(3, 16, 42);
  CHECK(again.directions()[7][1] == ref.directions()[7][1]);
}

TEST_CASE("circle_grid contains the symmetry points exactly") {
  const DirectionSet g = circle_grid(8);
  const double rt = std::sqrt(0.5);
  CHECK(g.directions()[0] == std::vector<double>{1.0, 0.0});
  CHECK(g.directions()[1] == std::vector<double>{rt, rt});
  CHECK(g.directions()[2] == std::vector<double>{0.0, 1.0});
  CHECK(g.directions()[6] == std::vector<double>{0.0, -1.0});
  CHECK_THROWS_AS(circle_grid(10), InvalidGrid);
  CHECK_THROWS_AS(circle_grid(0), InvalidGrid);

  const DirectionSet big = circle_grid(360);
  double sum = 0.0;
  for (double w : big.weights()) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  double quad = 0.0;
  for (std::size_t i = 0; i < big.size(); ++i)
    quad += big.weights()[i] * std::abs(big.directions()[i][0]);
  CHECK(std::abs(quad - kTwoOverPi) <= 1e-3);
}

TEST_CASE("circle_grid integrates low-degree trigonometric polynomials exactly") {
  const DirectionSet g = circle_grid(48);
  // cos^2 -> 1/2, cos^4 -> 3/8, cos(3t)sin(2t) -> 0
  double c2 = 0, c4 = 0, mixed = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(g.size());
    const double c = g.directions()[i][0];
    c2 += g.weights()[i] * c * c;
    c4 += g.weights()[i] * c * c * c * c;
    mixed += g.weights()[i] * std::cos(3 * t) * std::sin(2 * t);
  }
  CHECK(std::abs(c2 - 0.5) <= 1e-12);
  CHECK(std::abs(c4 - 0.375) <= 1e-12);
  CHECK(std::abs(mixed) <= 1e-12);
}

TEST_CASE("lq_aggregate") {
  const std::vector<double> w{0.5, 0.5};
  CHECK(lq_aggregate({3.0, 3.0}, w, 1.0) == doctest::Approx(3.0));
  CHECK(lq_aggregate({3.0, 3.0}, w, 7.5) == doctest::Approx(3.0));
  CHECK(lq_aggregate({3.0, 3.0}, w, kInf) == 3.0);
  CHECK(lq_aggregate({0.0, 2.0}, w, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(lq_aggregate({0.0, 2.0}, w, kInf) == 2.0);
  CHECK_THROWS_AS(lq_aggregate({-1.0, 2.0}, w, 2.0), InvalidValue);
  CHECK_THROWS_AS(lq_aggregate({1.0}, w, 2.0), ShapeMismatch);
  CHECK_THROWS_AS(lq_aggregate({1.0, 1.0}, w, 0.5), InvalidExponent);
}

TEST_CASE("lq_aggregate is non-decreasing in q") {
  Rng rng(3);
  for (int s = 0; s < 20; ++s) {
    const std::size_t n = 2 + rng.below(10);
    std::vector<double> v(n), w(n);
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = rng.uniform(0, 3);
      w[i] = rng.uniform(0.1, 1);
      sum += w[i];
    }
    for (double& x : w) x /= sum;
    double prev = 0.0;
    for (double q : {1.0, 1.5, 2.0, 4.0, 16.0, kInf}) {
      const double cur = lq_aggregate(v, w, q);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("m_constant matches the closed forms") {
  const DirectionSet circle = circle_grid(360);
  CHECK(std::abs(m_constant(2.0, circle) - std::sqrt(0.5)) <= 1e-6);
  CHECK(m_constant(kInf, circle) == 1.0);  // e1 is a grid point

  const DirectionSet d3 = mc_directions(3, 10000, 17);
  CHECK(std::abs(m_constant(kInf, d3) - 1.0) <= 0.01);
  CHECK(std::abs(m_constant(2.0, d3) - 1.0 / std::sqrt(3.0)) <= 0.01);

  // n=3: <e1, omega> is uniform on [-1,1]; E|t|^4 = 1/5
  const DirectionSet d3big = mc_directions(3, 100000, 23);
  CHECK(std::abs(m_constant(4.0, d3big) - std::pow(0.2, 0.25)) <= 0.01);
}

TEST_CASE("rotation invariance of the directional norm at quadrature accuracy") {
  Rng rng(31);
  for (int s = 0; s < 5; ++s) {
    double x[3] = {rng.gauss(), rng.gauss(), rng.gauss()};
    const double nx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const DirectionSet a = mc_directions(3, 4096, 100 + s);
    const DirectionSet b = mc_directions(3, 4096, 200 + s);
    for (double q : {1.0, 2.0, 4.0}) {
      std::vector<double> va(a.size()), vb(b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        double dot = 0;
        for (int c = 0; c < 3; ++c) dot += x[c] * a.directions()[i][c];
        va[i] = std::abs(dot) / nx;
      }
      for (std::size_t i = 0; i < b.size(); ++i) vb[i] = std::abs(b.directions()[i][0]);
      const double lhs = lq_aggregate(va, a.weights(), q);
      const double rhs = lq_aggregate(vb, b.weights(), q);
      const double se = 3.0 * std::sqrt(std::pow(lq_aggregate_se(va, a.weights(), q), 2) +
                                        std::pow(lq_aggregate_se(vb, b.weights(), q), 2));
      CHECK(std::abs(lhs - rhs) <= se + 1e-9);
    }
  }
}

TEST_CASE("direction set validation") {
  CHECK_THROWS_AS(DirectionSet(2, {{2.0, 0.0}}, {1.0}, DirectionSet::Kind::Explicit, "x"),
                  InvalidDirection);
  CHECK_THROWS_AS(DirectionSet(2, {{1.0, 0.0}}, {0.5}, DirectionSet::Kind::Explicit, "x"),
                  InvalidWeights);
  CHECK_THROWS_AS(DirectionSet(2, {}, {}, DirectionSet::Kind::Explicit, "x"), EmptySet);
}

}  // TEST_SUITE
