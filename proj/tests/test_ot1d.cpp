#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "smk/numerics.hpp"
#include "smk/ot1d.hpp"
#include "smk/rng.hpp"
#include "test_util.hpp"

using namespace smk;

namespace {

Measure1D dirac1d(double x) { return Measure1D::from_atoms({x}, {1.0}); }

// Independent oracle for p = 1: W_1 equals the area between the CDFs,
// integrated exactly over the breakpoints of the union support.
double w1_via_cdf(const Measure1D& mu, const Measure1D& nu) {
  std::vector<double> grid;
  grid.insert(grid.end(), mu.atoms().begin(), mu.atoms().end());
  grid.insert(grid.end(), nu.atoms().begin(), nu.atoms().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const auto cdf = [](const Measure1D& m, double t) {
    double f = 0.0;
    for (std::size_t i = 0; i < m.size() && m.atoms()[i] <= t; ++i) f += m.weights()[i];
    return f;
  };
  double total = 0.0;
  for (std::size_t g = 0; g + 1 < grid.size(); ++g)
    total += std::abs(cdf(mu, grid[g]) - cdf(nu, grid[g])) * (grid[g + 1] - grid[g]);
  return total;
}

const double kB = 2.0 - std::sqrt(2.0);

Measure1D two_point_unit() { return Measure1D::from_atoms({1.0, -1.0}, {0.5, 0.5}); }
Measure1D three_point_b() {
  return Measure1D::from_atoms({kB, 0.0, -kB}, {0.25, 0.5, 0.25});
}

}  // namespace

TEST_SUITE("ot1d") {

TEST_CASE("wasserstein_1d on diracs and the two-vs-three point instance") {
  for (double p : {1.0, 1.7, 2.0, 3.0})
    CHECK(wasserstein_1d(dirac1d(-2.0), dirac1d(1.5), p) == doctest::Approx(3.5).epsilon(1e-14));

  // value (0.5 (1-b)^2 + 0.5)^{1/2} = sqrt(2 - sqrt 2)
  const double got = wasserstein_1d(two_point_unit(), three_point_b(), 2.0);
  CHECK(got == doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))).epsilon(1e-14));
  CHECK(got == doctest::Approx(0.765366864730180).epsilon(1e-12));

  CHECK_THROWS_AS(wasserstein_1d(dirac1d(0), dirac1d(1), 0.9), InvalidExponent);
}

TEST_CASE("oracle agreement: quantile solver vs coupling LP") {
  Rng rng(1234);
  for (int s = 0; s < 60; ++s) {
    const Measure1D mu = testing::random_measure_1d(rng, 10, 2.0);
    const Measure1D nu = testing::random_measure_1d(rng, 10, 2.0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const double fast = wasserstein_1d(mu, nu, p);
      const double lp = brute_force_lp_1d(mu, nu, p);
      CHECK(std::abs(fast - lp) <= 1e-9);
    }
  }
}

TEST_CASE("second oracle for p=1: CDF-difference integral") {
  Rng rng(77);
  for (int s = 0; s < 40; ++s) {
    const Measure1D mu = testing::random_measure_1d(rng, 12, 3.0);
    const Measure1D nu = testing::random_measure_1d(rng, 12, 3.0);
    CHECK(wasserstein_1d(mu, nu, 1.0) == doctest::Approx(w1_via_cdf(mu, nu)).epsilon(1e-11));
  }
}

TEST_CASE("brute_force_lp_1d basics") {
  CHECK(brute_force_lp_1d(dirac1d(0.0), dirac1d(3.0), 2.0) == doctest::Approx(3.0));
  const Measure1D m = Measure1D::from_atoms({0.0, 1.0}, {0.5, 0.5});
  CHECK(brute_force_lp_1d(m, m, 2.0) == doctest::Approx(0.0));
  CHECK(brute_force_lp_1d(two_point_unit(), three_point_b(), 2.0) ==
        doctest::Approx(wasserstein_1d(two_point_unit(), three_point_b(), 2.0)).epsilon(1e-12));

  std::vector<double> atoms(13), w(13, 1.0 / 13.0);
  for (int i = 0; i < 13; ++i) atoms[i] = i;
  const Measure1D big = Measure1D::from_atoms(atoms, w);
  CHECK_THROWS_AS(brute_force_lp_1d(big, dirac1d(0.0), 2.0), TooLarge);
}

TEST_CASE("metric axioms for wasserstein_1d on random instances") {
  Rng rng(4321);
  for (int s = 0; s < 40; ++s) {
    const Measure1D a = testing::random_measure_1d(rng, 8);
    const Measure1D b = testing::random_measure_1d(rng, 8);
    const Measure1D c = testing::random_measure_1d(rng, 8);
    for (double p : {1.0, 2.0, 3.0}) {
      const double ab = wasserstein_1d(a, b, p);
      CHECK(wasserstein_1d(b, a, p) == ab);  // symmetry, bit for bit
      CHECK(wasserstein_1d(a, a, p) == 0.0);
      CHECK(ab + wasserstein_1d(b, c, p) >= wasserstein_1d(a, c, p) - 1e-10);
    }
  }
}

TEST_CASE("wasserstein_1d is invariant under atom input order") {
  const Measure1D a = Measure1D::from_atoms({3.0, -1.0, 0.5}, {0.2, 0.5, 0.3});
  const Measure1D b = Measure1D::from_atoms({-1.0, 0.5, 3.0}, {0.5, 0.3, 0.2});
  const Measure1D target = Measure1D::from_atoms({0.0, 2.0}, {0.6, 0.4});
  for (double p : {1.0, 2.0})
    CHECK(wasserstein_1d(a, target, p) == wasserstein_1d(b, target, p));
}

TEST_CASE("quantile") {
  const Measure1D m = two_point_unit();
  CHECK(quantile(m, 0.25) == -1.0);
  CHECK(quantile(m, 0.75) == 1.0);
  CHECK(quantile(m, 0.5) == -1.0);  // left-continuous inverse
  CHECK(quantile(three_point_b(), 0.5) == 0.0);
  CHECK_THROWS_AS(quantile(m, 0.0), InvalidQuantile);
  CHECK_THROWS_AS(quantile(m, 1.0), InvalidQuantile);
}

TEST_CASE("displacement interpolation: endpoints and the four-atom midpoint") {
  const Measure1D mu = two_point_unit();
  const Measure1D nu = three_point_b();
  CHECK(displacement_interpolate_1d(mu, nu, 0.0).atoms() == mu.atoms());
  CHECK(displacement_interpolate_1d(mu, nu, 1.0).atoms() == nu.atoms());

  const Measure1D mid = displacement_interpolate_1d(mu, nu, 0.5);
  REQUIRE(mid.size() == 4);
  CHECK(mid.atoms()[0] == doctest::Approx(-(1.0 + kB) / 2.0).epsilon(1e-15));
  CHECK(mid.atoms()[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(mid.atoms()[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mid.atoms()[3] == doctest::Approx((1.0 + kB) / 2.0).epsilon(1e-15));
  for (double w : mid.weights()) CHECK(w == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(displacement_interpolate_1d(dirac1d(0), dirac1d(4), 0.25).atoms()[0] == 1.0);
  CHECK_THROWS_AS(displacement_interpolate_1d(mu, nu, -0.1), InvalidParam);
}

TEST_CASE("displacement interpolation is a constant-speed geodesic") {
  Rng rng(999);
  for (int s = 0; s < 20; ++s) {
    const Measure1D mu = testing::random_measure_1d(rng, 7);
    const Measure1D nu = testing::random_measure_1d(rng, 7);
    for (double p : {1.5, 2.0, 3.0}) {
      const double base = wasserstein_1d(mu, nu, p);
      const double t1 = rng.uniform(), t2 = rng.uniform();
      const Measure1D a = displacement_interpolate_1d(mu, nu, t1);
      const Measure1D b = displacement_interpolate_1d(mu, nu, t2);
      CHECK(std::abs(wasserstein_1d(a, b, p) - std::abs(t1 - t2) * base) <= 1e-9);
    }
  }
}

TEST_CASE("ctransform") {
  const GridFunction zero{{0.0}, {0.0}};
  const GridFunction t0 = ctransform(zero, 2.0, {0.0});
  CHECK(t0.values[0] == 0.0);
  CHECK_THROWS_AS(ctransform(zero, 2.0, {}), EmptyGrid);

  // sup-norm contraction and the constant bound
  Rng rng(55);
  std::vector<double> grid;
  for (int i = 0; i < 9; ++i) grid.push_back(-2.0 + 0.5 * i);
  for (int s = 0; s < 20; ++s) {
    GridFunction phi{grid, {}}, psi{grid, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      phi.values.push_back(rng.uniform(-1, 1));
      psi.values.push_back(rng.uniform(-1, 1));
    }
    for (double p : {1.0, 2.0}) {
      const GridFunction tp = ctransform(phi, p, grid);
      const GridFunction tq = ctransform(psi, p, grid);
      double norm_phi = 0, norm_tp = 0, dist_in = 0, dist_out = 0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        norm_phi = std::max(norm_phi, std::abs(phi.values[i]));
        norm_tp = std::max(norm_tp, std::abs(tp.values[i]));
        dist_in = std::max(dist_in, std::abs(phi.values[i] - psi.values[i]));
        dist_out = std::max(dist_out, std::abs(tp.values[i] - tq.values[i]));
      }
      CHECK(norm_tp <= norm_phi + 1e-12);
      CHECK(dist_out <= dist_in + 1e-12);

      // order reversal: phi <= phi' pointwise => transform(phi) >= transform(phi')
      GridFunction larger = phi;
      for (double& v : larger.values) v += 0.25;
      const GridFunction tl = ctransform(larger, p, grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(tl.values[i] <= tp.values[i] + 1e-12);
    }
  }
}

TEST_CASE("optimal potentials: examples") {
  // identical measures: zero duality gap at zero
  const Measure1D m = Measure1D::from_atoms({0.0, 1.0}, {0.5, 0.5});
  auto [phi_same, psi_same] = optimal_potentials_1d(m, m, 2.0);
  CHECK(std::abs(-integrate(phi_same, m) - integrate(psi_same, m)) <= 1e-12);

  // delta_0 vs delta_1, p = 2: dual value 1
  auto [phi, psi] = optimal_potentials_1d(dirac1d(0.0), dirac1d(1.0), 2.0);
  CHECK(-integrate(phi, dirac1d(0.0)) - integrate(psi, dirac1d(1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(phi.at(0.0) == 0.0);  // gauge

  // the two-vs-three point instance: dual value 2 - sqrt 2
  const Measure1D mu = two_point_unit();
  const Measure1D nu = three_point_b();
  auto [phi2, psi2] = optimal_potentials_1d(mu, nu, 2.0);
  const double dual = -integrate(phi2, mu) - integrate(psi2, nu);
  CHECK(std::abs(dual - (2.0 - std::sqrt(2.0))) <= 1e-7);
}

TEST_CASE("optimal potentials: admissibility and attainment on random instances") {
  Rng rng(2718);
  for (int s = 0; s < 30; ++s) {
    const Measure1D mu = testing::random_measure_1d(rng, 9, 2.0);
    const Measure1D nu = testing::random_measure_1d(rng, 9, 2.0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      auto [phi, psi] = optimal_potentials_1d(mu, nu, p);
      for (std::size_t i = 0; i < phi.grid.size(); ++i)
        for (std::size_t j = 0; j < psi.grid.size(); ++j)
          CHECK(-phi.values[i] - psi.values[j] <=
                pow_abs(phi.grid[i] - psi.grid[j], p) + 1e-12);
      const double primal_pow = pow_abs(wasserstein_1d(mu, nu, p), p);
      const double dual = -integrate(phi, mu) - integrate(psi, nu);
      CHECK(dual <= primal_pow + 1e-9);   // weak duality
      CHECK(dual >= primal_pow - 1e-7);   // attainment on discrete instances
    }
  }
}

TEST_CASE("GridFunction::at rejects off-grid queries") {
  const GridFunction f{{0.0, 1.0}, {5.0, 6.0}};
  CHECK(f.at(1.0) == 6.0);
  CHECK_THROWS_AS(f.at(0.5), ShapeMismatch);
}

}  // TEST_SUITE
