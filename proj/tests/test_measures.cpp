#include <cmath>

#include <doctest.h>

#include "smk/measures.hpp"
#include "smk/numerics.hpp"
#include "smk/rng.hpp"
#include "test_util.hpp"

using namespace smk;

TEST_SUITE("measures") {

TEST_CASE("construction validates and normalizes") {
  DiscreteMeasure m(2, {{0.0, 0.0}, {1.0, 0.0}}, {0.5, 0.5});
  CHECK(m.size() == 2);

  // benign drift is normalized away
  DiscreteMeasure drift(1, {{0.0}, {1.0}}, {0.5 + 4e-10, 0.5});
  double sum = 0.0;
  for (double w : drift.weights()) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 0.0}}, {0.9}), InvalidWeights);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 0.0}}, {0.5, 0.5}), InvalidWeights);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0}}, {1.0}), DimMismatch);
  CHECK_THROWS_AS(DiscreteMeasure(2, {}, {}), EmptyMeasure);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 1.0 / 0.0}}, {1.0}), InvalidValue);
  CHECK_THROWS_AS(DiscreteMeasure(2, {{0.0, 0.0}, {1.0, 1.0}}, {1.5, -0.5}), InvalidWeights);
}

TEST_CASE("project: dirac identity case") {
  const DiscreteMeasure m = DiscreteMeasure::dirac({1.0, 0.0});
  const Measure1D p = project(m, {1.0, 0.0});
  REQUIRE(p.size() == 1);
  CHECK(p.atoms()[0] == 1.0);
  CHECK(p.weights()[0] == 1.0);
}

TEST_CASE("project: four corners onto e1 and the diagonal") {
  const DiscreteMeasure m(2, {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}},
                          {0.25, 0.25, 0.25, 0.25});

  const Measure1D on_e1 = project(m, {1.0, 0.0});
  REQUIRE(on_e1.size() == 2);
  CHECK(on_e1.atoms()[0] == -1.0);
  CHECK(on_e1.atoms()[1] == 1.0);
  CHECK(on_e1.weights()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(on_e1.weights()[1] == doctest::Approx(0.5).epsilon(1e-15));

  const double rt = std::sqrt(0.5);
  const Measure1D on_diag = project(m, {rt, rt});
  REQUIRE(on_diag.size() == 3);
  CHECK(on_diag.atoms()[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK(on_diag.atoms()[1] == doctest::Approx(0.0));
  CHECK(on_diag.atoms()[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(on_diag.weights()[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("project: errors and mass preservation") {
  const DiscreteMeasure m = DiscreteMeasure::dirac({1.0, 0.0});
  CHECK_THROWS_AS(project(m, {1.0, 1.0}), InvalidDirection);
  CHECK_THROWS_AS(project(m, {1.0, 0.0, 0.0}), DimMismatch);

  Rng rng(7);
  for (int s = 0; s < 25; ++s) {
    const DiscreteMeasure mm = testing::random_measure(rng, 3, 12);
    double a = rng.gauss(), b = rng.gauss(), c = rng.gauss();
    const double n = std::sqrt(a * a + b * b + c * c);
    const Measure1D p = project(mm, {a / n, b / n, c / n});
    CHECK(std::abs(p.total_mass() - 1.0) <= 1e-12);
  }
}

TEST_CASE("sample_square: support, moments, determinism") {
  const DiscreteMeasure one = sample_square(1, 2, 3);
  CHECK(std::abs(one.points()[0][0]) <= 1.0);
  CHECK(std::abs(one.points()[0][1]) <= 1.0);

  const std::size_t n = 10000;
  const DiscreteMeasure m = sample_square(n, 4, 123);
  double m1 = 0, m2 = 0, sq1 = 0;
  for (const auto& x : m.points()) {
    m1 += x[0];
    m2 += x[1];
    sq1 += x[0] * x[0];
    CHECK(x[2] == 0.0);
    CHECK(x[3] == 0.0);
  }
  CHECK(std::abs(m1 / n) <= 0.05);  // 3 sigma / sqrt(N) with sigma^2 = 1/3
  CHECK(std::abs(m2 / n) <= 0.05);
  CHECK(std::abs(sq1 / n - 1.0 / 3.0) <= 0.02);

  const DiscreteMeasure m_again = sample_square(n, 4, 123);
  CHECK(m.points()[17][0] == m_again.points()[17][0]);
  CHECK_THROWS_AS(sample_square(0, 2, 1), EmptyMeasure);
}

TEST_CASE("sample_cube: support and moments") {
  const std::size_t n = 10000;
  const DiscreteMeasure m = sample_cube(n, 3, 99);
  double mean[3] = {0, 0, 0};
  for (const auto& x : m.points())
    for (int c = 0; c < 3; ++c) {
      CHECK(x[c] >= 0.0);
      CHECK(x[c] <= 1.0);
      mean[c] += x[c];
    }
  for (int c = 0; c < 3; ++c) CHECK(std::abs(mean[c] / n - 0.5) <= 0.02);
}

TEST_CASE("pth_moment") {
  CHECK(pth_moment(DiscreteMeasure::dirac({0.0, 0.0}), 2.0) == 0.0);
  CHECK(pth_moment(DiscreteMeasure::dirac({1.0, 0.0}), 2.0) == 1.0);
  const DiscreteMeasure m(1, {{2.0}, {-2.0}}, {0.5, 0.5});
  CHECK(pth_moment(m, 3.0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK_THROWS_AS(pth_moment(m, 0.5), InvalidExponent);
}

TEST_CASE("projection moment never exceeds the full moment") {
  Rng rng(11);
  for (int s = 0; s < 30; ++s) {
    const DiscreteMeasure m = testing::random_measure(rng, 2, 10, 2.0);
    const double theta = rng.uniform(0, 6.283185307179586);
    const Measure1D p = project(m, {std::cos(theta), std::sin(theta)});
    for (double pw : {1.0, 2.0, 3.5})
      CHECK(pth_moment(p, pw) <= pth_moment(m, pw) + 1e-12);
  }
}

TEST_CASE("mix") {
  const DiscreteMeasure m0 = DiscreteMeasure::dirac({0.0, 0.0});
  const DiscreteMeasure m1 = DiscreteMeasure::dirac({1.0, 0.0});
  CHECK(mix(m0, m1, 0.0).points() == m0.points());
  CHECK(mix(m0, m1, 1.0).points() == m1.points());
  const DiscreteMeasure half = mix(m0, m1, 0.5);
  REQUIRE(half.size() == 2);
  CHECK(half.weights()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.weights()[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(mix(m0, DiscreteMeasure::dirac({0.0, 0.0, 0.0}), 0.5), DimMismatch);
  CHECK_THROWS_AS(mix(m0, m1, 1.5), InvalidParam);

  // support union and total mass for interior tau
  Rng rng(5);
  const DiscreteMeasure a = testing::random_measure(rng, 2, 6);
  const DiscreteMeasure b = testing::random_measure(rng, 2, 6);
  const DiscreteMeasure c = mix(a, b, 0.3);
  CHECK(c.size() == a.size() + b.size());
  double sum = 0.0;
  for (double w : c.weights()) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Measure1D merges close atoms and keeps cumulative tight") {
  const Measure1D m = Measure1D::from_atoms({1.0, 1.0, 0.0}, {0.25, 0.25, 0.5});
  REQUIRE(m.size() == 2);
  CHECK(m.weights()[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.cumulative().back() == 1.0);
}

}  // TEST_SUITE
