#pragma once

#include <cmath>
#include <vector>

#include "smk/measures.hpp"
#include "smk/rng.hpp"

namespace smk::testing {

inline DiscreteMeasure random_measure(Rng& rng, int dim, std::size_t max_atoms,
                                      double scale = 1.0) {
  const std::size_t n = 1 + rng.below(max_atoms);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c) pts[i][c] = rng.uniform(-scale, scale);
    w[i] = rng.uniform(0.05, 1.0);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return DiscreteMeasure(dim, std::move(pts), std::move(w));
}

inline Measure1D random_measure_1d(Rng& rng, std::size_t max_atoms, double scale = 1.0) {
  const std::size_t n = 1 + rng.below(max_atoms);
  std::vector<double> atoms(n), w(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    atoms[i] = rng.uniform(-scale, scale);
    w[i] = rng.uniform(0.05, 1.0);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return Measure1D::from_atoms(std::move(atoms), std::move(w));
}

}  // namespace smk::testing
