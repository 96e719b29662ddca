#pragma once

#include <utility>
#include <vector>

#include "smk/measures.hpp"

namespace smk {

/// Real function sampled on a strictly increasing grid.
struct GridFunction {
  std::vector<double> grid;
  std::vector<double> values;

  /// Value at a grid point; the query must match a grid node within tol.
  double at(double x, double tol = 1e-9) const;
};

/// Exact p-Wasserstein distance on R via the quantile coupling, evaluated
/// by merging the two cumulative-weight breakpoint sequences. No quadrature.
double wasserstein_1d(const Measure1D& mu, const Measure1D& nu, double p);

/// Independent oracle: optimal transport cost between 1D measures solved as
/// a linear program (successive shortest paths on the dense bipartite
/// network). Capped at 12 atoms per side.
double brute_force_lp_1d(const Measure1D& mu, const Measure1D& nu, double p);

/// Left-continuous generalized inverse of the CDF, u in (0,1).
double quantile(const Measure1D& mu, double u);

/// Point on the unique 1D geodesic: quantile functions interpolated
/// linearly on the merged breakpoint partition.
Measure1D displacement_interpolate_1d(const Measure1D& mu, const Measure1D& nu, double tau);

/// phi^{d^p}(s) = max_{t in phi.grid} ( -|t-s|^p - phi(t) ), for s in domain.
GridFunction ctransform(const GridFunction& phi, double p, const std::vector<double>& domain);

/// Kantorovich potentials for the pair (mu, nu) with cost |t-s|^p, built on
/// the joint atom grid from the monotone plan and closed under the
/// d^p-transform. Convention: phi = 0 at the smallest atom of mu.
/// The pair is admissible (-phi(t) - psi(s) <= |t-s|^p on all grid pairs)
/// and attains the primal value on discrete instances.
std::pair<GridFunction, GridFunction> optimal_potentials_1d(const Measure1D& mu,
                                                            const Measure1D& nu, double p);

/// sum_i w_i f(atom_i); every atom must lie on f's grid.
double integrate(const GridFunction& f, const Measure1D& m);

}  // namespace smk
