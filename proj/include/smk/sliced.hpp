#pragma once

#include <string>
#include <vector>

#include "smk/measures.hpp"
#include "smk/sphere.hpp"

namespace smk {

/// Per-direction 1D distances plus their L^q aggregate.
struct SlicedDistanceReport {
  double p = 2.0;
  double q = 2.0;                     // may be infinity
  std::vector<double> per_direction;  // aligned with the direction set
  double aggregate = 0.0;
  std::string dirset_id;
};

/// The sliced (p,q) distance between discrete measures over a fixed
/// direction quadrature. Per-direction solves run data-parallel; the
/// aggregate is reduced in direction-index order with compensated
/// summation, so results are scheduling-independent.
SlicedDistanceReport sliced_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                     double p, double q, const DirectionSet& dirs);

/// Aggregate only.
double sliced_mkpq(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p, double q,
                   const DirectionSet& dirs);

/// Exact p-Monge-Kantorovich distance in R^n: optimal assignment for
/// equal-count equal-weight inputs (<= 1024 points/side), general
/// transportation LP otherwise (<= 64 atoms/side).
double wasserstein_nd_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p);

struct ComparisonCheck {
  double lhs = 0.0;  // sliced aggregate
  double rhs = 0.0;  // M_{max(p,q),n} * exact distance
  double tol = 0.0;
  bool ok = false;
};

/// Checks lhs <= rhs + tol, where tol is 1e-6 on deterministic direction
/// sets and three Monte Carlo standard errors otherwise.
ComparisonCheck check_comparison(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                                 double q, const DirectionSet& dirs);

/// Golden-section refinement of the max-sliced distance around the best
/// grid direction; circle grids on S^1 only. Returns a value >= the grid max.
double refine_max_direction(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                            const DirectionSet& dirs);

}  // namespace smk
