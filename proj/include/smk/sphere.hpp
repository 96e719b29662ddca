#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smk/errors.hpp"

namespace smk {

/// Quadrature of the normalized surface measure on S^{n-1}:
/// unit directions with positive weights summing to 1.
class DirectionSet {
 public:
  enum class Kind { MonteCarlo, CircleGrid, Explicit };

  DirectionSet(int dim, std::vector<std::vector<double>> directions,
               std::vector<double> weights, Kind kind, std::string id);

  int dim() const { return dim_; }
  std::size_t size() const { return directions_.size(); }
  const std::vector<std::vector<double>>& directions() const { return directions_; }
  const std::vector<double>& weights() const { return weights_; }
  Kind kind() const { return kind_; }
  bool deterministic() const { return kind_ != Kind::MonteCarlo; }

  /// Stable identifier, e.g. "circle:720" or "mc:2048:seed=7:d3".
  const std::string& id() const { return id_; }

 private:
  int dim_;
  std::vector<std::vector<double>> directions_;
  std::vector<double> weights_;
  Kind kind_;
  std::string id_;
};

/// M i.i.d. uniform directions on S^{n-1} (normalized Gaussians), equal weights.
DirectionSet mc_directions(int dim, std::size_t count, std::uint64_t seed);

/// Deterministic grid (cos 2pi k/M, sin 2pi k/M) on S^1; M must be divisible
/// by 8 so that +-e1, +-e2 and the diagonals are grid points.
DirectionSet circle_grid(std::size_t count);

/// Weighted L^q norm of non-negative values (q >= 1 or infinity).
double lq_aggregate(const std::vector<double>& values, const std::vector<double>& weights,
                    double q);

/// Monte Carlo standard error of lq_aggregate under equal-weight sampling
/// (delta method); returns 0 for q = infinity.
double lq_aggregate_se(const std::vector<double>& values, const std::vector<double>& weights,
                       double q);

/// The comparison constant: L^q norm of |<e1, .>| over the direction set.
double m_constant(double q, const DirectionSet& dirs);

}  // namespace smk
