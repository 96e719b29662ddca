#pragma once

#include <cstdint>
#include <vector>

#include "smk/errors.hpp"

namespace smk {

/// Discrete probability measure on R^n: weighted point cloud.
/// Immutable after construction; weights are normalized (sum forced to 1
/// when the raw sum is within 1e-9 of 1, rejected otherwise).
class DiscreteMeasure {
 public:
  DiscreteMeasure(int dim, std::vector<std::vector<double>> points,
                  std::vector<double> weights);

  /// Dirac mass at a point.
  static DiscreteMeasure dirac(std::vector<double> point);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Largest Euclidean norm over the support.
  double support_radius() const;

  /// Copy translated by v.
  DiscreteMeasure translated(const std::vector<double>& v) const;

 private:
  int dim_;
  std::vector<std::vector<double>> points_;
  std::vector<double> weights_;
};

/// Probability measure on R as sorted atoms with cumulative weights.
class Measure1D {
 public:
  /// Sorts and merges atoms closer than `merge_tol` (absolute).
  static Measure1D from_atoms(std::vector<double> atoms, std::vector<double> weights,
                              double merge_tol = 1e-12);

  /// Fast path for already-sorted equal-weight samples (no merging).
  static Measure1D from_sorted_equal_weight(std::vector<double> sorted_atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double total_mass() const { return cumulative_.back(); }

 private:
  Measure1D() = default;
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

/// Pushforward of m under x -> <x, w> for a unit direction w.
Measure1D project(const DiscreteMeasure& m, const std::vector<double>& w);

/// N i.i.d. points with the first two coordinates uniform on [-1,1],
/// remaining coordinates zero; equal weights.
DiscreteMeasure sample_square(std::size_t n_points, int dim, std::uint64_t seed);

/// N i.i.d. points uniform on the unit cube [0,1]^dim; equal weights.
DiscreteMeasure sample_cube(std::size_t n_points, int dim, std::uint64_t seed);

/// sum_i w_i |x_i|^p (p >= 1).
double pth_moment(const DiscreteMeasure& m, double p);

/// p-th moment of a 1D measure: sum_i w_i |a_i|^p.
double pth_moment(const Measure1D& m, double p);

/// Convex combination (1-tau) m0 + tau m1 as measures.
DiscreteMeasure mix(const DiscreteMeasure& m0, const DiscreteMeasure& m1, double tau);

}  // namespace smk
