#include "smk/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smk/numerics.hpp"
#include "smk/rng.hpp"

namespace smk {

namespace {

void check_finite(const std::vector<double>& xs, const char* what) {
  for (double x : xs)
    if (!std::isfinite(x)) throw InvalidValue(std::string(what) + " contains a non-finite value");
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<std::vector<double>> points,
                                 std::vector<double> weights)
    : dim_(dim), points_(std::move(points)), weights_(std::move(weights)) {
  if (dim_ < 1) throw InvalidParam("dimension must be >= 1");
  if (points_.empty()) throw EmptyMeasure("measure needs at least one point");
  if (points_.size() != weights_.size())
    throw InvalidWeights("points/weights length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (static_cast<int>(points_[i].size()) != dim_)
      throw DimMismatch("point dimension mismatch");
    check_finite(points_[i], "point");
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i]))
      throw InvalidWeights("weights must be non-negative finite");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidWeights("weights sum to " + std::to_string(sum) + ", expected 1");
  for (double& w : weights_) w /= sum;
}

DiscreteMeasure DiscreteMeasure::dirac(std::vector<double> point) {
  const int d = static_cast<int>(point.size());
  return DiscreteMeasure(d, {std::move(point)}, {1.0});
}

double DiscreteMeasure::support_radius() const {
  double r2 = 0.0;
  for (const auto& x : points_) {
    double s = 0.0;
    for (double c : x) s += c * c;
    r2 = std::max(r2, s);
  }
  return std::sqrt(r2);
}

DiscreteMeasure DiscreteMeasure::translated(const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) != dim_) throw DimMismatch("translation dimension mismatch");
  auto pts = points_;
  for (auto& x : pts)
    for (int k = 0; k < dim_; ++k) x[k] += v[k];
  return DiscreteMeasure(dim_, std::move(pts), weights_);
}

Measure1D Measure1D::from_atoms(std::vector<double> atoms, std::vector<double> weights,
                                double merge_tol) {
  if (atoms.empty() || atoms.size() != weights.size())
    throw InvalidWeights("atoms/weights length mismatch or empty");
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

  Measure1D m;
  for (std::size_t k : order) {
    if (!std::isfinite(atoms[k])) throw InvalidValue("non-finite atom");
    if (!m.atoms_.empty() && atoms[k] - m.atoms_.back() <= merge_tol) {
      m.weights_.back() += weights[k];
    } else {
      m.atoms_.push_back(atoms[k]);
      m.weights_.push_back(weights[k]);
    }
  }
  m.cumulative_.resize(m.atoms_.size());
  KahanSum run;
  for (std::size_t i = 0; i < m.atoms_.size(); ++i) {
    run.add(m.weights_[i]);
    m.cumulative_[i] = run.value();
  }
  if (std::abs(m.cumulative_.back() - 1.0) > 1e-9)
    throw InvalidWeights("1D measure mass differs from 1");
  m.cumulative_.back() = 1.0;  // pin the final breakpoint
  return m;
}

Measure1D Measure1D::from_sorted_equal_weight(std::vector<double> sorted_atoms) {
  Measure1D m;
  const std::size_t n = sorted_atoms.size();
  if (n == 0) throw EmptyMeasure("empty sample");
  m.atoms_ = std::move(sorted_atoms);
  const double w = 1.0 / static_cast<double>(n);
  m.weights_.assign(n, w);
  m.cumulative_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    m.cumulative_[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  return m;
}

Measure1D project(const DiscreteMeasure& m, const std::vector<double>& w) {
  if (static_cast<int>(w.size()) != m.dim()) throw DimMismatch("direction dimension mismatch");
  double n2 = 0.0;
  for (double c : w) n2 += c * c;
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-9)
    throw InvalidDirection("direction is not a unit vector");
  std::vector<double> atoms(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    double dot = 0.0;
    for (int k = 0; k < m.dim(); ++k) dot += m.points()[i][k] * w[k];
    atoms[i] = dot;
  }
  return Measure1D::from_atoms(std::move(atoms), m.weights());
}

DiscreteMeasure sample_square(std::size_t n_points, int dim, std::uint64_t seed) {
  if (n_points == 0) throw EmptyMeasure("N must be >= 1");
  if (dim < 2) throw InvalidParam("square sampler needs dim >= 2");
  Rng rng(seed);
  std::vector<std::vector<double>> pts(n_points, std::vector<double>(dim, 0.0));
  for (auto& x : pts) {
    x[0] = rng.uniform(-1.0, 1.0);
    x[1] = rng.uniform(-1.0, 1.0);
  }
  return DiscreteMeasure(dim, std::move(pts),
                         std::vector<double>(n_points, 1.0 / static_cast<double>(n_points)));
}

DiscreteMeasure sample_cube(std::size_t n_points, int dim, std::uint64_t seed) {
  if (n_points == 0) throw EmptyMeasure("N must be >= 1");
  if (dim < 1) throw InvalidParam("dim must be >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> pts(n_points, std::vector<double>(dim));
  for (auto& x : pts)
    for (int k = 0; k < dim; ++k) x[k] = rng.uniform();
  return DiscreteMeasure(dim, std::move(pts),
                         std::vector<double>(n_points, 1.0 / static_cast<double>(n_points)));
}

double pth_moment(const DiscreteMeasure& m, double p) {
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  KahanSum s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double n2 = 0.0;
    for (double c : m.points()[i]) n2 += c * c;
    s.add(m.weights()[i] * pow_abs(std::sqrt(n2), p));
  }
  return s.value();
}

double pth_moment(const Measure1D& m, double p) {
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  KahanSum s;
  for (std::size_t i = 0; i < m.size(); ++i) s.add(m.weights()[i] * pow_abs(m.atoms()[i], p));
  return s.value();
}

DiscreteMeasure mix(const DiscreteMeasure& m0, const DiscreteMeasure& m1, double tau) {
  if (m0.dim() != m1.dim()) throw DimMismatch("mix: dimension mismatch");
  if (tau < 0.0 || tau > 1.0) throw InvalidParam("tau must be in [0,1]");
  if (tau == 0.0) return m0;
  if (tau == 1.0) return m1;
  std::vector<std::vector<double>> pts = m0.points();
  pts.insert(pts.end(), m1.points().begin(), m1.points().end());
  std::vector<double> w;
  w.reserve(m0.size() + m1.size());
  for (double x : m0.weights()) w.push_back((1.0 - tau) * x);
  for (double x : m1.weights()) w.push_back(tau * x);
  return DiscreteMeasure(m0.dim(), std::move(pts), std::move(w));
}

}  // namespace smk
