#include "smk/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "smk/numerics.hpp"
#include "smk/rng.hpp"

namespace smk {

DirectionSet::DirectionSet(int dim, std::vector<std::vector<double>> directions,
                           std::vector<double> weights, Kind kind, std::string id)
    : dim_(dim),
      directions_(std::move(directions)),
      weights_(std::move(weights)),
      kind_(kind),
      id_(std::move(id)) {
  if (directions_.empty()) throw EmptySet("direction set is empty");
  if (directions_.size() != weights_.size())
    throw InvalidWeights("directions/weights length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    if (static_cast<int>(directions_[i].size()) != dim_)
      throw DimMismatch("direction dimension mismatch");
    double n2 = 0.0;
    for (double c : directions_[i]) n2 += c * c;
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) throw InvalidDirection("non-unit direction");
    if (!(weights_[i] > 0.0)) throw InvalidWeights("direction weights must be positive");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidWeights("direction weights must sum to 1");
  for (double& w : weights_) w /= sum;
}

DirectionSet mc_directions(int dim, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw EmptySet("M must be >= 1");
  if (dim < 2) throw InvalidParam("dim must be >= 2");
  Rng rng(seed);
  std::vector<std::vector<double>> dirs(count, std::vector<double>(dim));
  for (auto& w : dirs) {
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        w[k] = rng.gauss();
        n2 += w[k] * w[k];
      }
    } while (n2 < 1e-24);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& c : w) c *= inv;
  }
  return DirectionSet(dim, std::move(dirs),
                      std::vector<double>(count, 1.0 / static_cast<double>(count)),
                      DirectionSet::Kind::MonteCarlo,
                      "mc:" + std::to_string(count) + ":seed=" + std::to_string(seed) +
                          ":d" + std::to_string(dim));
}

DirectionSet circle_grid(std::size_t count) {
  if (count < 4 || count % 8 != 0) throw InvalidGrid("circle grid size must be divisible by 8");
  std::vector<std::vector<double>> dirs(count, std::vector<double>(2));
  const double step = 6.283185307179586476925286766559 / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double th = step * static_cast<double>(k);
    dirs[k][0] = std::cos(th);
    dirs[k][1] = std::sin(th);
  }
  // Pin the axis and diagonal points exactly; they are maximizer sets in
  // several verification suites.
  const double rt = std::sqrt(0.5);
  dirs[0] = {1.0, 0.0};
  dirs[count / 8] = {rt, rt};
  dirs[count / 4] = {0.0, 1.0};
  dirs[3 * count / 8] = {-rt, rt};
  dirs[count / 2] = {-1.0, 0.0};
  dirs[5 * count / 8] = {-rt, -rt};
  dirs[3 * count / 4] = {0.0, -1.0};
  dirs[7 * count / 8] = {rt, -rt};
  return DirectionSet(2, std::move(dirs),
                      std::vector<double>(count, 1.0 / static_cast<double>(count)),
                      DirectionSet::Kind::CircleGrid, "circle:" + std::to_string(count));
}

double lq_aggregate(const std::vector<double>& values, const std::vector<double>& weights,
                    double q) {
  if (values.size() != weights.size()) throw ShapeMismatch("values/weights length mismatch");
  if (values.empty()) throw EmptySet("nothing to aggregate");
  for (double v : values)
    if (v < 0.0 || !std::isfinite(v)) throw InvalidValue("negative or non-finite value");
  if (std::isinf(q)) {
    return *std::max_element(values.begin(), values.end());
  }
  if (q < 1.0) throw InvalidExponent("q must be >= 1");
  KahanSum s;
  for (std::size_t i = 0; i < values.size(); ++i) s.add(weights[i] * pow_abs(values[i], q));
  return std::pow(s.value(), 1.0 / q);
}

double lq_aggregate_se(const std::vector<double>& values, const std::vector<double>& weights,
                       double q) {
  if (std::isinf(q)) return 0.0;
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  // SE of the weighted mean of v^q, then delta method through x^{1/q}.
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += weights[i] * pow_abs(values[i], q);
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = pow_abs(values[i], q) - mean;
    var += weights[i] * d * d;
  }
  const double se_mean = std::sqrt(var / static_cast<double>(n - 1));
  if (mean <= 0.0) return se_mean;
  return se_mean * std::pow(mean, 1.0 / q - 1.0) / q;
}

double m_constant(double q, const DirectionSet& dirs) {
  std::vector<double> vals(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) vals[i] = std::abs(dirs.directions()[i][0]);
  return lq_aggregate(vals, dirs.weights(), q);
}

}  // namespace smk
