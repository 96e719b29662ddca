#include "smk/sliced.hpp"

#include <algorithm>
#include <cmath>

#include "smk/assignment.hpp"
#include "smk/numerics.hpp"
#include "smk/ot1d.hpp"

namespace smk {

SlicedDistanceReport sliced_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                     double p, double q, const DirectionSet& dirs) {
  if (mu.dim() != nu.dim() || mu.dim() != dirs.dim())
    throw DimMismatch("sliced_distance: dimension mismatch");
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  if (!std::isinf(q) && q < 1.0) throw InvalidExponent("q must be >= 1 or infinity");

  SlicedDistanceReport rep;
  rep.p = p;
  rep.q = q;
  rep.dirset_id = dirs.id();
  rep.per_direction.resize(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t d) {
    const Measure1D a = project(mu, dirs.directions()[d]);
    const Measure1D b = project(nu, dirs.directions()[d]);
    rep.per_direction[d] = wasserstein_1d(a, b, p);
  });
  rep.aggregate = lq_aggregate(rep.per_direction, dirs.weights(), q);
  return rep;
}

double sliced_mkpq(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p, double q,
                   const DirectionSet& dirs) {
  return sliced_distance(mu, nu, p, q, dirs).aggregate;
}

namespace {

bool equal_weight_same_count(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.size() != nu.size()) return false;
  const double w = 1.0 / static_cast<double>(mu.size());
  for (double x : mu.weights())
    if (std::abs(x - w) > 1e-12) return false;
  for (double x : nu.weights())
    if (std::abs(x - w) > 1e-12) return false;
  return true;
}

double pair_cost(const std::vector<double>& x, const std::vector<double>& y, double p) {
  double n2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    n2 += d * d;
  }
  return pow_abs(std::sqrt(n2), p);
}

}  // namespace

double wasserstein_nd_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
  if (mu.dim() != nu.dim()) throw DimMismatch("wasserstein_nd_exact: dimension mismatch");
  if (p < 1.0) throw InvalidExponent("p must be >= 1");

  if (equal_weight_same_count(mu, nu)) {
    const std::size_t n = mu.size();
    if (n > 1024) throw TooLarge("assignment solver capped at 1024 points per side");
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cost[i][j] = pair_cost(mu.points()[i], nu.points()[j], p);
    const double total = assignment_min_cost(cost) / static_cast<double>(n);
    return std::pow(std::max(total, 0.0), 1.0 / p);
  }

  if (mu.size() > 64 || nu.size() > 64)
    throw TooLarge("transport LP capped at 64 atoms per side");
  std::vector<std::vector<double>> cost(mu.size(), std::vector<double>(nu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      cost[i][j] = pair_cost(mu.points()[i], nu.points()[j], p);
  const double total = transport_lp_min_cost(cost, mu.weights(), nu.weights());
  return std::pow(std::max(total, 0.0), 1.0 / p);
}

ComparisonCheck check_comparison(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                                 double q, const DirectionSet& dirs) {
  const SlicedDistanceReport rep = sliced_distance(mu, nu, p, q, dirs);
  const double s = std::isinf(q) ? q : std::max(p, q);
  const double w_exact = wasserstein_nd_exact(mu, nu, p);

  ComparisonCheck out;
  out.lhs = rep.aggregate;
  out.rhs = m_constant(s, dirs) * w_exact;
  if (dirs.deterministic()) {
    out.tol = 1e-6;
  } else if (std::isinf(q)) {
    // Per-direction distances never exceed the R^n distance, so the grid
    // max obeys the bound without quadrature error.
    out.tol = 1e-9;
  } else {
    std::vector<double> e1(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) e1[i] = std::abs(dirs.directions()[i][0]);
    const double se_lhs = lq_aggregate_se(rep.per_direction, dirs.weights(), q);
    const double se_rhs = w_exact * lq_aggregate_se(e1, dirs.weights(), s);
    out.tol = 3.0 * std::sqrt(se_lhs * se_lhs + se_rhs * se_rhs);
  }
  out.ok = out.lhs <= out.rhs + out.tol;
  return out;
}

double refine_max_direction(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                            const DirectionSet& dirs) {
  if (dirs.kind() != DirectionSet::Kind::CircleGrid || dirs.dim() != 2)
    throw InvalidParam("refinement requires a circle grid on S^1");
  const std::size_t m = dirs.size();
  const auto value_at = [&](double theta) {
    const std::vector<double> w{std::cos(theta), std::sin(theta)};
    return wasserstein_1d(project(mu, w), project(nu, w), p);
  };
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = wasserstein_1d(project(mu, dirs.directions()[i]),
                                    project(nu, dirs.directions()[i]), p);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double step = 6.283185307179586476925286766559 / static_cast<double>(m);
  double lo = (static_cast<double>(best) - 1.0) * step;
  double hi = (static_cast<double>(best) + 1.0) * step;
  const double gr = 0.6180339887498949;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = value_at(x1), f2 = value_at(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = value_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = value_at(x1);
    }
  }
  return std::max(best_val, std::max(f1, f2));
}

}  // namespace smk
