#include "smk/ot1d.hpp"

#include <algorithm>
#include <cmath>

#include "smk/assignment.hpp"
#include "smk/numerics.hpp"

namespace smk {

double GridFunction::at(double x, double tol) const {
  auto it = std::lower_bound(grid.begin(), grid.end(), x - tol);
  if (it == grid.end() || std::abs(*it - x) > tol)
    throw ShapeMismatch("query point is not on the grid");
  return values[static_cast<std::size_t>(it - grid.begin())];
}

double wasserstein_1d(const Measure1D& mu, const Measure1D& nu, double p) {
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  const auto& ca = mu.cumulative();
  const auto& cb = nu.cumulative();
  std::size_t i = 0, j = 0;
  double prev = 0.0;
  KahanSum cost;
  while (true) {
    const double u = std::min(ca[i], cb[j]);
    if (u > prev) cost.add((u - prev) * pow_abs(mu.atoms()[i] - nu.atoms()[j], p));
    prev = u;
    const bool adv_i = ca[i] == u && i + 1 < ca.size();
    const bool adv_j = cb[j] == u && j + 1 < cb.size();
    if (!adv_i && !adv_j) break;
    if (adv_i) ++i;
    if (adv_j) ++j;
  }
  return std::pow(std::max(cost.value(), 0.0), 1.0 / p);
}

double brute_force_lp_1d(const Measure1D& mu, const Measure1D& nu, double p) {
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  if (mu.size() > 12 || nu.size() > 12)
    throw TooLarge("coupling LP oracle is capped at 12 atoms per side");
  const std::size_t m = mu.size(), k = nu.size();
  std::vector<std::vector<double>> cost(m, std::vector<double>(k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      cost[i][j] = pow_abs(mu.atoms()[i] - nu.atoms()[j], p);
  const double value = transport_lp_min_cost(cost, mu.weights(), nu.weights());
  return std::pow(std::max(value, 0.0), 1.0 / p);
}

double quantile(const Measure1D& mu, double u) {
  if (!(u > 0.0 && u < 1.0)) throw InvalidQuantile("u must lie in (0,1)");
  const auto& c = mu.cumulative();
  auto it = std::lower_bound(c.begin(), c.end(), u);
  return mu.atoms()[static_cast<std::size_t>(it - c.begin())];
}

Measure1D displacement_interpolate_1d(const Measure1D& mu, const Measure1D& nu, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidParam("tau must lie in [0,1]");
  const auto& ca = mu.cumulative();
  const auto& cb = nu.cumulative();
  std::vector<double> atoms, weights;
  std::size_t i = 0, j = 0;
  double prev = 0.0;
  while (true) {
    const double u = std::min(ca[i], cb[j]);
    if (u > prev) {
      atoms.push_back((1.0 - tau) * mu.atoms()[i] + tau * nu.atoms()[j]);
      weights.push_back(u - prev);
    }
    prev = u;
    const bool adv_i = ca[i] == u && i + 1 < ca.size();
    const bool adv_j = cb[j] == u && j + 1 < cb.size();
    if (!adv_i && !adv_j) break;
    if (adv_i) ++i;
    if (adv_j) ++j;
  }
  return Measure1D::from_atoms(std::move(atoms), std::move(weights));
}

GridFunction ctransform(const GridFunction& phi, double p, const std::vector<double>& domain) {
  if (phi.grid.empty() || domain.empty()) throw EmptyGrid("c-transform needs non-empty grids");
  GridFunction out;
  out.grid = domain;
  out.values.resize(domain.size());
  for (std::size_t s = 0; s < domain.size(); ++s) {
    double best = -kInf;
    for (std::size_t t = 0; t < phi.grid.size(); ++t)
      best = std::max(best, -pow_abs(phi.grid[t] - domain[s], p) - phi.values[t]);
    out.values[s] = best;
  }
  return out;
}

std::pair<GridFunction, GridFunction> optimal_potentials_1d(const Measure1D& mu,
                                                            const Measure1D& nu, double p) {
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  const std::size_t m = mu.size(), k = nu.size();
  const auto& ca = mu.cumulative();
  const auto& cb = nu.cumulative();
  const auto cost = [&](std::size_t i, std::size_t j) {
    return pow_abs(mu.atoms()[i] - nu.atoms()[j], p);
  };

  // Complementary slackness along the monotone plan: walk the staircase of
  // basic cells, pinning -phi(t_i) - psi(s_j) = |t_i - s_j|^p on each. A
  // cumulative-weight tie disconnects the staircase; the zero-mass cell
  // (i+1, j) is inserted to keep the chain connected, as in the degenerate
  // north-west-corner basis.
  std::vector<double> phi0(m), psi0(k);
  phi0[0] = 0.0;
  psi0[0] = -cost(0, 0) - phi0[0];
  std::size_t i = 0, j = 0;
  while (i + 1 < m || j + 1 < k) {
    if (i + 1 < m && (j + 1 == k || ca[i] <= cb[j])) {
      ++i;
      phi0[i] = -cost(i, j) - psi0[j];
    } else {
      ++j;
      psi0[j] = -cost(i, j) - phi0[i];
    }
  }

  // Joint grid; close the pair under the d^p-transform. On feasible
  // staircase duals this is the identity on the atoms and extends the
  // potentials to the union grid; it also enforces admissibility
  // unconditionally.
  std::vector<double> joint;
  joint.reserve(m + k);
  joint.insert(joint.end(), mu.atoms().begin(), mu.atoms().end());
  joint.insert(joint.end(), nu.atoms().begin(), nu.atoms().end());
  std::sort(joint.begin(), joint.end());
  joint.erase(std::unique(joint.begin(), joint.end()), joint.end());

  GridFunction phi_atoms{mu.atoms(), phi0};
  GridFunction psi = ctransform(phi_atoms, p, joint);
  GridFunction phi = ctransform(psi, p, joint);

  // Gauge: phi vanishes at the smallest atom of mu.
  const double shift = phi.at(mu.atoms().front());
  for (double& v : phi.values) v -= shift;
  for (double& v : psi.values) v += shift;
  return {std::move(phi), std::move(psi)};
}

double integrate(const GridFunction& f, const Measure1D& m) {
  KahanSum s;
  for (std::size_t i = 0; i < m.size(); ++i) s.add(m.weights()[i] * f.at(m.atoms()[i]));
  return s.value();
}

}  // namespace smk
