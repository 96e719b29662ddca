#include "smk/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "smk/numerics.hpp"

namespace smk {

double assignment_min_cost(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) throw InvalidParam("empty cost matrix");
  for (const auto& row : cost)
    if (row.size() != n) throw ShapeMismatch("cost matrix must be square");

  // Potentials u (rows), v (columns); p[j] = row currently matched to
  // column j; index 0 is the virtual unmatched slot.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);
  for (std::size_t r = 1; r <= n; ++r) {
    p[0] = r;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::size_t j1 = 0;
      double delta = kInf;
      const double ui0 = u[i0];
      const auto& row = cost[i0 - 1];
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - ui0 - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  KahanSum total;
  for (std::size_t j = 1; j <= n; ++j) total.add(cost[p[j] - 1][j - 1]);
  return total.value();
}

double transport_lp_min_cost(const std::vector<std::vector<double>>& cost,
                             const std::vector<double>& supply,
                             const std::vector<double>& demand) {
  const std::size_t m = supply.size(), k = demand.size();
  if (cost.size() != m) throw ShapeMismatch("cost rows != supply size");
  for (const auto& row : cost)
    if (row.size() != k) throw ShapeMismatch("cost cols != demand size");
  double sa = 0.0, sb = 0.0;
  for (double x : supply) sa += x;
  for (double x : demand) sb += x;
  if (std::abs(sa - sb) > 1e-9) throw InvalidWeights("supply/demand mass mismatch");

  constexpr double kMassEps = 1e-15;
  std::vector<double> rem_a = supply, rem_b = demand;
  std::vector<std::vector<double>> flow(m, std::vector<double>(k, 0.0));

  // Node potentials keeping residual reduced costs non-negative:
  // forward arc i->j costs c_ij + pi_l[i] - pi_r[j], backward the negative.
  std::vector<double> pi_l(m, 0.0), pi_r(k, 0.0);

  const std::size_t n_nodes = m + k;
  std::vector<double> dist(n_nodes);
  std::vector<int> pred(n_nodes);
  std::vector<char> done(n_nodes);

  const std::size_t max_iters = 4 * (m + k) * (m + k) + 64;
  std::size_t iter = 0;
  while (true) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i)
      if (rem_a[i] > kMassEps) { any = true; break; }
    if (!any) break;
    if (++iter > max_iters) throw Error("transport LP failed to converge");

    // Multi-source Dijkstra in reduced costs from rows with remaining
    // supply to the nearest column with remaining demand.
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred.begin(), pred.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < m; ++i)
      if (rem_a[i] > kMassEps) dist[i] = 0.0;

    std::size_t target = n_nodes;
    while (true) {
      std::size_t best = n_nodes;
      double bd = kInf;
      for (std::size_t v = 0; v < n_nodes; ++v)
        if (!done[v] && dist[v] < bd) {
          bd = dist[v];
          best = v;
        }
      if (best == n_nodes) break;
      done[best] = 1;
      if (best >= m && rem_b[best - m] > kMassEps) {
        target = best;
        break;
      }
      if (best < m) {
        const std::size_t i = best;
        for (std::size_t j = 0; j < k; ++j) {
          const double rc = std::max(cost[i][j] + pi_l[i] - pi_r[j], 0.0);
          if (dist[i] + rc < dist[m + j]) {
            dist[m + j] = dist[i] + rc;
            pred[m + j] = static_cast<int>(i);
          }
        }
      } else {
        const std::size_t j = best - m;
        for (std::size_t i = 0; i < m; ++i) {
          if (flow[i][j] <= 0.0) continue;
          const double rc = std::max(pi_r[j] - pi_l[i] - cost[i][j], 0.0);
          if (dist[m + j] + rc < dist[i]) {
            dist[i] = dist[m + j] + rc;
            pred[i] = static_cast<int>(m + j);
          }
        }
      }
    }
    if (target == n_nodes) throw Error("transport LP: no augmenting path");

    // Everyone shifts by min(dist, dt); unreached nodes clamp to dt, which
    // keeps reduced costs of all residual arcs non-negative.
    const double dt = dist[target];
    for (std::size_t i = 0; i < m; ++i) pi_l[i] += std::min(dist[i], dt);
    for (std::size_t j = 0; j < k; ++j) pi_r[j] += std::min(dist[m + j], dt);

    // Bottleneck over the augmenting path, then push.
    double bottleneck = rem_b[target - m];
    std::size_t v = target;
    while (pred[v] != -1) {
      const std::size_t u = static_cast<std::size_t>(pred[v]);
      if (v < m) bottleneck = std::min(bottleneck, flow[v][u - m]);
      v = u;
    }
    bottleneck = std::min(bottleneck, rem_a[v]);

    v = target;
    while (pred[v] != -1) {
      const std::size_t u = static_cast<std::size_t>(pred[v]);
      if (v >= m)
        flow[u][v - m] += bottleneck;
      else
        flow[v][u - m] -= bottleneck;
      v = u;
    }
    rem_a[v] -= bottleneck;
    if (rem_a[v] < kMassEps) rem_a[v] = 0.0;
    rem_b[target - m] -= bottleneck;
    if (rem_b[target - m] < kMassEps) rem_b[target - m] = 0.0;
  }

  KahanSum total;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (flow[i][j] > 0.0) total.add(cost[i][j] * flow[i][j]);
  return total.value();
}

}  // namespace smk
