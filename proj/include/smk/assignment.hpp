#pragma once

#include <vector>

#include "smk/errors.hpp"

namespace smk {

/// Exact minimum-cost perfect matching on a dense square cost matrix,
/// shortest-augmenting-path method with dual potentials. O(n^3).
double assignment_min_cost(const std::vector<std::vector<double>>& cost);

/// Exact optimal value of the transportation LP
///   min sum_ij cost[i][j] g[i][j]  s.t.  row sums = supply, col sums = demand,
/// solved by successive shortest paths with potentials on the dense
/// bipartite network. Supplies and demands must carry equal total mass.
double transport_lp_min_cost(const std::vector<std::vector<double>>& cost,
                             const std::vector<double>& supply,
                             const std::vector<double>& demand);

}  // namespace smk
