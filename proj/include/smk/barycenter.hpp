#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smk/measures.hpp"
#include "smk/sphere.hpp"

namespace smk {

struct BarycenterInput {
  DiscreteMeasure measure;
  double lambda = 1.0;
};

/// Minimize sum_k lambda_k * sliced_pq(mu_k, nu)^kappa over equal-weight
/// measures nu with a fixed number of free support points.
struct BarycenterProblem {
  std::vector<BarycenterInput> inputs;
  double p = 2.0;
  double q = 2.0;
  double kappa = 2.0;
  std::size_t support_size = 1;
  DirectionSet dirs;

  BarycenterProblem(std::vector<BarycenterInput> in, double p_, double q_, double kappa_,
                    std::size_t support, DirectionSet d);
  int dim() const { return dirs.dim(); }
};

/// The functional value at nu (kappa = 0 gives the constant 1).
double objective(const BarycenterProblem& problem, const DiscreteMeasure& nu);

struct SolveOptions {
  std::size_t iters = 2000;
  double step0 = -1.0;           // < 0: half the problem diameter
  std::size_t batch = 32;        // directions sampled per iteration
  std::uint64_t seed = 42;
  std::size_t eval_every = 50;   // exact objective cadence (checkpointing)
};

struct TraceRow {
  std::size_t iter = 0;
  double objective_estimate = 0.0;
  double step = 0.0;
};

struct BarycenterSolution {
  DiscreteMeasure nu;
  std::vector<TraceRow> trace;
  double initial_objective = 0.0;
  double final_objective = 0.0;
};

/// Stochastic subgradient descent on the support locations: per iteration a
/// fresh Monte Carlo direction batch, per-slice signed displacements from
/// the quantile matching, directions reweighted L^r-style (r = q/p), step
/// decaying as step0/sqrt(1+t). Returns the best exactly-evaluated iterate;
/// kappa in (0,1) falls back to pattern search on the exact objective.
BarycenterSolution solve_fixed_support(const BarycenterProblem& problem,
                                       const SolveOptions& options);

/// Brute-force oracle for support_size == 1 in dim <= 3: exhaustive lattice
/// of the given bounds at the given resolution; per-direction distances to a
/// Dirac evaluate in closed form, independent of the 1D solver.
DiscreteMeasure grid_oracle(const BarycenterProblem& problem,
                            const std::vector<std::pair<double, double>>& bounds,
                            double resolution);

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace);

}  // namespace smk
