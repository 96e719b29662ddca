#include "smk/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "smk/numerics.hpp"
#include "smk/ot1d.hpp"
#include "smk/rng.hpp"
#include "smk/sliced.hpp"

namespace smk {

BarycenterProblem::BarycenterProblem(std::vector<BarycenterInput> in, double p_, double q_,
                                     double kappa_, std::size_t support, DirectionSet d)
    : inputs(std::move(in)), p(p_), q(q_), kappa(kappa_), support_size(support),
      dirs(std::move(d)) {
  if (inputs.empty()) throw InvalidParam("barycenter problem needs at least one input");
  if (p < 1.0) throw InvalidExponent("p must be >= 1");
  if (p > q) throw HypothesisViolated("barycenter problem requires p <= q");
  if (kappa < 0.0) throw InvalidExponent("kappa must be >= 0");
  if (support_size == 0) throw InvalidParam("support_size must be >= 1");
  double sum = 0.0;
  for (const auto& in_k : inputs) {
    if (in_k.measure.dim() != dirs.dim()) throw DimMismatch("input dimension mismatch");
    if (!(in_k.lambda > 0.0)) throw InvalidWeights("lambdas must be positive");
    sum += in_k.lambda;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidWeights("lambdas must sum to 1");
  for (auto& in_k : inputs) in_k.lambda /= sum;
}

double objective(const BarycenterProblem& problem, const DiscreteMeasure& nu) {
  if (nu.dim() != problem.dim()) throw DimMismatch("objective: dimension mismatch");
  if (problem.kappa == 0.0) return 1.0;
  KahanSum total;
  for (const auto& in_k : problem.inputs) {
    const double d = sliced_mkpq(in_k.measure, nu, problem.p, problem.q, problem.dirs);
    total.add(in_k.lambda * std::pow(d, problem.kappa));
  }
  return total.value();
}

namespace {

double problem_diameter(const BarycenterProblem& problem) {
  std::vector<const std::vector<double>*> pts;
  for (const auto& in_k : problem.inputs)
    for (const auto& x : in_k.measure.points()) pts.push_back(&x);
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < pts[i]->size(); ++k) {
        const double d = (*pts[i])[k] - (*pts[j])[k];
        s += d * d;
      }
      d2 = std::max(d2, s);
    }
  return std::sqrt(d2);
}

std::vector<std::vector<double>> initial_support(const BarycenterProblem& problem,
                                                 std::uint64_t seed) {
  Rng rng(seed, 0);
  std::vector<std::vector<double>> pts;
  pts.reserve(problem.support_size);
  for (std::size_t i = 0; i < problem.support_size; ++i) {
    double u = rng.uniform();
    std::size_t k = 0;
    for (; k + 1 < problem.inputs.size(); ++k) {
      if (u < problem.inputs[k].lambda) break;
      u -= problem.inputs[k].lambda;
    }
    const auto& m = problem.inputs[k].measure;
    double v = rng.uniform();
    std::size_t j = 0;
    for (; j + 1 < m.size(); ++j) {
      if (v < m.weights()[j]) break;
      v -= m.weights()[j];
    }
    pts.push_back(m.points()[j]);
  }
  return pts;
}

DiscreteMeasure equal_weight_measure(int dim, const std::vector<std::vector<double>>& pts) {
  return DiscreteMeasure(dim, pts,
                         std::vector<double>(pts.size(), 1.0 / static_cast<double>(pts.size())));
}

// Per-direction quantile matching of the support points (mass 1/S each,
// ties broken by point index) against a projected input. Returns the
// direction's cost^p and fills d(cost^p)/d<y_i, omega>.
double matching_pow_and_grad(const std::vector<double>& dots, const Measure1D& target, double p,
                             std::vector<double>& grad_pow) {
  const std::size_t s_count = dots.size();
  std::vector<std::size_t> order(s_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dots[a] < dots[b]; });

  std::fill(grad_pow.begin(), grad_pow.end(), 0.0);
  const auto& cb = target.cumulative();
  KahanSum cost;
  std::size_t r = 0, j = 0;
  double prev = 0.0;
  while (true) {
    const double cum_nu = static_cast<double>(r + 1) / static_cast<double>(s_count);
    const double u = std::min(cum_nu, cb[j]);
    if (u > prev) {
      const double z = dots[order[r]] - target.atoms()[j];
      cost.add((u - prev) * pow_abs(z, p));
      const double mag = p == 1.0 ? 1.0 : p * pow_abs(z, p - 1.0);
      grad_pow[order[r]] += (u - prev) * (z > 0.0 ? mag : (z < 0.0 ? -mag : 0.0));
    }
    prev = u;
    const bool adv_r = cum_nu == u && r + 1 < s_count;
    const bool adv_j = cb[j] == u && j + 1 < cb.size();
    if (!adv_r && !adv_j) break;
    if (adv_r) ++r;
    if (adv_j) ++j;
  }
  return cost.value();
}

BarycenterSolution pattern_search(const BarycenterProblem& problem, const SolveOptions& options,
                                  std::vector<std::vector<double>> support, double diameter) {
  const int dim = problem.dim();
  DiscreteMeasure current = equal_weight_measure(dim, support);
  double best = objective(problem, current);
  BarycenterSolution sol{current, {}, best, best};
  double step = options.step0 > 0.0 ? options.step0 : 0.25 * std::max(diameter, 1e-3);
  for (std::size_t sweep = 0; sweep < options.iters; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < support.size(); ++i)
      for (int c = 0; c < dim; ++c)
        for (double sign : {1.0, -1.0}) {
          auto trial = support;
          trial[i][c] += sign * step;
          const DiscreteMeasure cand = equal_weight_measure(dim, trial);
          const double val = objective(problem, cand);
          if (val < best - 1e-15) {
            best = val;
            support = std::move(trial);
            improved = true;
          }
        }
    sol.trace.push_back({sweep, best, step});
    if (!improved) {
      step *= 0.5;
      if (step < 1e-7 * std::max(diameter, 1.0)) break;
    }
  }
  sol.nu = equal_weight_measure(dim, support);
  sol.final_objective = best;
  return sol;
}

}  // namespace

BarycenterSolution solve_fixed_support(const BarycenterProblem& problem,
                                       const SolveOptions& options) {
  const int dim = problem.dim();
  const double p = problem.p, q = problem.q, kappa = problem.kappa;
  const std::size_t s_count = problem.support_size;
  const std::size_t n_inputs = problem.inputs.size();
  const double diameter = problem_diameter(problem);

  std::vector<std::vector<double>> support = initial_support(problem, options.seed);
  DiscreteMeasure init = equal_weight_measure(dim, support);
  if (kappa == 0.0) {
    return BarycenterSolution{init, {TraceRow{0, 1.0, 0.0}}, 1.0, 1.0};
  }
  if (kappa < 1.0) {
    // Subgradients are not valid below kappa = 1; derivative-free descent.
    return pattern_search(problem, options, std::move(support), diameter);
  }

  const double step0 = options.step0 > 0.0 ? options.step0 : 0.5 * std::max(diameter, 1e-3);
  const std::size_t batch = std::max<std::size_t>(options.batch, 1);

  Rng dir_rng(options.seed, 1);
  BarycenterSolution sol{init, {}, objective(problem, init), 0.0};
  double best_val = sol.initial_objective;
  std::vector<std::vector<double>> best_support = support;
  std::size_t rises = 0;
  double last_eval = sol.initial_objective;

  std::vector<std::vector<double>> batch_dirs(batch, std::vector<double>(dim));
  std::vector<std::vector<double>> dots(batch, std::vector<double>(s_count));
  // per input: cost^p and gradient of cost^p per direction
  std::vector<std::vector<double>> cost_pow(batch, std::vector<double>(n_inputs));
  std::vector<std::vector<std::vector<double>>> grad_pow(
      batch, std::vector<std::vector<double>>(n_inputs, std::vector<double>(s_count)));
  std::vector<std::vector<Measure1D>> proj(batch);

  for (std::size_t t = 0; t < options.iters; ++t) {
    for (std::size_t d = 0; d < batch; ++d) {
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (int c = 0; c < dim; ++c) {
          batch_dirs[d][c] = dir_rng.gauss();
          n2 += batch_dirs[d][c] * batch_dirs[d][c];
        }
      } while (n2 < 1e-24);
      const double inv = 1.0 / std::sqrt(n2);
      for (double& c : batch_dirs[d]) c *= inv;
    }

    parallel_for(batch, [&](std::size_t d) {
      proj[d].clear();
      for (std::size_t i = 0; i < s_count; ++i) {
        double dot = 0.0;
        for (int c = 0; c < dim; ++c) dot += support[i][c] * batch_dirs[d][c];
        dots[d][i] = dot;
      }
      for (std::size_t k = 0; k < n_inputs; ++k) {
        proj[d].push_back(project(problem.inputs[k].measure, batch_dirs[d]));
        cost_pow[d][k] = matching_pow_and_grad(dots[d], proj[d][k], p, grad_pow[d][k]);
      }
    });

    // Assemble the subgradient with the L^r-style direction weights.
    std::vector<std::vector<double>> grad(s_count, std::vector<double>(dim, 0.0));
    double batch_objective = 0.0;
    const double wdir = 1.0 / static_cast<double>(batch);
    for (std::size_t k = 0; k < n_inputs; ++k) {
      double dk;          // distance estimate for input k on the batch
      if (std::isinf(q)) {
        std::size_t arg = 0;
        for (std::size_t d = 1; d < batch; ++d)
          if (cost_pow[d][k] > cost_pow[arg][k]) arg = d;
        dk = std::pow(cost_pow[arg][k], 1.0 / p);
        if (dk > 0.0) {
          const double coef = problem.inputs[k].lambda * kappa *
                              std::pow(dk, kappa - 1.0) * (1.0 / p) *
                              std::pow(cost_pow[arg][k], 1.0 / p - 1.0);
          for (std::size_t i = 0; i < s_count; ++i)
            for (int c = 0; c < dim; ++c)
              grad[i][c] += coef * grad_pow[arg][k][i] * batch_dirs[arg][c];
        }
      } else {
        KahanSum agg;
        for (std::size_t d = 0; d < batch; ++d)
          agg.add(wdir * std::pow(cost_pow[d][k], q / p));
        dk = std::pow(agg.value(), 1.0 / q);
        if (dk > 0.0) {
          const double coef0 = problem.inputs[k].lambda * kappa *
                               std::pow(dk, kappa - q) / p;
          for (std::size_t d = 0; d < batch; ++d) {
            if (cost_pow[d][k] <= 0.0 && q != p) continue;
            const double f = q == p ? 1.0 : std::pow(cost_pow[d][k], (q - p) / p);
            const double coef = coef0 * wdir * f;
            for (std::size_t i = 0; i < s_count; ++i) {
              const double g = coef * grad_pow[d][k][i];
              if (g == 0.0) continue;
              for (int c = 0; c < dim; ++c) grad[i][c] += g * batch_dirs[d][c];
            }
          }
        }
      }
      batch_objective += problem.inputs[k].lambda * std::pow(dk, kappa);
    }

    const double step = step0 / std::sqrt(1.0 + static_cast<double>(t));
    for (std::size_t i = 0; i < s_count; ++i)
      for (int c = 0; c < dim; ++c) support[i][c] -= step * grad[i][c];
    sol.trace.push_back({t, batch_objective, step});

    if ((t + 1) % options.eval_every == 0 || t + 1 == options.iters) {
      const DiscreteMeasure cur = equal_weight_measure(dim, support);
      const double val = objective(problem, cur);
      if (val < best_val) {
        best_val = val;
        best_support = support;
      }
      rises = val > last_eval ? rises + 1 : 0;
      last_eval = val;
      if (rises >= 10)
        throw StepTooLarge("objective increased over 10 consecutive checkpoints");
    }
  }

  sol.nu = equal_weight_measure(dim, best_support);
  sol.final_objective = best_val;
  return sol;
}

DiscreteMeasure grid_oracle(const BarycenterProblem& problem,
                            const std::vector<std::pair<double, double>>& bounds,
                            double resolution) {
  if (problem.support_size != 1) throw UnsupportedOracle("oracle requires support_size == 1");
  const int dim = problem.dim();
  if (dim > 3) throw UnsupportedOracle("oracle requires dim <= 3");
  if (static_cast<int>(bounds.size()) != dim) throw ShapeMismatch("bounds/dim mismatch");
  if (!(resolution > 0.0)) throw InvalidParam("resolution must be positive");

  const double p = problem.p, q = problem.q, kappa = problem.kappa;
  const std::size_t n_dirs = problem.dirs.size();
  const std::size_t n_inputs = problem.inputs.size();

  std::vector<std::vector<Measure1D>> proj(n_dirs);
  parallel_for(n_dirs, [&](std::size_t d) {
    for (std::size_t k = 0; k < n_inputs; ++k)
      proj[d].push_back(project(problem.inputs[k].measure, problem.dirs.directions()[d]));
  });

  std::vector<std::size_t> counts(dim);
  for (int c = 0; c < dim; ++c) {
    counts[c] =
        static_cast<std::size_t>(std::floor((bounds[c].second - bounds[c].first) / resolution)) +
        1;
  }
  std::size_t total = 1;
  for (int c = 0; c < dim; ++c) total *= counts[c];

  std::vector<double> objectives(total);
  parallel_for(total, [&](std::size_t flat) {
    std::vector<double> x(dim);
    std::size_t rem = flat;
    for (int c = dim - 1; c >= 0; --c) {
      x[c] = bounds[c].first + resolution * static_cast<double>(rem % counts[c]);
      rem /= counts[c];
    }
    double obj = 0.0;
    for (std::size_t k = 0; k < n_inputs; ++k) {
      double agg_max = 0.0;
      KahanSum agg;
      for (std::size_t d = 0; d < n_dirs; ++d) {
        double dot = 0.0;
        for (int c = 0; c < dim; ++c) dot += x[c] * problem.dirs.directions()[d][c];
        const Measure1D& m = proj[d][k];
        double dpow = 0.0;
        for (std::size_t j = 0; j < m.size(); ++j)
          dpow += m.weights()[j] * pow_abs(dot - m.atoms()[j], p);
        if (std::isinf(q))
          agg_max = std::max(agg_max, dpow);
        else
          agg.add(problem.dirs.weights()[d] * std::pow(dpow, q / p));
      }
      const double dk = std::isinf(q) ? std::pow(agg_max, 1.0 / p)
                                      : std::pow(agg.value(), 1.0 / q);
      obj += problem.inputs[k].lambda * std::pow(dk, kappa);
    }
    objectives[flat] = obj;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (objectives[i] < objectives[best]) best = i;

  std::vector<double> x(dim);
  std::size_t rem = best;
  for (int c = dim - 1; c >= 0; --c) {
    x[c] = bounds[c].first + resolution * static_cast<double>(rem % counts[c]);
    rem /= counts[c];
  }
  return DiscreteMeasure::dirac(x);
}

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "iteration,objective_estimate,step\n";
  out.precision(17);
  for (const auto& row : trace)
    out << row.iter << "," << row.objective_estimate << "," << row.step << "\n";
}

}  // namespace smk
