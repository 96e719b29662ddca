#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smk/measures.hpp"
#include "smk/sphere.hpp"

namespace smk {

/// Density of the projection of the uniform unit-square law along
/// (cos theta, sin theta), theta in [0, pi/4]; even in t, piecewise:
/// a plateau 1/(2 cos) and a linear ramp down to cos + sin.
double f_theta_density(double theta, double t);

/// Its CDF in closed form.
double f_theta_cdf(double theta, double t);

/// Total mass from the piecewise antiderivatives (equals 1; exposed so the
/// algebra itself is testable).
double f_theta_integral(double theta);

/// Kolmogorov-Smirnov distance between the empirical CDF of the samples
/// and f_theta's CDF. Samples are copied and sorted.
double ks_statistic_vs_ftheta(double theta, std::vector<double> samples);

/// Projects N uniform-square samples along (cos theta, sin theta) and
/// returns the KS statistic against the analytic CDF. Thresholding is the
/// caller's policy (no verdict below desk-scale N).
double validate_density(double theta, std::size_t n_samples, std::uint64_t seed);

/// Quantile-coupling cost^p between two sorted equal-weight samples; the
/// breakpoint walk runs on exact integer positions. Equal to
/// wasserstein_1d(...)^p on the corresponding measures.
double uniform_quantile_cost_pow(const std::vector<double>& sorted_a,
                                 const std::vector<double>& sorted_b, double p);

struct RateRecord {
  std::size_t n = 0;       // sample size N
  std::size_t trials = 0;
  double mean_value = 0.0;
  double std_error = 0.0;
  std::string statistic_id;
  bool has_bound = false;
  double bound = 0.0;
  bool bound_pass = false;
};

struct SamplingRateResult {
  std::vector<RateRecord> records;
  double slope = 0.0;           // log-log slope of mean against N
  double bound_constant = 0.0;  // (5p)^p * 2^(p+1)
  bool bound_holds = true;
};

/// Mean of the p-th power of the sliced (p,q) distance between a fixed
/// dense reference sample of the unit square (64x the largest N) and i.i.d.
/// N-point empirical measures, over the given trials. The explicit bound
/// (5p)^p 2^(p+1) N^(-p/2) applies for p >= 2.
SamplingRateResult sampling_rate_experiment(double p, double q,
                                            const std::vector<std::size_t>& ns, std::size_t trials,
                                            const DirectionSet& dirs, std::uint64_t seed);

enum class SourceShape { Square, Cube };

struct RateSeparationRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double classical_mean = 0.0, classical_se = 0.0;
  double sliced_mean = 0.0, sliced_se = 0.0;
  double ratio = 0.0;  // classical / sliced
};

struct RateSeparationResult {
  std::vector<RateSeparationRow> rows;
  std::vector<RateRecord> records;  // CSV-ready classical + sliced rows
  double classical_slope = 0.0;
  double sliced_slope = 0.0;
  bool ratio_monotone = false;
};

/// Empirical-vs-empirical comparison: for each N, mean of the exact
/// R^n distance^p and of the sliced distance^p between two independent
/// N-samples of the source. trials_per_n may be shorter than ns; the last
/// entry repeats (the exact solver dominates the budget at large N).
RateSeparationResult rate_separation_experiment(double p, double q, int dim, SourceShape shape,
                                                const std::vector<std::size_t>& ns,
                                                const std::vector<std::size_t>& trials_per_n,
                                                const DirectionSet& dirs, std::uint64_t seed);

/// CSV with the columns N, statistic_id, mean, std_error, bound, pass.
void write_rate_records_csv(const std::string& path, const std::vector<RateRecord>& records);

}  // namespace smk
