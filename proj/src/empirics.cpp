#include "smk/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "smk/numerics.hpp"
#include "smk/ot1d.hpp"
#include "smk/rng.hpp"
#include "smk/sliced.hpp"

namespace smk {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961566084581988;

void check_theta(double theta) {
  if (theta < 0.0 || theta > kQuarterPi + 1e-15)
    throw InvalidParam("theta must lie in [0, pi/4]");
}

}  // namespace

double f_theta_density(double theta, double t) {
  check_theta(theta);
  const double a = std::abs(t);
  if (theta == 0.0) return a <= 1.0 ? 0.5 : 0.0;
  const double c = std::cos(theta), s = std::sin(theta);
  if (a <= c - s) return 1.0 / (2.0 * c);
  if (a <= c + s) return (c + s - a) / (4.0 * s * c);
  return 0.0;
}

double f_theta_cdf(double theta, double t) {
  check_theta(theta);
  if (t < 0.0) return 1.0 - f_theta_cdf(theta, -t);
  if (theta == 0.0) return t >= 1.0 ? 1.0 : 0.5 * (t + 1.0);
  const double c = std::cos(theta), s = std::sin(theta);
  if (t <= c - s) return 0.5 + t / (2.0 * c);
  if (t <= c + s) {
    const double tail = c + s - t;
    return 1.0 - tail * tail / (8.0 * s * c);
  }
  return 1.0;
}

double f_theta_integral(double theta) {
  check_theta(theta);
  if (theta == 0.0) return 1.0;
  const double c = std::cos(theta), s = std::sin(theta);
  // plateau: 2 (c-s) / (2c); ramp: 2 * (2s)^2 / (2 * 4sc)
  return (c - s) / c + s / c;
}

double ks_statistic_vs_ftheta(double theta, std::vector<double> samples) {
  if (samples.empty()) throw EmptyMeasure("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = f_theta_cdf(theta, samples[i]);
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
  }
  return ks;
}

double validate_density(double theta, std::size_t n_samples, std::uint64_t seed) {
  check_theta(theta);
  const DiscreteMeasure m = sample_square(n_samples, 2, seed);
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> dots(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    dots[i] = m.points()[i][0] * c + m.points()[i][1] * s;
  return ks_statistic_vs_ftheta(theta, std::move(dots));
}

double uniform_quantile_cost_pow(const std::vector<double>& a, const std::vector<double>& b,
                                 double p) {
  const std::size_t m = a.size(), n = b.size();
  const std::uint64_t total = static_cast<std::uint64_t>(m) * n;
  std::uint64_t pos = 0;
  std::size_t i = 0, j = 0;
  KahanSum cost;
  while (i < m && j < n) {
    const std::uint64_t ni = static_cast<std::uint64_t>(i + 1) * n;
    const std::uint64_t nj = static_cast<std::uint64_t>(j + 1) * m;
    const std::uint64_t next = std::min(ni, nj);
    cost.add(static_cast<double>(next - pos) * pow_abs(a[i] - b[j], p));
    if (ni == next) ++i;
    if (nj == next) ++j;
    pos = next;
  }
  return cost.value() / static_cast<double>(total);
}

namespace {

std::vector<double> project_sorted(const DiscreteMeasure& m, const std::vector<double>& w) {
  std::vector<double> dots(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    double d = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) d += m.points()[i][k] * w[k];
    dots[i] = d;
  }
  std::sort(dots.begin(), dots.end());
  return dots;
}

double mean_of(const std::vector<double>& xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double se_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size() - 1);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

// Aggregate per-direction cost^p values into the sliced distance^p.
double aggregate_pow(const std::vector<double>& cost_pow, const DirectionSet& dirs, double p,
                     double q) {
  if (std::isinf(q)) {
    double best = 0.0;
    for (double c : cost_pow) best = std::max(best, c);
    return best;  // max of d^p == (max d)^p
  }
  // ( sum w (d^p)^{q/p} )^{p/q}
  KahanSum s;
  for (std::size_t d = 0; d < cost_pow.size(); ++d)
    s.add(dirs.weights()[d] * std::pow(cost_pow[d], q / p));
  return std::pow(s.value(), p / q);
}

}  // namespace

SamplingRateResult sampling_rate_experiment(double p, double q,
                                            const std::vector<std::size_t>& ns, std::size_t trials,
                                            const DirectionSet& dirs, std::uint64_t seed) {
  if (ns.empty()) throw InvalidParam("empty N list");
  if (trials == 0) throw InvalidParam("trials must be >= 1");
  const int dim = dirs.dim();

  const std::size_t n_max = *std::max_element(ns.begin(), ns.end());
  const std::size_t m_ref = 64 * n_max;
  const DiscreteMeasure reference = sample_square(m_ref, dim, derive_seed(seed, 0));

  // The reference projections are shared by every trial; cache them sorted.
  std::vector<std::vector<double>> ref_proj(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t d) {
    ref_proj[d] = project_sorted(reference, dirs.directions()[d]);
  });

  SamplingRateResult out;
  out.bound_constant = std::pow(5.0 * p, p) * std::pow(2.0, p + 1.0);
  std::vector<double> log_n, log_mean;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const std::size_t n = ns[ni];
    std::vector<double> vals(trials);
    parallel_for(trials, [&](std::size_t t) {
      const std::uint64_t stream = 1 + ni * trials + t;
      const DiscreteMeasure sample = sample_square(n, dim, derive_seed(seed, stream));
      std::vector<double> cost_pow(dirs.size());
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        const std::vector<double> proj = project_sorted(sample, dirs.directions()[d]);
        cost_pow[d] = uniform_quantile_cost_pow(ref_proj[d], proj, p);
      }
      vals[t] = aggregate_pow(cost_pow, dirs, p, q);
    });

    RateRecord rec;
    rec.n = n;
    rec.trials = trials;
    rec.mean_value = mean_of(vals);
    rec.std_error = se_of(vals, rec.mean_value);
    rec.statistic_id = "sliced(p=" + std::to_string(p) + ",q=" +
                       (std::isinf(q) ? std::string("inf") : std::to_string(q)) + ")";
    rec.has_bound = p >= 2.0;
    if (rec.has_bound) {
      rec.bound = out.bound_constant * std::pow(static_cast<double>(n), -p / 2.0);
      rec.bound_pass = rec.mean_value <= rec.bound;
      out.bound_holds = out.bound_holds && rec.bound_pass;
    }
    out.records.push_back(rec);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_mean.push_back(std::log(rec.mean_value));
  }
  out.slope = ns.size() >= 2 ? ls_slope(log_n, log_mean) : 0.0;
  return out;
}

RateSeparationResult rate_separation_experiment(double p, double q, int dim, SourceShape shape,
                                                const std::vector<std::size_t>& ns,
                                                const std::vector<std::size_t>& trials_per_n,
                                                const DirectionSet& dirs, std::uint64_t seed) {
  if (ns.empty()) throw InvalidParam("empty N list");
  if (trials_per_n.empty()) throw InvalidParam("empty trials list");
  if (dirs.dim() != dim) throw DimMismatch("direction set dimension mismatch");

  const auto draw = [&](std::size_t n, std::uint64_t stream) {
    return shape == SourceShape::Square ? sample_square(n, dim, derive_seed(seed, stream))
                                        : sample_cube(n, dim, derive_seed(seed, stream));
  };

  RateSeparationResult out;
  std::vector<double> log_n, log_classical, log_sliced;
  for (std::size_t ni = 0; ni < ns.size(); ++ni) {
    const std::size_t n = ns[ni];
    if (n > 1024) throw TooLarge("assignment solver capped at 1024 points per side");
    const std::size_t trials = trials_per_n[std::min(ni, trials_per_n.size() - 1)];
    std::vector<double> classical(trials), sliced(trials);
    parallel_for(trials, [&](std::size_t t) {
      const std::uint64_t base = 2 * (ni * 4096 + t);
      const DiscreteMeasure a = draw(n, base);
      const DiscreteMeasure b = draw(n, base + 1);
      classical[t] = pow_abs(wasserstein_nd_exact(a, b, p), p);
      std::vector<double> cost_pow(dirs.size());
      for (std::size_t d = 0; d < dirs.size(); ++d)
        cost_pow[d] = uniform_quantile_cost_pow(project_sorted(a, dirs.directions()[d]),
                                             project_sorted(b, dirs.directions()[d]), p);
      sliced[t] = aggregate_pow(cost_pow, dirs, p, q);
    });

    RateSeparationRow row;
    row.n = n;
    row.trials = trials;
    row.classical_mean = mean_of(classical);
    row.classical_se = se_of(classical, row.classical_mean);
    row.sliced_mean = mean_of(sliced);
    row.sliced_se = se_of(sliced, row.sliced_mean);
    row.ratio = row.classical_mean / row.sliced_mean;
    out.rows.push_back(row);

    RateRecord rc;
    rc.n = n;
    rc.trials = trials;
    rc.mean_value = row.classical_mean;
    rc.std_error = row.classical_se;
    rc.statistic_id = "classical(p=" + std::to_string(p) + ")";
    out.records.push_back(rc);
    RateRecord rs = rc;
    rs.mean_value = row.sliced_mean;
    rs.std_error = row.sliced_se;
    rs.statistic_id = "sliced(p=" + std::to_string(p) + ",q=" +
                      (std::isinf(q) ? std::string("inf") : std::to_string(q)) + ")";
    out.records.push_back(rs);

    log_n.push_back(std::log(static_cast<double>(n)));
    log_classical.push_back(std::log(row.classical_mean));
    log_sliced.push_back(std::log(row.sliced_mean));
  }
  if (ns.size() >= 2) {
    // Slopes of the distances themselves (power 1/p), matching the usual
    // rate statements.
    std::vector<double> lc(log_classical), lsl(log_sliced);
    for (double& v : lc) v /= p;
    for (double& v : lsl) v /= p;
    out.classical_slope = ls_slope(log_n, lc);
    out.sliced_slope = ls_slope(log_n, lsl);
  }
  out.ratio_monotone = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    out.ratio_monotone = out.ratio_monotone && out.rows[i].ratio >= out.rows[i - 1].ratio;
  return out;
}

void write_rate_records_csv(const std::string& path, const std::vector<RateRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "N,statistic_id,mean,std_error,bound,pass\n";
  out.precision(17);
  for (const auto& r : records) {
    out << r.n << "," << r.statistic_id << "," << r.mean_value << "," << r.std_error << ",";
    if (r.has_bound)
      out << r.bound << "," << (r.bound_pass ? "true" : "false");
    else
      out << ",";
    out << "\n";
  }
}

}  // namespace smk
