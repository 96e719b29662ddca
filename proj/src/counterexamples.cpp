#include "smk/counterexamples.hpp"

#include <algorithm>
#include <cmath>

#include "smk/numerics.hpp"
#include "smk/ot1d.hpp"

namespace smk {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
}

double default_offset() { return 2.0 - std::sqrt(2.0); }

std::pair<DiscreteMeasure, DiscreteMeasure> nongeodesic_pair(int dim, double b) {
  if (!(b > 0.0 && b < 1.0)) throw InvalidParam("offset must lie in (0,1)");
  if (dim < 2) throw InvalidParam("dim must be >= 2");
  const auto embed = [dim](double x, double y) {
    std::vector<double> v(dim, 0.0);
    v[0] = x;
    v[1] = y;
    return v;
  };
  std::vector<std::vector<double>> p0{embed(1, 1), embed(-1, 1), embed(-1, -1), embed(1, -1)};
  std::vector<std::vector<double>> p1{embed(b, 0), embed(0, b), embed(-b, 0), embed(0, -b)};
  const std::vector<double> w(4, 0.25);
  return {DiscreteMeasure(dim, std::move(p0), w), DiscreteMeasure(dim, std::move(p1), w)};
}

double w_p_theta(double p, double theta, double b) {
  if (p <= 1.0) throw InvalidExponent("closed form assumes p > 1");
  if (theta < 0.0 || theta > kPi / 4.0 + 1e-15) throw InvalidParam("theta must lie in [0, pi/4]");
  const double c = std::cos(theta), s = std::sin(theta);
  return 0.5 * (pow_abs((1.0 - b) * c + s, p) + pow_abs(c - (1.0 + b) * s, p));
}

double f_p_root(double p) {
  if (p <= 1.0) throw InvalidExponent("p must be > 1");
  const auto f = [p](double u) {
    return std::pow(u, p) + std::pow(u, p - 1.0) - 3.0 * u - 1.0;
  };
  double lo = 1.0, hi = 10.0;  // F_p(1) = -2, F_p(10) > 0 for every p > 1
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

MidpointProjection project_midpoint(const DiscreteMeasure& mu0, const DiscreteMeasure& mu1,
                                    const std::vector<double>& w, double tau = 0.5) {
  const Measure1D mid = displacement_interpolate_1d(project(mu0, w), project(mu1, w), tau);
  return MidpointProjection{mid.atoms(), mid.weights()};
}

}  // namespace

NongeodesicReport verify_nongeodesic(const GeodesicProbe& probe) {
  NongeodesicReport rep;
  rep.p = probe.p;
  rep.q = probe.q;
  rep.b = probe.b > 0.0 ? probe.b : default_offset();
  const double b = rep.b;
  const double p = rep.p;

  const auto [mu0, mu1] = nongeodesic_pair(2, b);

  // (a) w_p over the theta grid: endpoints tie, interior strictly below.
  const std::size_t g = probe.theta_grid_size;
  rep.w_at_0 = w_p_theta(p, 0.0, b);
  rep.w_at_quarter_pi = w_p_theta(p, kPi / 4.0, b);
  rep.endpoint_equality_error = std::abs(rep.w_at_0 - rep.w_at_quarter_pi);
  const double endpoint_max = std::max(rep.w_at_0, rep.w_at_quarter_pi);
  double interior_max = -kInf;
  double solver_diff = 0.0;
  std::vector<double> solver_check(g + 1);
  parallel_for(g + 1, [&](std::size_t i) {
    const double theta = kPi / 4.0 * static_cast<double>(i) / static_cast<double>(g);
    const std::vector<double> w{std::cos(theta), std::sin(theta)};
    const double via_solver =
        pow_abs(wasserstein_1d(project(mu0, w), project(mu1, w), p), p);
    solver_check[i] = std::abs(w_p_theta(p, std::min(theta, kPi / 4.0), b) - via_solver);
  });
  for (std::size_t i = 0; i <= g; ++i) {
    solver_diff = std::max(solver_diff, solver_check[i]);
    if (i == 0 || i == g) continue;
    const double theta = kPi / 4.0 * static_cast<double>(i) / static_cast<double>(g);
    interior_max = std::max(interior_max, w_p_theta(p, theta, b));
  }
  rep.interior_max = interior_max;
  rep.interior_deficit = endpoint_max - interior_max;
  rep.maximizers_only_endpoints = interior_max < endpoint_max - 1e-9;
  rep.closed_form_solver_max_diff = solver_diff;

  // (b) projected geodesic midpoints for the three special directions.
  const double rt = std::sqrt(0.5);
  rep.midpoints[0] = project_midpoint(mu0, mu1, {1.0, 0.0});
  rep.midpoints[1] = project_midpoint(mu0, mu1, {0.0, 1.0});
  rep.midpoints[2] = project_midpoint(mu0, mu1, {rt, rt});

  // (c) candidate set E (coordinates in {+-(1+b)/2, +-1/2}) against the
  // diagonal constraint values {(2+b)/2, b/2} for |<e1+e2, x>|. Note that
  // (1+b)/2 + 1/2 == (2+b)/2 identically, so the mixed-coordinate
  // candidates satisfy the constraint exactly: the two sets intersect and
  // the separation is zero. The decisive check is (c') below.
  const std::array<double, 4> coords{(1.0 + b) / 2.0, 0.5, -0.5, -(1.0 + b) / 2.0};
  rep.eprime_values = {(2.0 + b) / 2.0, b / 2.0};
  double sep = kInf;
  for (double x1 : coords)
    for (double x2 : coords) {
      rep.candidate_points_E.push_back({x1, x2});
      const double s = std::abs(x1 + x2);
      const double d =
          std::min(std::abs(s - rep.eprime_values[0]), std::abs(s - rep.eprime_values[1]));
      sep = std::min(sep, d);
      if (d <= 1e-9) rep.e_intersection.push_back({x1, x2});
    }
  rep.e_eprime_separation = sep;
  rep.e_eprime_empty = sep > 1e-9;

  // (c') coverage of the required midpoint support at a generic direction.
  // Any geodesic midpoint is supported in E, yet its projection along
  // theta_probe must be the four-atom 1D geodesic midpoint; the atom
  // closest to sin(theta_probe) is covered by no candidate projection.
  rep.probe_theta = probe.theta_probe;
  const double c = std::cos(rep.probe_theta), s = std::sin(rep.probe_theta);
  const std::vector<double> wprobe{c, s};
  const Measure1D required =
      displacement_interpolate_1d(project(mu0, wprobe), project(mu1, wprobe), 0.5);
  rep.required_midpoint_atoms = required.atoms();
  double worst_gap = 0.0, worst_atom = 0.0;
  for (double atom : required.atoms()) {
    double best = kInf;
    for (const auto& e : rep.candidate_points_E)
      best = std::min(best, std::abs(e[0] * c + e[1] * s - atom));
    if (best > worst_gap) {
      worst_gap = best;
      worst_atom = atom;
    }
  }
  rep.uncovered_atom = worst_atom;
  rep.coverage_gap = worst_gap;
  rep.nongeodesic_certified = worst_gap > 1e-9;
  return rep;
}

LinearGeodesicReport verify_linear_geodesic(const DiscreteMeasure& mu0,
                                            const DiscreteMeasure& mu1, double p, double q,
                                            const std::vector<std::pair<double, double>>& taus,
                                            const DirectionSet& dirs) {
  LinearGeodesicReport rep;
  rep.p = p;
  rep.q = q;
  rep.evidence_only = p != 1.0;
  const double base = sliced_mkpq(mu0, mu1, p, q, dirs);
  for (const auto& [t1, t2] : taus) {
    LinearGeodesicRow row;
    row.tau1 = t1;
    row.tau2 = t2;
    row.lhs = sliced_mkpq(mix(mu0, mu1, t1), mix(mu0, mu1, t2), p, q, dirs);
    row.rhs = std::abs(t1 - t2) * base;
    row.abs_error = std::abs(row.lhs - row.rhs);
    rep.max_abs_error = std::max(rep.max_abs_error, row.abs_error);
    rep.rows.push_back(row);
  }
  return rep;
}

RemarkReport remark_discrepancy(double p, double q, int dim, const DirectionSet& dirs) {
  if (dim < 2) throw InvalidParam("dim must be >= 2");
  RemarkReport rep;
  rep.p = p;
  rep.q = q;

  std::vector<double> e1(dim, 0.0), e2(dim, 0.0), zero(dim, 0.0);
  e1[0] = 1.0;
  e2[1] = 1.0;
  const DiscreteMeasure origin = DiscreteMeasure::dirac(zero);
  const DiscreteMeasure mu = DiscreteMeasure::dirac(e1);
  const DiscreteMeasure nu(dim, {e1, e2}, {0.5, 0.5});

  rep.mk_p_mu = wasserstein_nd_exact(origin, mu, p);
  rep.mk_p_nu = wasserstein_nd_exact(origin, nu, p);
  rep.mk_p_equal = std::abs(rep.mk_p_mu - rep.mk_p_nu) <= 1e-12;

  const SlicedDistanceReport rep_mu = sliced_distance(origin, mu, p, q, dirs);
  const SlicedDistanceReport rep_nu = sliced_distance(origin, nu, p, q, dirs);
  rep.mk_pq_mu = rep_mu.aggregate;
  rep.mk_pq_nu = rep_nu.aggregate;
  rep.m_qn = m_constant(q, dirs);

  if (dirs.deterministic()) {
    rep.quad_tol = 1e-6;
  } else {
    std::vector<double> absdot(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) absdot[i] = std::abs(dirs.directions()[i][0]);
    const double se_m = lq_aggregate_se(absdot, dirs.weights(), q);
    const double se_nu = lq_aggregate_se(rep_nu.per_direction, dirs.weights(), q);
    rep.quad_tol = 3.0 * std::sqrt(se_m * se_m + se_nu * se_nu);
  }
  rep.margin = std::abs(rep.mk_pq_nu - rep.m_qn);

  if (p == q) {
    rep.ordering_ok = rep.margin <= std::max(rep.quad_tol, 1e-12) &&
                      std::abs(rep.mk_pq_mu - rep.m_qn) <= std::max(rep.quad_tol, 1e-12);
  } else if (p < q) {
    rep.ordering_ok = rep.mk_pq_nu < rep.m_qn - rep.quad_tol;
  } else {
    rep.ordering_ok = rep.mk_pq_nu > rep.m_qn + rep.quad_tol;
  }
  return rep;
}

}  // namespace smk
