#pragma once

#include <array>
#include <utility>
#include <vector>

#include "smk/measures.hpp"
#include "smk/sliced.hpp"
#include "smk/sphere.hpp"

namespace smk {

/// Offset parameter of the four-point pair; 2 - sqrt(2) is the value for
/// which the sliced distance of the pair has equal per-direction maxima at
/// the axes and the diagonals.
double default_offset();

/// The four-point measures: mu0 on the square corners (+-1, +-1), mu1 on
/// (+-b, 0), (0, +-b), embedded in R^n via the first two coordinates.
std::pair<DiscreteMeasure, DiscreteMeasure> nongeodesic_pair(int dim, double b);

/// Closed form for the p-th power of the per-direction 1D distance of the
/// pair along (cos theta, sin theta), theta in [0, pi/4]:
///   0.5 * [ ((1-b) cos + sin)^p + |cos - (1+b) sin|^p ].
double w_p_theta(double p, double theta, double b);

/// The unique root u_p in (1, inf) of F_p(u) = u^p + u^{p-1} - 3u - 1,
/// located by bisection on (1, 10) to 1e-12. F_p carries the sign of the
/// derivative of w_p on the inner monotonicity interval.
double f_p_root(double p);

struct GeodesicProbe {
  double p = 2.0;
  double q = 2.0;
  double b = 0.0;  // 0: use default_offset()
  std::size_t theta_grid_size = 10000;
  double theta_probe = 0.39269908169872414;  // pi/8; generic coverage direction
};

struct MidpointProjection {
  std::vector<double> atoms;
  std::vector<double> weights;
};

/// Everything the non-geodesic verification measures. The candidate list E
/// collects the 16 points whose two coordinates lie in
/// {+-(1+b)/2, +-1/2}; the diagonal constraint set E' consists of x with
/// <e1+e2, x> in {+-(2+b)/2, +-b/2}.
struct NongeodesicReport {
  double p = 2.0, q = 2.0, b = 0.0;

  // (a) endpoint maximality of w_p on the theta grid
  double w_at_0 = 0.0, w_at_quarter_pi = 0.0;
  double endpoint_equality_error = 0.0;      // |w(0) - w(pi/4)|
  double interior_max = 0.0;                 // max over interior grid points
  double interior_deficit = 0.0;             // w(0) - interior_max
  bool maximizers_only_endpoints = false;    // within 1e-9
  double closed_form_solver_max_diff = 0.0;  // closed form vs 1D solver

  // (b) projected geodesic midpoints for e1, e2, (e1+e2)/sqrt(2)
  std::array<MidpointProjection, 3> midpoints;

  // (c) the classical finite candidate check: E against the E' values
  std::vector<std::array<double, 2>> candidate_points_E;  // 16 points
  std::array<double, 2> eprime_values{};                  // (2+b)/2, b/2
  double e_eprime_separation = 0.0;  // min over E of distance to the E' values
  bool e_eprime_empty = false;       // separation > 1e-9
  std::vector<std::array<double, 2>> e_intersection;      // E points satisfying E'

  // (c') decisive finite check: at theta_probe the midpoint support must be
  // covered by projections of E; the atom sin(theta_probe) is not, with the
  // margin below, which certifies that no geodesic midpoint exists.
  double probe_theta = 0.0;
  std::vector<double> required_midpoint_atoms;  // support at theta_probe
  double uncovered_atom = 0.0;                  // worst-covered required atom
  double coverage_gap = 0.0;                    // its distance to proj(E)
  bool nongeodesic_certified = false;           // coverage_gap > 1e-9
};

NongeodesicReport verify_nongeodesic(const GeodesicProbe& probe);

struct LinearGeodesicRow {
  double tau1 = 0.0, tau2 = 0.0;
  double lhs = 0.0;  // dist(mix(tau1), mix(tau2))
  double rhs = 0.0;  // |tau1 - tau2| * dist(mu0, mu1)
  double abs_error = 0.0;
};

struct LinearGeodesicReport {
  double p = 1.0, q = 2.0;
  bool evidence_only = false;  // true when p != 1: not covered by the theory
  std::vector<LinearGeodesicRow> rows;
  double max_abs_error = 0.0;
};

/// Checks the geodesic identity for the linear mixture curve at the given
/// tau pairs; exact (to 1e-9) for p = 1, expected to fail for p > 1.
LinearGeodesicReport verify_linear_geodesic(const DiscreteMeasure& mu0,
                                            const DiscreteMeasure& mu1, double p, double q,
                                            const std::vector<std::pair<double, double>>& taus,
                                            const DirectionSet& dirs);

struct RemarkReport {
  double p = 2.0, q = 2.0;
  double mk_p_mu = 0.0, mk_p_nu = 0.0;      // exact R^n distances, both 1
  double mk_pq_mu = 0.0, mk_pq_nu = 0.0;    // sliced values
  double m_qn = 0.0;                        // the comparison constant
  double quad_tol = 0.0;
  double margin = 0.0;                      // |mk_pq_nu - m_qn|
  bool mk_p_equal = false;
  bool ordering_ok = false;  // strict ordering (p != q) or equality (p == q)
};

/// delta_{e1} against (delta_{e1} + delta_{e2})/2: equal classical distance
/// to delta_0 but sliced distances strictly ordered against M_{q,n} when
/// p != q (below it for p < q, above it for q < p).
RemarkReport remark_discrepancy(double p, double q, int dim, const DirectionSet& dirs);

}  // namespace smk
