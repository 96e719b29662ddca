#pragma once

#include <string>
#include <vector>

#include "smk/measures.hpp"
#include "smk/numerics.hpp"
#include "smk/ot1d.hpp"
#include "smk/sphere.hpp"

namespace smk {

/// Lower-bound certificate for the p-th power of the sliced (p,q) distance:
/// per-direction admissible potential pairs plus a direction weight zeta
/// with ||zeta||_{r'} <= 1 (r = q/p, r' its Hoelder conjugate).
struct DualCertificate {
  double p = 2.0;
  double q = 2.0;  // may be infinity
  double r = 1.0;
  double r_prime = kInf;
  std::vector<GridFunction> phi;  // one per direction
  std::vector<GridFunction> psi;
  std::vector<double> zeta;
  double dual_value = 0.0;
  std::string dirset_id;
};

/// Hoelder conjugate: r/(r-1), with 1 <-> infinity.
double hoelder_conjugate(double r);

/// Direction weights achieving equality in the Hoelder pairing
/// sum w_i zeta_i v_i = ||v||_r. For r = 1 returns all-ones; for
/// r = infinity a point mass at the arg-max direction. Zero entries are
/// floored at 1e-12 and the weight renormalized to keep ||zeta||_{r'} <= 1.
std::vector<double> zeta_from_values(const std::vector<double>& values,
                                     const std::vector<double>& weights, double r);

/// Builds a certificate from the per-direction Kantorovich potentials and
/// the Hoelder-aligned zeta. Requires p <= q.
DualCertificate build_certificate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                                  double q, const DirectionSet& dirs);

struct CertificateCheck {
  bool admissible = false;
  bool norm_ok = false;
  double dual_value = 0.0;
};

/// Re-checks every certificate invariant from stored data (no re-solve)
/// and recomputes the dual value against the given measure pair.
CertificateCheck verify_certificate(const DualCertificate& cert, const DiscreteMeasure& mu,
                                    const DiscreteMeasure& nu, const DirectionSet& dirs);

}  // namespace smk
