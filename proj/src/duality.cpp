#include "smk/duality.hpp"

#include <algorithm>
#include <cmath>

namespace smk {

namespace {
constexpr double kZetaFloor = 1e-12;
}

double hoelder_conjugate(double r) {
  if (std::isinf(r)) return 1.0;
  if (r < 1.0) throw InvalidExponent("r must be >= 1");
  if (r == 1.0) return kInf;
  return r / (r - 1.0);
}

std::vector<double> zeta_from_values(const std::vector<double>& values,
                                     const std::vector<double>& weights, double r) {
  if (values.size() != weights.size()) throw ShapeMismatch("values/weights length mismatch");
  if (values.empty()) throw EmptySet("no values");
  for (double v : values)
    if (v < 0.0 || !std::isfinite(v)) throw InvalidValue("values must be non-negative finite");
  const std::size_t n = values.size();

  if (!std::isinf(r) && r < 1.0) throw InvalidExponent("r must be >= 1");
  if (r == 1.0) return std::vector<double>(n, 1.0);

  const double vmax = *std::max_element(values.begin(), values.end());
  if (vmax <= 0.0) throw DegenerateInput("all values are zero; the trivial certificate applies");

  std::vector<double> zeta(n);
  double r_prime;
  if (std::isinf(r)) {
    // L^1 dual of L^inf on the grid: point mass at the arg-max direction.
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
    for (std::size_t i = 0; i < n; ++i) zeta[i] = kZetaFloor;
    zeta[best] = 1.0 / weights[best];
    r_prime = 1.0;
  } else {
    const double norm_r = lq_aggregate(values, weights, r);
    for (std::size_t i = 0; i < n; ++i) {
      zeta[i] = std::pow(values[i] / norm_r, r - 1.0);
      if (zeta[i] < kZetaFloor) zeta[i] = kZetaFloor;
    }
    r_prime = hoelder_conjugate(r);
  }

  // The floor can push ||zeta||_{r'} above 1; renormalize.
  const double nrm = lq_aggregate(zeta, weights, r_prime);
  if (nrm > 1.0)
    for (double& z : zeta) z /= nrm;
  return zeta;
}

DualCertificate build_certificate(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p,
                                  double q, const DirectionSet& dirs) {
  if (p > q) throw HypothesisViolated("duality requires p <= q");
  if (mu.dim() != nu.dim() || mu.dim() != dirs.dim())
    throw DimMismatch("build_certificate: dimension mismatch");
  if (p < 1.0) throw InvalidExponent("p must be >= 1");

  DualCertificate cert;
  cert.p = p;
  cert.q = q;
  cert.r = std::isinf(q) ? kInf : q / p;
  cert.r_prime = hoelder_conjugate(cert.r);
  cert.dirset_id = dirs.id();
  cert.phi.resize(dirs.size());
  cert.psi.resize(dirs.size());

  std::vector<double> dist_pow(dirs.size());   // per-direction primal^p
  std::vector<double> dual_dir(dirs.size());   // per-direction dual value
  parallel_for(dirs.size(), [&](std::size_t d) {
    const Measure1D a = project(mu, dirs.directions()[d]);
    const Measure1D b = project(nu, dirs.directions()[d]);
    dist_pow[d] = pow_abs(wasserstein_1d(a, b, p), p);
    auto [phi, psi] = optimal_potentials_1d(a, b, p);
    dual_dir[d] = -integrate(phi, a) - integrate(psi, b);
    cert.phi[d] = std::move(phi);
    cert.psi[d] = std::move(psi);
  });

  const double vmax = *std::max_element(dist_pow.begin(), dist_pow.end());
  if (vmax <= 0.0) {
    cert.zeta.assign(dirs.size(), 1.0);  // ||1||_{r'} = 1 for every r'
    cert.dual_value = 0.0;
    return cert;
  }
  cert.zeta = zeta_from_values(dist_pow, dirs.weights(), cert.r);

  KahanSum value;
  for (std::size_t d = 0; d < dirs.size(); ++d)
    value.add(dirs.weights()[d] * cert.zeta[d] * dual_dir[d]);
  cert.dual_value = value.value();
  return cert;
}

CertificateCheck verify_certificate(const DualCertificate& cert, const DiscreteMeasure& mu,
                                    const DiscreteMeasure& nu, const DirectionSet& dirs) {
  if (cert.phi.size() != dirs.size() || cert.psi.size() != dirs.size() ||
      cert.zeta.size() != dirs.size())
    throw ShapeMismatch("certificate size does not match the direction set");
  if (cert.dirset_id != dirs.id())
    throw ShapeMismatch("certificate was built for a different direction set");

  CertificateCheck out;

  // A_p: admissibility of every potential pair on all grid pairs.
  bool admissible = true;
  for (std::size_t d = 0; d < dirs.size() && admissible; ++d) {
    const GridFunction& phi = cert.phi[d];
    const GridFunction& psi = cert.psi[d];
    for (std::size_t ti = 0; ti < phi.grid.size() && admissible; ++ti)
      for (std::size_t si = 0; si < psi.grid.size(); ++si) {
        const double slack = pow_abs(phi.grid[ti] - psi.grid[si], cert.p) + 1e-12 +
                             phi.values[ti] + psi.values[si];
        if (slack < 0.0) {
          admissible = false;
          break;
        }
      }
  }
  out.admissible = admissible;

  // Z_{r'}: positivity and the norm constraint under the direction weights.
  bool positive = true;
  for (double z : cert.zeta) positive = positive && z > 0.0;
  const double nrm = lq_aggregate(cert.zeta, dirs.weights(), cert.r_prime);
  out.norm_ok = positive && nrm <= 1.0 + 1e-12;

  KahanSum value;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    const Measure1D a = project(mu, dirs.directions()[d]);
    const Measure1D b = project(nu, dirs.directions()[d]);
    const double dual_dir = -integrate(cert.phi[d], a) - integrate(cert.psi[d], b);
    value.add(dirs.weights()[d] * cert.zeta[d] * dual_dir);
  }
  out.dual_value = value.value();
  return out;
}

}  // namespace smk
