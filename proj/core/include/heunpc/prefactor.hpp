#ifndef HEUNPC_PREFACTOR_HPP
#define HEUNPC_PREFACTOR_HPP

#include <cmath>

#include "heunpc/types.hpp"

namespace heunpc {

/// Symbolic solution prefactor exp(quad z^2 + lin z + log_const) * z^zpow.
/// Kept symbolic so symmetry images compose and differentiate exactly.
struct PrefactorDescriptor {
  Cplx quad{0.0, 0.0};
  Cplx lin{0.0, 0.0};
  Cplx log_const{0.0, 0.0};
  Cplx zpow{0.0, 0.0};

  bool is_trivial() const {
    return quad == Cplx() && lin == Cplx() && log_const == Cplx() && zpow == Cplx();
  }

  Cplx log_at(Cplx z) const {
    Cplx l = quad * z * z + lin * z + log_const;
    if (zpow != Cplx()) l += zpow * std::log(z);
    return l;
  }

  Cplx eval(Cplx z) const { return std::exp(log_at(z)); }

  /// (P, P', P'') via the logarithmic derivative.
  void eval_jet(Cplx z, Cplx& p, Cplx& p1, Cplx& p2) const {
    p = eval(z);
    Cplx l1 = 2.0 * quad * z + lin;
    Cplx l2 = 2.0 * quad;
    if (zpow != Cplx()) {
      l1 += zpow / z;
      l2 -= zpow / (z * z);
    }
    p1 = p * l1;
    p2 = p * (l2 + l1 * l1);
  }

  PrefactorDescriptor operator*(const PrefactorDescriptor& o) const {
    return {quad + o.quad, lin + o.lin, log_const + o.log_const, zpow + o.zpow};
  }

  /// Descriptor of z -> pref(sigma z).
  PrefactorDescriptor precompose_scale(Cplx sigma) const {
    PrefactorDescriptor r{quad * sigma * sigma, lin * sigma, log_const, zpow};
    if (zpow != Cplx()) r.log_const += zpow * std::log(sigma);
    return r;
  }

  bool approx_equal(const PrefactorDescriptor& o, double tol = 1e-12) const {
    return std::abs(quad - o.quad) <= tol && std::abs(lin - o.lin) <= tol &&
           std::abs(log_const - o.log_const) <= tol && std::abs(zpow - o.zpow) <= tol;
  }
};

}  // namespace heunpc

#endif
