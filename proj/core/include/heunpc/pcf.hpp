#ifndef HEUNPC_PCF_HPP
#define HEUNPC_PCF_HPP

#include <vector>

#include "heunpc/kummer.hpp"
#include "heunpc/types.hpp"

namespace heunpc {

struct PcfConfig {
  double max_abs_x = 6.0;  // power-series evaluation disk
  KummerConfig kummer{};
};

/// Value with first and second x-derivatives, all from term-by-term series
/// differentiation (the oracle path, independent of the recurrence ladders).
struct PcfJet {
  Cplx value{0.0, 0.0};
  Cplx d1{0.0, 0.0};
  Cplx d2{0.0, 0.0};
  double abs_error = 0.0;
};

struct PcfScaled {
  ScaledComplex value;
  double rel_error = 0.0;
};

/// Parabolic cylinder function D_nu(x) in Whittaker normalization:
/// the solution of D'' = (x^2/4 - nu - 1/2) D with D_0 = e^{-x^2/4}.
PcfValue pcf_d(PcfOrder nu, Cplx x, const PcfConfig& cfg = {});

/// D_nu with the magnitude carried as mantissa * 2^e; usable far into the
/// factorial under/overflow range of the infinite expansions.
PcfScaled pcf_d_scaled(Cplx nu, Cplx x, const PcfConfig& cfg = {});

/// D'_nu from the corrected ladder 2 D'_nu = nu D_{nu-1} - D_{nu+1}.
PcfValue pcf_d_prime(PcfOrder nu, Cplx x, const PcfConfig& cfg = {});

/// (D, D', D'') by differentiating the defining Kummer series.
PcfJet pcf_d_jet(PcfOrder nu, Cplx x, const PcfConfig& cfg = {});

enum class SecondKind {
  Primary,   // Gamma(nu+1)-scaled V function built from D_nu(+-x)
  Fallback,  // e^{i pi nu} D_nu(-x)
};

/// Second solution E_nu sharing all D_nu recurrences. Throws DependenceError
/// when the construction degenerates (integer order) or the Wronskian with
/// D_nu at the origin falls below 1e-10.
PcfValue pcf_e(PcfOrder nu, Cplx x, SecondKind kind = SecondKind::Primary,
               const PcfConfig& cfg = {});

PcfValue pcf_e_prime(PcfOrder nu, Cplx x, SecondKind kind = SecondKind::Primary,
                     const PcfConfig& cfg = {});

PcfJet pcf_e_jet(PcfOrder nu, Cplx x, SecondKind kind = SecondKind::Primary,
                 const PcfConfig& cfg = {});

PcfScaled pcf_e_scaled(Cplx nu, Cplx x, SecondKind kind = SecondKind::Primary,
                       const PcfConfig& cfg = {});

/// Unified entry for either kind at scaled range.
PcfScaled pcf_scaled(PcfKind kind, Cplx nu, Cplx x, const PcfConfig& cfg = {});

/// D_{nu0}, D_{nu0-1}, ..., D_{nu0-count+1} at fixed argument, by the upward
/// three-term recurrence seeded far below (Miller scheme) and anchored on the
/// direct series at the top. The Kummer pair cancels like e^{2 Re x sqrt(-nu)}
/// at deeply negative orders; the ladder stays relatively accurate because
/// D is the factorially minimal solution in the downward direction.
std::vector<PcfScaled> pcf_d_ladder_scaled(Cplx nu0, Cplx x, int count,
                                           const PcfConfig& cfg = {});

/// Weights of E_nu(x) = at_plus * D_nu(x) + at_minus * D_nu(-x); throws
/// DependenceError where the construction degenerates.
struct SecondKindWeights {
  Cplx at_plus, at_minus;
};
SecondKindWeights pcf_e_weights(Cplx nu, SecondKind kind = SecondKind::Primary);

/// Ladder for either kind: W_{nu0}, ..., W_{nu0-count+1}. Kind E combines the
/// two D-ladders at +-x with the order-periodic weights.
std::vector<PcfScaled> pcf_ladder_scaled(PcfKind kind, Cplx nu0, Cplx x, int count,
                                         const PcfConfig& cfg = {});

/// Leading log-magnitude model (nu/2)log(-nu) - nu/2 - sqrt(-nu) x - (1/2)log 2
/// of D_nu(x), valid for |arg(-nu)| <= pi/2 and |nu| >= 10.
Cplx pcf_log_asymptote(PcfOrder nu, Cplx x);

}  // namespace heunpc

#endif
