#ifndef HEUNPC_GAUGE_HPP
#define HEUNPC_GAUGE_HPP

#include <functional>
#include <span>
#include <vector>

#include "heunpc/matrix2.hpp"
#include "heunpc/params.hpp"
#include "heunpc/pcf.hpp"
#include "heunpc/poly.hpp"
#include "heunpc/spectra.hpp"
#include "heunpc/types.hpp"

namespace heunpc {

/// Two-term form p0(x) e^{x^2/4} W_base(x) + p1(x) e^{x^2/4} W'_base(x) of a
/// finite parabolic-cylinder sum; identical polynomials serve kinds D and E.
struct GaugePair {
  Poly p0, p1;
  Cplx base_order;
  PcfKind kind = PcfKind::D;

  PcfValue eval_at_x(Cplx x, const PcfConfig& cfg = {}) const;
};

/// Rewrites a case-I sum on the lowest order e/2 - N (downward ladder).
GaugePair reduce_down(const FiniteSolution& sum);

/// Rewrites on the top order e/2; divides by (e/2 - j), so it fails when the
/// top order collides with a smaller non-negative integer along the way.
GaugePair reduce_up(const FiniteSolution& sum);

/// Evaluates the source finite sum in the PCF variable (no outer prefactor),
/// for round-trip comparison with GaugePair::eval_at_x.
PcfValue core_sum_at_x(const FiniteSolution& sum, Cplx x, const PcfConfig& cfg = {});

struct ApparentSingularityResult {
  bool apparent = false;
  bool resonant = true;   // exponent difference integral
  double obstruction = 0.0;
  double scale = 1.0;
  int resonance_index = 0;
};

/// Frobenius log-obstruction test at z = 0 for the canonical BHE with the
/// given accessory parameter delta. Non-integer alpha reports resonant=false
/// and apparent=true trivially.
ApparentSingularityResult apparent_singularity_test(const CanonicalParams& p, Cplx delta,
                                                    double tol = 1e-10);

struct ScalarForm {
  Cplx coeff1;  // y'' + coeff1 y' + coeff0 y = 0
  Cplx coeff0;
  std::function<Cplx(Cplx y1, Cplx y1prime)> y2_map;
};

/// First-order 2x2 system to scalar second-order form at the point x.
/// Throws SingularGauge when |a12| < 1e-12.
ScalarForm system_to_scalar(const MatrixFunction& m, Cplx x);

/// Frame of the parabolic connection Phi' = (A' x + B') Phi with
/// A' = diag(1/2, -1/2), B' = [[0, r], [s, 0]], s = -(nu+1)/r.
struct ParabolicFrame {
  Cplx nu, r, s;

  Matrix2 eval(Cplx x, const PcfConfig& cfg = {}) const;
  Matrix2 system_matrix(Cplx x) const;
};

ParabolicFrame parabolic_frame(Cplx nu, Cplx r);

struct SchlesingerOptions {
  Cplx u{1.0, 0.0};   // free off-diagonal normalization of the BHC
  double fd_step = 1e-4;
  PcfConfig pcf{};
};

/// Max over samples of ||A - (R P + R_x) R^{-1}|| / (1 + ||A||) for the gauge
/// R between the parabolic frame and the BHC at the exceptional point.
/// Requires 2 theta0 = alpha + 1 integral and <= 0 up to the theta0 -> -theta0
/// reflection; pair must solve the c = -N terminated system.
double schlesinger_verify(const CanonicalParams& p, const EigenPair& pair,
                          std::span<const Cplx> x_samples, const SchlesingerOptions& opts = {});

}  // namespace heunpc

#endif
