#ifndef HEUNPC_SERIES_HPP
#define HEUNPC_SERIES_HPP

#include <string>
#include <vector>

#include "heunpc/params.hpp"
#include "heunpc/pcf.hpp"
#include "heunpc/prefactor.hpp"
#include "heunpc/spectra.hpp"
#include "heunpc/types.hpp"

namespace heunpc {

enum class SeriesVariant { Base, Phi4, Phi5 };

/// Parameters of the underlying base recursion for a variant: the phi5/phi4
/// images (+-i b, c, +-i(bc - d), -e - 2c - 2).
GeneralParams variant_params(const GeneralParams& p, SeriesVariant v);

/// Lazy A_0, A_1, A_2, ... of the three-term recursion, carried scaled so the
/// [(n-2)!]^{1/2} growth never overflows.
class CoeffStream {
 public:
  CoeffStream(const GeneralParams& p, SeriesVariant v);

  /// The next coefficient A_n (n = calls made so far).
  ScaledComplex next();
  int index() const { return n_; }

 private:
  GeneralParams q_;  // variant-mapped parameters
  ScaledComplex prev_, cur_;
  int n_ = 0;
};

CoeffStream coeff_stream(const GeneralParams& p, SeriesVariant v);

/// Leading-order growth data for solutions of the recursion in Wong-Li form
/// y(n) ~ [(n-2)!]^{q/2} rho^n e^{gamma sqrt n} n^alpha.
struct AsymptoticModel {
  int rho = +1;               // rho^2 = -b0 = 1
  Cplx a0, b0, b1;
  Cplx gamma_coef;            // -a0 / rho
  Cplx alpha_exp;             // b1/(2 b0) + q/4
  int p = 0, q = 1;
};

AsymptoticModel wong_li_model(const GeneralParams& p, SeriesVariant v, int rho = +1);

/// Predicted log|A_n D_{e/2-n}(x)| up to an additive constant:
/// (rho-branch b/sqrt2 - x) sqrt(n) + (c/2 - 3/2) log n.
Cplx log_term_model(const AsymptoticModel& model, const GeneralParams& p, Cplx x, int n);

/// log A_n model from the Stirling form of the coefficient asymptote:
/// (2n-3)/4 log(n-2) - n/2 + rho-branch b sqrt(n/2) + (c/2 - e/4 - 3/4) log n.
double log_coeff_model(const AsymptoticModel& model, const GeneralParams& p, int n);

struct RegionCheck {
  bool ok = false;
  std::string reason;
};

/// Absolute-convergence region of each variant; on the region boundary the
/// series is admitted only when Re c < -1/2.
RegionCheck convergence_predicate(SeriesVariant v, const GeneralParams& p, Cplx z);

struct TruncationPolicy {
  double eps = 1e-12;   // relative term threshold
  int consecutive = 5;  // small terms required before stopping
  int cap = 5000;
};

struct SeriesSolution {
  GeneralParams p;          // original equation parameters
  SeriesVariant variant = SeriesVariant::Base;
  PcfKind kind = PcfKind::D;
  TruncationPolicy policy{};
  PrefactorDescriptor prefactor;  // full z-descriptor of the solution prefactor

  PcfValue eval(Cplx z, const PcfConfig& cfg = {}) const;
  SolutionJet eval_jet(Cplx z, const PcfConfig& cfg = {}) const;
};

SeriesSolution make_series_solution(const GeneralParams& p, SeriesVariant v,
                                    PcfKind kind = PcfKind::D, TruncationPolicy policy = {});

/// Throws RegionError outside the convergence region, ConvergenceError at cap.
PcfValue evaluate_series(const SeriesSolution& sol, Cplx z, const PcfConfig& cfg = {});

/// Partial sum with exactly `terms` terms, no adaptive stopping; diagnostic
/// entry for truncation-depth comparisons.
PcfValue evaluate_series_fixed_terms(const SeriesSolution& sol, Cplx z, int terms,
                                     const PcfConfig& cfg = {});

/// The entire solution glued from the phi5 expansion (upper half-plane) and
/// the phi4 expansion (lower half-plane), matched at z = b/2.
struct EntireSolution {
  GeneralParams p;
  SeriesSolution phi;  // Phi5 branch, Im z >= 0
  SeriesSolution psi;  // Phi4 branch, Im z <= 0
  Cplx C0;

  PcfValue eval(Cplx z, const PcfConfig& cfg = {}) const;
  SolutionJet eval_jet(Cplx z, const PcfConfig& cfg = {}) const;
  /// |C0 Phi - Psi| / (1 + |Psi|), defined on the overlap near the real axis.
  double continuity_gap(Cplx z, const PcfConfig& cfg = {}) const;
};

/// Requires b real and Re c < -1/2. Throws DivisionError if Psi(b/2) vanishes.
/// The half-plane expansions decay only like n^{Re c/2 - 3/4} on the axis, so
/// the default truncation is deeper than the generic policy.
EntireSolution glue_entire(const GeneralParams& p, TruncationPolicy policy = {1e-9, 5, 20000});

/// Coefficient (relative to the unbranched one) of the z^{1-c}-branched local
/// solution inside the upper half-plane expansion. The glued function extends
/// entirely across the axis exactly when this defect vanishes; that happens
/// only at special accessory parameters d, not identically. Requires 1 - c
/// non-integral.
Cplx glue_branch_defect(const GeneralParams& p);

/// Newton iteration on d driving glue_branch_defect to zero from the given
/// starting value; returns the adjusted parameters. For real (b, c, e) and a
/// real seed near a sign change of the defect, the root stays real and both
/// half-plane branches become entire simultaneously.
GeneralParams glue_find_accessory(GeneralParams p, double tol = 1e-9, int max_iter = 40);

}  // namespace heunpc

#endif
