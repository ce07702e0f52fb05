#ifndef HEUNPC_SPECTRA_HPP
#define HEUNPC_SPECTRA_HPP

#include <functional>
#include <vector>

#include "heunpc/params.hpp"
#include "heunpc/pcf.hpp"
#include "heunpc/prefactor.hpp"
#include "heunpc/types.hpp"

namespace heunpc {

/// The (N+1)-dimensional system from the three-term recursion
///   alpha_n A_{n+1} + beta_n A_n + gamma_n A_{n-1} = 0,
///   alpha_n = -sqrt2 (n+1),  beta_n = d + b n,
///   gamma_n = -sqrt2 (n+c-1)(e/2 - n + 1).
struct TridiagonalSystem {
  Cplx b, c, e;
  int N = 0;

  int size() const { return N + 1; }
  Cplx sup(int n) const;         // alpha_n
  Cplx sub(int n) const;         // gamma_n
  Cplx diag_const(int n) const;  // beta_n minus d, i.e. b*n

  std::vector<Cplx> sup_row() const;
  std::vector<Cplx> sub_row() const;
  std::vector<Cplx> diag_const_row() const;
};

/// Requires the termination criterion e = 2N or c = -N (within tol).
TridiagonalSystem build_tridiagonal(const GeneralParams& p, int N, double tol = 1e-9);

/// Characteristic polynomial det Phi(d) in ascending powers of d (degree N+1),
/// by the continuant recursion.
std::vector<Cplx> characteristic_polynomial(const TridiagonalSystem& sys);

/// The N+1 accessory-parameter eigenvalues, sorted by (Re, Im).
std::vector<Cplx> eigenvalues_d(const TridiagonalSystem& sys);

struct EigenPair {
  Cplx d;
  std::vector<Cplx> coeffs;  // A_0..A_N with A_0 = 1
  double closure_residual = 0.0;
};

/// Forward recursion with A_0 = 1; throws NotAnEigenvalue when the final
/// matrix row is violated beyond tol * max|A_k|.
EigenPair eigen_coeffs(const TridiagonalSystem& sys, Cplx d, double tol = 1e-10);

// ---------------------------------------------------------------------------

enum class CaseTag { I, II, III, IV };

/// Symmetry element realizing each case of the eigen-solution theorem.
SymmetryElement case_symmetry(CaseTag c);

struct SolutionJet {
  Cplx y{0.0, 0.0};
  Cplx y1{0.0, 0.0};
  Cplx y2{0.0, 0.0};
  double abs_error = 0.0;
};

/// A finite parabolic-cylinder sum solving the BHE:
///   y(z) = outer(z) * e^{u^2/4} sum_k A_k W_{top-k}(u),  u = sigma (b - 2z)/sqrt2,
/// where W is D or E and (outer, sigma, coefficients) come from the case map.
struct FiniteSolution {
  CaseTag case_tag = CaseTag::I;
  PcfKind kind = PcfKind::D;
  CanonicalParams original;
  GeneralParams mapped;          // parameters of the underlying case-I sum
  Cplx sigma{1.0, 0.0};          // argument twist
  Cplx top_order{0.0, 0.0};      // e/2 in the mapped parameters
  std::vector<Cplx> coeffs;      // A_0..A_N
  PrefactorDescriptor outer;     // phi prefactor, excludes the e^{u^2/4} factor
  PrefactorDescriptor prefactor; // full descriptor including e^{u^2/4} in z
  Cplx delta;                    // accessory parameter of the original equation
  Cplx eigen_d;                  // eigenvalue of the mapped system

  int order_n() const { return int(coeffs.size()) - 1; }
  Cplx argument(Cplx z) const { return (mapped.b - 2.0 * sigma * z) / std::sqrt(2.0); }

  PcfValue eval(Cplx z, const PcfConfig& cfg = {}) const;
  SolutionJet eval_jet(Cplx z, const PcfConfig& cfg = {}) const;
};

/// Builds the evaluatable solution for one eigenpair of the mapped system.
/// `pair` must come from the tridiagonal system of the case-mapped parameters.
FiniteSolution assemble_solution(CaseTag case_tag, const CanonicalParams& p,
                                 const EigenPair& pair, PcfKind kind,
                                 double tol = 1e-9);

/// Full pipeline: map parameters by the case, build the system (criterion
/// checked), solve for all N+1 eigenvalues, assemble each solution.
std::vector<FiniteSolution> solve_family(CaseTag case_tag, const CanonicalParams& p,
                                         int N, PcfKind kind = PcfKind::D,
                                         double tol = 1e-9);

/// Normalized residual of the canonical BHE at z for any twice-differentiable
/// solution jet; delta is taken from p.
double bhe_residual(const SolutionJet& jet, const CanonicalParams& p, Cplx z);

template <typename Sol>
double bhe_residual(const Sol& sol, const CanonicalParams& p, Cplx z) {
  return bhe_residual(sol.eval_jet(z), p, z);
}

/// Deterministic sample circle used by the residual tests: n points on |z| = r
/// with a seeded angular offset.
std::vector<Cplx> sample_circle(double r, int n, unsigned seed = 0);

}  // namespace heunpc

#endif
