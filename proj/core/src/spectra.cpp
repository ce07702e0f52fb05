#include "heunpc/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "heunpc/errors.hpp"
#include "heunpc/polyroots.hpp"

namespace heunpc {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880168872420970;
}

Cplx TridiagonalSystem::sup(int n) const { return -kSqrt2 * double(n + 1); }

Cplx TridiagonalSystem::sub(int n) const {
  return -kSqrt2 * (double(n) + c - 1.0) * (e / 2.0 - double(n) + 1.0);
}

Cplx TridiagonalSystem::diag_const(int n) const { return b * double(n); }

std::vector<Cplx> TridiagonalSystem::sup_row() const {
  std::vector<Cplx> v;
  for (int n = 0; n <= N; ++n) v.push_back(sup(n));
  return v;
}
std::vector<Cplx> TridiagonalSystem::sub_row() const {
  std::vector<Cplx> v;
  for (int n = 0; n <= N; ++n) v.push_back(sub(n));
  return v;
}
std::vector<Cplx> TridiagonalSystem::diag_const_row() const {
  std::vector<Cplx> v;
  for (int n = 0; n <= N; ++n) v.push_back(diag_const(n));
  return v;
}

TridiagonalSystem build_tridiagonal(const GeneralParams& p, int N, double tol) {
  if (N < 0) throw PreconditionError("build_tridiagonal: N must be >= 0");
  bool e_term = std::abs(p.e - 2.0 * double(N)) <= tol;
  bool c_term = std::abs(p.c + double(N)) <= tol;
  if (!e_term && !c_term)
    throw CriterionError("build_tridiagonal: neither e = 2N nor c = -N holds");
  return {p.b, p.c, p.e, N};
}

std::vector<Cplx> characteristic_polynomial(const TridiagonalSystem& sys) {
  // Continuant: p_{k+1}(d) = (d + b k) p_k(d) - sup(k-1) sub(k) p_{k-1}(d).
  std::vector<Cplx> pm1{Cplx(1.0, 0.0)};      // p_0 = 1 (empty minor)
  std::vector<Cplx> p{Cplx(0.0, 0.0), Cplx(1.0, 0.0)};  // p_1 = d
  for (int k = 1; k <= sys.N; ++k) {
    std::vector<Cplx> next(p.size() + 1, Cplx(0.0, 0.0));
    for (size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];                       // d * p_k
      next[i] += sys.b * double(k) * p[i];       // b k * p_k
    }
    Cplx offdiag = sys.sup(k - 1) * sys.sub(k);
    for (size_t i = 0; i < pm1.size(); ++i) next[i] -= offdiag * pm1[i];
    pm1 = std::move(p);
    p = std::move(next);
  }
  return p;
}

namespace {

// det and d/dd det at a point, by the same continuant (used to polish roots).
void continuant_eval(const TridiagonalSystem& sys, Cplx d, Cplx& val, Cplx& dval) {
  Cplx pm1(1.0, 0.0), dpm1(0.0, 0.0);
  Cplx p = d, dp = Cplx(1.0, 0.0);
  for (int k = 1; k <= sys.N; ++k) {
    Cplx beta = d + sys.b * double(k);
    Cplx off = sys.sup(k - 1) * sys.sub(k);
    Cplx pn = beta * p - off * pm1;
    Cplx dpn = p + beta * dp - off * dpm1;
    pm1 = p;
    dpm1 = dp;
    p = pn;
    dp = dpn;
  }
  val = p;
  dval = dp;
}

}  // namespace

namespace {

// Final-row residual of the forward recursion and its d-derivative. This is
// the sharpest available evaluation of the eigencondition: the A_k recursion
// is run in its stable direction, so Newton here converges the closure itself
// to rounding level even when the expanded characteristic polynomial is
// ill-conditioned.
void closure_eval(const TridiagonalSystem& sys, Cplx d, Cplx& val, Cplx& dval) {
  if (sys.N == 0) {
    val = d;
    dval = Cplx(1.0, 0.0);
    return;
  }
  Cplx am1(1.0, 0.0), dam1(0.0, 0.0);  // A_0 and dA_0/dd
  Cplx a = d / kSqrt2;                 // A_1
  Cplx da(1.0 / kSqrt2, 0.0);
  for (int n = 1; n < sys.N; ++n) {
    Cplx beta = d + sys.b * double(n);
    Cplx gamma = sys.sub(n);
    Cplx denom = kSqrt2 * double(n + 1);
    Cplx next = (beta * a + gamma * am1) / denom;
    Cplx dnext = (a + beta * da + gamma * dam1) / denom;
    am1 = a;
    dam1 = da;
    a = next;
    da = dnext;
  }
  Cplx beta = d + sys.b * double(sys.N);
  val = beta * a + sys.sub(sys.N) * am1;
  dval = a + beta * da + sys.sub(sys.N) * dam1;
}

}  // namespace

std::vector<Cplx> eigenvalues_d(const TridiagonalSystem& sys) {
  if (sys.N == 0) return {Cplx(0.0, 0.0)};
  std::vector<Cplx> roots = poly_roots(characteristic_polynomial(sys));
  for (auto& r : roots) {
    // Continuant polish first, then drive the forward-recursion closure to
    // rounding level.
    for (int it = 0; it < 3; ++it) {
      Cplx v, dv;
      continuant_eval(sys, r, v, dv);
      if (std::abs(dv) < 1e-300) break;
      Cplx step = v / dv;
      if (!is_finite(step)) break;
      r -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(r))) break;
    }
    for (int it = 0; it < 4; ++it) {
      Cplx v, dv;
      closure_eval(sys, r, v, dv);
      if (std::abs(dv) < 1e-300) break;
      Cplx step = v / dv;
      if (!is_finite(step)) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Cplx a, Cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

EigenPair eigen_coeffs(const TridiagonalSystem& sys, Cplx d, double tol) {
  EigenPair pair;
  pair.d = d;
  auto& A = pair.coeffs;
  A.resize(size_t(sys.N) + 1);
  A[0] = Cplx(1.0, 0.0);
  if (sys.N >= 1) A[1] = d / kSqrt2;  // row 0: d A_0 - sqrt2 A_1 = 0
  for (int n = 1; n < sys.N; ++n) {
    Cplx beta = d + sys.b * double(n);
    A[size_t(n) + 1] = (beta * A[size_t(n)] + sys.sub(n) * A[size_t(n) - 1]) / (kSqrt2 * double(n + 1));
  }
  double amax = 0.0;
  for (const auto& a : A) amax = std::max(amax, std::abs(a));
  Cplx closure = (d + sys.b * double(sys.N)) * A[size_t(sys.N)];
  if (sys.N >= 1) closure += sys.sub(sys.N) * A[size_t(sys.N) - 1];
  pair.closure_residual = std::abs(closure);
  if (pair.closure_residual > tol * amax)
    throw NotAnEigenvalue("eigen_coeffs: final-row residual above tolerance");
  return pair;
}

// ---------------------------------------------------------------------------

SymmetryElement case_symmetry(CaseTag c) {
  switch (c) {
    case CaseTag::I: return SymmetryElement::Phi1;
    case CaseTag::II: return SymmetryElement::Phi2;
    case CaseTag::III: return SymmetryElement::Phi5;
    case CaseTag::IV: return SymmetryElement::Phi7;
  }
  return SymmetryElement::Phi1;
}

namespace {

// Descriptor of e^{u^2/4} as a function of z, u = (b~ - 2 sigma z)/sqrt2:
// u^2/4 = sigma^2 (z^2/2 - b z/2 + b^2/8) with b the original parameter.
PrefactorDescriptor gaussian_core_descriptor(Cplx b_orig, Cplx sigma) {
  Cplx s2 = sigma * sigma;
  return {s2 * 0.5, -s2 * b_orig * 0.5, s2 * b_orig * b_orig / 8.0, Cplx(0.0, 0.0)};
}

}  // namespace

FiniteSolution assemble_solution(CaseTag case_tag, const CanonicalParams& p,
                                 const EigenPair& pair, PcfKind kind, double tol) {
  SymmetryResult sym = apply_symmetry(case_symmetry(case_tag), p);
  GeneralParams mapped = canonical_to_general(sym.mapped);
  int N = int(pair.coeffs.size()) - 1;
  if (N < 0) throw PreconditionError("assemble_solution: empty coefficient vector");
  bool e_term = std::abs(mapped.e - 2.0 * double(N)) <= tol;
  bool c_term = std::abs(mapped.c + double(N)) <= tol;
  if (!e_term && !c_term)
    throw CriterionError("assemble_solution: case criterion (e = 2N or c = -N) fails");

  FiniteSolution sol;
  sol.case_tag = case_tag;
  sol.kind = kind;
  sol.original = p;
  sol.mapped = mapped;
  sol.sigma = sym.sigma;
  sol.top_order = mapped.e / 2.0;
  sol.coeffs = pair.coeffs;
  sol.outer = sym.prefactor;
  sol.prefactor = sym.prefactor * gaussian_core_descriptor(-p.beta, sym.sigma);
  sol.eigen_d = pair.d;
  // delta of the original equation from the mapped eigenvalue: the case map
  // multiplies delta by m_d, so invert that factor.
  Cplx mapped_delta = -2.0 * pair.d - (1.0 + sym.mapped.alpha) * sym.mapped.beta;
  Cplx md = (case_tag == CaseTag::III || case_tag == CaseTag::IV) ? Cplx(0.0, -1.0) : Cplx(1.0, 0.0);
  sol.delta = mapped_delta / md;

  if (kind == PcfKind::E) {
    // Surface the dependence failure at assembly time.
    pcf_e({sol.top_order}, Cplx(0.0, 0.0));
  }
  return sol;
}

std::vector<FiniteSolution> solve_family(CaseTag case_tag, const CanonicalParams& p,
                                         int N, PcfKind kind, double tol) {
  SymmetryResult sym = apply_symmetry(case_symmetry(case_tag), p);
  GeneralParams mapped = canonical_to_general(sym.mapped);
  TridiagonalSystem sys = build_tridiagonal(mapped, N, tol);
  std::vector<FiniteSolution> out;
  for (Cplx d : eigenvalues_d(sys))
    out.push_back(assemble_solution(case_tag, p, eigen_coeffs(sys, d), kind, tol));
  return out;
}

namespace {

// W, W', W'' sums of the core e^{u^2/4} sum_k A_k W_{top-k}(u) via the
// derivative ladder d/du[e^{u^2/4} W_nu] = nu e^{u^2/4} W_{nu-1}. Values come
// from the order ladder so deep negative orders keep full relative accuracy.
struct CoreJet {
  Cplx s0, s1, s2;
  double err;
};

CoreJet core_sums(const FiniteSolution& sol, Cplx u, const PcfConfig& cfg) {
  CoreJet out{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, 0.0};
  auto w = pcf_ladder_scaled(sol.kind, sol.top_order, u, int(sol.coeffs.size()) + 2, cfg);
  for (size_t k = 0; k < sol.coeffs.size(); ++k) {
    Cplx nu = sol.top_order - double(k);
    Cplx a = sol.coeffs[k];
    if (a == Cplx(0.0, 0.0)) continue;
    Cplx w0 = w[k].value.to_cplx();
    Cplx w1 = w[k + 1].value.to_cplx();
    Cplx w2 = w[k + 2].value.to_cplx();
    out.s0 += a * w0;
    out.s1 += a * nu * w1;
    out.s2 += a * nu * (nu - 1.0) * w2;
    double an = std::abs(a), nn = std::abs(nu);
    out.err += an * (std::abs(w0) * w[k].rel_error + nn * std::abs(w1) * w[k + 1].rel_error +
                     nn * (nn + 1.0) * std::abs(w2) * w[k + 2].rel_error);
  }
  return out;
}

}  // namespace

PcfValue FiniteSolution::eval(Cplx z, const PcfConfig& cfg) const {
  Cplx u = argument(z);
  Cplx gauss = std::exp(u * u / 4.0);
  Cplx s(0.0, 0.0);
  double err = 0.0;
  auto w = pcf_ladder_scaled(kind, top_order, u, int(coeffs.size()), cfg);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    Cplx wk = w[k].value.to_cplx();
    s += coeffs[k] * wk;
    err += std::abs(coeffs[k]) * std::abs(wk) * w[k].rel_error;
  }
  Cplx pref = outer.eval(z) * gauss;
  return {pref * s, std::abs(pref) * err};
}

SolutionJet FiniteSolution::eval_jet(Cplx z, const PcfConfig& cfg) const {
  Cplx u = argument(z);
  Cplx du = -std::sqrt(2.0) * sigma;  // du/dz
  CoreJet core = core_sums(*this, u, cfg);
  Cplx gauss = std::exp(u * u / 4.0);
  Cplx g0 = gauss * core.s0, g1 = gauss * core.s1, g2 = gauss * core.s2;

  Cplx p, p1, p2;
  outer.eval_jet(z, p, p1, p2);
  SolutionJet jet;
  jet.y = p * g0;
  jet.y1 = p1 * g0 + p * g1 * du;
  jet.y2 = p2 * g0 + 2.0 * p1 * g1 * du + p * g2 * du * du;
  jet.abs_error = std::abs(gauss) * core.err * (std::abs(p) + std::abs(p1) + std::abs(p2)) * (1.0 + std::abs(du) + std::abs(du * du));
  return jet;
}

double bhe_residual(const SolutionJet& jet, const CanonicalParams& p, Cplx z) {
  if (std::abs(z) < 1e-12) throw EvalError("bhe_residual: z too close to the origin");
  Cplx lhs = z * jet.y2 + (1.0 + p.alpha - p.beta * z - 2.0 * z * z) * jet.y1 +
             ((p.gamma_ - p.alpha - 2.0) * z - 0.5 * (p.delta + (1.0 + p.alpha) * p.beta)) * jet.y;
  double denom = 1.0 + std::abs(jet.y) + std::abs(jet.y1) + std::abs(jet.y2);
  return std::abs(lhs) / denom;
}

std::vector<Cplx> sample_circle(double r, int n, unsigned seed) {
  std::vector<Cplx> pts;
  double offset = 0.1 + 0.61803398874989 * double(seed % 997);
  offset -= std::floor(offset);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * kPi * (double(j) + offset) / double(n);
    pts.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return pts;
}

}  // namespace heunpc
