#include "heunpc/gauge.hpp"

#include <cmath>

#include "heunpc/connection.hpp"
#include "heunpc/errors.hpp"

namespace heunpc {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880168872420970;
}

PcfValue GaugePair::eval_at_x(Cplx x, const PcfConfig& cfg) const {
  PcfValue w = kind == PcfKind::D ? pcf_d({base_order}, x, cfg)
                                  : pcf_e({base_order}, x, SecondKind::Primary, cfg);
  PcfValue wp = kind == PcfKind::D ? pcf_d_prime({base_order}, x, cfg)
                                   : pcf_e_prime({base_order}, x, SecondKind::Primary, cfg);
  Cplx gauss = std::exp(x * x / 4.0);
  Cplx v = gauss * (p0.eval(x) * w.value + p1.eval(x) * wp.value);
  double err = std::abs(gauss) * (std::abs(p0.eval(x)) * w.abs_error + std::abs(p1.eval(x)) * wp.abs_error);
  return {v, err};
}

PcfValue core_sum_at_x(const FiniteSolution& sum, Cplx x, const PcfConfig& cfg) {
  Cplx gauss = std::exp(x * x / 4.0);
  Cplx s(0.0, 0.0);
  double err = 0.0;
  auto w = pcf_ladder_scaled(sum.kind, sum.top_order, x, int(sum.coeffs.size()), cfg);
  for (size_t k = 0; k < sum.coeffs.size(); ++k) {
    Cplx wk = w[k].value.to_cplx();
    s += sum.coeffs[k] * wk;
    err += std::abs(sum.coeffs[k]) * std::abs(wk) * w[k].rel_error;
  }
  return {gauss * s, std::abs(gauss) * err};
}

namespace {

void require_case_one(const FiniteSolution& sum, const char* who) {
  if (sum.case_tag != CaseTag::I)
    throw PreconditionError(std::string(who) + ": expects a case-I-form finite sum");
}

}  // namespace

GaugePair reduce_down(const FiniteSolution& sum) {
  require_case_one(sum, "reduce_down");
  const int N = sum.order_n();
  const Cplx mu = sum.top_order - double(N);  // base order e/2 - N

  // D_{mu+j} = T_j D_mu + U_j D'_mu from the ladders
  //   D_{mu+1} = (x/2) D_mu - D'_mu,
  //   D_{mu+j+1} = x D_{mu+j} - (mu+j) D_{mu+j-1}.
  std::vector<Poly> T(size_t(N) + 1), U(size_t(N) + 1);
  T[0] = Poly::constant({1.0, 0.0});
  U[0] = Poly::constant({0.0, 0.0});
  if (N >= 1) {
    T[1] = Poly({{0.0, 0.0}, {0.5, 0.0}});
    U[1] = Poly::constant({-1.0, 0.0});
  }
  for (int j = 1; j < N; ++j) {
    Cplx order = mu + double(j);
    T[size_t(j) + 1] = T[size_t(j)].shifted_up() + T[size_t(j) - 1] * (-order);
    U[size_t(j) + 1] = U[size_t(j)].shifted_up() + U[size_t(j) - 1] * (-order);
  }

  GaugePair out;
  out.base_order = mu;
  out.kind = sum.kind;
  for (int k = 0; k <= N; ++k) {
    out.p0 += T[size_t(N - k)] * sum.coeffs[size_t(k)];
    out.p1 += U[size_t(N - k)] * sum.coeffs[size_t(k)];
  }
  out.p0.prune();
  out.p1.prune();
  return out;
}

GaugePair reduce_up(const FiniteSolution& sum) {
  require_case_one(sum, "reduce_up");
  const int N = sum.order_n();
  const Cplx top = sum.top_order;

  // D_{top-j} = V_j D_top + W_j D'_top from the downward ladders
  //   D_{nu-1} = (D'_nu + (x/2) D_nu)/nu,
  //   D_{mu-1} = (x D_mu - D_{mu+1})/mu.
  std::vector<Poly> V(size_t(N) + 1), W(size_t(N) + 1);
  V[0] = Poly::constant({1.0, 0.0});
  W[0] = Poly::constant({0.0, 0.0});
  if (N >= 1) {
    if (std::abs(top) < 1e-12) throw EvalError("reduce_up: top order too close to zero");
    V[1] = Poly({{0.0, 0.0}, {1.0, 0.0}}) * (0.5 / top);
    W[1] = Poly::constant(1.0 / top);
  }
  for (int j = 1; j < N; ++j) {
    Cplx order = top - double(j);
    if (std::abs(order) < 1e-12) throw EvalError("reduce_up: ladder division by near-zero order");
    Cplx inv = 1.0 / order;
    V[size_t(j) + 1] = (V[size_t(j)].shifted_up() + V[size_t(j) - 1] * Cplx(-1.0, 0.0)) * inv;
    W[size_t(j) + 1] = (W[size_t(j)].shifted_up() + W[size_t(j) - 1] * Cplx(-1.0, 0.0)) * inv;
  }

  GaugePair out;
  out.base_order = top;
  out.kind = sum.kind;
  for (int k = 0; k <= N; ++k) {
    out.p0 += V[size_t(k)] * sum.coeffs[size_t(k)];
    out.p1 += W[size_t(k)] * sum.coeffs[size_t(k)];
  }
  out.p0.prune();
  out.p1.prune();
  return out;
}

ApparentSingularityResult apparent_singularity_test(const CanonicalParams& p, Cplx delta,
                                                    double tol) {
  ApparentSingularityResult res;
  double ar = std::round(p.alpha.real());
  if (std::fabs(p.alpha.real() - ar) > 1e-9 || std::fabs(p.alpha.imag()) > 1e-9) {
    res.resonant = false;
    res.apparent = true;  // exponents do not differ by an integer: no log can arise
    return res;
  }
  long ai = long(ar);
  int m_res = int(std::labs(ai));
  res.resonance_index = m_res;
  if (m_res == 0) {
    // Double exponent: the second solution always carries a logarithm.
    res.apparent = false;
    res.obstruction = 1.0;
    return res;
  }

  // Frobenius series from the smaller exponent r (0 for alpha < 0, -alpha
  // otherwise); the log obstruction is the right-hand side of the recursion
  // at the resonance index, where the indicial factor vanishes.
  Cplx r = (ai > 0) ? Cplx(-double(ai), 0.0) : Cplx(0.0, 0.0);
  Cplx alpha = p.alpha, beta = p.beta, gam = p.gamma_;
  Cplx dhat = -0.5 * (delta + (1.0 + alpha) * beta);

  int len = m_res + 5;
  std::vector<Cplx> c(size_t(len) + 1, Cplx(0.0, 0.0));
  c[0] = Cplx(1.0, 0.0);
  double scale = 1.0;
  for (int m = 1; m <= len; ++m) {
    Cplx rhs(0.0, 0.0);
    if (m >= 1) rhs += (beta * (double(m) - 1.0 + r) - dhat) * c[size_t(m) - 1];
    if (m >= 2) rhs += (2.0 * (double(m) - 2.0 + r) - gam + alpha + 2.0) * c[size_t(m) - 2];
    Cplx indicial = (double(m) + r) * (double(m) + r + alpha);
    if (m == m_res) {
      res.obstruction = std::abs(rhs);
      res.scale = scale;
      c[size_t(m)] = Cplx(0.0, 0.0);  // continue with the log-free choice
      continue;
    }
    c[size_t(m)] = rhs / indicial;
    scale = std::max(scale, std::abs(c[size_t(m)]));
  }
  res.apparent = res.obstruction <= tol * res.scale;
  return res;
}

ScalarForm system_to_scalar(const MatrixFunction& m, Cplx x) {
  Matrix2 a = m.value(x);
  if (std::abs(a.a12) < 1e-12) throw SingularGauge("system_to_scalar: a12 vanishes at x");
  Matrix2 ap = m.d(x);
  ScalarForm f;
  f.coeff1 = -a.a11 - a.a22 - ap.a12 / a.a12;
  // a12 (a11/a12)' = a11' - a11 a12'/a12
  f.coeff0 = a.a11 * a.a22 - a.a21 * a.a12 - (ap.a11 - a.a11 * ap.a12 / a.a12);
  Cplx a11 = a.a11, a12 = a.a12;
  f.y2_map = [a11, a12](Cplx y1, Cplx y1p) { return (y1p - a11 * y1) / a12; };
  return f;
}

ParabolicFrame parabolic_frame(Cplx nu, Cplx r) {
  if (std::abs(r) < 1e-300) throw PreconditionError("parabolic_frame: r must be nonzero");
  return {nu, r, -(nu + 1.0) / r};
}

Matrix2 ParabolicFrame::eval(Cplx x, const PcfConfig& cfg) const {
  PcfValue d = pcf_d({nu}, x, cfg);
  PcfValue e = pcf_e({nu}, x, SecondKind::Primary, cfg);
  PcfValue dp = pcf_d_prime({nu}, x, cfg);
  PcfValue ep = pcf_e_prime({nu}, x, SecondKind::Primary, cfg);
  return {d.value, e.value, (dp.value - x / 2.0 * d.value) / r, (ep.value - x / 2.0 * e.value) / r};
}

Matrix2 ParabolicFrame::system_matrix(Cplx x) const {
  return {x / 2.0, r, s, -x / 2.0};
}

namespace {

// Frame [[D, E], [D', E']] and its x-derivative rows for the Schlesinger gauge.
Matrix2 pcf_frame(Cplx nu, Cplx x, const PcfConfig& cfg) {
  PcfValue d = pcf_d({nu}, x, cfg);
  PcfValue e = pcf_e({nu}, x, SecondKind::Primary, cfg);
  PcfValue dp = pcf_d_prime({nu}, x, cfg);
  PcfValue ep = pcf_e_prime({nu}, x, SecondKind::Primary, cfg);
  return {d.value, e.value, dp.value, ep.value};
}

struct SchlesingerContext {
  CanonicalParams p;
  GeneralParams g;
  Cplx theta0, thetaInf, t, lambda, u, nu, r;
  FiniteSolution f, gsol;
  BhcMatrices mats;

  Matrix2 bhc_at(Cplx w) const { return mats.A * w + mats.B + mats.C * (1.0 / w); }

  // Psi from the gauged scalar solutions fhat = f * w^{theta0} e^{-tw - w^2/2}.
  Matrix2 psi_at(Cplx w, const PcfConfig& cfg) const {
    Matrix2 a = bhc_at(w);
    Cplx phi = std::pow(w, theta0) * std::exp(-t * w - w * w / 2.0);
    Cplx lp = theta0 / w - t - w;
    SolutionJet jf = f.eval_jet(w, cfg);
    SolutionJet jg = gsol.eval_jet(w, cfg);
    Cplx fh = jf.y * phi, fhp = (jf.y1 + jf.y * lp) * phi;
    Cplx gh = jg.y * phi, ghp = (jg.y1 + jg.y * lp) * phi;
    return {fh, gh, (fhp - a.a11 * fh) / a.a12, (ghp - a.a11 * gh) / a.a12};
  }

  Cplx x_of(Cplx w) const { return (g.b - 2.0 * w) / kSqrt2; }

  // R(w) = Psi(w) PhiFrame(x(w))^{-1} C(x(w))^{-1} with C the lower-triangular
  // gauge between [[D,E],[D',E']] and the parabolic frame.
  Matrix2 R_at(Cplx w, const PcfConfig& cfg) const {
    Cplx x = x_of(w);
    Matrix2 frame = pcf_frame(nu, x, cfg);
    if (std::abs(frame.det()) < 1e-12)
      throw SingularFrame("schlesinger_verify: PCF frame nearly singular at a sample");
    Matrix2 cinv{{1.0, 0.0}, {0.0, 0.0}, x / 2.0, r};  // inverse of [[1,0],[-x/(2r), 1/r]]
    Matrix2 q = psi_at(w, cfg) * frame.inverse();
    return q * cinv;
  }

  // Parabolic system in the w variable: dPhi/dw = -sqrt2 (A' x(w) + B') Phi.
  Matrix2 parabolic_at(Cplx w) const {
    Cplx x = x_of(w);
    Cplx s = -(nu + 1.0) / r;
    Matrix2 sys{x / 2.0, r, s, -x / 2.0};
    return sys * Cplx(-kSqrt2, 0.0);
  }
};

}  // namespace

double schlesinger_verify(const CanonicalParams& p_in, const EigenPair& pair,
                          std::span<const Cplx> x_samples, const SchlesingerOptions& opts) {
  Cplx two_theta0 = p_in.alpha + 1.0;
  if (std::fabs(two_theta0.imag()) > 1e-9 ||
      std::fabs(two_theta0.real() - std::round(two_theta0.real())) > 1e-9)
    throw PreconditionError("schlesinger_verify: 2 theta0 = alpha + 1 must be an integer");

  // Positive integers reduce to the negative branch through theta0 -> -theta0.
  CanonicalParams p = p_in;
  if (two_theta0.real() > 0.5) {
    p.alpha = -p_in.alpha - 2.0;
    return schlesinger_verify(p, pair, x_samples, opts);
  }

  SchlesingerContext ctx;
  ctx.p = p;
  ctx.g = canonical_to_general(p);
  ctx.theta0 = (p.alpha + 1.0) / 2.0;
  ctx.thetaInf = (p.gamma_ + 1.0) / 2.0;
  ctx.t = p.beta / 2.0;
  ctx.u = opts.u;
  const int N = int(std::round(-two_theta0.real()));
  if (int(pair.coeffs.size()) != N + 1)
    throw PreconditionError("schlesinger_verify: pair size does not match -2 theta0 + 1");

  if (N == 0) {
    ctx.lambda = ctx.t;  // the C matrix vanishes; lambda is immaterial
  } else {
    ctx.lambda = ctx.t + pair.d / (4.0 * ctx.theta0);
  }
  ctx.nu = ctx.g.e / 2.0 - double(N);
  ctx.r = -ctx.u / kSqrt2;
  ctx.f = assemble_solution(CaseTag::I, p, pair, PcfKind::D);
  ctx.gsol = assemble_solution(CaseTag::I, p, pair, PcfKind::E);
  ctx.mats = bhc_exceptional_matrices(ctx.theta0, ctx.thetaInf, ctx.t, ctx.u, ctx.lambda);

  const double h = opts.fd_step;
  double worst = 0.0;
  for (Cplx w : x_samples) {
    Matrix2 a = ctx.bhc_at(w);
    Matrix2 r0 = ctx.R_at(w, opts.pcf);
    if (std::abs(r0.det()) < 1e-12)
      throw SingularFrame("schlesinger_verify: gauge matrix nearly singular at a sample");
    Matrix2 rp1 = ctx.R_at(w + h, opts.pcf), rm1 = ctx.R_at(w - h, opts.pcf);
    Matrix2 rp2 = ctx.R_at(w + 2.0 * h, opts.pcf), rm2 = ctx.R_at(w - 2.0 * h, opts.pcf);
    Matrix2 rx = (rp1 - rm1) * (8.0 / (12.0 * h)) - (rp2 - rm2) * (1.0 / (12.0 * h));
    Matrix2 rhs = (r0 * ctx.parabolic_at(w) + rx) * r0.inverse();
    double res = (a - rhs).norm() / (1.0 + a.norm());
    worst = std::max(worst, res);
  }
  return worst;
}

}  // namespace heunpc
