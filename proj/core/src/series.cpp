#include "heunpc/series.hpp"

#include <algorithm>
#include <cmath>

#include "heunpc/errors.hpp"

namespace heunpc {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880168872420970;
const Cplx kI(0.0, 1.0);
}  // namespace

GeneralParams variant_params(const GeneralParams& p, SeriesVariant v) {
  switch (v) {
    case SeriesVariant::Base: return p;
    case SeriesVariant::Phi5: return {kI * p.b, p.c, kI * (p.b * p.c - p.d), -p.e - 2.0 * p.c - 2.0};
    case SeriesVariant::Phi4: return {-kI * p.b, p.c, -kI * (p.b * p.c - p.d), -p.e - 2.0 * p.c - 2.0};
  }
  return p;
}

CoeffStream::CoeffStream(const GeneralParams& p, SeriesVariant v) : q_(variant_params(p, v)) {}

ScaledComplex CoeffStream::next() {
  if (n_ == 0) {
    ++n_;
    cur_ = ScaledComplex::from(Cplx(1.0, 0.0));
    return cur_;
  }
  if (n_ == 1) {
    ++n_;
    prev_ = cur_;
    cur_ = ScaledComplex::from(q_.d / kSqrt2);
    return cur_;
  }
  // alpha_n A_{n+1} + beta_n A_n + gamma_n A_{n-1} = 0 at n = n_-1.
  int n = n_ - 1;
  Cplx beta = q_.d + q_.b * double(n);
  Cplx gamma = -kSqrt2 * (double(n) + q_.c - 1.0) * (q_.e / 2.0 - double(n) + 1.0);
  ScaledComplex nextv = (cur_ * beta + prev_ * gamma) * (1.0 / (kSqrt2 * double(n + 1)));
  prev_ = cur_;
  cur_ = nextv;
  ++n_;
  return cur_;
}

CoeffStream coeff_stream(const GeneralParams& p, SeriesVariant v) { return {p, v}; }

AsymptoticModel wong_li_model(const GeneralParams& p, SeriesVariant v, int rho) {
  GeneralParams q = variant_params(p, v);
  AsymptoticModel m;
  m.rho = (rho >= 0) ? +1 : -1;
  m.a0 = -q.b / kSqrt2;
  m.b0 = Cplx(-1.0, 0.0);
  m.b1 = 2.0 + q.e / 2.0 - q.c;
  m.gamma_coef = -m.a0 / double(m.rho);
  m.alpha_exp = m.b1 / (2.0 * m.b0) + 0.25;
  return m;
}

Cplx log_term_model(const AsymptoticModel& model, const GeneralParams& p, Cplx x, int n) {
  if (n < 10) throw PreconditionError("log_term_model: n must be >= 10");
  return (model.gamma_coef - x) * std::sqrt(double(n)) + (p.c / 2.0 - 1.5) * std::log(double(n));
}

double log_coeff_model(const AsymptoticModel& model, const GeneralParams& p, int n) {
  double nn = double(n);
  double main = (2.0 * nn - 3.0) / 4.0 * std::log(nn - 2.0) - nn / 2.0;
  double branch = (model.gamma_coef * std::sqrt(nn)).real();
  double power = (p.c / 2.0 - p.e / 4.0 - 0.75).real() * std::log(nn);
  return main + branch + power;
}

RegionCheck convergence_predicate(SeriesVariant v, const GeneralParams& p, Cplx z) {
  const bool boundary_ok = p.c.real() < -0.5;
  auto verdict = [&](double m1, double m2, const char* d1, const char* d2) {
    RegionCheck r;
    if (m1 < 0.0 && m2 < 0.0) {
      r.ok = true;
      return r;
    }
    if (m1 <= 0.0 && m2 <= 0.0 && boundary_ok) {
      r.ok = true;
      r.reason = "boundary admitted: Re c < -1/2";
      return r;
    }
    r.ok = false;
    r.reason = (m1 >= 0.0 ? std::string(d1) : std::string(d2)) + " violated";
    return r;
  };
  switch (v) {
    case SeriesVariant::Base:
      return verdict(z.real(), (z - 2.0 * p.b).real(), "Re z < 0", "Re(z - 2b) < 0");
    case SeriesVariant::Phi5:
      return verdict(-z.imag(), 0.5 * p.b.imag() - z.imag(), "Im z > 0", "Im z > Im(b)/2");
    case SeriesVariant::Phi4:
      return verdict(z.imag(), z.imag() - p.b.imag(), "Im z < 0", "Im z < Im b");
  }
  return {};
}

SeriesSolution make_series_solution(const GeneralParams& p, SeriesVariant v, PcfKind kind,
                                    TruncationPolicy policy) {
  SeriesSolution s;
  s.p = p;
  s.variant = v;
  s.kind = kind;
  s.policy = policy;
  if (v == SeriesVariant::Base) {
    // e^{x^2/4} in z: x^2/4 = z^2/2 - b z /2 + b^2/8.
    s.prefactor = {Cplx(0.5, 0.0), -p.b / 2.0, p.b * p.b / 8.0, Cplx(0.0, 0.0)};
  } else {
    // e^{beta z + z^2} e^{u^2/4} with u = +-i x: z^2/2 - b z/2 - b^2/8.
    s.prefactor = {Cplx(0.5, 0.0), -p.b / 2.0, -p.b * p.b / 8.0, Cplx(0.0, 0.0)};
  }
  return s;
}

namespace {

struct VariantGeometry {
  Cplx sigma;      // u = sigma (b - 2z)/sqrt2
  Cplx top;        // leading PCF order
  PrefactorDescriptor outer;  // prefactor outside e^{u^2/4}
};

VariantGeometry geometry(const SeriesSolution& sol) {
  VariantGeometry g;
  GeneralParams q = variant_params(sol.p, sol.variant);
  g.top = q.e / 2.0;
  switch (sol.variant) {
    case SeriesVariant::Base: g.sigma = Cplx(1.0, 0.0); break;
    case SeriesVariant::Phi5: g.sigma = kI; break;
    case SeriesVariant::Phi4: g.sigma = -kI; break;
  }
  if (sol.variant != SeriesVariant::Base) {
    g.outer.quad = Cplx(1.0, 0.0);
    g.outer.lin = -sol.p.b;  // beta = -b
  }
  return g;
}

struct SumAccumulator {
  ScaledComplex sum;
  ScaledComplex err;  // |error| magnitudes, real mantissa
  void add(ScaledComplex term, double rel) {
    sum = sum + term;
    ScaledComplex mag{Cplx(std::abs(term.m), 0.0), term.e};
    err = err + mag * rel;
  }
};

struct SeriesSums {
  ScaledComplex s0, s1, s2;
  double rel_err0 = 0.0;  // error of s0 relative to |s0|
  int terms = 0;
};

// Grows the PCF ladder on demand as the summation deepens.
class LadderedPcf {
 public:
  LadderedPcf(PcfKind kind, Cplx nu0, Cplx u, const PcfConfig& cfg)
      : kind_(kind), nu0_(nu0), u_(u), cfg_(cfg) {}

  /// W_{nu0 - n}(u) with its relative error.
  PcfScaled at(int n) {
    if (n >= int(vals_.size())) {
      int grown = std::max(n + 9, int(vals_.size()) * 2 + 16);
      vals_ = pcf_ladder_scaled(kind_, nu0_, u_, grown, cfg_);
    }
    return vals_[size_t(n)];
  }

 private:
  PcfKind kind_;
  Cplx nu0_, u_;
  PcfConfig cfg_;
  std::vector<PcfScaled> vals_;
};

// Shared summation loop; with_jet controls whether the two derivative ladders
// are carried along.
SeriesSums sum_series(const SeriesSolution& sol, Cplx u, bool with_jet, const PcfConfig& cfg) {
  CoeffStream stream(sol.p, sol.variant);
  VariantGeometry g = geometry(sol);
  const TruncationPolicy& pol = sol.policy;
  LadderedPcf ladder(sol.kind, g.top, u, cfg);

  SumAccumulator a0, a1, a2;
  ScaledComplex last_terms[8];
  int small_streak = 0;
  int n = 0;
  double prev_mag_log = 0.0;
  double ratio = 0.0;
  bool done = false;

  for (; n < pol.cap && !done; ++n) {
    ScaledComplex an = stream.next();
    Cplx nu = g.top - double(n);
    PcfScaled w0 = ladder.at(n);
    ScaledComplex term = an * w0.value;
    a0.add(term, w0.rel_error + double(n) * 3e-16);
    if (with_jet) {
      PcfScaled w1 = ladder.at(n + 1);
      PcfScaled w2 = ladder.at(n + 2);
      a1.add(an * w1.value * nu, w1.rel_error);
      a2.add(an * w2.value * (nu * (nu - 1.0)), w2.rel_error);
    }
    last_terms[n % 8] = term;

    if (!term.is_zero() && !a0.sum.is_zero()) {
      double lt = term.log_abs(), ls = a0.sum.log_abs();
      if (n > 0) ratio = std::exp(std::min(lt - prev_mag_log, 20.0));
      prev_mag_log = lt;
      if (lt - ls < std::log(pol.eps)) {
        if (++small_streak >= pol.consecutive && n >= 1) done = true;
      } else {
        small_streak = 0;
      }
    } else if (term.is_zero()) {
      if (++small_streak >= pol.consecutive) done = true;
      prev_mag_log = -1e300;
    }
  }
  if (!done) throw ConvergenceError("evaluate_series: term cap reached before convergence");

  SeriesSums out;
  out.s0 = a0.sum;
  out.s1 = a1.sum;
  out.s2 = a2.sum;
  out.terms = n;

  // Error: accumulated per-term bounds + the last small terms + geometric tail.
  ScaledComplex tail = a0.err;
  for (int k = 0; k < std::min(n, pol.consecutive); ++k) {
    ScaledComplex t = last_terms[(n - 1 - k) % 8];
    tail = tail + ScaledComplex{Cplx(std::abs(t.m), 0.0), t.e};
  }
  ScaledComplex last = last_terms[(n - 1) % 8];
  double r = std::min(ratio, 0.95);
  if (r > 0.0)
    tail = tail + ScaledComplex{Cplx(std::abs(last.m) * r / (1.0 - r), 0.0), last.e};
  if (!out.s0.is_zero()) out.rel_err0 = std::exp(std::min(tail.log_abs() - out.s0.log_abs(), 300.0));
  return out;
}

}  // namespace

PcfValue SeriesSolution::eval(Cplx z, const PcfConfig& cfg) const {
  return evaluate_series(*this, z, cfg);
}

PcfValue evaluate_series(const SeriesSolution& sol, Cplx z, const PcfConfig& cfg) {
  RegionCheck rc = convergence_predicate(sol.variant, sol.p, z);
  if (!rc.ok) throw RegionError("evaluate_series: " + rc.reason);
  VariantGeometry g = geometry(sol);
  Cplx u = g.sigma * (sol.p.b - 2.0 * z) / kSqrt2;
  SeriesSums s = sum_series(sol, u, false, cfg);
  ScaledComplex pref = scaled_exp(sol.prefactor.log_at(z));
  ScaledComplex v = pref * s.s0;
  Cplx value = v.to_cplx();
  return {value, std::abs(value) * s.rel_err0};
}

PcfValue evaluate_series_fixed_terms(const SeriesSolution& sol, Cplx z, int terms,
                                     const PcfConfig& cfg) {
  RegionCheck rc = convergence_predicate(sol.variant, sol.p, z);
  if (!rc.ok) throw RegionError("evaluate_series_fixed_terms: " + rc.reason);
  VariantGeometry g = geometry(sol);
  Cplx u = g.sigma * (sol.p.b - 2.0 * z) / kSqrt2;
  CoeffStream stream(sol.p, sol.variant);
  LadderedPcf ladder(sol.kind, g.top, u, cfg);
  ScaledComplex sum;
  for (int n = 0; n < terms; ++n) {
    ScaledComplex an = stream.next();
    sum = sum + an * ladder.at(n).value;
  }
  ScaledComplex pref = scaled_exp(sol.prefactor.log_at(z));
  Cplx value = (pref * sum).to_cplx();
  return {value, 0.0};
}

SolutionJet SeriesSolution::eval_jet(Cplx z, const PcfConfig& cfg) const {
  RegionCheck rc = convergence_predicate(variant, p, z);
  if (!rc.ok) throw RegionError("eval_jet: " + rc.reason);
  VariantGeometry g = geometry(*this);
  Cplx u = g.sigma * (p.b - 2.0 * z) / kSqrt2;
  Cplx du = -kSqrt2 * g.sigma;
  SeriesSums s = sum_series(*this, u, true, cfg);

  ScaledComplex gauss = scaled_exp(u * u / 4.0);
  Cplx g0 = (gauss * s.s0).to_cplx();
  Cplx g1 = (gauss * s.s1).to_cplx();
  Cplx g2 = (gauss * s.s2).to_cplx();

  Cplx pv, p1, p2;
  g.outer.eval_jet(z, pv, p1, p2);
  SolutionJet jet;
  jet.y = pv * g0;
  jet.y1 = p1 * g0 + pv * g1 * du;
  jet.y2 = p2 * g0 + 2.0 * p1 * g1 * du + pv * g2 * du * du;
  jet.abs_error = std::abs(jet.y) * s.rel_err0;
  return jet;
}

PcfValue EntireSolution::eval(Cplx z, const PcfConfig& cfg) const {
  if (z.imag() >= 0.0) {
    PcfValue v = evaluate_series(phi, z, cfg);
    return {C0 * v.value, std::abs(C0) * v.abs_error};
  }
  return evaluate_series(psi, z, cfg);
}

SolutionJet EntireSolution::eval_jet(Cplx z, const PcfConfig& cfg) const {
  if (z.imag() >= 0.0) {
    SolutionJet j = phi.eval_jet(z, cfg);
    j.y *= C0;
    j.y1 *= C0;
    j.y2 *= C0;
    j.abs_error *= std::abs(C0);
    return j;
  }
  return psi.eval_jet(z, cfg);
}

double EntireSolution::continuity_gap(Cplx z, const PcfConfig& cfg) const {
  PcfValue a = evaluate_series(phi, z, cfg);
  PcfValue b = evaluate_series(psi, z, cfg);
  return std::abs(C0 * a.value - b.value) / (1.0 + std::abs(b.value));
}

namespace {

// Frobenius solution z^r sum c_m z^m of the general-form BHE at the origin,
// evaluated with its derivative.
struct FrobeniusBasis {
  Cplx r;
  std::vector<Cplx> coeff;

  FrobeniusBasis(const GeneralParams& g, Cplx r_, int len) : r(r_), coeff(size_t(len) + 1) {
    coeff[0] = Cplx(1.0, 0.0);
    for (int m = 1; m <= len; ++m) {
      Cplx rhs = -((g.b * (double(m) - 1.0 + r) + g.d) * coeff[size_t(m) - 1]);
      if (m >= 2) rhs -= (g.e - 2.0 * (double(m) - 2.0 + r)) * coeff[size_t(m) - 2];
      coeff[size_t(m)] = rhs / ((double(m) + r) * (double(m) + r - 1.0 + g.c));
    }
  }

  void eval_jet(Cplx z, Cplx& y, Cplx& yp) const {
    Cplx s(0.0, 0.0), sp(0.0, 0.0);
    for (int m = int(coeff.size()) - 1; m >= 0; --m) {
      sp = sp * z + s;
      s = s * z + coeff[size_t(m)];
    }
    Cplx zr = std::exp(r * std::log(z));
    y = zr * s;
    yp = zr * (sp + r / z * s);
  }
};

}  // namespace

Cplx glue_branch_defect(const GeneralParams& p) {
  Cplx diff = 1.0 - p.c;  // exponent of the branched local solution
  if (std::fabs(diff.imag()) < 1e-9 && std::fabs(diff.real() - std::round(diff.real())) < 1e-9)
    throw PreconditionError("glue_branch_defect: 1 - c must be non-integral");
  FrobeniusBasis n1(p, Cplx(0.0, 0.0), 160);
  FrobeniusBasis n2(p, diff, 160);
  SeriesSolution phi = make_series_solution(p, SeriesVariant::Phi5, PcfKind::D, {1e-11, 5, 60000});
  Cplx z(p.b.real() / 2.0 + 0.2, 0.5);
  SolutionJet j = phi.eval_jet(z);
  Cplx y1, y1p, y2, y2p;
  n1.eval_jet(z, y1, y1p);
  n2.eval_jet(z, y2, y2p);
  Cplx det = y1 * y2p - y2 * y1p;
  Cplx c1 = (j.y * y2p - y2 * j.y1) / det;
  Cplx c2 = (y1 * j.y1 - j.y * y1p) / det;
  if (std::abs(c1) < 1e-300) throw EvalError("glue_branch_defect: degenerate decomposition");
  return c2 / c1;
}

GeneralParams glue_find_accessory(GeneralParams p, double tol, int max_iter) {
  Cplx f = glue_branch_defect(p);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(f) <= tol) return p;
    double h = 1e-4 * (1.0 + std::abs(p.d));
    GeneralParams hi = p, lo = p;
    hi.d += h;
    lo.d -= h;
    Cplx df = (glue_branch_defect(hi) - glue_branch_defect(lo)) / (2.0 * h);
    if (std::abs(df) < 1e-300) break;
    Cplx step = f / df;
    if (!is_finite(step)) break;
    if (std::abs(step) > 2.0) step *= 2.0 / std::abs(step);
    p.d -= step;
    f = glue_branch_defect(p);
  }
  if (std::abs(f) > tol)
    throw ConvergenceError("glue_find_accessory: defect did not reach tolerance");
  return p;
}

EntireSolution glue_entire(const GeneralParams& p, TruncationPolicy policy) {
  if (std::fabs(p.b.imag()) > 1e-12 * (1.0 + std::abs(p.b)))
    throw PreconditionError("glue_entire: b must be real");
  if (!(p.c.real() < -0.5)) throw PreconditionError("glue_entire: Re c < -1/2 required");

  EntireSolution sol;
  sol.p = p;
  sol.phi = make_series_solution(p, SeriesVariant::Phi5, PcfKind::D, policy);
  sol.psi = make_series_solution(p, SeriesVariant::Phi4, PcfKind::D, policy);
  Cplx zm = p.b / 2.0;
  PcfValue phi0 = evaluate_series(sol.phi, zm);
  PcfValue psi0 = evaluate_series(sol.psi, zm);
  if (std::abs(psi0.value) < 1e-300) throw DivisionError("glue_entire: Psi(b/2) vanishes");
  if (std::abs(phi0.value) < 1e-300) throw DivisionError("glue_entire: Phi(b/2) vanishes");
  // Oriented so that C0 Phi and Psi agree at the matching point by
  // construction.
  sol.C0 = psi0.value / phi0.value;
  return sol;
}

}  // namespace heunpc
