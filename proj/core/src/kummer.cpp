#include "heunpc/kummer.hpp"

#include <cmath>

#include "heunpc/errors.hpp"
#include "heunpc/gamma.hpp"

namespace heunpc {

namespace {

bool is_exact_nonpositive_int(Cplx z) { return is_nonpositive_integer(z); }

}  // namespace

KummerResult kummer_1f1_scaled(Cplx a, Cplx b, Cplx z, const KummerConfig& cfg) {
  if (is_exact_nonpositive_int(b))
    throw DomainError("kummer_1f1: b is a non-positive integer");
  if (std::abs(z) > cfg.series_radius)
    throw DomainError("kummer_1f1: |z| exceeds the configured series radius");

  const bool terminating = is_exact_nonpositive_int(a);
  const double kmax_terminating = terminating ? -a.real() : 0.0;

  // Kahan-compensated sum carried with a shared power-of-two scale.
  Cplx sum(1.0, 0.0);
  Cplx comp(0.0, 0.0);
  Cplx term(1.0, 0.0);
  std::int64_t scale = 0;
  double abs_acc = 1.0;  // sum of |term| at the current scale, for rounding bound

  int small_streak = 0;
  int k = 0;
  double tail_rel = 0.0;
  bool converged = terminating && kmax_terminating == 0.0;

  while (!converged && k < cfg.max_terms) {
    Cplx factor = (a + double(k)) / (b + double(k)) * z / double(k + 1);
    term *= factor;
    ++k;
    if (terminating && double(k) > kmax_terminating) {
      converged = true;
      break;
    }
    Cplx y = term - comp;
    Cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    abs_acc += std::abs(term);

    double mag = std::abs(term);
    double smag = std::abs(sum);
    if (mag <= cfg.term_tol * std::max(smag, 1e-300)) {
      if (++small_streak >= 3) {
        // Geometric tail: the term ratio is eventually dominated by
        // |z| (k+|a|) / ((k+1)(k-|b|)).
        double kk = double(k);
        double denom = (kk + 1.0) * std::max(kk - std::abs(b), 1.0);
        double rho = std::abs(z) * (kk + std::abs(a)) / denom;
        if (rho < 0.9) {
          tail_rel = mag / std::max(smag, 1e-300) * rho / (1.0 - rho);
          converged = true;
        }
      }
    } else {
      small_streak = 0;
    }

    if (std::abs(sum.real()) > 1e280 || std::abs(sum.imag()) > 1e280 || abs_acc > 1e280) {
      sum *= 0x1p-512;
      comp *= 0x1p-512;
      term *= 0x1p-512;
      abs_acc *= 0x1p-512;
      scale += 512;
    }
  }

  if (!converged)
    throw ConvergenceError("kummer_1f1: tail bound not met within max terms");

  KummerResult r;
  r.value = ScaledComplex{sum, scale};
  r.value.normalize();
  r.terms = k;
  double smag = std::abs(sum);
  double rounding = (smag > 0.0) ? (abs_acc / smag) * double(k + 2) * 1.1e-16 : 0.0;
  r.rel_error = tail_rel + rounding;
  return r;
}

PcfValue kummer_1f1(Cplx a, Cplx b, Cplx z, const KummerConfig& cfg) {
  KummerResult r = kummer_1f1_scaled(a, b, z, cfg);
  Cplx v = r.value.to_cplx();
  return {v, std::abs(v) * r.rel_error};
}

}  // namespace heunpc
