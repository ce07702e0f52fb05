#ifndef HEUNPC_TYPES_HPP
#define HEUNPC_TYPES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace heunpc {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// A special-function value together with a conservative absolute error bound.
struct PcfValue {
  Cplx value{0.0, 0.0};
  double abs_error = 0.0;
};

/// Complex order of a parabolic cylinder function.
struct PcfOrder {
  Cplx nu{0.0, 0.0};
};

enum class PcfKind { D, E };

/// Complex number carried as m * 2^e so that factorial-type growth in
/// coefficient streams and PCF magnitudes does not hit the double range.
struct ScaledComplex {
  Cplx m{0.0, 0.0};
  std::int64_t e = 0;

  static ScaledComplex zero() { return {}; }

  static ScaledComplex from(Cplx v) {
    ScaledComplex s{v, 0};
    s.normalize();
    return s;
  }

  bool is_zero() const { return m == Cplx(0.0, 0.0); }

  void normalize() {
    double a = std::max(std::fabs(m.real()), std::fabs(m.imag()));
    if (a == 0.0 || !std::isfinite(a)) {
      e = 0;
      return;
    }
    int k = std::ilogb(a);
    if (k != 0) {
      m = Cplx(std::ldexp(m.real(), -k), std::ldexp(m.imag(), -k));
      e += k;
    }
  }

  ScaledComplex operator*(const ScaledComplex& o) const {
    ScaledComplex r{m * o.m, e + o.e};
    r.normalize();
    return r;
  }

  ScaledComplex operator*(Cplx c) const {
    ScaledComplex r{m * c, e};
    r.normalize();
    return r;
  }

  ScaledComplex operator+(const ScaledComplex& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // Align to the larger exponent; the smaller summand is lost beyond ~60 bits.
    if (e >= o.e) {
      std::int64_t d = e - o.e;
      ScaledComplex r{m, e};
      if (d < 1080) r.m += Cplx(std::ldexp(o.m.real(), -int(d)), std::ldexp(o.m.imag(), -int(d)));
      r.normalize();
      return r;
    }
    return o + *this;
  }

  ScaledComplex operator-() const { return {-m, e}; }

  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(m)) + double(e) * kLn2;
  }

  /// Collapses to a double-range complex; ±inf/0 on exponent overflow.
  Cplx to_cplx() const {
    if (is_zero()) return {0.0, 0.0};
    if (e > 1023) return {std::numeric_limits<double>::infinity(), 0.0};
    if (e < -1073) return {0.0, 0.0};
    return Cplx(std::ldexp(m.real(), int(e)), std::ldexp(m.imag(), int(e)));
  }
};

/// exp(w) as a scaled complex; well-defined for |Re w| far beyond 709.
inline ScaledComplex scaled_exp(Cplx w) {
  double k = std::floor(w.real() / kLn2);
  if (!std::isfinite(k)) k = 0.0;
  Cplx red(w.real() - k * kLn2, w.imag());
  ScaledComplex r{std::exp(red), std::int64_t(k)};
  r.normalize();
  return r;
}

}  // namespace heunpc

#endif
