#include "heunpc/gamma.hpp"

#include <array>
#include <cmath>

#include "heunpc/errors.hpp"

namespace heunpc {

namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms. Good to ~1e-15
// relative on the right half-plane.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

constexpr double kSqrt2Pi = 2.506628274631000502415765284811;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

Cplx lanczos_sum(Cplx z) {
  // z >= 0.5 assumed; series in 1/(z+k).
  Cplx s(kLanczos[0], 0.0);
  for (std::size_t k = 1; k < kLanczos.size(); ++k) s += kLanczos[k] / (z + double(k - 1));
  return s;
}

Cplx gamma_right(Cplx z) {
  // Gamma(z) for Re z >= 0.5.
  Cplx base = z + (kLanczosG - 0.5);
  return kSqrt2Pi * std::pow(base, z - 0.5) * std::exp(-base) * lanczos_sum(z);
}

Cplx log_gamma_right(Cplx z) {
  Cplx base = z + (kLanczosG - 0.5);
  return kLogSqrt2Pi + (z - 0.5) * std::log(base) - base + std::log(lanczos_sum(z));
}

// log(sin(pi z)) stable for large |Im z|.
Cplx log_sin_pi(Cplx z) {
  double im = z.imag();
  if (std::fabs(im) < 12.0) return std::log(sin_pi(z));
  // sin(pi z) = -exp(-i pi z) (1 - exp(2 i pi z)) / (2 i), take the branch
  // with decaying exponential.
  const Cplx i(0.0, 1.0);
  double m = std::round(z.real());
  Cplx w = z - m;  // exp(+-2 i pi z) = exp(+-2 i pi w)
  if (im > 0) {
    // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) * (i/2)
    return -i * kPi * (w + m) + std::log(Cplx(0.0, 0.5)) + std::log(1.0 - std::exp(Cplx(0.0, 2.0 * kPi) * w));
  }
  // sin(pi z) = e^{i pi z} (1 - e^{-2 i pi z}) / (2i)
  return i * kPi * (w + m) - std::log(Cplx(0.0, 2.0)) + std::log(1.0 - std::exp(Cplx(0.0, -2.0 * kPi) * w));
}

}  // namespace

Cplx sin_pi(Cplx z) {
  double m = std::round(z.real());
  Cplx w(z.real() - m, z.imag());
  Cplx s = std::sin(kPi * w);
  return (std::fmod(m, 2.0) == 0.0) ? s : -s;
}

Cplx cos_pi(Cplx z) {
  double m = std::round(z.real());
  Cplx w(z.real() - m, z.imag());
  Cplx c = std::cos(kPi * w);
  return (std::fmod(m, 2.0) == 0.0) ? c : -c;
}

bool is_nonpositive_integer(Cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

Cplx gamma(Cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleError("gamma: pole at z = " + std::to_string(z.real()));
  if (z.real() >= 0.5) return gamma_right(z);
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  return kPi / (sin_pi(z) * gamma_right(1.0 - z));
}

PcfValue gamma_value(Cplx z) {
  Cplx g = gamma(z);
  double rel = 5e-15;
  if (z.real() < 0.5) {
    // Reflection loses accuracy near poles; scale by the sin-pi sensitivity.
    double d = std::abs(sin_pi(z));
    rel = 5e-15 * (1.0 + 1e-1 / std::max(d, 1e-14));
  }
  return {g, std::abs(g) * rel};
}

Cplx rgamma(Cplx z) {
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  if (z.real() >= 0.5) return 1.0 / gamma_right(z);
  return sin_pi(z) * gamma_right(1.0 - z) / kPi;
}

Cplx log_gamma(Cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_right(z);
  return std::log(Cplx(kPi, 0.0)) - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

}  // namespace heunpc
