#include "heunpc/connection.hpp"

#include <cmath>

#include "heunpc/errors.hpp"

namespace heunpc {

namespace {
const Cplx kI(0.0, 1.0);
}

BhcMatrices bhc_matrices(const BhcData& d) {
  if (std::abs(d.u) < 1e-300 || std::abs(d.yv) < 1e-300)
    throw DegenerateData("bhc_matrices: u and y must be nonzero");
  BhcMatrices m;
  m.A = Matrix2::diag({1.0, 0.0}, {-1.0, 0.0});
  m.B = {d.t, d.u, 2.0 * (d.zv - d.theta0 - d.thetaInf) / d.u, -d.t};
  m.C = {-d.zv + d.theta0, -d.u * d.yv / 2.0, 2.0 * d.zv * (d.zv - 2.0 * d.theta0) / (d.u * d.yv),
         d.zv - d.theta0};
  return m;
}

BhcMatrices bhc_exceptional_matrices(Cplx theta0, Cplx thetaInf, Cplx t, Cplx u, Cplx lambda) {
  if (std::abs(u) < 1e-300) throw DegenerateData("bhc_exceptional_matrices: u must be nonzero");
  BhcMatrices m;
  m.A = Matrix2::diag({1.0, 0.0}, {-1.0, 0.0});
  m.B = {t, u, -2.0 * (theta0 + thetaInf) / u, -t};
  // Limit of C as z, y -> 0 with z/y = lambda.
  m.C = {theta0, {0.0, 0.0}, -4.0 * theta0 * lambda / u, -theta0};
  return m;
}

MatrixFunction bhc_connection_function(const BhcMatrices& m) {
  MatrixFunction f;
  f.value = [m](Cplx x) { return m.A * x + m.B + m.C * (1.0 / x); };
  f.derivative = [m](Cplx x) { return m.A - m.C * (1.0 / (x * x)); };
  return f;
}

MatrixFunction bhc_scalar_gauge_function(Cplx theta0, Cplx thetaInf, Cplx t, Cplx u, Cplx lambda) {
  BhcMatrices m = bhc_exceptional_matrices(theta0, thetaInf, t, u, lambda);
  // Conjugation by G = diag(1/phi, 1), phi = x^{theta0} e^{-tx - x^2/2}:
  // a11 -> a11 - phi'/phi, a12 -> a12/phi, a21 -> a21 phi, a22 -> a22.
  auto log_phi_prime = [theta0, t](Cplx x) { return theta0 / x - t - x; };
  auto phi_at = [theta0, t](Cplx x) {
    return std::pow(x, theta0) * std::exp(-t * x - x * x / 2.0);
  };
  MatrixFunction f;
  f.value = [m, log_phi_prime, phi_at](Cplx x) {
    Matrix2 a = m.A * x + m.B + m.C * (1.0 / x);
    Cplx phi = phi_at(x);
    return Matrix2{a.a11 - log_phi_prime(x), a.a12 / phi, a.a21 * phi, a.a22};
  };
  f.derivative = [m, log_phi_prime, phi_at, theta0](Cplx x) {
    Matrix2 a = m.A * x + m.B + m.C * (1.0 / x);
    Matrix2 ap = m.A - m.C * (1.0 / (x * x));
    Cplx phi = phi_at(x);
    Cplx lp = log_phi_prime(x);
    Cplx lpp = -theta0 / (x * x) - 1.0;
    return Matrix2{ap.a11 - lpp, (ap.a12 - a.a12 * lp) / phi, (ap.a21 + a.a21 * lp) * phi, ap.a22};
  };
  return f;
}

std::pair<Cplx, Cplx> jm_scalar_coeffs(Cplx theta0, Cplx thetaInf, Cplx t, Cplx lambda, Cplx x) {
  Cplx c1 = (2.0 * theta0 - 2.0 * t * x - 2.0 * x * x) / x;
  Cplx c0 = (2.0 * (thetaInf - theta0 - 1.0) * x + 4.0 * theta0 * (lambda - t)) / x;
  return {c1, c0};
}

Cplx stokes_residual(const StokesData& s) {
  Cplx w = std::exp(2.0 * kPi * kI * s.thetaInf);
  Cplx lhs = (1.0 + s.s2 * s.s3) * w +
             (s.s1 * s.s4 + (1.0 + s.s3 * s.s4) * (1.0 + s.s1 * s.s2)) / w;
  Cplx rhs = 2.0 * std::cos(2.0 * kPi * s.theta0);
  return lhs - rhs;
}

std::optional<StokesData> degenerate_stokes_solve(Cplx theta0, Cplx thetaInf, StokesPair which,
                                                  double tol) {
  (void)which;  // both choices collapse the relation the same way
  Cplx gap = 2.0 * std::cos(2.0 * kPi * thetaInf) - 2.0 * std::cos(2.0 * kPi * theta0);
  if (std::abs(gap) > 4.0 * kPi * tol) return std::nullopt;
  StokesData w{};
  w.theta0 = theta0;
  w.thetaInf = thetaInf;
  return w;
}

LocalExponents local_exponents(const CanonicalParams& p) {
  LocalExponents e;
  e.at_zero = {Cplx(0.0, 0.0), -p.alpha};
  Cplx thetaInf = (1.0 + p.gamma_) / 2.0;
  e.at_infinity_log = {thetaInf, -thetaInf};
  return e;
}

}  // namespace heunpc
