#ifndef HEUNPC_CONNECTION_HPP
#define HEUNPC_CONNECTION_HPP

#include <array>
#include <optional>
#include <utility>

#include "heunpc/matrix2.hpp"
#include "heunpc/params.hpp"
#include "heunpc/types.hpp"

namespace heunpc {

/// Data of the Jimbo-Miwa normalized biconfluent Heun connection
/// dPsi/dx = (A x + B + C/x) Psi. yv, zv are the y, z inside the matrices.
struct BhcData {
  Cplx t, u, yv, zv, theta0, thetaInf;
};

struct BhcMatrices {
  Matrix2 A, B, C;
};

/// Throws DegenerateData when u or yv vanishes.
BhcMatrices bhc_matrices(const BhcData& data);

/// The member of the isomonodromy family at the exceptional point
/// z = 0, y = 0, z/y = lambda (where C becomes lower triangular).
BhcMatrices bhc_exceptional_matrices(Cplx theta0, Cplx thetaInf, Cplx t, Cplx u, Cplx lambda);

/// A(x) = A x + B + C/x as a matrix function with analytic derivative.
MatrixFunction bhc_connection_function(const BhcMatrices& m);

/// The exceptional-point connection conjugated by diag(1/phi, 1) with
/// phi = x^{theta0} e^{-t x - x^2/2}; its scalar form is the Jimbo-Miwa BHE.
MatrixFunction bhc_scalar_gauge_function(Cplx theta0, Cplx thetaInf, Cplx t, Cplx u, Cplx lambda);

/// Coefficients (c1, c0) of y'' + c1 y' + c0 y = 0 from the Jimbo-Miwa form
/// x y'' + (2 theta0 - 2tx - 2x^2) y' + (2(thetaInf - theta0 - 1) x + 4 theta0 (lambda - t)) y = 0.
std::pair<Cplx, Cplx> jm_scalar_coeffs(Cplx theta0, Cplx thetaInf, Cplx t, Cplx lambda, Cplx x);

struct StokesData {
  Cplx s1, s2, s3, s4;
  Cplx theta0, thetaInf;
};

/// (1 + s2 s3) e^{2 pi i thetaInf} + [s1 s4 + (1 + s3 s4)(1 + s1 s2)] e^{-2 pi i thetaInf}
///   - 2 cos 2 pi theta0.
Cplx stokes_residual(const StokesData& s);

enum class StokesPair { S13, S24 };

/// Zeroes the chosen Stokes pair; the multiplier relation then collapses to
/// cos 2 pi thetaInf = cos 2 pi theta0, independent of the remaining pair, so
/// the witness returned is the minimal-norm one (all multipliers zero) and
/// the solution set is the full plane in the remaining pair. Returns nullopt
/// (infeasible) when the cosine identity fails beyond tolerance.
std::optional<StokesData> degenerate_stokes_solve(Cplx theta0, Cplx thetaInf, StokesPair which,
                                                  double tol = 1e-9);

struct LocalExponents {
  std::pair<Cplx, Cplx> at_zero;          // 0 and -alpha
  std::pair<Cplx, Cplx> at_infinity_log;  // +-thetaInf
};

LocalExponents local_exponents(const CanonicalParams& p);

}  // namespace heunpc

#endif
