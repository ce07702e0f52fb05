#ifndef HEUNPC_MATRIX2_HPP
#define HEUNPC_MATRIX2_HPP

#include <array>
#include <cmath>
#include <functional>

#include "heunpc/types.hpp"

namespace heunpc {

struct Matrix2 {
  Cplx a11{0.0, 0.0}, a12{0.0, 0.0}, a21{0.0, 0.0}, a22{0.0, 0.0};

  static Matrix2 identity() { return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }
  static Matrix2 diag(Cplx a, Cplx b) { return {a, {0.0, 0.0}, {0.0, 0.0}, b}; }

  Cplx det() const { return a11 * a22 - a12 * a21; }
  Cplx trace() const { return a11 + a22; }

  Matrix2 operator+(const Matrix2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Matrix2 operator-(const Matrix2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  Matrix2 operator*(const Matrix2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Matrix2 operator*(Cplx s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

  Matrix2 inverse() const {
    Cplx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  double norm() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
  }

  /// Eigenvalues, by the quadratic formula on the characteristic polynomial.
  std::array<Cplx, 2> eigenvalues() const {
    Cplx tr = trace();
    Cplx disc = std::sqrt(tr * tr - 4.0 * det());
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
  }
};

/// A pointwise matrix-valued function; derivative optional (finite differences
/// with Richardson extrapolation otherwise).
struct MatrixFunction {
  std::function<Matrix2(Cplx)> value;
  std::function<Matrix2(Cplx)> derivative;  // may be empty

  Matrix2 d(Cplx x, double h = 1e-5) const {
    if (derivative) return derivative(x);
    Matrix2 f1 = value(x + Cplx(h, 0.0)), fm1 = value(x - Cplx(h, 0.0));
    Matrix2 f2 = value(x + Cplx(2.0 * h, 0.0)), fm2 = value(x - Cplx(2.0 * h, 0.0));
    return (f1 - fm1) * (8.0 / (12.0 * h)) - (f2 - fm2) * (1.0 / (12.0 * h));
  }
};

}  // namespace heunpc

#endif
