#ifndef HEUNPC_POLY_HPP
#define HEUNPC_POLY_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "heunpc/types.hpp"

namespace heunpc {

/// Dense complex polynomial, coefficients in ascending powers.
struct Poly {
  std::vector<Cplx> c;

  Poly() = default;
  explicit Poly(std::vector<Cplx> coeffs) : c(std::move(coeffs)) {}
  static Poly constant(Cplx v) { return Poly({v}); }

  int degree() const {
    for (int i = int(c.size()) - 1; i >= 0; --i)
      if (c[size_t(i)] != Cplx()) return i;
    return -1;
  }

  Cplx eval(Cplx x) const {
    Cplx r(0.0, 0.0);
    for (int i = int(c.size()) - 1; i >= 0; --i) r = r * x + c[size_t(i)];
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    return *this;
  }

  Poly operator*(Cplx s) const {
    Poly r = *this;
    for (auto& v : r.c) v *= s;
    return r;
  }

  /// x * p(x)
  Poly shifted_up() const {
    Poly r;
    r.c.resize(c.size() + 1);
    for (size_t i = 0; i < c.size(); ++i) r.c[i + 1] = c[i];
    return r;
  }

  double max_abs() const {
    double m = 0.0;
    for (auto& v : c) m = std::max(m, std::abs(v));
    return m;
  }

  /// Drops coefficients below tol * max|c| (floating-point residue control).
  void prune(double rel_tol = 1e-13) {
    double cut = max_abs() * rel_tol;
    for (auto& v : c)
      if (std::abs(v) < cut) v = Cplx(0.0, 0.0);
    while (!c.empty() && c.back() == Cplx()) c.pop_back();
  }

  bool approx_equal(const Poly& p, double tol) const {
    size_t n = std::max(c.size(), p.c.size());
    for (size_t i = 0; i < n; ++i) {
      Cplx a = i < c.size() ? c[i] : Cplx();
      Cplx b = i < p.c.size() ? p.c[i] : Cplx();
      if (std::abs(a - b) > tol) return false;
    }
    return true;
  }
};

inline Poly operator+(Poly a, const Poly& b) {
  a += b;
  return a;
}

}  // namespace heunpc

#endif
