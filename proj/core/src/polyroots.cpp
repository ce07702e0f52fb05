#include "heunpc/polyroots.hpp"

#include <algorithm>
#include <cmath>

#include "heunpc/errors.hpp"

namespace heunpc {

namespace {

// Eigenvalues of an upper Hessenberg complex matrix by single-shift QR with
// Givens rotations. Sizes here are tiny (degree N+1 <= ~12).
std::vector<Cplx> hessenberg_eigenvalues(std::vector<std::vector<Cplx>> h) {
  const int n = int(h.size());
  std::vector<Cplx> eig(static_cast<size_t>(n));
  int m = n;
  int iter_total = 0;
  const int iter_cap = 80 * n + 200;

  auto subdiag_small = [&](int k) {
    double s = std::abs(h[size_t(k - 1)][size_t(k - 1)]) + std::abs(h[size_t(k)][size_t(k)]);
    if (s == 0.0) s = 1.0;
    return std::abs(h[size_t(k)][size_t(k - 1)]) <= 1e-16 * s;
  };

  while (m > 0) {
    if (m == 1) {
      eig[size_t(m - 1)] = h[0][0];
      --m;
      continue;
    }
    if (subdiag_small(m - 1)) {
      eig[size_t(m - 1)] = h[size_t(m - 1)][size_t(m - 1)];
      --m;
      continue;
    }
    if (++iter_total > iter_cap)
      throw RootFindError("poly_roots: QR iteration failed to converge");

    // Wilkinson shift from the trailing 2x2 block.
    Cplx a = h[size_t(m - 2)][size_t(m - 2)], b = h[size_t(m - 2)][size_t(m - 1)];
    Cplx c = h[size_t(m - 1)][size_t(m - 2)], d = h[size_t(m - 1)][size_t(m - 1)];
    Cplx tr = a + d, det = a * d - b * c;
    Cplx disc = std::sqrt(tr * tr - 4.0 * det);
    Cplx mu1 = (tr + disc) / 2.0, mu2 = (tr - disc) / 2.0;
    Cplx mu = (std::abs(mu1 - d) < std::abs(mu2 - d)) ? mu1 : mu2;
    if (iter_total % 17 == 0) mu += Cplx(0.31, 0.17) * std::abs(h[size_t(m - 1)][size_t(m - 2)]);

    for (int i = 0; i < m; ++i) h[size_t(i)][size_t(i)] -= mu;

    // QR by Givens on the active m x m block, then RQ.
    std::vector<Cplx> cs(size_t(m - 1)), sn(size_t(m - 1));
    for (int k = 0; k < m - 1; ++k) {
      Cplx f = h[size_t(k)][size_t(k)], g = h[size_t(k + 1)][size_t(k)];
      double norm = std::hypot(std::abs(f), std::abs(g));
      if (norm == 0.0) {
        cs[size_t(k)] = 1.0;
        sn[size_t(k)] = 0.0;
        continue;
      }
      Cplx cc = f / norm, ss = g / norm;
      cs[size_t(k)] = cc;
      sn[size_t(k)] = ss;
      for (int j = k; j < m; ++j) {
        Cplx t1 = h[size_t(k)][size_t(j)], t2 = h[size_t(k + 1)][size_t(j)];
        h[size_t(k)][size_t(j)] = std::conj(cc) * t1 + std::conj(ss) * t2;
        h[size_t(k + 1)][size_t(j)] = -ss * t1 + cc * t2;
      }
    }
    for (int k = 0; k < m - 1; ++k) {
      int top = std::min(k + 2, m - 1);
      for (int i = 0; i <= top; ++i) {
        Cplx t1 = h[size_t(i)][size_t(k)], t2 = h[size_t(i)][size_t(k + 1)];
        h[size_t(i)][size_t(k)] = t1 * cs[size_t(k)] + t2 * sn[size_t(k)];
        h[size_t(i)][size_t(k + 1)] = -t1 * std::conj(sn[size_t(k)]) + t2 * std::conj(cs[size_t(k)]);
      }
    }
    for (int i = 0; i < m; ++i) h[size_t(i)][size_t(i)] += mu;
  }
  return eig;
}

Cplx horner(const std::vector<Cplx>& c, Cplx x, Cplx* dp = nullptr) {
  Cplx p(0.0, 0.0), d(0.0, 0.0);
  for (int i = int(c.size()) - 1; i >= 0; --i) {
    d = d * x + p;
    p = p * x + c[size_t(i)];
  }
  if (dp) *dp = d;
  return p;
}

}  // namespace

std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs_in) {
  std::vector<Cplx> c = coeffs_in;
  while (!c.empty() && c.back() == Cplx()) c.pop_back();
  if (c.size() <= 1) throw RootFindError("poly_roots: polynomial is constant");

  std::vector<Cplx> roots;
  size_t zero_roots = 0;
  while (zero_roots + 1 < c.size() && c[zero_roots] == Cplx()) ++zero_roots;
  roots.assign(zero_roots, Cplx(0.0, 0.0));
  std::vector<Cplx> p(c.begin() + long(zero_roots), c.end());

  const int n = int(p.size()) - 1;
  if (n == 1) {
    roots.push_back(-p[0] / p[1]);
  } else if (n == 2) {
    Cplx a = p[2], b = p[1], cc = p[0];
    Cplx disc = std::sqrt(b * b - 4.0 * a * cc);
    if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
    Cplx q = -(b + disc) / 2.0;
    roots.push_back(q / a);
    roots.push_back(std::abs(q) > 0 ? cc / q : Cplx(0.0, 0.0));
  } else if (n >= 3) {
    // Scale the variable so root magnitudes are O(1).
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      double mk = std::abs(p[size_t(k)] / p[size_t(n)]);
      if (mk > 0.0) s = std::max(s, std::pow(mk, 1.0 / double(n - k)));
    }
    if (s <= 0.0 || !std::isfinite(s)) s = 1.0;
    // Substitute x = s y: q_k = (p_k / p_n) / s^{n-k}, monic in y.
    std::vector<Cplx> q(p.size());
    double sk = 1.0;
    for (int k = n; k >= 0; --k) {
      q[size_t(k)] = p[size_t(k)] / p[size_t(n)] / sk;
      sk *= s;
    }

    std::vector<std::vector<Cplx>> h(static_cast<size_t>(n), std::vector<Cplx>(static_cast<size_t>(n), Cplx{}));
    for (int i = 1; i < n; ++i) h[size_t(i)][size_t(i - 1)] = 1.0;
    for (int i = 0; i < n; ++i) h[size_t(i)][size_t(n - 1)] = -q[size_t(i)];

    for (Cplx y : hessenberg_eigenvalues(std::move(h))) roots.push_back(y * s);
  }

  // Newton polish on the original coefficients.
  for (auto& r : roots) {
    for (int it = 0; it < 4; ++it) {
      Cplx d;
      Cplx v = horner(c, r, &d);
      if (std::abs(d) < 1e-300) break;
      Cplx step = v / d;
      if (!is_finite(step)) break;
      r -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
    }
  }

  std::sort(roots.begin(), roots.end(), [](Cplx a, Cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

}  // namespace heunpc
