#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heunpc/errors.hpp"
#include "heunpc/polyroots.hpp"
#include "heunpc/spectra.hpp"
#include "heunpc/verify.hpp"

using namespace heunpc;

TEST_CASE("tridiagonal coefficients from the recursion") {
  // (b,c,e) = (0,1,2), N = 1.
  auto sys = build_tridiagonal({{0, 0}, {1, 0}, {0, 0}, {2, 0}}, 1);
  CHECK(std::abs(sys.sub(1) - Cplx(-std::sqrt(2.0), 0)) < 1e-15);
  CHECK(sys.diag_const(0) == Cplx(0, 0));
  CHECK(sys.diag_const(1) == Cplx(0, 0));
  CHECK(std::abs(sys.sup(0) - Cplx(-std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(sys.sup(1) - Cplx(-2.0 * std::sqrt(2.0), 0)) < 1e-15);
}

TEST_CASE("termination zeroes the first out-of-range sub-coefficient") {
  // c = -N: the factor (n + c - 1) vanishes at n = N + 1.
  auto sys_c = build_tridiagonal({{0.3, 0}, {-2, 0}, {0, 0}, {0.7, 0.1}}, 2);
  CHECK(std::abs(sys_c.sub(3)) < 1e-14);
  // e = 2N: the factor (e/2 - n + 1) vanishes at n = N + 1.
  auto sys_e = build_tridiagonal({{0.3, 0}, {0.4, 0.2}, {0, 0}, {4, 0}}, 2);
  CHECK(std::abs(sys_e.sub(3)) < 1e-14);
  CHECK_THROWS_AS(build_tridiagonal({{0, 0}, {2, 0}, {0, 0}, {5, 0}}, 1), CriterionError);
}

TEST_CASE("N = 0 eigenvalue is zero") {
  auto sys = build_tridiagonal({{0.2, 0}, {0, 0}, {0, 0}, {3, 0}}, 0);
  auto ev = eigenvalues_d(sys);
  REQUIRE(ev.size() == 1);
  CHECK(std::abs(ev[0]) < 1e-15);
  auto pair = eigen_coeffs(sys, ev[0]);
  REQUIRE(pair.coeffs.size() == 1);
  CHECK(pair.coeffs[0] == Cplx(1, 0));
}

TEST_CASE("N = 1 closed form") {
  auto sys = build_tridiagonal({{0, 0}, {1, 0}, {0, 0}, {2, 0}}, 1);
  auto ev = eigenvalues_d(sys);
  REQUIRE(ev.size() == 2);
  CHECK(std::abs(ev[0] + std::sqrt(Cplx(2, 0))) < 1e-14);
  CHECK(std::abs(ev[1] - std::sqrt(Cplx(2, 0))) < 1e-14);
  auto pair = eigen_coeffs(sys, ev[1]);
  CHECK(std::abs(pair.coeffs[1] - Cplx(1, 0)) < 1e-13);  // A1 = d/sqrt2 = 1
  CHECK_THROWS_AS(eigen_coeffs(sys, Cplx(0.3, 0.0)), NotAnEigenvalue);
  CHECK(verify::checks::spectra_quadratic(0).pass);
}

TEST_CASE("characteristic polynomial matches direct expansion for N = 1") {
  GeneralParams g{{0.7, -0.2}, {-1, 0}, {0, 0}, {1.3, 0.4}};
  auto sys = build_tridiagonal(g, 1);
  auto poly = characteristic_polynomial(sys);
  REQUIRE(poly.size() == 3);
  // d(d + b) - c e
  CHECK(std::abs(poly[2] - Cplx(1, 0)) < 1e-15);
  CHECK(std::abs(poly[1] - g.b) < 1e-15);
  CHECK(std::abs(poly[0] - (-g.c * g.e)) < 1e-13);
}

TEST_CASE("polynomial root finder handles clustered and scaled roots") {
  // (x - 1)^2 (x + 2) = x^3 - 3x + 2
  auto r = poly_roots({{2, 0}, {-3, 0}, {0, 0}, {1, 0}});
  REQUIRE(r.size() == 3);
  CHECK(std::abs(r[0] + 2.0) < 1e-9);
  CHECK(std::abs(r[1] - 1.0) < 2e-6);  // double root: sqrt(eps) accuracy expected
  CHECK(std::abs(r[2] - 1.0) < 2e-6);
  // Wide dynamic range.
  auto s = poly_roots({{-1e8, 0}, {0, 0}, {1e-4, 0}});
  for (auto root : s) CHECK(std::abs(std::abs(root) - 1e6) < 1.0);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Cplx> roots;
    std::vector<Cplx> coeffs{{1, 0}};
    for (int k = 0; k < 6; ++k) {
      Cplx root(u(rng), u(rng));
      roots.push_back(root);
      std::vector<Cplx> next(coeffs.size() + 1, Cplx(0, 0));
      for (size_t i = 0; i < coeffs.size(); ++i) {
        next[i + 1] += coeffs[i];
        next[i] -= root * coeffs[i];
      }
      coeffs = next;
    }
    auto found = poly_roots(coeffs);
    for (Cplx root : roots) {
      double best = 1e300;
      for (Cplx f : found) best = std::min(best, std::abs(f - root));
      CHECK(best < 1e-7);
    }
  }
}

TEST_CASE("closure residual and its sharpness") { CHECK(verify::checks::spectra_closure(0).pass); }

TEST_CASE("eigenvalue count is N + 1 with multiplicity") {
  for (int N = 0; N <= 6; ++N) {
    GeneralParams p{{0.2, 0.4}, {-double(N), 0.0}, {0, 0}, {1.1, -0.6}};
    auto ev = eigenvalues_d(build_tridiagonal(p, N));
    CHECK(int(ev.size()) == N + 1);
  }
}

TEST_CASE("Rovder reality for alpha + 1 > 0") { CHECK(verify::checks::spectra_rovder(0).pass); }

TEST_CASE("operator sub-diagonal on the invariant basis") {
  CHECK(verify::checks::spectra_invariant_coeff().pass);
}

TEST_CASE("case-I solution with c = 0, d = 0 is e^{x^2/4} D_{e/2}") {
  GeneralParams g{{0.5, 0}, {0, 0}, {0, 0}, {1.7, 0.3}};
  CanonicalParams p = general_to_canonical(g);
  auto fam = solve_family(CaseTag::I, p, 0);
  REQUIRE(fam.size() == 1);
  CanonicalParams pr = p;
  pr.delta = fam[0].delta;
  for (Cplx z : sample_circle(0.8, 6, 1))
    CHECK(bhe_residual(fam[0], pr, z) < 1e-9);
  // Against the bare PCF value.
  Cplx z(0.4, -0.2);
  Cplx x = fam[0].argument(z);
  Cplx direct = std::exp(x * x / 4.0) * pcf_d({g.e / 2.0}, x).value;
  CHECK(std::abs(fam[0].eval(z).value - direct) < 1e-12);
}

TEST_CASE("eigen-solution residuals, all four cases") {
  CHECK(verify::checks::spectra_case_residuals(0).pass);
}

TEST_CASE("case II equals z^{-alpha} times the mapped case-I solution") {
  GeneralParams target{{0.4, 0}, {-2, 0}, {0, 0}, {1.1, 0.2}};
  CanonicalParams mapped = general_to_canonical(target);
  CanonicalParams p{-mapped.alpha, mapped.beta, mapped.gamma_, mapped.delta};
  auto fam2 = solve_family(CaseTag::II, p, 2);
  auto fam1 = solve_family(CaseTag::I, mapped, 2);
  REQUIRE(fam2.size() == fam1.size());
  for (size_t j = 0; j < fam2.size(); ++j) {
    Cplx z(0.8, 0.5);
    Cplx lhs = fam2[j].eval(z).value;
    Cplx rhs = std::pow(z, -p.alpha) * fam1[j].eval(z).value;
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("perturbed accessory parameter breaks the residual") {
  GeneralParams g{{0.4, 0}, {-2, 0}, {0, 0}, {1.3, 0.2}};
  CanonicalParams p = general_to_canonical(g);
  auto fam = solve_family(CaseTag::I, p, 2);
  CanonicalParams offp = p;
  offp.delta = fam[0].delta + 0.1;
  double r = bhe_residual(fam[0], offp, Cplx(0.7, 0.3));
  CHECK(r > 1e-3);
}

TEST_CASE("Hermite reduction of e = 2N solutions") {
  CHECK(verify::checks::spectra_hermite_fit(0).pass);
}

TEST_CASE("kind-E solutions satisfy the same residual contract") {
  GeneralParams g{{0.3, 0}, {-3, 0}, {0, 0}, {0.9, 0.45}};
  CanonicalParams p = general_to_canonical(g);
  auto fam = solve_family(CaseTag::I, p, 3, PcfKind::E);
  for (const auto& sol : fam) {
    CanonicalParams pr = p;
    pr.delta = sol.delta;
    for (Cplx z : sample_circle(1.2, 5, 2)) CHECK(bhe_residual(sol, pr, z) < 1e-8);
  }
}

TEST_CASE("bhe_residual guards the origin") {
  GeneralParams g{{0.4, 0}, {-2, 0}, {0, 0}, {1.3, 0.2}};
  CanonicalParams p = general_to_canonical(g);
  auto fam = solve_family(CaseTag::I, p, 2);
  CHECK_THROWS_AS(bhe_residual(fam[0], p, Cplx(0, 0)), EvalError);
}
