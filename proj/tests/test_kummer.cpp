#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heunpc/errors.hpp"
#include "heunpc/kummer.hpp"

using namespace heunpc;

TEST_CASE("1F1 trivial values") {
  // z = 0 is the empty product.
  CHECK(kummer_1f1(Cplx(0.7, 0.2), Cplx(1.3, 0.0), Cplx(0.0, 0.0)).value == Cplx(1.0, 0.0));
  // 1F1(1;1;z) = e^z.
  Cplx v = kummer_1f1(Cplx(1, 0), Cplx(1, 0), Cplx(1, 0)).value;
  CHECK(std::abs(v - Cplx(2.718281828459045, 0.0)) < 1e-14);
  // Terminating: 1F1(-1; 1/2; z) = 1 - 2z.
  Cplx t = kummer_1f1(Cplx(-1, 0), Cplx(0.5, 0), Cplx(2, 0)).value;
  CHECK(std::abs(t - Cplx(-3.0, 0.0)) < 1e-15);
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(kummer_1f1(Cplx(1, 0), Cplx(0, 0), Cplx(1, 0)), DomainError);
  CHECK_THROWS_AS(kummer_1f1(Cplx(1, 0), Cplx(-2, 0), Cplx(1, 0)), DomainError);
  CHECK_THROWS_AS(kummer_1f1(Cplx(1, 0), Cplx(1.5, 0), Cplx(500, 0)), DomainError);
  KummerConfig starved;
  starved.max_terms = 5;
  CHECK_THROWS_AS(kummer_1f1(Cplx(1, 0), Cplx(1.5, 0), Cplx(30, 0), starved), ConvergenceError);
}

TEST_CASE("error estimate bounds the truncation error") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 50; ++i) {
    Cplx a(u(rng), u(rng)), b(u(rng) + 8.0, u(rng)), z(u(rng), u(rng));
    PcfValue v = kummer_1f1(a, b, z);
    KummerConfig deep;
    deep.term_tol = 1e-30;
    deep.max_terms = 4000;
    PcfValue w = kummer_1f1(a, b, z, deep);
    CHECK(std::abs(v.value - w.value) <= v.abs_error + 1e-16 * std::abs(w.value));
  }
}

TEST_CASE("contiguous derivative identity d/dz 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z)") {
  Cplx a(0.4, 0.3), b(1.2, -0.1), z(0.9, 0.5);
  double h = 1e-5;
  Cplx fd = (kummer_1f1(a, b, z + h).value - kummer_1f1(a, b, z - h).value) / (2.0 * h);
  Cplx ladder = a / b * kummer_1f1(a + 1.0, b + 1.0, z).value;
  CHECK(std::abs(fd - ladder) < 1e-9 * (1.0 + std::abs(ladder)));
}

TEST_CASE("Kummer transform 1F1(a;b;z) = e^z 1F1(b-a;b;-z)") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    Cplx a(u(rng), u(rng)), b(u(rng) + 6.0, u(rng)), z(u(rng), u(rng));
    Cplx lhs = kummer_1f1(a, b, z).value;
    Cplx rhs = std::exp(z) * kummer_1f1(b - a, b, -z).value;
    CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("scaled summation survives large positive parameters") {
  // a ~ 600 with moderate z: value ~ e^{2 sqrt(a z)} but intermediate terms larger.
  KummerResult r = kummer_1f1_scaled(Cplx(600.0, 0.0), Cplx(0.5, 0.0), Cplx(15.0, 0.0));
  CHECK(std::isfinite(r.value.log_abs()));
  CHECK(r.rel_error < 1e-10);
}
