#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heunpc/errors.hpp"
#include "heunpc/gamma.hpp"

using namespace heunpc;

TEST_CASE("gamma at classical points") {
  CHECK(std::abs(gamma(Cplx(1.0, 0.0)) - Cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(gamma(Cplx(0.5, 0.0)) - Cplx(1.7724538509055160273, 0.0)) < 1e-13);
  CHECK(std::abs(gamma(Cplx(5.0, 0.0)) - Cplx(24.0, 0.0)) < 1e-12);
}

TEST_CASE("gamma pole handling") {
  CHECK_THROWS_AS(gamma(Cplx(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS(gamma(Cplx(-3.0, 0.0)), PoleError);
  CHECK(rgamma(Cplx(0.0, 0.0)) == Cplx(0.0, 0.0));
  CHECK(rgamma(Cplx(-7.0, 0.0)) == Cplx(0.0, 0.0));
  CHECK(std::abs(rgamma(Cplx(3.0, 0.0)) - Cplx(0.5, 0.0)) < 1e-14);
}

TEST_CASE("functional equation Gamma(z+1) = z Gamma(z)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 300; ++i) {
    Cplx z(u(rng), u(rng));
    if (std::abs(z.real() - std::round(z.real())) < 0.05 && std::fabs(z.imag()) < 0.05) continue;
    Cplx lhs = gamma(z + 1.0);
    Cplx rhs = z * gamma(z);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("real axis agrees with std::lgamma") {
  for (double x = 0.5; x <= 50.0; x += 0.37) {
    double mine = log_gamma(Cplx(x, 0.0)).real();
    CHECK(std::fabs(mine - std::lgamma(x)) <= 1e-13 * (1.0 + std::fabs(std::lgamma(x))));
  }
}

TEST_CASE("reflection formula off the real axis") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int i = 0; i < 100; ++i) {
    Cplx z(u(rng), u(rng) + 0.3);
    Cplx lhs = gamma(z) * gamma(1.0 - z);
    Cplx rhs = kPi / sin_pi(z);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
  }
}

TEST_CASE("log_gamma exponentiates to gamma for large arguments") {
  for (double x : {80.0, 140.5, 251.25}) {
    Cplx lg = log_gamma(Cplx(x, 2.0));
    Cplx direct = log_gamma(Cplx(x, 2.0) + 1.0) - std::log(Cplx(x, 2.0));
    CHECK(std::abs(lg - direct) < 1e-10 * (1.0 + std::abs(lg)));
  }
}
