#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heunpc/connection.hpp"
#include "heunpc/errors.hpp"
#include "heunpc/verify.hpp"

using namespace heunpc;

TEST_CASE("triangular limits of the C matrix") {
  BhcData d{{0.3, 0}, {1.2, 0}, {0.8, 0}, {0, 0}, {0.5, 0}, {1.1, 0}};
  SUBCASE("z = 0") {
    BhcMatrices m = bhc_matrices(d);
    CHECK(std::abs(m.C.a21) < 1e-15);
    auto ev = m.C.eigenvalues();
    CHECK(std::abs(ev[0] - d.theta0) < 1e-14);
    CHECK(std::abs(ev[1] + d.theta0) < 1e-14);
  }
  SUBCASE("z = 2 theta0") {
    d.zv = 2.0 * d.theta0;
    BhcMatrices m = bhc_matrices(d);
    CHECK(std::abs(m.C.a21) < 1e-14);
    CHECK(std::abs(m.C.a11 + d.theta0) < 1e-14);
    CHECK(std::abs(m.C.a22 - d.theta0) < 1e-14);
  }
}

TEST_CASE("matrix identities over random data") {
  CHECK(verify::checks::connection_identities(0).pass);
  BhcData bad{{0, 0}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}};
  CHECK_THROWS_AS(bhc_matrices(bad), DegenerateData);
}

TEST_CASE("stokes residual pinned values") {
  StokesData zero{};
  zero.theta0 = Cplx(0.37, 0);
  zero.thetaInf = Cplx(0.37, 0);
  CHECK(std::abs(stokes_residual(zero)) < 1e-14);

  // theta0 + thetaInf = 1 makes both cosines equal.
  StokesData s2{};
  s2.theta0 = Cplx(0.25, 0);
  s2.thetaInf = Cplx(0.75, 0);
  CHECK(std::abs(stokes_residual(s2)) < 1e-14);

  StokesData s3{};
  s3.theta0 = Cplx(0.1, 0);
  s3.thetaInf = Cplx(0.3, 0);
  Cplx expect = 2.0 * std::cos(Cplx(0.6 * kPi, 0)) - 2.0 * std::cos(Cplx(0.2 * kPi, 0));
  CHECK(std::abs(stokes_residual(s3) + expect) > 1e-2);  // nonzero
  CHECK(std::abs(stokes_residual(s3) - (-expect)) > 1e-2);
  CHECK(std::abs(stokes_residual(s3)) > 1e-2);
}

TEST_CASE("stokes residual invariant under theta0 -> -theta0") {
  StokesData s{};
  s.s1 = Cplx(0.3, 0.1);
  s.s2 = Cplx(-0.2, 0.4);
  s.s3 = Cplx(0.1, -0.5);
  s.s4 = Cplx(0.7, 0.2);
  s.theta0 = Cplx(0.42, 0.13);
  s.thetaInf = Cplx(-0.8, 0.05);
  StokesData flipped = s;
  flipped.theta0 = -s.theta0;
  CHECK(std::abs(stokes_residual(s) - stokes_residual(flipped)) < 1e-14);
}

TEST_CASE("degenerate stokes solve") {
  // Feasible: integral sum, witness with all remaining multipliers zero.
  auto w = degenerate_stokes_solve(Cplx(0.25, 0), Cplx(0.75, 0), StokesPair::S13);
  REQUIRE(w.has_value());
  CHECK(w->s1 == Cplx(0, 0));
  CHECK(w->s2 == Cplx(0, 0));
  CHECK(std::abs(stokes_residual(*w)) < 1e-12);

  CHECK_FALSE(degenerate_stokes_solve(Cplx(0.1, 0), Cplx(0.3, 0), StokesPair::S13).has_value());
  CHECK(degenerate_stokes_solve(Cplx(0.37, 0), Cplx(0.37, 0), StokesPair::S24).has_value());
}

TEST_CASE("degeneration grid matches the integral predicate") {
  CHECK(verify::checks::stokes_grid().pass);
}

TEST_CASE("local exponents") {
  auto e0 = local_exponents({{0, 0}, {0, 0}, {2, 0}, {0, 0}});
  CHECK(e0.at_zero.first == Cplx(0, 0));
  CHECK(e0.at_zero.second == Cplx(0, 0));
  CHECK(std::abs(e0.at_infinity_log.first - Cplx(1.5, 0)) < 1e-15);
  CHECK(std::abs(e0.at_infinity_log.second + Cplx(1.5, 0)) < 1e-15);

  auto e1 = local_exponents({{-3, 0}, {0, 0}, {0, 0}, {0, 0}});
  CHECK(std::abs(e1.at_zero.second - Cplx(3, 0)) < 1e-15);
}

TEST_CASE("exceptional-point scalar form equals the Jimbo-Miwa coefficients") {
  CHECK(verify::checks::connection_scalar_match(0).pass);
}
