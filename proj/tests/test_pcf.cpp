#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heunpc/errors.hpp"
#include "heunpc/pcf.hpp"
#include "heunpc/verify.hpp"

using namespace heunpc;

namespace {

Cplx fd4(const std::function<Cplx(Cplx)>& f, Cplx x, double h) {
  return (f(x + Cplx(h, 0)) - f(x - Cplx(h, 0))) * (8.0 / (12.0 * h)) -
         (f(x + Cplx(2 * h, 0)) - f(x - Cplx(2 * h, 0))) * (1.0 / (12.0 * h));
}

}  // namespace

TEST_CASE("closed forms D0 and D1") {
  // D0(2) = e^{-1}, D1(1) = e^{-1/4}.
  CHECK(std::abs(pcf_d({{0, 0}}, Cplx(2, 0)).value - Cplx(0.36787944117144233, 0)) < 1e-14);
  CHECK(std::abs(pcf_d({{1, 0}}, Cplx(1, 0)).value - Cplx(0.7788007830714049, 0)) < 1e-14);
  // D2(x) = (x^2 - 1) e^{-x^2/4}.
  Cplx x(0.7, -0.4);
  Cplx expect = (x * x - 1.0) * std::exp(-x * x / 4.0);
  CHECK(std::abs(pcf_d({{2, 0}}, x).value - expect) < 1e-13);
}

TEST_CASE("three-term recurrence at nu = 1/2") {
  Cplx nu(0.5, 0.0), x(1.3, 0.0);
  Cplx dm = pcf_d({nu - 1.0}, x).value;
  Cplx d0 = pcf_d({nu}, x).value;
  Cplx dp = pcf_d({nu + 1.0}, x).value;
  CHECK(std::abs(x * d0 - dp - nu * dm) < 1e-10);
}

TEST_CASE("corrected derivative identity validated against the series") {
  // The ladder 2 D' = nu D_{nu-1} - D_{nu+1} must match both finite
  // differences and the series-differentiated jet.
  Cplx nu(0.5, 0.0), x(0.7, 0.0);
  Cplx ladder = pcf_d_prime({nu}, x).value;
  Cplx fd = fd4([&](Cplx t) { return pcf_d({nu}, t).value; }, x, 1e-5);
  CHECK(std::abs(ladder - fd) < 1e-8);
  PcfJet jet = pcf_d_jet({nu}, x);
  CHECK(std::abs(ladder - jet.d1) < 1e-12);

  // The printed variant with nu D_nu in the last term is wrong by O(1).
  Cplx printed = (nu * pcf_d({nu}, x).value - pcf_d({nu + 1.0}, x).value) / 2.0;
  CHECK(std::abs(printed - fd) > 1e-3);
}

TEST_CASE("derivative trivia") {
  CHECK(std::abs(pcf_d_prime({{0, 0}}, Cplx(1, 0)).value - Cplx(-0.38940039153570244, 0)) < 1e-13);
  CHECK(std::abs(pcf_d_prime({{1, 0}}, Cplx(0, 0)).value - Cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("Weber residual property (500 random draws)") {
  auto r = verify::checks::pcf_weber(0);
  CHECK(r.pass);
  auto rec = verify::checks::pcf_recurrence(0);
  CHECK(rec.pass);
}

TEST_CASE("e^{+-x^2/4} derivative ladders") {
  auto r = verify::checks::pcf_derivative_ladders(0);
  CHECK(r.pass);
}

TEST_CASE("Hermite reduction for integer order") {
  auto r = verify::checks::pcf_hermite();
  CHECK(r.pass);
}

TEST_CASE("second solution: Weber equation and shared recurrences") {
  Cplx nu(0.5, 0.0), x(0.9, 0.0);
  PcfJet j = pcf_e_jet({nu}, x);
  CHECK(std::abs(j.d2 - (x * x / 4.0 - nu - 0.5) * j.value) < 1e-9);

  // Wronskian with D is constant in x.
  Cplx w_ref;
  for (int i = 0; i < 6; ++i) {
    Cplx xx(-1.2 + 0.5 * i, 0.15);
    PcfJet jd = pcf_d_jet({nu}, xx);
    PcfJet je = pcf_e_jet({nu}, xx);
    Cplx w = jd.value * je.d1 - jd.d1 * je.value;
    if (i == 0)
      w_ref = w;
    else
      CHECK(std::abs(w - w_ref) < 1e-9 * (1.0 + std::abs(w_ref)));
  }
}

TEST_CASE("second solution degenerates at non-negative integer order") {
  CHECK_THROWS_AS(pcf_e({{3.0, 0.0}}, Cplx(1, 0), SecondKind::Fallback), DependenceError);
  CHECK_THROWS_AS(pcf_e({{3.0, 0.0}}, Cplx(1, 0), SecondKind::Primary), DependenceError);
  // Fallback at a fractional order works and solves Weber.
  Cplx nu(0.5, 0.0), x(0.6, 0.2);
  PcfJet j = pcf_e_jet({nu}, x, SecondKind::Fallback);
  CHECK(std::abs(j.d2 - (x * x / 4.0 - nu - 0.5) * j.value) < 1e-10);
}

TEST_CASE("large-order log asymptote") {
  // Direct substitution: (nu/2) log(-nu) - nu/2 - (1/2) log 2 at nu = -100.
  Cplx model = pcf_log_asymptote({{-100.0, 0.0}}, Cplx(0.0, 0.0));
  double expect = -50.0 * std::log(100.0) + 50.0 - 0.5 * std::log(2.0);
  CHECK(std::fabs(model.real() - expect) < 1e-9);

  // Agreement with the scaled evaluator across n in [100, 400].
  auto r = verify::checks::pcf_asymptote();
  CHECK(r.pass);

  CHECK_THROWS_AS(pcf_log_asymptote({{4.0, 0.0}}, Cplx(0, 0)), DomainError);
  CHECK_THROWS_AS(pcf_log_asymptote({{-4.0, 0.0}}, Cplx(0, 0)), DomainError);  // |nu| < 10
}

TEST_CASE("scaled and plain evaluations agree in the common range") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    Cplx nu(u(rng) * 2.0, u(rng));
    Cplx x(u(rng), u(rng));
    Cplx a = pcf_d({nu}, x).value;
    Cplx b = pcf_d_scaled(nu, x).value.to_cplx();
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("evaluation disk is enforced") {
  CHECK_THROWS_AS(pcf_d({{0.5, 0}}, Cplx(7.0, 0.0)), DomainError);
  PcfConfig wide;
  wide.max_abs_x = 10.0;
  CHECK_NOTHROW(pcf_d({{0.5, 0}}, Cplx(7.0, 0.0), wide));
}
