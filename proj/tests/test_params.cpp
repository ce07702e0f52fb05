#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include <json.hpp>

#include "heunpc/errors.hpp"
#include "heunpc/params.hpp"
#include "heunpc/verify.hpp"

using namespace heunpc;

TEST_CASE("canonical <-> general pinned values") {
  GeneralParams g = canonical_to_general({{0, 0}, {0, 0}, {0, 0}, {0, 0}});
  CHECK(g.b == Cplx(0, 0));
  CHECK(g.c == Cplx(1, 0));
  CHECK(g.d == Cplx(0, 0));
  CHECK(g.e == Cplx(-2, 0));

  CanonicalParams p = general_to_canonical({{1, 0}, {2, 0}, {3, 0}, {4, 0}});
  CHECK(p.alpha == Cplx(1, 0));
  CHECK(p.beta == Cplx(-1, 0));
  CHECK(p.gamma_ == Cplx(7, 0));
  CHECK(p.delta == Cplx(-4, 0));

  GeneralParams rt = canonical_to_general(p);
  CHECK(std::abs(rt.b - Cplx(1, 0)) < 1e-15);
  CHECK(std::abs(rt.d - Cplx(3, 0)) < 1e-15);
}

TEST_CASE("roundtrip property (1000 random)") { CHECK(verify::checks::params_roundtrip(0).pass); }

TEST_CASE("Jimbo-Miwa map") {
  // alpha = 0, gamma = 2 -> theta0 = 1/2, thetaInf = 3/2; beta = 2 -> t = 1.
  JimboMiwaParams jm = to_jimbo_miwa({{0, 0}, {2, 0}, {2, 0}, {0, 0}});
  CHECK(std::abs(jm.theta0 - Cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(jm.thetaInf - Cplx(1.5, 0)) < 1e-15);
  CHECK(std::abs(jm.t - Cplx(1, 0)) < 1e-15);
  REQUIRE(jm.lambda.has_value());
  // Constant-term identity 4 theta0 (lambda - t) = -(delta + (1+alpha) beta)/2.
  Cplx lhs = 4.0 * jm.theta0 * (*jm.lambda - jm.t);
  CHECK(std::abs(lhs - Cplx(-1.0, 0)) < 1e-15);  // -(0 + 1*2)/2

  JimboMiwaParams degenerate = to_jimbo_miwa({{-1, 0}, {1, 0}, {1, 0}, {1, 0}});
  CHECK_FALSE(degenerate.lambda.has_value());
  CHECK_THROWS_AS(jm_lambda(degenerate), DegenerateLambda);
}

TEST_CASE("Painleve-IV map") {
  CHECK(std::abs(to_painleve4({{0, 0}, {0.5, 0}, {}, {}}).xi - Cplx(0, 0)) < 1e-15);
  Painleve4Params p4 = to_painleve4({{0.5, 0}, {0, 0}, {}, {}});
  CHECK(std::abs(p4.eta - Cplx(-2, 0)) < 1e-15);  // -2 n^2 with n = 1
  CHECK(std::abs(to_painleve4({{0, 0}, {0, 0}, {}, {}}).eta) < 1e-15);
}

TEST_CASE("degeneration classification") {
  auto c1 = classify_degeneration({{0.25, 0}, {0.75, 0}, {}, {}});
  CHECK(c1.tag == DegenerationTag::SolvableGalois);
  REQUIRE(c1.witnesses.size() == 1);
  CHECK(c1.witnesses[0].relation == "theta0+thetaInf");
  CHECK(c1.witnesses[0].n == 1);

  auto c2 = classify_degeneration({{0.5, 0}, {0.31, 0}, {}, {}});
  CHECK(c2.tag == DegenerationTag::ApparentSingularity);
  REQUIRE(c2.witnesses.size() == 1);
  CHECK(c2.witnesses[0].relation == "2theta0");
  CHECK(c2.witnesses[0].n == 1);

  auto c3 = classify_degeneration({{0.5, 0}, {1.5, 0}, {}, {}});
  CHECK(c3.tag == DegenerationTag::Both);
  CHECK(c3.witnesses.size() == 3);

  auto none = classify_degeneration({{0.317, 0}, {0.913, 0}, {}, {}});
  CHECK(none.tag == DegenerationTag::None);

  CHECK(verify::checks::params_classify().pass);
}

TEST_CASE("symmetry elements") {
  CanonicalParams p{{0.3, 0.1}, {1.2, -0.4}, {-0.7, 0.2}, {0.5, 0.9}};

  SymmetryResult id = apply_symmetry(SymmetryElement::Phi1, p);
  CHECK(std::abs(id.mapped.alpha - p.alpha) == 0.0);
  CHECK(id.prefactor.is_trivial());
  CHECK(id.sigma == Cplx(1, 0));

  SymmetryResult phi2 = apply_symmetry(SymmetryElement::Phi2, p);
  CHECK(std::abs(phi2.mapped.alpha + p.alpha) < 1e-15);
  CHECK(std::abs(phi2.prefactor.zpow + p.alpha) < 1e-15);  // z^{-alpha}
  CHECK(phi2.sigma == Cplx(1, 0));

  SymmetryResult phi3 = apply_symmetry(SymmetryElement::Phi3, p);
  CHECK(std::abs(phi3.mapped.beta + p.beta) < 1e-15);
  CHECK(std::abs(phi3.mapped.delta + p.delta) < 1e-15);
  CHECK(phi3.sigma == Cplx(-1, 0));

  // phi3 is an involution.
  SymmetryResult sq = compose_symmetry(SymmetryElement::Phi3, SymmetryElement::Phi3, p);
  CHECK(std::abs(sq.mapped.beta - p.beta) < 1e-15);
  CHECK(sq.prefactor.approx_equal({}, 1e-14));
  CHECK(std::abs(sq.sigma - Cplx(1, 0)) < 1e-15);

  // phi5 carries e^{beta z + z^2} and z -> iz.
  SymmetryResult phi5 = apply_symmetry(SymmetryElement::Phi5, p);
  CHECK(std::abs(phi5.mapped.beta - Cplx(0, 1) * p.beta) < 1e-15);
  CHECK(std::abs(phi5.prefactor.quad - Cplx(1, 0)) < 1e-15);
  CHECK(std::abs(phi5.prefactor.lin - p.beta) < 1e-15);
  CHECK(std::abs(phi5.sigma - Cplx(0, 1)) < 1e-15);
}

TEST_CASE("symmetry group is C2 x C4") { CHECK(verify::checks::params_symmetry_group(0).pass); }

TEST_CASE("atlas families") {
  AtlasDataset ds = atlas_lines(1);
  auto f1 = ds.family(AtlasFamily::F1);
  // The termination set at n_max = 1 holds alpha = -1, -2 and
  // gamma - alpha = 2, 4 (the caption's gamma-alpha-2 = 2 line included).
  bool has_alpha_m1 = false, has_diff_4 = false;
  for (const auto& l : f1) {
    if (l.label == "alpha=-1") has_alpha_m1 = true;
    if (l.label == "gamma-alpha=4") has_diff_4 = true;
  }
  CHECK(has_alpha_m1);
  CHECK(has_diff_4);

  // F3 contains integer alpha lines (alpha = 2 theta0 - 1).
  bool has_alpha_0 = false;
  for (const auto& l : ds.family(AtlasFamily::F3))
    if (l.label == "alpha=0") {
      has_alpha_0 = true;
      CHECK(l.missing);
    }
  CHECK(has_alpha_0);

  CHECK(verify::checks::params_atlas().pass);
}

TEST_CASE("atlas serialization roundtrip and determinism") {
  AtlasDataset ds = atlas_lines(3);
  std::string j1 = atlas_to_json(ds);
  std::string j2 = atlas_to_json(atlas_lines(3));
  CHECK(j1 == j2);

  auto doc = nlohmann::json::parse(j1);
  CHECK(doc["schema"] == 1);
  CHECK(doc["lines"].is_array());
  size_t missing = 0;
  for (const auto& l : doc["lines"])
    if (l.contains("missing") && l["missing"].get<bool>()) ++missing;
  CHECK(missing == 3);

  std::string csv = atlas_to_csv(ds);
  CHECK(csv.rfind("family,label,a_coeff,g_coeff,const\n", 0) == 0);
  size_t rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  CHECK(rows == doc["lines"].size());
}
