#include "heunpc/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "heunpc/errors.hpp"

namespace heunpc {

GeneralParams canonical_to_general(const CanonicalParams& p) {
  GeneralParams g;
  g.b = -p.beta;
  g.c = p.alpha + 1.0;
  g.d = -0.5 * (p.delta + (1.0 + p.alpha) * p.beta);
  g.e = p.gamma_ - p.alpha - 2.0;
  return g;
}

CanonicalParams general_to_canonical(const GeneralParams& g) {
  CanonicalParams p;
  p.alpha = g.c - 1.0;
  p.beta = -g.b;
  p.gamma_ = g.e + g.c + 1.0;
  p.delta = g.b * g.c - 2.0 * g.d;
  return p;
}

JimboMiwaParams to_jimbo_miwa(const CanonicalParams& p) {
  JimboMiwaParams jm;
  jm.theta0 = (1.0 + p.alpha) / 2.0;
  jm.thetaInf = (1.0 + p.gamma_) / 2.0;
  jm.t = p.beta / 2.0;
  // 4 theta0 (lambda - t) = -(delta + (1+alpha) beta)/2
  Cplx d = -0.5 * (p.delta + (1.0 + p.alpha) * p.beta);
  if (jm.theta0 != Cplx(0.0, 0.0)) jm.lambda = jm.t + d / (4.0 * jm.theta0);
  return jm;
}

CanonicalParams jimbo_miwa_to_canonical(const JimboMiwaParams& jm) {
  CanonicalParams p;
  p.alpha = 2.0 * jm.theta0 - 1.0;
  p.gamma_ = 2.0 * jm.thetaInf - 1.0;
  p.beta = 2.0 * jm.t;
  Cplx d = jm.lambda ? 4.0 * jm.theta0 * (*jm.lambda - jm.t) : Cplx(0.0, 0.0);
  p.delta = -2.0 * d - (1.0 + p.alpha) * p.beta;
  return p;
}

Painleve4Params to_painleve4(const JimboMiwaParams& jm) {
  return {2.0 * jm.thetaInf - 1.0, -8.0 * jm.theta0 * jm.theta0};
}

JimboMiwaParams painleve4_to_jimbo_miwa(const Painleve4Params& p4, Cplx t, std::optional<Cplx> lambda) {
  JimboMiwaParams jm;
  jm.thetaInf = (p4.xi + 1.0) / 2.0;
  jm.theta0 = std::sqrt(-p4.eta / 8.0);
  jm.t = t;
  jm.lambda = lambda;
  return jm;
}

Cplx jm_lambda(const JimboMiwaParams& jm) {
  if (!jm.lambda) throw DegenerateLambda("lambda undefined: theta0 = 0");
  return *jm.lambda;
}

namespace {

std::optional<long> near_int(Cplx z, double tol) {
  double n = std::round(z.real());
  if (std::fabs(z.real() - n) <= tol && std::fabs(z.imag()) <= tol) return long(n);
  return std::nullopt;
}

}  // namespace

DegenerationClass classify_degeneration(const JimboMiwaParams& jm, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("classify_degeneration: tol must be positive");
  DegenerationClass out;
  Painleve4Params p4 = to_painleve4(jm);
  out.xi = p4.xi;
  out.eta = p4.eta;

  bool galois = false, apparent = false;
  if (auto n = near_int(jm.theta0 + jm.thetaInf, tol)) {
    out.witnesses.push_back({"theta0+thetaInf", *n, -1});
    galois = true;
  }
  if (auto n = near_int(jm.theta0 - jm.thetaInf, tol)) {
    out.witnesses.push_back({"theta0-thetaInf", *n, +1});
    galois = true;
  }
  if (auto n = near_int(2.0 * jm.theta0, tol)) {
    out.witnesses.push_back({"2theta0", *n, 0});
    apparent = true;
  }
  out.tag = galois ? (apparent ? DegenerationTag::Both : DegenerationTag::SolvableGalois)
                   : (apparent ? DegenerationTag::ApparentSingularity : DegenerationTag::None);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Component multipliers (alpha, beta, gamma, delta) plus prefactor shape and
// argument twist for phi_1..phi_8.
struct PhiSpec {
  Cplx ma, mb, mg, md;
  bool pow_neg_alpha;  // z^{-alpha} factor
  bool exp_factor;     // e^{beta z + z^2} factor
  Cplx sigma;
};

const Cplx kI(0.0, 1.0);

PhiSpec phi_spec(SymmetryElement s) {
  switch (s) {
    case SymmetryElement::Phi1: return {1, 1, 1, 1, false, false, {1.0, 0.0}};
    case SymmetryElement::Phi2: return {-1, 1, 1, 1, true, false, {1.0, 0.0}};
    case SymmetryElement::Phi3: return {1, -1, 1, -1, false, false, {-1.0, 0.0}};
    case SymmetryElement::Phi4: return {1, -kI, -1, kI, false, true, {0.0, -1.0}};
    case SymmetryElement::Phi5: return {1, kI, -1, -kI, false, true, {0.0, 1.0}};
    case SymmetryElement::Phi6: return {-1, -kI, -1, kI, true, true, {0.0, -1.0}};
    case SymmetryElement::Phi7: return {-1, kI, -1, -kI, true, true, {0.0, 1.0}};
    case SymmetryElement::Phi8: return {-1, -1, 1, -1, true, false, {-1.0, 0.0}};
  }
  return {};
}

PrefactorDescriptor phi_prefactor(const PhiSpec& s, const CanonicalParams& p) {
  PrefactorDescriptor pref;
  if (s.pow_neg_alpha) pref.zpow = -p.alpha;
  if (s.exp_factor) {
    pref.quad = Cplx(1.0, 0.0);
    pref.lin = p.beta;
  }
  return pref;
}

}  // namespace

SymmetryResult apply_symmetry(SymmetryElement s, const CanonicalParams& p) {
  PhiSpec spec = phi_spec(s);
  SymmetryResult r;
  r.mapped = {spec.ma * p.alpha, spec.mb * p.beta, spec.mg * p.gamma_, spec.md * p.delta};
  r.prefactor = phi_prefactor(spec, p);
  r.sigma = spec.sigma;
  return r;
}

SymmetryResult compose_symmetry(SymmetryElement first, SymmetryElement second,
                                const CanonicalParams& p) {
  SymmetryResult a = apply_symmetry(first, p);
  SymmetryResult b = apply_symmetry(second, a.mapped);
  SymmetryResult r;
  r.mapped = b.mapped;
  r.sigma = b.sigma * a.sigma;
  r.prefactor = a.prefactor * b.prefactor.precompose_scale(a.sigma);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt_int(long v) { return std::to_string(v); }

AtlasLine make_alpha_line(AtlasFamily f, long k) {
  return {f, "alpha=" + fmt_int(k), 1.0, 0.0, double(k), false};
}
AtlasLine make_diff_line(AtlasFamily f, long v) {
  return {f, "gamma-alpha=" + fmt_int(v), -1.0, 1.0, double(v), false};
}
AtlasLine make_sum_line(AtlasFamily f, long v) {
  return {f, "gamma+alpha=" + fmt_int(v), 1.0, 1.0, double(v), false};
}

bool same_line(const AtlasLine& a, const AtlasLine& b) {
  return a.a_coeff == b.a_coeff && a.g_coeff == b.g_coeff && a.konst == b.konst;
}

void push_unique(std::vector<AtlasLine>& v, AtlasLine l) {
  for (const auto& o : v)
    if (o.family == l.family && same_line(o, l)) return;
  v.push_back(std::move(l));
}

int line_kind(const AtlasLine& l) {
  if (l.g_coeff == 0.0) return 0;        // alpha = const
  if (l.a_coeff < 0.0) return 1;         // gamma - alpha = const
  return 2;                              // gamma + alpha = const
}

}  // namespace

std::vector<AtlasLine> AtlasDataset::family(AtlasFamily f) const {
  std::vector<AtlasLine> out;
  for (const auto& l : lines)
    if (l.family == f) out.push_back(l);
  return out;
}

AtlasDataset atlas_lines(int n_max) {
  if (n_max < 1) throw PreconditionError("atlas_lines: n_max must be >= 1");
  AtlasDataset ds;
  ds.n_max = n_max;
  std::vector<AtlasLine>& lines = ds.lines;

  // F1: termination set, N = 0..n_max: c = alpha+1 = -N  and  e = gamma-alpha-2 = 2N.
  for (long N = 0; N <= n_max; ++N) {
    push_unique(lines, make_alpha_line(AtlasFamily::F1, -(N + 1)));
    push_unique(lines, make_diff_line(AtlasFamily::F1, 2 * N + 2));
  }
  // F2: images under the (alpha, gamma) sign flips of the symmetry group.
  for (long N = 0; N <= n_max; ++N) {
    for (int sa : {+1, -1}) push_unique(lines, make_alpha_line(AtlasFamily::F2, sa * (N + 1)));
    for (int sv : {+1, -1}) {
      push_unique(lines, make_diff_line(AtlasFamily::F2, sv * (2 * N + 2)));
      push_unique(lines, make_sum_line(AtlasFamily::F2, sv * (2 * N + 2)));
    }
  }
  // F3: the full BHC degeneration lattice, 2theta0 in Z and theta0 +- thetaInf in Z.
  for (long m = -(n_max + 1); m <= n_max + 1; ++m) {
    push_unique(lines, make_alpha_line(AtlasFamily::F3, m));
    push_unique(lines, make_diff_line(AtlasFamily::F3, 2 * m));
    push_unique(lines, make_sum_line(AtlasFamily::F3, 2 * m));
  }
  // Flag F3 \ F2.
  auto f2 = ds.family(AtlasFamily::F2);
  for (auto& l : lines) {
    if (l.family != AtlasFamily::F3) continue;
    bool in_f2 = std::any_of(f2.begin(), f2.end(), [&](const AtlasLine& o) { return same_line(o, l); });
    l.missing = !in_f2;
  }

  std::sort(lines.begin(), lines.end(), [](const AtlasLine& a, const AtlasLine& b) {
    if (a.family != b.family) return int(a.family) < int(b.family);
    if (line_kind(a) != line_kind(b)) return line_kind(a) < line_kind(b);
    return a.konst < b.konst;
  });
  return ds;
}

namespace {

const char* family_name(AtlasFamily f) {
  switch (f) {
    case AtlasFamily::F1: return "F1";
    case AtlasFamily::F2: return "F2";
    case AtlasFamily::F3: return "F3";
  }
  return "?";
}

}  // namespace

std::string atlas_to_json(const AtlasDataset& ds) {
  nlohmann::json j;
  j["schema"] = 1;
  j["n_max"] = ds.n_max;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : ds.lines) {
    nlohmann::json e;
    e["family"] = family_name(l.family);
    e["label"] = l.label;
    e["equation"] = {{"a_coeff", l.a_coeff}, {"g_coeff", l.g_coeff}, {"const", l.konst}};
    if (l.family == AtlasFamily::F3) e["missing"] = l.missing;
    arr.push_back(e);
  }
  j["lines"] = arr;
  return j.dump(2) + "\n";
}

std::string atlas_to_csv(const AtlasDataset& ds) {
  std::string out = "family,label,a_coeff,g_coeff,const\n";
  char buf[160];
  for (const auto& l : ds.lines) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%.17g,%.17g,%.17g\n", family_name(l.family),
                  l.label.c_str(), l.a_coeff, l.g_coeff, l.konst);
    out += buf;
  }
  return out;
}

}  // namespace heunpc
