#ifndef HEUNPC_PARAMS_HPP
#define HEUNPC_PARAMS_HPP

#include <optional>
#include <string>
#include <vector>

#include "heunpc/prefactor.hpp"
#include "heunpc/types.hpp"

namespace heunpc {

/// x y'' + (1 + alpha - beta x - 2x^2) y' + ((gamma - alpha - 2) x
///   - (delta + (1+alpha) beta)/2) y = 0
struct CanonicalParams {
  Cplx alpha{0.0, 0.0};
  Cplx beta{0.0, 0.0};
  Cplx gamma_{0.0, 0.0};
  Cplx delta{0.0, 0.0};
};

/// z y'' + (-2z^2 + b z + c) y' + (d + e z) y = 0
struct GeneralParams {
  Cplx b{0.0, 0.0};
  Cplx c{0.0, 0.0};
  Cplx d{0.0, 0.0};
  Cplx e{0.0, 0.0};
};

struct JimboMiwaParams {
  Cplx theta0{0.0, 0.0};
  Cplx thetaInf{0.0, 0.0};
  Cplx t{0.0, 0.0};
  std::optional<Cplx> lambda;  // absent when theta0 = 0
};

struct Painleve4Params {
  Cplx xi{0.0, 0.0};
  Cplx eta{0.0, 0.0};
};

GeneralParams canonical_to_general(const CanonicalParams& p);
CanonicalParams general_to_canonical(const GeneralParams& p);
JimboMiwaParams to_jimbo_miwa(const CanonicalParams& p);
CanonicalParams jimbo_miwa_to_canonical(const JimboMiwaParams& jm);
Painleve4Params to_painleve4(const JimboMiwaParams& jm);
/// Inverse of to_painleve4 up to the theta0 sign (principal square root).
JimboMiwaParams painleve4_to_jimbo_miwa(const Painleve4Params& p4, Cplx t = {}, std::optional<Cplx> lambda = {});

/// Throws DegenerateLambda when theta0 = 0.
Cplx jm_lambda(const JimboMiwaParams& jm);

// ---------------------------------------------------------------------------
// Painleve-IV degeneration classification

enum class DegenerationTag { None, SolvableGalois, ApparentSingularity, Both };

struct DegenerationWitness {
  std::string relation;  // "theta0+thetaInf", "theta0-thetaInf", "2theta0"
  long n = 0;            // the integer the relation attains
  int eps = 0;           // +1 / -1 for the two Galois branches, 0 for 2theta0
};

struct DegenerationClass {
  DegenerationTag tag = DegenerationTag::None;
  std::vector<DegenerationWitness> witnesses;
  Cplx xi{0.0, 0.0};
  Cplx eta{0.0, 0.0};
};

DegenerationClass classify_degeneration(const JimboMiwaParams& jm, double tol = 1e-9);

// ---------------------------------------------------------------------------
// The C2 x C4 symmetry group of the BHE

enum class SymmetryElement { Phi1, Phi2, Phi3, Phi4, Phi5, Phi6, Phi7, Phi8 };

/// A solution of the BHE with `mapped` parameters, precomposed with z -> sigma z
/// and multiplied by `prefactor`, solves the BHE with the original parameters.
struct SymmetryResult {
  CanonicalParams mapped;
  PrefactorDescriptor prefactor;
  Cplx sigma{1.0, 0.0};
};

SymmetryResult apply_symmetry(SymmetryElement s, const CanonicalParams& p);

/// Action of `first` followed (inside) by `second`, concretized at p.
SymmetryResult compose_symmetry(SymmetryElement first, SymmetryElement second,
                                const CanonicalParams& p);

// ---------------------------------------------------------------------------
// Degeneration atlas in the (gamma, alpha)-plane

enum class AtlasFamily { F1, F2, F3 };

/// A straight line a_coeff * alpha + g_coeff * gamma = konst.
struct AtlasLine {
  AtlasFamily family;
  std::string label;
  double a_coeff = 0.0;
  double g_coeff = 0.0;
  double konst = 0.0;
  bool missing = false;  // F3 lines absent from F2 ("missing three lines")
};

struct AtlasDataset {
  int n_max = 0;
  std::vector<AtlasLine> lines;

  std::vector<AtlasLine> family(AtlasFamily f) const;
};

/// F1: the termination lines alpha = -(N+1) and gamma - alpha = 2N + 2 for
/// N = 0..n_max. F2: their symmetry-group images. F3: the full degeneration
/// lattice; F3 \ F2 is exactly the three lines through the origin.
AtlasDataset atlas_lines(int n_max);

std::string atlas_to_json(const AtlasDataset& ds);
std::string atlas_to_csv(const AtlasDataset& ds);

}  // namespace heunpc

#endif
