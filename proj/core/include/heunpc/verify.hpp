#ifndef HEUNPC_VERIFY_HPP
#define HEUNPC_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "heunpc/types.hpp"

namespace heunpc::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_err = 0.0;
  double tol = 0.0;
  std::string detail;
};

// Each check runs one named invariant at its native tolerance; pass a
// different tol to tighten or relax. Seeds make the random draws reproducible.
namespace checks {

CheckResult pcf_closed_forms(unsigned seed = 0, double tol = 1e-12);
CheckResult pcf_corrected_ladder(unsigned seed = 0, double tol = 1e-7);
CheckResult pcf_weber(unsigned seed = 0, double tol = 1e-9);
CheckResult pcf_recurrence(unsigned seed = 0, double tol = 1e-10);
CheckResult pcf_derivative_ladders(unsigned seed = 0, double tol = 1e-7);
CheckResult pcf_hermite(double tol = 1e-9);
CheckResult pcf_second_kind(unsigned seed = 0, double tol = 1e-9);
CheckResult pcf_asymptote(double bound = 0.5);

CheckResult params_roundtrip(unsigned seed = 0, double tol = 1e-14);
CheckResult params_symmetry_group(unsigned seed = 0, double tol = 1e-12);
CheckResult params_classify(double tol = 1e-9);
CheckResult params_atlas();

CheckResult spectra_quadratic(unsigned seed = 0, double tol = 1e-12);
CheckResult spectra_closure(unsigned seed = 0, double tol = 1e-10, double sharp = 1e-6);
CheckResult spectra_rovder(unsigned seed = 0, double im_tol = 1e-9, double gap_tol = 1e-8);
CheckResult spectra_invariant_coeff(double tol = 1e-9);
CheckResult spectra_case_residuals(unsigned seed = 0, double tol = 1e-8);
CheckResult spectra_hermite_fit(unsigned seed = 0, double tol = 1e-9);

CheckResult gauge_roundtrip(unsigned seed = 0, double tol = 1e-9);
CheckResult gauge_apparent(unsigned seed = 0, double tol = 1e-10, double sharp = 1e-6);
CheckResult gauge_frame(unsigned seed = 0, double tol = 1e-8);
CheckResult gauge_schlesinger(double tol = 1e-5, double trivial_tol = 1e-8);

CheckResult series_termination(unsigned seed = 0, double tol = 1e-10);
CheckResult series_region(unsigned seed = 0);
CheckResult series_consistency(unsigned seed = 0, double value_tol = 1e-8, double resid_tol = 1e-6);
CheckResult series_wong_li(unsigned seed = 0, double drift_bound = 0.1);
CheckResult series_glue(double tol = 1e-6);

CheckResult connection_identities(unsigned seed = 0, double tol = 1e-12);
CheckResult connection_scalar_match(unsigned seed = 0, double tol = 1e-10);
CheckResult stokes_grid(double tol = 1e-9);

}  // namespace checks

struct VerifyOptions {
  unsigned seed = 0;
  std::optional<double> tol_override;  // replaces each check's primary tolerance
};

std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace heunpc::verify

#endif
