// Acceptance suite: runs every contract of the library end to end and prints
// one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "heunpc/verify.hpp"

using heunpc::verify::CheckResult;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<CheckResult> results;

  bool pass() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return !results.empty();
  }
};

std::string capture(const std::string& args, int* exit_code) {
  std::string cmd = std::string(HEUNPC_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  if (!pipe) {
    *exit_code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

CheckResult cli_determinism() {
  CheckResult r;
  r.name = "cli.determinism";
  r.tol = 0.0;
  r.pass = true;
  const std::vector<std::string> cmds = {
      "eigen --general b=0.3,c=-3,e=0.9 --N 3",
      "eigen --general b=0.3,c=-3,e=0.9 --N 3 --format csv",
      "eval --general b=0.4,c=-2,e=1.3 --N 2 --solution eigen:0 --grid circle:r=1.2,n=20 --seed 7 --format csv",
      "classify --jm th0=0.5,thInf=1.5,t=0",
      "atlas --n-max 5",
      "atlas --n-max 5 --format csv",
  };
  for (const auto& cmd : cmds) {
    int ca = 0, cb = 0;
    std::string a = capture(cmd, &ca);
    std::string b = capture(cmd, &cb);
    if (ca != 0 || cb != 0 || a.empty() || a != b) {
      r.pass = false;
      r.detail = "output diverged for: " + cmd;
      break;
    }
  }
  if (r.pass) r.detail = "byte-identical JSON/CSV across repeated runs";
  return r;
}

}  // namespace

int main() {
  using namespace heunpc::verify::checks;
  std::vector<Criterion> criteria;

  criteria.push_back({1,
                      "PCF foundation: closed forms, Weber and recurrence residuals",
                      {pcf_closed_forms(0, 1e-12), pcf_weber(0, 1e-9), pcf_recurrence(0, 1e-10)}});
  criteria.push_back({2,
                      "Corrected derivative ladder vs finite differences",
                      {pcf_corrected_ladder(0, 1e-7)}});
  criteria.push_back({3,
                      "Eigenproblem oracle: N=1 closed form; closure residual sharpness",
                      {spectra_quadratic(0, 1e-12), spectra_closure(0, 1e-10, 1e-6)}});
  criteria.push_back({4,
                      "Eigen-solution BHE residuals, cases I-IV, kinds D and E",
                      {spectra_case_residuals(0, 1e-8)}});
  criteria.push_back({5, "Hermite reduction of e = 2N solutions", {spectra_hermite_fit(0, 1e-9)}});
  criteria.push_back({6, "Rovder reality and distinctness", {spectra_rovder(0, 1e-9, 1e-8)}});
  criteria.push_back({7,
                      "Invariant-subspace sub-diagonal coefficient",
                      {spectra_invariant_coeff(1e-9)}});
  criteria.push_back({8, "Gauge round-trips with shared D/E polynomials", {gauge_roundtrip(0, 1e-9)}});
  criteria.push_back({9, "Apparent-singularity obstruction at eigenvalues", {gauge_apparent(0, 1e-10, 1e-6)}});
  criteria.push_back({10, "Stokes degeneration grid, both directions", {stokes_grid(1e-9)}});
  criteria.push_back({11,
                      "Series convergence: cap doubling, residual, region refusal",
                      {series_consistency(0, 1e-8, 1e-6)}});
  criteria.push_back({12,
                      "Termination iff eigenvalue; series matches the finite sum",
                      {series_termination(0, 1e-10)}});
  criteria.push_back({13, "Entire gluing across the real axis", {series_glue(1e-6)}});
  criteria.push_back({14, "Wong-Li coefficient growth", {series_wong_li(0, 0.1)}});
  criteria.push_back({15,
                      "Connection identities and the scalar-form match",
                      {connection_identities(0, 1e-12), connection_scalar_match(0, 1e-10)}});
  criteria.push_back({16, "Schlesinger verification", {gauge_schlesinger(1e-5, 1e-8)}});
  criteria.push_back({17, "CLI determinism", {cli_determinism()}});

  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = c.pass();
    if (!ok) ++failures;
    double worst = 0.0;
    double tol = c.results.empty() ? 0.0 : c.results.front().tol;
    std::string first_fail;
    for (const auto& r : c.results) {
      if (r.max_err > worst) {
        worst = r.max_err;
        tol = r.tol;
      }
      if (!r.pass && first_fail.empty()) first_fail = r.name + ": " + r.detail;
    }
    std::printf("%s criterion %2d: %s (max_err=%.3g, tol=%.3g)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), worst, tol, first_fail.empty() ? "" : " -- ",
                first_fail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
