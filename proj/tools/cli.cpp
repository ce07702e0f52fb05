#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heunpc/connection.hpp"
#include "heunpc/errors.hpp"
#include "heunpc/gauge.hpp"
#include "heunpc/params.hpp"
#include "heunpc/series.hpp"
#include "heunpc/spectra.hpp"
#include "heunpc/verify.hpp"

using namespace heunpc;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json cplx_json(Cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

// "1.5", "-2e-3", "0.5+0.3i", "-i", "2i", "1-i"
Cplx parse_cplx(const std::string& raw) {
  std::string s = raw;
  if (s.empty()) throw DomainError("empty numeric value");
  if (s.back() != 'i' && s.back() != 'I') {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw DomainError("cannot parse '" + raw + "' as a number");
    return {v, 0.0};
  }
  s.pop_back();  // strip i
  // Split at the last +/- that is not an exponent sign.
  int split = -1;
  for (int i = int(s.size()) - 1; i > 0; --i) {
    char c = s[size_t(i)];
    if ((c == '+' || c == '-') && s[size_t(i) - 1] != 'e' && s[size_t(i) - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto parse_imag_part = [&](std::string t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (split < 0) return {0.0, parse_imag_part(s)};
  double re = std::stod(s.substr(0, size_t(split)));
  return {re, parse_imag_part(s.substr(size_t(split)))};
}

std::map<std::string, Cplx> parse_kv(const std::vector<std::string>& tokens) {
  std::map<std::string, Cplx> out;
  for (const auto& tok : tokens) {
    std::stringstream ss(tok);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("expected key=value, got '" + item + "'");
      out[item.substr(0, eq)] = parse_cplx(item.substr(eq + 1));
    }
  }
  return out;
}

struct ParamInput {
  std::vector<std::string> canonical, general, jm, p4;

  int forms_given() const {
    return int(!canonical.empty()) + int(!general.empty()) + int(!jm.empty()) + int(!p4.empty());
  }

  CanonicalParams to_canonical() const {
    if (forms_given() != 1)
      throw PreconditionError("exactly one of --canonical/--general/--jm/--p4 must be given");
    if (!canonical.empty()) {
      auto kv = parse_kv(canonical);
      return {kv["a"], kv["b"], kv["g"], kv["d"]};
    }
    if (!general.empty()) {
      auto kv = parse_kv(general);
      return general_to_canonical({kv["b"], kv["c"], kv["d"], kv["e"]});
    }
    if (!jm.empty()) {
      auto kv = parse_kv(jm);
      JimboMiwaParams j;
      j.theta0 = kv.count("th0") ? kv["th0"] : kv["theta0"];
      j.thetaInf = kv.count("thInf") ? kv["thInf"] : kv["thetaInf"];
      j.t = kv["t"];
      if (kv.count("lambda")) j.lambda = kv["lambda"];
      return jimbo_miwa_to_canonical(j);
    }
    auto kv = parse_kv(p4);
    Painleve4Params q{kv["xi"], kv["eta"]};
    std::optional<Cplx> lambda;
    if (kv.count("lambda")) lambda = kv["lambda"];
    return jimbo_miwa_to_canonical(
        painleve4_to_jimbo_miwa(q, kv.count("t") ? kv["t"] : Cplx{}, lambda));
  }
};

CaseTag parse_case(const std::string& s) {
  if (s == "I" || s == "1") return CaseTag::I;
  if (s == "II" || s == "2") return CaseTag::II;
  if (s == "III" || s == "3") return CaseTag::III;
  if (s == "IV" || s == "4") return CaseTag::IV;
  throw PreconditionError("unknown case '" + s + "'");
}

const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::III: return "III";
    case CaseTag::IV: return "IV";
  }
  return "?";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw PreconditionError("cannot open output file " + out_path);
  f << text;
}

// circle:r=1.5,n=16  |  segment:z0=-1,z1=1+0.5i,n=11
std::vector<Cplx> parse_grid(const std::string& s, unsigned seed) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw PreconditionError("grid must be circle:... or segment:...");
  std::string kind = s.substr(0, colon);
  auto kv = parse_kv({s.substr(colon + 1)});
  if (kind == "circle") {
    double r = kv.count("r") ? kv["r"].real() : 1.0;
    int n = kv.count("n") ? int(kv["n"].real()) : 16;
    return sample_circle(r, n, seed);
  }
  if (kind == "segment") {
    Cplx z0 = kv["z0"], z1 = kv["z1"];
    int n = kv.count("n") ? int(kv["n"].real()) : 11;
    std::vector<Cplx> pts;
    for (int i = 0; i < n; ++i)
      pts.push_back(z0 + (z1 - z0) * (n == 1 ? 0.0 : double(i) / double(n - 1)));
    return pts;
  }
  throw PreconditionError("unknown grid kind '" + kind + "'");
}

// ---------------------------------------------------------------- commands

int cmd_eigen(const ParamInput& input, int N, const std::string& case_str, double tol,
              const std::string& format, const std::string& out_path) {
  CanonicalParams p = input.to_canonical();
  CaseTag tag = parse_case(case_str);
  SymmetryResult sym = apply_symmetry(case_symmetry(tag), p);
  GeneralParams mapped = canonical_to_general(sym.mapped);
  TridiagonalSystem sys = build_tridiagonal(mapped, N, tol);
  auto eigenvalues = eigenvalues_d(sys);

  std::vector<EigenPair> pairs;
  std::vector<Cplx> deltas;
  for (Cplx d : eigenvalues) {
    pairs.push_back(eigen_coeffs(sys, d));
    deltas.push_back(assemble_solution(tag, p, pairs.back(), PcfKind::D, tol).delta);
  }

  if (format == "csv") {
    std::string text = "j,k,re_d,im_d,re_delta,im_delta,re_A,im_A\n";
    for (size_t j = 0; j < pairs.size(); ++j)
      for (size_t k = 0; k < pairs[j].coeffs.size(); ++k) {
        Cplx a = pairs[j].coeffs[k];
        text += std::to_string(j) + "," + std::to_string(k) + "," + fmt(eigenvalues[j].real()) +
                "," + fmt(eigenvalues[j].imag()) + "," + fmt(deltas[j].real()) + "," +
                fmt(deltas[j].imag()) + "," + fmt(a.real()) + "," + fmt(a.imag()) + "\n";
      }
    emit(text, out_path);
    return kExitOk;
  }

  json doc;
  doc["schema"] = 1;
  doc["command"] = "eigen";
  doc["case"] = case_name(tag);
  doc["N"] = N;
  doc["mapped_general"] = {
      {"b", cplx_json(mapped.b)}, {"c", cplx_json(mapped.c)}, {"e", cplx_json(mapped.e)}};
  json evs = json::array(), dls = json::array(), table = json::array();
  for (size_t j = 0; j < pairs.size(); ++j) {
    evs.push_back(cplx_json(eigenvalues[j]));
    dls.push_back(cplx_json(deltas[j]));
    json row = json::array();
    for (Cplx a : pairs[j].coeffs) row.push_back(cplx_json(a));
    table.push_back(row);
  }
  doc["eigenvalues_d"] = evs;
  doc["delta_values"] = dls;
  doc["coefficient_table"] = table;
  emit(doc.dump(2) + "\n", out_path);
  return kExitOk;
}

struct EvalRow {
  Cplx z;
  std::optional<PcfValue> value;
  std::optional<double> residual;
  std::optional<double> continuity;
  std::string status = "ok";
};

int cmd_eval(const ParamInput& input, const std::string& solution, int N,
             const std::string& case_str, const std::string& kind_str, const std::string& grid,
             double tol, unsigned seed, const std::string& format, const std::string& out_path) {
  CanonicalParams p = input.to_canonical();
  GeneralParams g = canonical_to_general(p);
  std::vector<Cplx> points = parse_grid(grid, seed);
  PcfKind kind = kind_str == "E" ? PcfKind::E : PcfKind::D;

  std::vector<EvalRow> rows;
  bool entire_mode = false;

  auto push_row = [&](Cplx z, auto&& jet_fn, const CanonicalParams& pr) {
    EvalRow row;
    row.z = z;
    try {
      SolutionJet jet = jet_fn(z);
      row.value = PcfValue{jet.y, jet.abs_error};
      row.residual = bhe_residual(jet, pr, z);
    } catch (const RegionError&) {
      row.status = "out-of-region";
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(row);
  };

  if (solution.rfind("eigen", 0) == 0) {
    CaseTag tag = parse_case(case_str);
    size_t idx = 0;
    if (auto colon = solution.find(':'); colon != std::string::npos)
      idx = size_t(std::stoul(solution.substr(colon + 1)));
    auto family = solve_family(tag, p, N, kind, tol);
    if (idx >= family.size()) throw PreconditionError("eigen index out of range");
    const FiniteSolution& sol = family[idx];
    CanonicalParams pr = p;
    pr.delta = sol.delta;
    for (Cplx z : points) push_row(z, [&](Cplx zz) { return sol.eval_jet(zz); }, pr);
  } else if (solution.rfind("series", 0) == 0) {
    SeriesVariant v = SeriesVariant::Base;
    if (auto colon = solution.find(':'); colon != std::string::npos) {
      std::string name = solution.substr(colon + 1);
      if (name == "base")
        v = SeriesVariant::Base;
      else if (name == "phi4")
        v = SeriesVariant::Phi4;
      else if (name == "phi5")
        v = SeriesVariant::Phi5;
      else
        throw PreconditionError("unknown series variant '" + name + "'");
    }
    SeriesSolution sol = make_series_solution(g, v, kind);
    for (Cplx z : points) push_row(z, [&](Cplx zz) { return sol.eval_jet(zz); }, p);
  } else if (solution == "entire") {
    entire_mode = true;
    EntireSolution sol = glue_entire(g);
    for (Cplx z : points) {
      push_row(z, [&](Cplx zz) { return sol.eval_jet(zz); }, p);
      if (rows.back().status == "ok" && std::fabs(z.imag()) < 1e-9)
        rows.back().continuity = sol.continuity_gap(z);
    }
  } else {
    throw PreconditionError("unknown solution selector '" + solution + "'");
  }

  if (format == "csv") {
    std::string text = "re_z,im_z,re_y,im_y,abs_err,residual,status";
    if (entire_mode) text += ",continuity";
    text += "\n";
    for (const auto& r : rows) {
      text += fmt(r.z.real()) + "," + fmt(r.z.imag()) + ",";
      if (r.value)
        text += fmt(r.value->value.real()) + "," + fmt(r.value->value.imag()) + "," +
                fmt(r.value->abs_error) + ",";
      else
        text += ",,,";
      text += r.residual ? fmt(*r.residual) : "";
      text += "," + r.status;
      if (entire_mode) text += "," + (r.continuity ? fmt(*r.continuity) : std::string());
      text += "\n";
    }
    emit(text, out_path);
    return kExitOk;
  }

  json doc;
  doc["schema"] = 1;
  doc["command"] = "eval";
  json arr = json::array();
  for (const auto& r : rows) {
    json e;
    e["z"] = cplx_json(r.z);
    e["status"] = r.status;
    if (r.value) {
      e["y"] = cplx_json(r.value->value);
      e["abs_err"] = r.value->abs_error;
    }
    if (r.residual) e["residual"] = *r.residual;
    if (r.continuity) e["continuity"] = *r.continuity;
    arr.push_back(e);
  }
  doc["rows"] = arr;
  emit(doc.dump(2) + "\n", out_path);
  return kExitOk;
}

int cmd_classify(const ParamInput& input, double tol, const std::string& format,
                 const std::string& out_path) {
  CanonicalParams p = input.to_canonical();
  JimboMiwaParams jm = to_jimbo_miwa(p);
  DegenerationClass cls = classify_degeneration(jm, tol);

  const char* tag = cls.tag == DegenerationTag::Both                  ? "Both"
                    : cls.tag == DegenerationTag::SolvableGalois      ? "SolvableGalois"
                    : cls.tag == DegenerationTag::ApparentSingularity ? "ApparentSingularity"
                                                                      : "None";
  if (format == "csv") {
    std::string text = "relation,n,eps\n";
    for (const auto& w : cls.witnesses)
      text += w.relation + "," + std::to_string(w.n) + "," + std::to_string(w.eps) + "\n";
    emit(text, out_path);
    return kExitOk;
  }
  json doc;
  doc["schema"] = 1;
  doc["command"] = "classify";
  doc["theta0"] = cplx_json(jm.theta0);
  doc["thetaInf"] = cplx_json(jm.thetaInf);
  doc["xi"] = cplx_json(cls.xi);
  doc["eta"] = cplx_json(cls.eta);
  doc["class"] = tag;
  json ws = json::array();
  for (const auto& w : cls.witnesses)
    ws.push_back(json{{"relation", w.relation}, {"n", w.n}, {"eps", w.eps}});
  doc["witnesses"] = ws;
  emit(doc.dump(2) + "\n", out_path);
  return kExitOk;
}

int cmd_atlas(int n_max, const std::string& format, const std::string& out_path) {
  AtlasDataset ds = atlas_lines(n_max);
  if (!out_path.empty()) {
    emit(atlas_to_json(ds), out_path + ".json");
    emit(atlas_to_csv(ds), out_path + ".csv");
    return kExitOk;
  }
  emit(format == "csv" ? atlas_to_csv(ds) : atlas_to_json(ds), "");
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& suites, std::optional<double> tol, unsigned seed,
               const std::string& out_path) {
  verify::VerifyOptions opts;
  opts.seed = seed;
  opts.tol_override = tol;
  std::vector<verify::CheckResult> results;
  std::vector<std::string> run = suites.empty() ? verify::suite_names() : suites;
  for (const auto& s : run) {
    auto part = verify::run_suite(s, opts);
    if (part.empty()) throw PreconditionError("unknown suite '" + s + "'");
    results.insert(results.end(), part.begin(), part.end());
  }
  bool all_pass = true;
  json arr = json::array();
  for (const auto& r : results) {
    all_pass &= r.pass;
    arr.push_back(json{{"name", r.name},
                       {"pass", r.pass},
                       {"max_err", r.max_err},
                       {"tol", r.tol},
                       {"detail", r.detail}});
    std::fprintf(stderr, "%-28s %s  (max_err=%.3g, tol=%.3g)\n", r.name.c_str(),
                 r.pass ? "PASS" : "FAIL", r.max_err, r.tol);
  }
  json doc;
  doc["schema"] = 1;
  doc["command"] = "verify";
  doc["pass"] = all_pass;
  doc["checks"] = arr;
  emit(doc.dump(2) + "\n", out_path);
  return all_pass ? kExitOk : kExitNumeric;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Biconfluent Heun equation via parabolic cylinder expansions"};
  app.require_subcommand(1);

  std::string format = "json", out_path;
  unsigned seed = 0;
  double tol = 1e-9;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--out", out_path, "output file (atlas: prefix for .json/.csv)");
  app.add_option("--seed", seed, "seed for sample grids");
  auto* gtol = app.add_option("--tol", tol, "numeric tolerance");

  ParamInput input;
  auto add_param_opts = [&](CLI::App* cmd) {
    cmd->add_option("--canonical", input.canonical, "a=..,b=..,g=..,d=..");
    cmd->add_option("--general", input.general, "b=..,c=..,d=..,e=..");
    cmd->add_option("--jm", input.jm, "th0=..,thInf=..,t=..,lambda=..");
    cmd->add_option("--p4", input.p4, "xi=..,eta=..[,t=..,lambda=..]");
  };

  int N = 0;
  std::string case_str = "I", kind_str = "D", grid = "circle:r=1,n=16";
  std::string solution = "eigen:0";
  int n_max = 3;
  std::vector<std::string> suites;

  CLI::App* eigen = app.add_subcommand("eigen", "accessory-parameter eigenproblem");
  add_param_opts(eigen);
  eigen->add_option("--N", N, "invariant-subspace dimension minus one")->required();
  eigen->add_option("--case", case_str, "I, II, III or IV");

  CLI::App* eval = app.add_subcommand("eval", "sample a solution on a grid");
  add_param_opts(eval);
  eval->add_option("--solution", solution, "eigen:IDX | series:base|phi4|phi5 | entire");
  eval->add_option("--N", N, "eigen-solution subspace size minus one");
  eval->add_option("--case", case_str, "I, II, III or IV");
  eval->add_option("--kind", kind_str, "D or E")->check(CLI::IsMember({"D", "E"}));
  eval->add_option("--grid", grid, "circle:r=..,n=.. | segment:z0=..,z1=..,n=..");

  CLI::App* classify = app.add_subcommand("classify", "Painleve-IV degeneration class");
  add_param_opts(classify);

  CLI::App* atlas =
      app.add_subcommand("atlas", "degeneration line families in the (gamma, alpha)-plane");
  atlas->add_option("--n-max", n_max, "largest termination index");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  verify_cmd->add_option("--suite", suites, "pcf params spectra gauge series connection stokes");

  // Global flags (--format, --out, --seed, --tol) may follow the subcommand.
  for (CLI::App* sub : {eigen, eval, classify, atlas, verify_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
    if (eigen->parsed()) return cmd_eigen(input, N, case_str, tol, format, out_path);
    if (eval->parsed())
      return cmd_eval(input, solution, N, case_str, kind_str, grid, tol, seed, format, out_path);
    if (classify->parsed()) return cmd_classify(input, tol, format, out_path);
    if (atlas->parsed()) return cmd_atlas(n_max, format, out_path);
    if (verify_cmd->parsed()) {
      std::optional<double> override_tol;
      if (gtol->count() > 0) override_tol = tol;
      return cmd_verify(suites, override_tol, seed, out_path);
    }
    return kExitPrecondition;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitPrecondition;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.error_class() == ErrorClass::Precondition ? kExitPrecondition : kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
}
