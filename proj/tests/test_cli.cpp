#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(HEUNPC_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("eigen: N=1 oracle values, ascending order") {
  RunResult r = run("eigen --general b=0,c=1,e=2 --N 1");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["schema"] == 1);
  REQUIRE(doc["eigenvalues_d"].size() == 2);
  double d0 = doc["eigenvalues_d"][0]["re"].get<double>();
  double d1 = doc["eigenvalues_d"][1]["re"].get<double>();
  CHECK(d0 == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(d1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("eigen: d = 0 = c case") {
  RunResult r = run("eigen --general c=0,e=3 --N 0");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc["eigenvalues_d"].size() == 1);
  CHECK(doc["eigenvalues_d"][0]["re"].get<double>() == 0.0);
}

TEST_CASE("eigen: missing criterion exits 2 naming the termination conditions") {
  RunResult r = run("eigen --general b=1,c=2,e=5 --N 1");
  CHECK(r.exit_code == 2);
}

TEST_CASE("parameter forms giving the same point produce identical reports") {
  // alpha=0, gamma=2 <-> (b,c,d,e)=(-2,1,-1,0) <-> theta0=1/2, thetaInf=3/2,
  // t=1, lambda=1/2 <-> xi=2, eta=-2.
  std::vector<RunResult> results = {
      run("classify --canonical a=0,b=2,g=2,d=0"),
      run("classify --general b=-2,c=1,d=-1,e=0"),
      run("classify --jm th0=0.5,thInf=1.5,t=1,lambda=0.5"),
      run("classify --p4 xi=2,eta=-2,t=1,lambda=0.5"),
  };
  json ref = json::parse(results[0].out);
  for (const auto& r : results) {
    REQUIRE(r.exit_code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["class"] == ref["class"]);
    CHECK(doc["theta0"] == ref["theta0"]);
    CHECK(doc["eta"] == ref["eta"]);
    CHECK(doc["witnesses"] == ref["witnesses"]);
  }
}

TEST_CASE("classify: random irrational thetas give None") {
  RunResult r = run("classify --jm th0=0.2137,thInf=0.8191,t=0");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["class"] == "None");
}

TEST_CASE("exactly one parameterization must be given") {
  RunResult r = run("classify --jm th0=0.5,thInf=0.5,t=0 --canonical a=0,b=0,g=0,d=0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("eval: eigen-solution residual column stays small") {
  RunResult r =
      run("eval --general b=0.4,c=-2,e=1.3 --N 2 --solution eigen:0 --grid circle:r=1,n=16 "
          "--format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "re_z,im_z,re_y,im_y,abs_err,residual,status");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    auto last_comma = line.rfind(',');
    CHECK(line.substr(last_comma + 1) == "ok");
    auto prev = line.rfind(',', last_comma - 1);
    double resid = std::stod(line.substr(prev + 1, last_comma - prev - 1));
    CHECK(resid < 1e-8);
  }
  CHECK(rows == 16);
}

TEST_CASE("eval: out-of-region series rows are marked, not fatal") {
  RunResult r =
      run("eval --general b=-2,c=0.6,d=0.3,e=1.1 --solution series:base "
          "--grid segment:z0=-4.6,z1=1.5,n=8 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("out-of-region") != std::string::npos);
  CHECK(r.out.find(",ok") != std::string::npos);
}

TEST_CASE("eval: glued entire solution reports a continuity column") {
  RunResult r =
      run("eval --general b=-1,c=-5.4,d=3.00033517557,e=0.8 --solution entire "
          "--grid segment:z0=-1.6,z1=0.4,n=5 --format csv");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "re_z,im_z,re_y,im_y,abs_err,residual,status,continuity");
  std::string line;
  while (std::getline(is, line)) {
    auto pos = line.rfind(',');
    double cont = std::stod(line.substr(pos + 1));
    CHECK(cont < 1e-6);
  }
}

TEST_CASE("atlas: three missing lines and deterministic files") {
  RunResult r = run("atlas --n-max 3");
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.out);
  int missing = 0;
  for (const auto& l : doc["lines"])
    if (l.contains("missing") && l["missing"].get<bool>()) ++missing;
  CHECK(missing == 3);
  RunResult csv = run("atlas --n-max 3 --format csv");
  CHECK(csv.out.rfind("family,label,", 0) == 0);
}

TEST_CASE("determinism: identical flags give byte-identical output") {
  for (const std::string& cmd :
       {std::string("eigen --general b=0.3,c=-3,e=0.9 --N 3"),
        std::string("eval --general b=0.4,c=-2,e=1.3 --N 2 --solution eigen:1 --grid circle:r=1.2,n=12 --seed 5 --format csv"),
        std::string("classify --jm th0=0.5,thInf=1.5,t=0"), std::string("atlas --n-max 4 --format csv")}) {
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("verify: selected suite passes; absurd tolerance fails with named invariant") {
  RunResult ok = run("verify --suite stokes");
  CHECK(ok.exit_code == 0);
  json doc = json::parse(ok.out);
  CHECK(doc["pass"] == true);
  REQUIRE(doc["checks"].size() == 1);
  CHECK(doc["checks"][0]["name"] == "stokes.grid");

  RunResult bad = run("verify --suite connection --tol 1e-20");
  CHECK(bad.exit_code == 3);
  json bdoc = json::parse(bad.out);
  CHECK(bdoc["pass"] == false);
  bool named = false;
  for (const auto& c : bdoc["checks"])
    if (c["pass"] == false && !c["name"].get<std::string>().empty()) named = true;
  CHECK(named);
}
