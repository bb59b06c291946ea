#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "minklab/graphgeom.hpp"

using namespace minklab;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MINKLAB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[512];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr)
    result.output += buf;
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("selftest passes and is deterministic") {
  const RunResult a = run_cli("selftest --samples 50");
  CHECK(a.code == 0);
  CHECK(a.output.find("selftest ok") != std::string::npos);
  const RunResult b = run_cli("selftest --samples 50");
  CHECK(b.output == a.output);
}

TEST_CASE("generated cap verifies clean, generated flat does not") {
  const std::string cap = tmp_path("cap.csv");
  const RunResult gen = run_cli("gen --kind cap --theta0 -2 --out " + cap);
  REQUIRE(gen.code == 0);

  const RunResult verify = run_cli("verify --surface " + cap + " --id all");
  CHECK(verify.code == 0);
  CHECK(verify.output.find("verify: PASS") != std::string::npos);
  CHECK(verify.output.find("[FAIL]") == std::string::npos);

  const std::string flat = tmp_path("flat.csv");
  REQUIRE(run_cli("gen --kind flat --R 1 --out " + flat).code == 0);
  const RunResult bad = run_cli("verify --surface " + flat + " --id all");
  CHECK(bad.code == 5);
  CHECK(bad.output.find("verify: FAIL") != std::string::npos);
}

TEST_CASE("gen output is byte identical across runs") {
  const std::string a = tmp_path("gen_a.csv");
  const std::string b = tmp_path("gen_b.csv");
  REQUIRE(run_cli("gen --kind cap --theta0 -1.5 --out " + a).code == 0);
  REQUIRE(run_cli("gen --kind cap --theta0 -1.5 --out " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("config errors exit with code 2") {
  CHECK(run_cli("gen --kind cap --theta0 -0.5 --out x.csv").code == 2);
  CHECK(run_cli("gen --kind wedge --out x.csv").code == 2);
  CHECK(run_cli("solve --domain trefoil").code == 2);
  CHECK(run_cli("verify --surface does_not_exist.csv").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("sweep --family moons").code == 2);
}

TEST_CASE("solve writes a loadable dump and a report, deterministically") {
  const std::string surf = tmp_path("solve.csv");
  const std::string rep = tmp_path("solve.json");
  const std::string args =
      "solve --domain disk --R 1 --n-r 16 --n-phi 32 --tol 1e-10 --out " +
      surf + " --report " + rep;
  const RunResult run = run_cli(args);
  REQUIRE(run.code == 0);
  CHECK(run.output.find("status=ok") != std::string::npos);

  const std::string dump = slurp(surf);
  std::istringstream is(dump);
  const LoadedSurface loaded = load_surface(is);
  CHECK(loaded.surf.source == GraphSurface::Source::solved);
  CHECK(loaded.surf.grid->n_r() == 16);
  CHECK(loaded.surf.spacelike);

  const std::string report = slurp(rep);
  CHECK(report.find("\"status\": \"ok\"") != std::string::npos);
  CHECK(report.find("\"converged\": true") != std::string::npos);

  const std::string surf2 = tmp_path("solve2.csv");
  const std::string rep2 = tmp_path("solve2.json");
  REQUIRE(run_cli("solve --domain disk --R 1 --n-r 16 --n-phi 32 "
                  "--tol 1e-10 --out " +
                  surf2 + " --report " + rep2)
              .code == 0);
  CHECK(slurp(surf2) == dump);
  CHECK(slurp(rep2) == report);
}

TEST_CASE("solve reads a config file with flag overrides") {
  const std::string cfg_path = tmp_path("run.cfg");
  {
    std::ofstream cfg(cfg_path);
    cfg << "# test configuration\n"
        << "domain = ellipse\n"
        << "a = 1.0\n"
        << "b = 1.2\n"
        << "n_r = 8\n"
        << "n_phi = 16\n"
        << "tol = 1e-9\n";
  }
  const std::string rep = tmp_path("cfg.json");
  const RunResult run = run_cli("solve --config " + cfg_path +
                                " --n-r 16 --report " + rep);
  REQUIRE(run.code == 0);
  const std::string report = slurp(rep);
  CHECK(report.find("\"n_r\": 16") != std::string::npos);
  CHECK(report.find("\"n_phi\": 16") != std::string::npos);
}

TEST_CASE("an exhausted iteration budget exits with code 3") {
  const RunResult run = run_cli(
      "solve --domain ellipse --a 1 --b 1.2 --n-r 8 --n-phi 16 "
      "--max-iters 1 --tol 1e-12");
  CHECK(run.code == 3);
  CHECK(run.output.find("non_convergence") != std::string::npos);
}

TEST_CASE("sweep writes the CSV and plot files") {
  const std::string out = tmp_path("sweep.csv");
  const std::string prefix = tmp_path("sweep");
  const RunResult run = run_cli(
      "sweep --family disk --params 1.0 --n-r 8 --n-phi 16 --tol 1e-8 "
      "--out " +
      out + " --plot-prefix " + prefix);
  REQUIRE(run.code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("family_param,", 0) == 0);
  CHECK(csv.find(",1\n") != std::string::npos);
  const std::string scaling = slurp(prefix + "_scaling.dat");
  CHECK(!scaling.empty());
}

TEST_CASE("verify accepts single ids and flags") {
  const std::string cap = tmp_path("cap_single.csv");
  REQUIRE(run_cli("gen --kind cap --theta0 -2 --out " + cap).code == 0);
  const RunResult fund = run_cli("verify --surface " + cap +
                                 " --id fundamental --flag euclidean");
  CHECK(fund.code == 0);
  CHECK(fund.output.find("fundamental (euclidean)") != std::string::npos);
  const RunResult bal = run_cli("verify --surface " + cap +
                                " --id cap_balance --k 2 --l 1");
  CHECK(bal.code == 0);
  const RunResult unknown =
      run_cli("verify --surface " + cap + " --id nonsense");
  CHECK(unknown.code == 2);
}
