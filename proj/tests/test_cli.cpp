#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliResult run_cli(const std::string& args) {
  const std::string out_file = "cli_stdout.tmp";
  const std::string cmd =
      std::string(EMSR_CLI_PATH) + " " + args + " >" + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult res;
  res.exit_code = WEXITSTATUS(status);
  res.out = slurp(out_file);
  std::remove(out_file.c_str());
  return res;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("phase subcommand prints the differential phase") {
  const CliResult res = run_cli("phase --species electron --d 0.1nm");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("2*delta_phi") != std::string::npos);
  CHECK(res.out.find("0.112848") != std::string::npos);  // mrad scale value
}

TEST_CASE("beta-sweep writes the documented csv") {
  const std::string csv = "beta_sweep_test.csv";
  const CliResult res =
      run_cli("beta-sweep --points 360 --d 0.1nm --quiet --out " + csv);
  CHECK(res.exit_code == 0);
  const auto rows = lines_of(slurp(csv));
  REQUIRE(rows.size() == 361);  // header + 360 points
  CHECK(rows[0] == "beta_rad,delta_phi_rad,visibility");
  std::remove(csv.c_str());
}

TEST_CASE("csv output is byte-identical across runs") {
  const std::string a = "det_a.csv", b = "det_b.csv";
  const std::string args =
      "protocol-a --d 0.1nm --Ne 2000 --seed 99 --quiet --out ";
  CHECK(run_cli(args + a).exit_code == 0);
  CHECK(run_cli(args + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("json output carries metadata") {
  const std::string j = "out_test.json";
  const CliResult res = run_cli("table --quiet --format json --out " + j);
  CHECK(res.exit_code == 0);
  const std::string text = slurp(j);
  CHECK(text.find("\"version\"") != std::string::npos);
  CHECK(text.find("\"config_hash\"") != std::string::npos);
  CHECK(text.find("two_delta_phi_rad") != std::string::npos);
  std::remove(j.c_str());
}

TEST_CASE("config file drives a protocol run") {
  const std::string cfg_path = "scenario_test.cfg";
  {
    std::ofstream cfg(cfg_path);
    cfg << "species = electron\n"
           "d = 0.1 nm\n"
           "B0 = 1.8 T\n"
           "bias_axis = x\n"
           "temperature = pure\n"
           "t0_phase_grid = 0\n"
           "phi_grid = linspace(0, 2pi, 9)\n"
           "N_e = 0\n"
           "seed = 5\n"
           "beam_energy = 200 keV\n";
  }
  const CliResult res = run_cli("protocol-a --config " + cfg_path);
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("differential_phase") != std::string::npos);
  CHECK(res.out.find("0.000112848") != std::string::npos);
  std::remove(cfg_path.c_str());
}

TEST_CASE("exit codes") {
  SUBCASE("unknown flag: 2") {
    CHECK(run_cli("phase --frobnicate 3").exit_code == 2);
  }
  SUBCASE("unknown subcommand: 2") {
    CHECK(run_cli("warp").exit_code == 2);
  }
  SUBCASE("malformed config: 2") {
    const std::string path = "bad_test.cfg";
    { std::ofstream f(path); f << "d = 0.1 parsec\n"; }
    const CliResult res = run_cli("fringe --config " + path);
    CHECK(res.exit_code == 2);
    CHECK(res.out.find("error: config:") != std::string::npos);
    std::remove(path.c_str());
  }
  SUBCASE("wrong bias axis for a protocol: 2") {
    CHECK(run_cli("protocol-a --bias-axis z").exit_code == 2);
  }
  SUBCASE("physical-domain violation: 3") {
    const CliResult res = run_cli("phase --d 0nm");
    CHECK(res.exit_code == 3);
    CHECK(res.out.find("error: domain:") != std::string::npos);
  }
  SUBCASE("quadrature budget exhausted: 4") {
    const CliResult res = run_cli("phase --d 0.1nm --max-evals 10");
    CHECK(res.exit_code == 4);
    CHECK(res.out.find("error: convergence:") != std::string::npos);
  }
  SUBCASE("help: 0") {
    CHECK(run_cli("--help").exit_code == 0);
  }
}

TEST_CASE("estimate subcommand reports the variance ratio") {
  const CliResult res =
      run_cli("estimate --phi 0 --Ne 100000 --trials 1000 --seed 42");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("crb") != std::string::npos);
  // parse "variance/crb       <value>" and pin the saturation window
  const std::string key = "variance/crb";
  const std::size_t pos = res.out.find(key);
  REQUIRE(pos != std::string::npos);
  const double ratio = std::atof(res.out.c_str() + pos + key.size());
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.3);
}

TEST_CASE("fringe subcommand scans the configured state") {
  const CliResult res = run_cli(
      "fringe --bias-axis z --d 1nm --temperature 77K --quiet --out fr.csv");
  CHECK(res.exit_code == 0);
  const auto rows = lines_of(slurp("fr.csv"));
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == "stage,t0_phase,phi,p_plus_model,n_plus,n_minus,"
                   "delta_phi_fit,visibility_fit,crb");
  std::remove("fr.csv");
}

TEST_CASE("check subcommand emits the validity report") {
  const CliResult res =
      run_cli("check --d 1nm --dz 1nm --drperp 0.05nm --B0 1.8T");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("delta_y_max") != std::string::npos);
  CHECK(res.out.find("kick_ratio") != std::string::npos);
  CHECK(res.out.find("flip_ratio") != std::string::npos);
}

TEST_CASE("resonance subcommand reports the argmax at omega0") {
  const CliResult res =
      run_cli("resonance --points 11 --span 0.05 --pulses 32 --quiet "
              "--out res_test.csv");
  CHECK(res.exit_code == 0);
  const auto rows = lines_of(slurp("res_test.csv"));
  REQUIRE(rows.size() == 12);
  CHECK(rows[0] == "omega_e,omega_e_over_omega0,signal");
  std::remove("res_test.csv");
}
