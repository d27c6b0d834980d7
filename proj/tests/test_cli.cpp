#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lsc/cli.hpp"

using lsc::cli::run;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sigma writes the oscillator ladder") {
  CHECK(run({"sigma", "--potential", "harmonic", "--omega", "1", "--count", "4", "--out", "cli_sigma.csv"}) == 0);
  CHECK(slurp("cli_sigma.csv") == "n,e_n\n0,0.5\n1,1.5\n2,2.5\n3,3.5\n");
  std::remove("cli_sigma.csv");
}

TEST_CASE("spectrum of the three-point Laplacian") {
  CHECK(run({"spectrum", "--operator", "laplacian", "--box", "1", "--count", "3", "--out", "cli_lap.csv",
             "--dump-matrix", "cli_lap_matrix.csv"}) == 0);
  std::istringstream in(slurp("cli_lap.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,E_n");
  std::vector<double> ref{2.0 - std::sqrt(2.0), 2.0, 2.0 + std::sqrt(2.0)};
  for (double r : ref) {
    std::getline(in, line);
    double v = std::stod(line.substr(line.find(',') + 1));
    CHECK(v == doctest::Approx(r).epsilon(1e-12));
  }
  CHECK(slurp("cli_lap_matrix.csv").rfind("row,col,value\n0,0,2\n0,1,-1\n", 0) == 0);
  std::remove("cli_lap.csv");
  std::remove("cli_lap_matrix.csv");
}

TEST_CASE("regimes at γ = -1 with a JSON summary") {
  CHECK(run({"regimes", "--gamma", "-1", "--N", "2,4,8", "--nmax", "2", "--out", "cli_reg.csv", "--json",
             "cli_reg.json"}) == 0);
  auto j = nlohmann::json::parse(slurp("cli_reg.json"));
  CHECK(j["experiment"] == "regimes");
  CHECK(j["pass"] == true);
  CHECK(j["rows_csv_path"] == "cli_reg.csv");
  CHECK(j["measured_constants"]["critical_spread"][0]["relative_spread"].get<double>() <= 1e-12);
  CHECK(slurp("cli_reg.csv").rfind("gamma,n,slope_fit,slope_pred,limit_const_fit,limit_const_pred\n", 0) == 0);
  for (const char* f : {"cli_reg.csv", "cli_reg.json", "cli_reg.csv.points.csv"}) std::remove(f);
}

TEST_CASE("config file with flag overrides") {
  {
    std::ofstream cfg("cli_test.cfg");
    cfg << "potential = harmonic\nomega = 2\ncount = 5\n";
  }
  CHECK(run({"sigma", "--config", "cli_test.cfg", "--count", "2", "--out", "cli_cfg.csv"}) == 0);
  CHECK(slurp("cli_cfg.csv") == "n,e_n\n0,1\n1,3\n");
  {
    std::ofstream cfg("cli_test.cfg");
    cfg << "gamma = -1\nN = 2,4,8\nnmax = 1\ndelta_spike = 0.3\n";
  }
  CHECK(run({"regimes", "--config", "cli_test.cfg", "--out", "cli_cfg.csv"}) == 0);
  for (const char* f : {"cli_test.cfg", "cli_cfg.csv", "cli_cfg.csv.points.csv"}) std::remove(f);
}

TEST_CASE("output is identical across thread counts") {
  CHECK(run({"converge", "--potential", "double_well", "--gamma", "0", "--N", "32,64,128", "--nmax", "1",
             "--threads", "1", "--out", "cli_t1.csv"}) == 0);
  CHECK(run({"converge", "--potential", "double_well", "--gamma", "0", "--N", "32,64,128", "--nmax", "1",
             "--threads", "4", "--out", "cli_t4.csv"}) == 0);
  CHECK(slurp("cli_t1.csv") == slurp("cli_t4.csv"));
  CHECK(slurp("cli_t1.csv").rfind("gamma,N,n,E_n,lambda_N,ratio,target,abs_err\n", 0) == 0);
  std::remove("cli_t1.csv");
  std::remove("cli_t4.csv");
}

TEST_CASE("exit codes") {
  using namespace lsc::cli;
  CHECK(run({"sigma", "--count", "x"}) == kInvalidConfig);
  CHECK(run({"nonsense"}) == kInvalidConfig);
  CHECK(run({"intervals", "--kappa", "0.1", "--delta-spike", "0.6"}) == kInvalidConfig);
  CHECK(run({"regimes", "--N", "8,4,16", "--out", "cli_x.csv"}) == kInvalidConfig);
  CHECK(run({"intervals", "--n", "4", "--kappa", "2", "--out", "cli_x.csv"}) == kInvalidConfig);
  CHECK(run({"regimes", "--gamma", "0", "--N", "4,8,16", "--tol-slope", "1e-9", "--out", "cli_x.csv"}) ==
        kExperimentFailure);
  CHECK(run({"validate", "--potential", "double_well", "--out", "cli_x.csv"}) == kSuccess);
  CHECK(exit_code_for(lsc::ErrorCode::NonPositiveHessian) == kValidationFailure);
  CHECK(exit_code_for(lsc::ErrorCode::ConvergenceFailure) == kSolverFailure);
  CHECK(exit_code_for(lsc::ErrorCode::QuadratureFailure) == kSolverFailure);
  CHECK(exit_code_for(lsc::ErrorCode::BoxTooSmall) == kInvalidConfig);
  std::remove("cli_x.csv");
  std::remove("cli_x.csv.points.csv");
}

TEST_CASE("run config invariants") {
  lsc::cli::RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.N = {4, 4};
  CHECK_THROWS_AS(c.validate(), lsc::Error);
  c.N = {4, 8};
  c.delta_spike = 0.5;
  CHECK_THROWS_AS(c.validate(), lsc::Error);
  c.delta_spike = 0.25;
  c.gamma = {std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(c.validate(), lsc::Error);
}
