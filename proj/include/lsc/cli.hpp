#pragma once

#include <string>
#include <vector>

#include "lsc/error.hpp"

namespace lsc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidConfig = 2,
  kValidationFailure = 3,
  kSolverFailure = 4,
  kExperimentFailure = 5,
};

struct RunConfig {
  std::string subcommand;
  std::string potential = "harmonic";
  std::vector<double> omega;
  std::vector<double> wells;  // flattened centres, `dim` numbers each
  int dim = 1;
  std::vector<double> gamma{0.0};
  std::vector<long> N;
  std::vector<double> kappa;
  int nmax = 3;
  int degree = 1;
  long count = 10;
  double delta_spike = 0.25;
  double delta_cut = 0.25;
  double epsilon = 0.1;
  std::string op = "hkappa";
  long box = 0;
  std::string out;
  std::string json;
  std::string dump_matrix;
  int threads = 0;
  double tol_box = 1e-11;
  double tol_nodal = 1e-9;
  double tol_cluster = 1e-10;
  double scan_radius = 10.0;
  double grid_step = 0.01;

  // Throws Error(InvalidArgument) on inconsistent settings.
  void validate() const;
};

int exit_code_for(ErrorCode code);

// Entry point of the `lsc` tool; argv[0] is the program name.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace lsc::cli
