#include "lsc/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lsc/eigensolve.hpp"
#include "lsc/io.hpp"
#include "lsc/kernels.hpp"
#include "lsc/semiclassics.hpp"

namespace lsc::cli {

using nlohmann::json;

namespace {

std::vector<double> parse_numbers(const std::vector<std::string>& parts) {
  std::string text;
  for (const std::string& p : parts) text += (text.empty() ? "" : ",") + p;
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ';')) {
    std::istringstream group(token);
    std::string item;
    while (std::getline(group, item, ',')) {
      auto first = item.find_first_not_of(" \t[]");
      if (first == std::string::npos) continue;
      auto last = item.find_last_not_of(" \t[]");
      std::string s = item.substr(first, last - first + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == s.size(), ErrorCode::InvalidArgument, "not a number: '" + s + "'");
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Point> well_points(const RunConfig& c) {
  std::vector<Point> pts;
  if (c.wells.empty()) return pts;
  require(c.wells.size() % static_cast<std::size_t>(c.dim) == 0, ErrorCode::InvalidArgument,
          "wells: coordinate count is not a multiple of dim");
  for (std::size_t i = 0; i < c.wells.size(); i += c.dim)
    pts.emplace_back(c.wells.begin() + i, c.wells.begin() + i + c.dim);
  return pts;
}

Potential make_potential(const RunConfig& c) {
  return potentials::by_name(c.potential, c.omega, well_points(c), c.dim);
}

double scalar_omega(const RunConfig& c) { return c.omega.empty() ? 1.0 : c.omega.front(); }

json base_params(const RunConfig& c) {
  json p;
  p["potential"] = c.potential;
  p["dim"] = c.dim;
  p["omega"] = c.omega;
  p["wells"] = c.wells;
  p["gamma"] = c.gamma;
  p["N"] = c.N;
  p["kappa"] = c.kappa;
  p["nmax"] = c.nmax;
  p["threads"] = c.threads;
  return p;
}

int finish(const RunConfig& c, const std::string& experiment, const io::CsvTable& table, json params, bool pass,
           json measured) {
  table.write(c.out);
  if (!c.json.empty()) {
    std::string csv_path = c.out.empty() || c.out == "-" ? "-" : c.out;
    io::write_json(io::summary(experiment, params, pass, measured, csv_path), c.json);
  }
  return pass ? kSuccess : kExperimentFailure;
}

int cmd_spectrum(const RunConfig& c) {
  json params = base_params(c);
  params["operator"] = c.op;
  params["box"] = c.box;
  params["count"] = c.count;
  json measured;
  std::size_t k = static_cast<std::size_t>(c.count);

  if (c.op == "hn") {
    require(c.N.size() == 1 && c.gamma.size() == 1, ErrorCode::InvalidArgument,
            "spectrum --operator hn takes one N and one gamma");
    Potential v = make_potential(c);
    ScalingParams p(c.N.front(), c.gamma.front(), scalar_omega(c));
    HNSolution s = solve_HN(v, p, k, c.box);
    if (!c.dump_matrix.empty()) {
      LatticeBox box = LatticeBox::symmetric(v.dim(), s.half_width);
      (s.prescaled ? assemble_HN_prescaled(v, p, box) : assemble_HN(v, p, box)).dump(c.dump_matrix);
    }
    measured["half_width"] = s.half_width;
    measured["prescaled"] = s.prescaled;
    measured["log_scale"] = s.log_scale;
    measured["truncation_converged"] = s.converged;
    return finish(c, "spectrum", io::spectrum_csv(s.values), params, true, measured);
  }

  std::function<SymmetricLatticeOperator(long)> build;
  long start = 8;
  if (c.op == "laplacian") {
    require(c.box > 0, ErrorCode::InvalidArgument, "spectrum --operator laplacian needs --box");
    int dim = c.dim;
    build = [dim](long m) { return assemble_laplacian(LatticeBox::symmetric(dim, m)); };
  } else if (c.op == "hkappa" || c.op == "modified") {
    require(c.kappa.size() == 1, ErrorCode::InvalidArgument, "spectrum needs exactly one --kappa");
    double kappa = c.kappa.front();
    if (c.op == "hkappa") {
      build = [kappa](long m) { return assemble_Hkappa(kappa, LatticeBox::interval(-m, m)); };
    } else {
      ModifiedPotentialParams mp(kappa, c.delta_spike);
      start = mp.spike_location() + 1;
      build = [mp](long m) { return assemble_modified(mp, LatticeBox::interval(-m, m)); };
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown operator '" + c.op + "'");
  }

  SpectrumResult r;
  bool one_d = c.op != "laplacian" || c.dim == 1;
  if (c.box > 0) {
    SymmetricLatticeOperator op = build(c.box);
    r = eigs(op, k, one_d);
    r.truncation_converged = true;
  } else {
    AutoBoxOptions opts;
    opts.start = start;
    opts.tol = c.tol_box;
    r = solve_autosized(build, k, opts, one_d);
  }
  if (!c.dump_matrix.empty()) build(r.box.upper(0)).dump(c.dump_matrix);

  measured["half_width"] = r.box.upper(0);
  measured["truncation_converged"] = r.truncation_converged;
  json clusters = json::array();
  for (auto [a, b] : find_clusters(r.values, c.tol_cluster)) clusters.push_back({a, b});
  measured["clusters"] = clusters;
  if (one_d) {
    json nodal = json::array();
    for (std::size_t i = 0; i < r.vectors.size(); ++i) {
      NodalReport nr = nodal_domains(r.vectors[i], c.tol_nodal);
      nodal.push_back({{"n", i},
                       {"domains", nr.domains},
                       {"symmetry", to_string(classify_symmetry(r.box, r.vectors[i]))},
                       {"residual", r.residuals.at(i)}});
    }
    measured["eigenvectors"] = nodal;
  }
  return finish(c, "spectrum", io::spectrum_csv(r.values), params, true, measured);
}

int cmd_sigma(const RunConfig& c) {
  Potential v = make_potential(c);
  SigmaSequence s = sigma_enumerate(v, static_cast<std::size_t>(c.count));
  json params = base_params(c);
  params["count"] = c.count;
  json measured;
  measured["wells"] = v.wells().size();
  return finish(c, "sigma", io::sigma_csv(s), params, true, measured);
}

int cmd_converge(const RunConfig& c) {
  require(c.gamma.size() == 1, ErrorCode::InvalidArgument, "converge takes one gamma");
  Potential v = make_potential(c);
  ConvergenceTable t = converge_study(v, c.gamma.front(), c.N, c.nmax);
  bool pass = true;
  for (bool d : t.decreasing) pass = pass && d;
  json measured;
  measured["decreasing"] = t.decreasing;
  measured["order_estimates"] = t.order_estimates;
  return finish(c, "converge", io::converge_csv(t), base_params(c), pass, measured);
}

int cmd_kappa(const RunConfig& c) {
  KappaTable t = harmonic_kappa_study(scalar_omega(c), c.kappa, c.nmax);
  bool pass = true;
  for (bool d : t.strictly_decreasing) pass = pass && d;
  json measured;
  measured["strictly_decreasing"] = t.strictly_decreasing;
  measured["order_estimates"] = t.order_estimates;
  return finish(c, "kappa", io::kappa_csv(t), base_params(c), pass, measured);
}

int cmd_regimes(const RunConfig& c, double tol_slope, double tol_critical) {
  RegimeSweep s = regime_sweep(scalar_omega(c), c.gamma, c.N, c.nmax);
  bool pass = true;
  json slopes = json::array();
  for (const RegimeRow& r : s.rows) {
    pass = pass && std::abs(r.slope_fit - r.slope_pred) <= tol_slope;
    slopes.push_back({{"gamma", r.gamma}, {"n", r.n}, {"slope_fit", r.slope_fit}, {"slope_pred", r.slope_pred}});
  }
  json spread = json::array();
  for (auto [g, v] : s.critical_spread) {
    pass = pass && v <= tol_critical;
    spread.push_back({{"gamma", g}, {"relative_spread", v}});
  }
  json measured;
  measured["slopes"] = slopes;
  measured["critical_spread"] = spread;
  int code = finish(c, "regimes", io::regimes_csv(s), base_params(c), pass, measured);
  if (!c.out.empty() && c.out != "-") io::regime_points_csv(s).write(c.out + ".points.csv");
  return code;
}

int cmd_quasimode(const RunConfig& c) {
  std::vector<QuasimodeRow> rows = quasimode_diagnostics(c.nmax, c.kappa);
  bool pass = true;
  double worst = 0.0;
  for (const QuasimodeRow& r : rows) {
    pass = pass && r.ritz_ratio >= r.eigen_ratio * (1.0 - 1e-12);
    worst = std::max(worst, r.residual_sup_scaled);
  }
  json measured;
  measured["max_residual_over_kappa4"] = worst;
  return finish(c, "quasimode", io::quasimode_csv(rows), base_params(c), pass, measured);
}

int cmd_intervals(const RunConfig& c) {
  require(c.kappa.size() == 1, ErrorCode::InvalidArgument, "intervals takes one kappa");
  LowerBoundReport r = interval_lowerbound_experiment(c.degree, c.kappa.front(), c.delta_spike, c.epsilon);
  json params = base_params(c);
  params["n"] = c.degree;
  params["delta_spike"] = c.delta_spike;
  params["epsilon"] = c.epsilon;
  json measured;
  measured["min_ground_ratio"] = r.min_ground_ratio;
  measured["target"] = r.target;
  measured["all_certified"] = r.all_certified;
  measured["half_width"] = r.half_width;
  measured["spike"] = r.spike;
  bool pass = r.all_certified && r.min_ground_ratio >= r.target;
  return finish(c, "intervals", io::intervals_csv(r), params, pass, measured);
}

int cmd_modified(const RunConfig& c) {
  std::vector<ModifiedRow> rows = modified_vs_plain(c.nmax, c.kappa, c.delta_spike);
  bool pass = true;
  double worst = 0.0;
  for (const ModifiedRow& r : rows) {
    pass = pass && r.ordered;
    worst = std::max(worst, r.scaled_gap);
  }
  json params = base_params(c);
  params["delta_spike"] = c.delta_spike;
  json measured;
  measured["max_scaled_gap"] = worst;
  return finish(c, "modified", io::modified_csv(rows), params, pass, measured);
}

int cmd_ims(const RunConfig& c) {
  require(c.N.size() == 1 && c.gamma.size() == 1, ErrorCode::InvalidArgument, "ims takes one N and one gamma");
  Potential v = make_potential(c);
  ScalingParams p(c.N.front(), c.gamma.front(), scalar_omega(c));
  ImsReport r = ims_general_experiment(v, p, c.delta_cut, c.nmax);
  bool pass = r.identity_residual <= 1e-12;
  json wells = json::array();
  for (const ImsWellReport& w : r.wells) {
    pass = pass && w.commutator_norm <= w.commutator_bound;
    wells.push_back({{"well", w.well},
                     {"commutator_norm", w.commutator_norm},
                     {"commutator_bound", w.commutator_bound},
                     {"potential_error", w.potential_error},
                     {"potential_scale", w.potential_scale}});
  }
  json params = base_params(c);
  params["delta_cut"] = c.delta_cut;
  json measured;
  measured["identity_residual"] = r.identity_residual;
  measured["inner_radius"] = r.inner_radius;
  measured["outer_commutator_norm"] = r.outer_commutator_norm;
  measured["outside_floor"] = r.outside_floor;
  measured["wells"] = wells;
  measured["ratios"] = r.ratios;
  measured["targets"] = r.targets;
  return finish(c, "ims", io::ims_csv(r), params, pass, measured);
}

int cmd_validate(const RunConfig& c) {
  Potential v = make_potential(c);
  ValidationReport r = validate_assumptions(v, c.scan_radius, c.grid_step);
  io::CsvTable t({"check", "ok", "value"});
  t.add({"nonnegative", r.nonnegative ? "1" : "0", io::fmt(r.min_value)});
  t.add({"wells", r.wells_ok ? "1" : "0", std::to_string(r.well_count)});
  t.add({"isolated_zeros", r.unregistered_zeros.empty() ? "1" : "0", std::to_string(r.unregistered_zeros.size())});
  t.add({"positive_at_infinity", r.positive_at_infinity ? "1" : "0", io::fmt(r.min_outside)});
  json params = base_params(c);
  params["scan_radius"] = c.scan_radius;
  params["grid_step"] = c.grid_step;
  json measured;
  measured["min_value"] = r.min_value;
  measured["min_outside"] = r.min_outside;
  measured["well_messages"] = r.well_messages;
  measured["unregistered_zeros"] = r.unregistered_zeros;
  measured["grid_points"] = r.grid_points;
  measured["smoothness"] = r.smoothness;
  t.write(c.out);
  if (!c.json.empty())
    io::write_json(io::summary("validate", params, r.passed(), measured, c.out.empty() ? "-" : c.out), c.json);
  for (const std::string& m : r.well_messages) std::cerr << m << '\n';
  return r.passed() ? kSuccess : kValidationFailure;
}

}  // namespace

void RunConfig::validate() const {
  require(delta_spike > 0.0 && delta_spike < 0.5, ErrorCode::InvalidArgument, "delta_spike must lie in (0, 0.5)");
  require(delta_cut > 0.0, ErrorCode::InvalidArgument, "delta_cut must be positive");
  require(epsilon > 0.0 && epsilon < 1.0, ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  require(dim >= 1, ErrorCode::InvalidArgument, "dim must be at least 1");
  require(nmax >= 0, ErrorCode::InvalidArgument, "nmax must be nonnegative");
  require(count >= 1, ErrorCode::InvalidArgument, "count must be positive");
  require(threads >= 0, ErrorCode::InvalidArgument, "threads must be nonnegative");
  for (double g : gamma) require(std::isfinite(g), ErrorCode::InvalidArgument, "gamma must be finite");
  for (std::size_t i = 0; i < N.size(); ++i) {
    require(N[i] >= 1, ErrorCode::InvalidArgument, "N must be a positive integer");
    require(i == 0 || N[i] > N[i - 1], ErrorCode::InvalidArgument, "N list must be strictly increasing");
  }
  for (double k : kappa) require(k > 0.0 && std::isfinite(k), ErrorCode::InvalidArgument, "kappa must be positive");
  for (double w : omega) require(w > 0.0 && std::isfinite(w), ErrorCode::InvalidArgument, "omega must be positive");
  for (double tol : {tol_box, tol_nodal, tol_cluster})
    require(tol > 0.0, ErrorCode::InvalidArgument, "tolerances must be positive");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::Overflow:
    case ErrorCode::IllConditionedSpan:
      return kSolverFailure;
    case ErrorCode::NotAZero:
    case ErrorCode::NonPositiveHessian:
      return kValidationFailure;
    case ErrorCode::AllZero:
    case ErrorCode::NonPositiveFunction:
    case ErrorCode::ZeroVector:
      return kExperimentFailure;
    default:
      return kInvalidConfig;
  }
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Discrete Schrödinger operators in the semiclassical limit", "lsc"};
  app.set_config("--config", "", "key=value configuration file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::vector<std::string> wells, gammas, Ns, kappas, omegas;
  double tol_slope = 0.1;
  double tol_critical = 1e-12;

  app.add_option("--potential", c.potential, "harmonic | double_well | double_well_sum | multi_well");
  app.add_option("--omega", omegas, "frequencies, comma separated");
  app.add_option("--wells", wells, "well centres; ';' between wells, ',' between coordinates");
  app.add_option("--dim", c.dim, "spatial dimension");
  app.add_option("--gamma", gammas, "gamma value or comma separated grid");
  app.add_option("--N", Ns, "N list, strictly increasing");
  app.add_option("--kappa", kappas, "kappa list");
  app.add_option("--nmax", c.nmax, "highest level index");
  app.add_option("--n", c.degree, "Hermite degree for the interval decomposition");
  app.add_option("--count", c.count, "number of eigenvalues or levels");
  app.add_option("--delta-spike,--delta_spike", c.delta_spike, "spike exponent of the modified potential");
  app.add_option("--delta-cut,--delta_cut", c.delta_cut, "cube cutoff exponent for localisation");
  app.add_option("--epsilon", c.epsilon, "lower-bound slack");
  app.add_option("--operator", c.op, "laplacian | hkappa | hn | modified");
  app.add_option("--box", c.box, "fixed half-width (0 selects automatic sizing)");
  app.add_option("--out", c.out, "CSV path, '-' for stdout");
  app.add_option("--json", c.json, "JSON summary path");
  app.add_option("--dump-matrix,--dump_matrix", c.dump_matrix, "write the operator as row,col,value triplets");
  app.add_option("--threads", c.threads, "OpenMP thread count (0 keeps the default)")->envname("LSC_THREADS");
  app.add_option("--tol-box,--tol_box", c.tol_box, "box-truncation tolerance");
  app.add_option("--tol-nodal,--tol_nodal", c.tol_nodal, "nodal zero threshold");
  app.add_option("--tol-cluster,--tol_cluster", c.tol_cluster, "relative cluster gap");
  app.add_option("--tol-slope,--tol_slope", tol_slope, "slope tolerance for regimes");
  app.add_option("--tol-critical,--tol_critical", tol_critical, "relative spread tolerance at gamma = -1");
  app.add_option("--scan-radius,--scan_radius", c.scan_radius, "validation scan radius");
  app.add_option("--grid-step,--grid_step", c.grid_step, "validation grid step");

  for (const char* name : {"spectrum", "sigma", "converge", "kappa", "regimes", "quasimode", "intervals", "modified",
                           "ims", "validate"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kSuccess : kInvalidConfig;
  }

  try {
    c.subcommand = app.get_subcommands().front()->get_name();
    if (!omegas.empty()) c.omega = parse_numbers(omegas);
    if (!wells.empty()) c.wells = parse_numbers(wells);
    if (!gammas.empty()) c.gamma = parse_numbers(gammas);
    if (!kappas.empty()) c.kappa = parse_numbers(kappas);
    for (double v : parse_numbers(Ns)) {
      require(v == std::floor(v), ErrorCode::InvalidArgument, "N must be an integer");
      c.N.push_back(static_cast<long>(v));
    }
    c.validate();
    if (c.threads > 0) kernels::set_threads(c.threads);

    const std::string& s = c.subcommand;
    if (s == "spectrum") return cmd_spectrum(c);
    if (s == "sigma") return cmd_sigma(c);
    if (s == "converge") return cmd_converge(c);
    if (s == "kappa") return cmd_kappa(c);
    if (s == "regimes") return cmd_regimes(c, tol_slope, tol_critical);
    if (s == "quasimode") return cmd_quasimode(c);
    if (s == "intervals") return cmd_intervals(c);
    if (s == "modified") return cmd_modified(c);
    if (s == "ims") return cmd_ims(c);
    return cmd_validate(c);
  } catch (const Error& e) {
    std::cerr << "lsc: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "lsc: " << e.what() << '\n';
    return kInvalidConfig;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"lsc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lsc::cli
