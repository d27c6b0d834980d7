#include "lsc/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "lsc/error.hpp"

namespace lsc::io {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {
std::string fmt(long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
}  // namespace

void CsvTable::add(std::vector<std::string> row) {
  require(row.size() == header_.size(), ErrorCode::InvalidArgument, "CSV row width differs from header");
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

void CsvTable::write(const std::string& path) const {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  write(os);
}

CsvTable spectrum_csv(const std::vector<double>& values) {
  CsvTable t({"n", "E_n"});
  for (std::size_t i = 0; i < values.size(); ++i) t.add({fmt(i), fmt(values[i])});
  return t;
}

CsvTable sigma_csv(const SigmaSequence& s) {
  CsvTable t({"n", "e_n"});
  for (std::size_t i = 0; i < s.entries.size(); ++i) t.add({fmt(i), fmt(s.entries[i].value)});
  return t;
}

CsvTable kappa_csv(const KappaTable& tab) {
  CsvTable t({"kappa", "n", "E_n", "ratio", "target", "abs_err"});
  for (const auto& r : tab.rows) t.add({fmt(r.kappa), fmt(r.n), fmt(r.E_n), fmt(r.ratio), fmt(r.target), fmt(r.abs_err)});
  return t;
}

CsvTable converge_csv(const ConvergenceTable& tab) {
  CsvTable t({"gamma", "N", "n", "E_n", "lambda_N", "ratio", "target", "abs_err"});
  for (const auto& r : tab.rows)
    t.add({fmt(r.gamma), fmt(r.N), fmt(r.n), fmt(r.E_n), fmt(r.lambda_N), fmt(r.ratio), fmt(r.target), fmt(r.abs_err)});
  return t;
}

CsvTable regimes_csv(const RegimeSweep& s) {
  CsvTable t({"gamma", "n", "slope_fit", "slope_pred", "limit_const_fit", "limit_const_pred"});
  for (const auto& r : s.rows)
    t.add({fmt(r.gamma), fmt(r.n), fmt(r.slope_fit), fmt(r.slope_pred), fmt(r.limit_const_fit), fmt(r.limit_const_pred)});
  return t;
}

CsvTable regime_points_csv(const RegimeSweep& s) {
  CsvTable t({"gamma", "N", "n", "E_n", "prescaled", "log_scale"});
  for (const auto& p : s.points)
    for (std::size_t n = 0; n < p.E.size(); ++n)
      t.add({fmt(p.gamma), fmt(p.N), fmt(n), fmt(p.E[n]), fmt(p.prescaled), fmt(p.log_scale)});
  return t;
}

CsvTable intervals_csv(const LowerBoundReport& r) {
  CsvTable t({"index", "lo", "hi", "beta", "unbounded", "ground_ratio", "method", "certificate", "min_slack_ratio",
              "flat_certificate", "flat_min_slack_ratio"});
  for (const auto& i : r.intervals)
    t.add({fmt(i.piece.index), fmt(i.piece.lo), fmt(i.piece.hi), fmt(i.piece.beta), fmt(i.piece.unbounded),
           fmt(i.ground_ratio), i.method, fmt(i.certificate), fmt(i.min_slack_ratio),
           i.piece.unbounded ? fmt(i.flat_certificate) : "", i.piece.unbounded ? fmt(i.flat_min_slack_ratio) : ""});
  return t;
}

CsvTable modified_csv(const std::vector<ModifiedRow>& rows) {
  CsvTable t({"kappa", "n", "E_plain", "E_modified", "scaled_gap", "ordered", "spike", "half_width"});
  for (const auto& r : rows)
    t.add({fmt(r.kappa), fmt(r.n), fmt(r.E_plain), fmt(r.E_modified), fmt(r.scaled_gap), fmt(r.ordered), fmt(r.spike),
           fmt(r.half_width)});
  return t;
}

CsvTable quasimode_csv(const std::vector<QuasimodeRow>& rows) {
  CsvTable t({"n", "kappa", "residual_sup_scaled", "gram_deviation", "max_offdiag_gram", "ritz_ratio", "eigen_ratio"});
  for (const auto& r : rows)
    t.add({fmt(r.n), fmt(r.kappa), fmt(r.residual_sup_scaled), fmt(r.gram_deviation), fmt(r.max_offdiag_gram),
           fmt(r.ritz_ratio), fmt(r.eigen_ratio)});
  return t;
}

CsvTable ims_csv(const ImsReport& r) {
  CsvTable t({"well", "commutator_norm", "commutator_bound", "potential_error", "potential_scale", "potential_ratio"});
  for (const auto& w : r.wells)
    t.add({fmt(w.well), fmt(w.commutator_norm), fmt(w.commutator_bound), fmt(w.potential_error), fmt(w.potential_scale),
           fmt(w.potential_error / w.potential_scale)});
  return t;
}

nlohmann::json summary(const std::string& experiment, const nlohmann::json& params, bool pass,
                       const nlohmann::json& measured, const std::string& csv_path) {
  return {{"experiment", experiment},
          {"params", params},
          {"pass", pass},
          {"measured_constants", measured},
          {"rows_csv_path", csv_path.empty() || csv_path == "-" ? nlohmann::json(nullptr) : nlohmann::json(csv_path)}};
}

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
  os << j.dump(2) << '\n';
}

}  // namespace lsc::io
