#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsc/semiclassics.hpp"

namespace lsc::io {

// 17 significant digits, so values round-trip exactly.
std::string fmt(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  void write(std::ostream& os) const;
  // "-" or empty writes to stdout.
  void write(const std::string& path) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

CsvTable spectrum_csv(const std::vector<double>& values);
CsvTable sigma_csv(const SigmaSequence& s);
CsvTable kappa_csv(const KappaTable& t);
CsvTable converge_csv(const ConvergenceTable& t);
CsvTable regimes_csv(const RegimeSweep& s);
CsvTable regime_points_csv(const RegimeSweep& s);
CsvTable intervals_csv(const LowerBoundReport& r);
CsvTable modified_csv(const std::vector<ModifiedRow>& rows);
CsvTable quasimode_csv(const std::vector<QuasimodeRow>& rows);
CsvTable ims_csv(const ImsReport& r);

// {experiment, params, pass, measured_constants, rows_csv_path}
nlohmann::json summary(const std::string& experiment, const nlohmann::json& params, bool pass,
                       const nlohmann::json& measured, const std::string& csv_path);
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace lsc::io
