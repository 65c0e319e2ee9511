#pragma once

#include <string>
#include <vector>

#include "gnplate/config.hpp"

namespace gnplate {

struct CriterionRow {
  std::string criterion;
  double value = 0.0;
  std::string threshold;
  bool pass = false;
};

struct ExperimentResult {
  std::vector<CriterionRow> rows;
  [[nodiscard]] bool passed() const;
};

void write_summary_csv(const std::string& path, const std::vector<CriterionRow>& rows);

/// Runs the configured experiment and writes its CSVs and summary.csv into
/// out_dir (created if needed). Library errors are caught and recorded as an
/// `error` row, so summary.csv is written in every case.
ExperimentResult run_experiment(const Config& config, const std::string& out_dir);

}  // namespace gnplate
