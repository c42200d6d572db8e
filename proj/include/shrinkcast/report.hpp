#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "shrinkcast/csv.hpp"
#include "shrinkcast/harness.hpp"
#include "shrinkcast/scoring.hpp"

namespace shrinkcast {

// records.csv: one row per forecast; quantiles live in densities.csv under
// the same `density_row`.
std::string records_csv(const std::vector<ForecastRecord>& records);
std::string densities_csv(const std::vector<ForecastRecord>& records);
// kappa.csv: model, horizon, window, origin, target, predictor, kappa.
std::string kappa_csv(const ExperimentResult& result);

void write_forecast_outputs(const std::filesystem::path& dir, const ExperimentResult& result);
std::vector<ForecastRecord> read_records(const std::filesystem::path& dir);

std::string scores_csv(const ScoreTable& table);

// Relative metric laid out as: UC-SV row, then for each size section
// (AR(2), moderate, large) one row per shrinkage prior; columns are
// period x horizon. Missing cells are written as NA.
CsvTable paper_table(const ScoreTable& table, const std::string& metric, const std::string& scheme,
                     bool sv, const std::vector<int>& horizons, const std::vector<std::string>& periods);

// Writes scores.csv, table_rmse*.csv, table_qwcrps_<scheme>*.csv and the
// lpl/ series. Returns the list of files written.
std::vector<std::filesystem::path> write_score_outputs(const std::filesystem::path& dir,
                                                       const ScoreTable& table,
                                                       const std::vector<ForecastRecord>& records,
                                                       const std::vector<Period>& periods);

// Top-k kappa per forecast window for one model, from kappa.csv.
// Rows: model, horizon, window, target, rank, predictor, kappa.
CsvTable kappa_ranking(const std::filesystem::path& dir, const std::string& model, std::size_t top_k);

}  // namespace shrinkcast
