#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shrinkcast/data.hpp"

namespace shrinkcast {

enum class WeightScheme { kUniform, kCentre, kTails, kRight, kLeft };

inline constexpr std::array<WeightScheme, 5> kAllSchemes = {
    WeightScheme::kUniform, WeightScheme::kCentre, WeightScheme::kTails, WeightScheme::kRight,
    WeightScheme::kLeft};

std::string_view to_string(WeightScheme s) noexcept;
WeightScheme parse_weight_scheme(std::string_view token);

// v(pi): uniform 1, centre pi(1-pi), tails (2pi-1)^2, right pi^2, left (1-pi)^2.
double scheme_weight(WeightScheme s, double pi) noexcept;

double rmse(std::span<const double> actuals, std::span<const double> predictions);

// model / benchmark; below 1 means the model beats the benchmark.
double relative_metric(double model_value, double benchmark_value);

// (y - q)(pi - 1{y <= q})
double quantile_score(double y, double q, double pi);

// (1/19) sum_j v(j/20) QS_{j/20}(q_j, y) over the 19-level grid.
double qwcrps(std::span<const double> quantile_values, double y, WeightScheme scheme);

// E|X - y| - E|X - X'|/2 over the empirical draws, via sorting (O(n log n)).
double crps_sample(std::span<const double> draws, double y);

// Same quantity from the pairwise double sum, OpenMP-parallel over rows.
double crps_sample_pairwise(std::span<const double> draws, double y);

// Threshold-weighted CRPS, integral of u(z) (F(z) - 1{y <= z})^2 over [lo, hi]
// by the trapezoid rule on `steps` intervals. Kept for cross-checks.
double threshold_weighted_crps(const std::function<double(double)>& cdf, double y,
                               const std::function<double(double)>& weight, double lo, double hi,
                               std::size_t steps);

// Running sum of model - benchmark log scores over aligned dates.
std::vector<double> cumulative_lpl(std::span<const double> model_scores,
                                   std::span<const double> bench_scores,
                                   std::span<const YearMonth> model_dates = {},
                                   std::span<const YearMonth> bench_dates = {});

// One cell of the evaluation table. Empty value marks an empty period.
struct ScoreRow {
  std::string model;
  std::string prior;
  std::string size;
  bool sv = false;
  int horizon = 1;
  std::string period;
  std::string metric;  // rmse | qwcrps | lpl
  std::string scheme;  // weighting scheme for qwcrps, "-" otherwise
  std::optional<double> value;
  std::optional<double> relative;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;

  const ScoreRow* find(std::string_view model, int horizon, std::string_view period,
                       std::string_view metric, std::string_view scheme = "-") const;
};

}  // namespace shrinkcast
