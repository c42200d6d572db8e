#include "shrinkcast/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

std::string_view to_string(WeightScheme s) noexcept {
  switch (s) {
    case WeightScheme::kUniform: return "uniform";
    case WeightScheme::kCentre: return "centre";
    case WeightScheme::kTails: return "tails";
    case WeightScheme::kRight: return "right";
    case WeightScheme::kLeft: return "left";
  }
  return "?";
}

WeightScheme parse_weight_scheme(std::string_view token) {
  for (auto s : kAllSchemes) {
    if (to_string(s) == token) return s;
  }
  if (token == "center") return WeightScheme::kCentre;
  throw ArgumentError("unknown weighting scheme '" + std::string(token) + "'");
}

double scheme_weight(WeightScheme s, double pi) noexcept {
  switch (s) {
    case WeightScheme::kUniform: return 1.0;
    case WeightScheme::kCentre: return pi * (1.0 - pi);
    case WeightScheme::kTails: return (2.0 * pi - 1.0) * (2.0 * pi - 1.0);
    case WeightScheme::kRight: return pi * pi;
    case WeightScheme::kLeft: return (1.0 - pi) * (1.0 - pi);
  }
  return 0.0;
}

double rmse(std::span<const double> actuals, std::span<const double> predictions) {
  if (actuals.empty()) throw ArgumentError("RMSE of an empty sample");
  if (actuals.size() != predictions.size()) throw ArgumentError("RMSE inputs differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    const double e = actuals[i] - predictions[i];
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(actuals.size()));
}

double relative_metric(double model_value, double benchmark_value) {
  if (!(benchmark_value > 0.0)) {
    throw DomainError("benchmark value must be positive, got " + std::to_string(benchmark_value));
  }
  return model_value / benchmark_value;
}

double quantile_score(double y, double q, double pi) {
  if (!(pi > 0.0 && pi < 1.0)) throw ArgumentError("quantile level must lie in (0, 1)");
  return (y - q) * (pi - (y <= q ? 1.0 : 0.0));
}

double qwcrps(std::span<const double> quantile_values, double y, WeightScheme scheme) {
  constexpr std::size_t J = 20;
  if (quantile_values.size() != J - 1) {
    throw ArgumentError("qwCRPS expects 19 quantiles, got " + std::to_string(quantile_values.size()));
  }
  for (std::size_t j = 1; j < quantile_values.size(); ++j) {
    if (quantile_values[j] < quantile_values[j - 1]) {
      throw DataError("predictive quantiles are not monotone at level " + std::to_string(j + 1) + "/20");
    }
  }
  double acc = 0.0;
  for (std::size_t j = 1; j < J; ++j) {
    const double pi = static_cast<double>(j) / static_cast<double>(J);
    acc += scheme_weight(scheme, pi) * quantile_score(y, quantile_values[j - 1], pi);
  }
  return acc / static_cast<double>(J - 1);
}

double crps_sample(std::span<const double> draws, double y) {
  const std::size_t n = draws.size();
  if (n == 0) throw ArgumentError("CRPS of an empty draw set");
  std::vector<double> x(draws.begin(), draws.end());
  std::sort(x.begin(), x.end());
  double abs_dev = 0.0;
  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    abs_dev += std::abs(x[i] - y);
    // sum_{i,j} |x_i - x_j| = 2 sum_i (2i - n + 1) x_(i), 0-based i
    spread += (2.0 * static_cast<double>(i) - static_cast<double>(n) + 1.0) * x[i];
  }
  const double nn = static_cast<double>(n);
  return abs_dev / nn - spread / (nn * nn);
}

double crps_sample_pairwise(std::span<const double> draws, double y) {
  const auto n = static_cast<long>(draws.size());
  if (n == 0) throw ArgumentError("CRPS of an empty draw set");
  double abs_dev = 0.0;
  double pair_sum = 0.0;
#pragma omp parallel for reduction(+ : abs_dev, pair_sum) schedule(static)
  for (long i = 0; i < n; ++i) {
    abs_dev += std::abs(draws[static_cast<std::size_t>(i)] - y);
    double row = 0.0;
    for (long j = 0; j < n; ++j) row += std::abs(draws[static_cast<std::size_t>(i)] - draws[static_cast<std::size_t>(j)]);
    pair_sum += row;
  }
  const double nn = static_cast<double>(n);
  return abs_dev / nn - 0.5 * pair_sum / (nn * nn);
}

double threshold_weighted_crps(const std::function<double(double)>& cdf, double y,
                               const std::function<double(double)>& weight, double lo, double hi,
                               std::size_t steps) {
  if (!(hi > lo) || steps == 0) throw ArgumentError("integration range must be nonempty");
  const double h = (hi - lo) / static_cast<double>(steps);
  auto f = [&](double z) {
    const double d = cdf(z) - (y <= z ? 1.0 : 0.0);
    return weight(z) * d * d;
  };
  double acc = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i < steps; ++i) acc += f(lo + h * static_cast<double>(i));
  return acc * h;
}

std::vector<double> cumulative_lpl(std::span<const double> model_scores,
                                   std::span<const double> bench_scores,
                                   std::span<const YearMonth> model_dates,
                                   std::span<const YearMonth> bench_dates) {
  if (model_scores.size() != bench_scores.size()) {
    throw ArgumentError("log-score series differ in length");
  }
  if (model_dates.size() != bench_dates.size() ||
      (!model_dates.empty() && model_dates.size() != model_scores.size())) {
    throw ArgumentError("log-score date vectors are misaligned");
  }
  for (std::size_t i = 0; i < model_dates.size(); ++i) {
    if (!(model_dates[i] == bench_dates[i])) {
      throw ArgumentError("log-score series misaligned at " + model_dates[i].str() + " vs " +
                          bench_dates[i].str());
    }
  }
  std::vector<double> out(model_scores.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    acc += model_scores[i] - bench_scores[i];
    out[i] = acc;
  }
  return out;
}

const ScoreRow* ScoreTable::find(std::string_view model, int horizon, std::string_view period,
                                 std::string_view metric, std::string_view scheme) const {
  for (const auto& r : rows) {
    if (r.model == model && r.horizon == horizon && r.period == period && r.metric == metric &&
        r.scheme == scheme) {
      return &r;
    }
  }
  return nullptr;
}

}  // namespace shrinkcast
