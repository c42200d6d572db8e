#include "shrinkcast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "shrinkcast/error.hpp"
#include "shrinkcast/random.hpp"

namespace shrinkcast {

SynthData make_synthetic(const SynthOptions& o) {
  if (o.series < 2) throw ArgumentError("synthetic panel needs a target and at least one predictor");
  if (o.sparsity > o.series - 1) {
    throw ArgumentError("sparsity " + std::to_string(o.sparsity) + " exceeds the predictor count " +
                        std::to_string(o.series - 1));
  }
  if (o.length < 12 + 24) throw ArgumentError("synthetic panel needs at least 36 observations");
  if (!(std::abs(o.predictor_rho) < 1.0)) throw ArgumentError("predictor_rho must lie in (-1, 1)");
  if (!(o.noise_sd > 0.0)) throw ArgumentError("noise_sd must be positive");

  Rng rng(o.seed);
  const std::size_t K = o.series;
  const std::size_t n = o.length - 12;  // months with a year-over-year rate
  const std::size_t burn = 60;

  std::vector<std::size_t> perm(K - 1);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  std::vector<std::size_t> chosen(perm.begin(), perm.begin() + static_cast<long>(o.sparsity));
  std::sort(chosen.begin(), chosen.end());

  std::vector<double> b(K, 0.0);
  std::vector<double> coeffs;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const double mag = chosen.size() > 1 ? 1.0 - 0.5 * static_cast<double>(i) / static_cast<double>(chosen.size() - 1) : 1.0;
    b[chosen[i]] = i % 2 == 0 ? mag : -mag;
    coeffs.push_back(b[chosen[i]]);
  }

  std::vector<double> mu(K);
  for (std::size_t k = 1; k < K; ++k) mu[k] = 1.0 + 3.0 * rng.uniform();

  Eigen::MatrixXd rate(n + burn, K);
  for (std::size_t k = 1; k < K; ++k) rate(0, static_cast<Eigen::Index>(k)) = mu[k];
  rate(0, 0) = 2.5;
  rate(1, 0) = 2.5;
  const double sd_x = 1.0;
  for (std::size_t t = 1; t < n + burn; ++t) {
    const auto ti = static_cast<Eigen::Index>(t);
    for (std::size_t k = 1; k < K; ++k) {
      const auto ki = static_cast<Eigen::Index>(k);
      rate(ti, ki) = mu[k] + o.predictor_rho * (rate(ti - 1, ki) - mu[k]) + sd_x * rng.normal();
    }
    if (t < 2) continue;
    double v = 1.25 + 0.4 * rate(ti - 1, 0) + 0.1 * rate(ti - 2, 0);
    for (auto k : chosen) v += b[k] * (rate(ti - 1, static_cast<Eigen::Index>(k)) - mu[k]);
    rate(ti, 0) = v + o.noise_sd * rng.normal();
  }
  Eigen::MatrixXd yoy_values = rate.bottomRows(static_cast<Eigen::Index>(n));
  if ((yoy_values.array() <= -100.0).any()) throw InternalStateError("synthetic rate below -100%");

  Eigen::MatrixXd levels(static_cast<Eigen::Index>(o.length), static_cast<Eigen::Index>(K));
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(K); ++k) {
    for (Eigen::Index t = 0; t < 12; ++t) levels(t, k) = 100.0 * std::exp(0.002 * rng.normal());
    for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(n); ++t) {
      levels(t + 12, k) = levels(t, k) * (1.0 + yoy_values(t, k) / 100.0);
    }
  }

  std::vector<std::string> names{"CPI"};
  for (std::size_t k = 1; k < K; ++k) {
    std::string s = std::to_string(k);
    if (s.size() < 2) s.insert(0, "0");
    names.push_back("X" + s);
  }
  std::vector<YearMonth> dates;
  std::vector<YearMonth> yoy_dates;
  for (std::size_t t = 0; t < o.length; ++t) {
    dates.push_back(o.start.plus_months(static_cast<long>(t)));
    if (t >= 12) yoy_dates.push_back(dates.back());
  }

  SynthData out{TimeSeriesFrame(dates, names, std::move(levels)),
                TimeSeriesFrame(yoy_dates, names, std::move(yoy_values)),
                {},
                chosen,
                coeffs,
                o};
  for (auto k : chosen) out.true_names.push_back(names[k]);
  return out;
}

std::string synth_manifest(const SynthData& d) {
  nlohmann::ordered_json j;
  j["seed"] = d.options.seed;
  j["length"] = d.options.length;
  j["series"] = d.options.series;
  j["sparsity"] = d.options.sparsity;
  j["start"] = d.options.start.str();
  j["noise_sd"] = d.options.noise_sd;
  j["predictor_rho"] = d.options.predictor_rho;
  j["target"] = d.levels.names().front();
  j["target_equation"] = "yoy_{t+1} = 1.25 + 0.4 yoy_t + 0.1 yoy_{t-1} + sum_k b_k (x_{k,t} - mean_k) + e";
  j["true_predictors"] = d.true_names;
  j["true_columns"] = d.true_columns;
  j["coefficients"] = d.coefficients;
  return j.dump(2) + "\n";
}

}  // namespace shrinkcast
