#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "shrinkcast/gibbs.hpp"

namespace shrinkcast {

inline constexpr std::size_t kQuantileCount = 19;

// 0.05, 0.10, ..., 0.95
const std::array<double, kQuantileCount>& quantile_levels() noexcept;

// Equal-weight normal mixture, one component per posterior draw.
struct PredictiveDensity {
  Eigen::VectorXd component_means;
  Eigen::VectorXd component_vars;
  std::array<double, kQuantileCount> quantiles{};
  Eigen::VectorXd draws;  // optional simulated values (UC-SV)

  double mean() const { return component_means.mean(); }
  double variance() const;
};

double mixture_cdf(const Eigen::VectorXd& means, const Eigen::VectorXd& vars, double x);

// Quantile of the mixture to absolute tolerance 1e-8 (bracketed Newton).
double mixture_quantile(const Eigen::VectorXd& means, const Eigen::VectorXd& vars, double level);

// Builds the density and its 19-level quantile grid.
PredictiveDensity make_predictive(Eigen::VectorXd means, Eigen::VectorXd vars);

PredictiveDensity predictive_density(const PosteriorSample& posterior, const Eigen::VectorXd& x_new,
                                     int horizon, bool sv_enabled);

// log of the mixture density at y, evaluated with log-sum-exp.
double predictive_logscore(const PredictiveDensity& density, double y);

}  // namespace shrinkcast
