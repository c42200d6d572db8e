#pragma once

#include <Eigen/Dense>

#include "shrinkcast/gibbs.hpp"
#include "shrinkcast/predictive.hpp"
#include "shrinkcast/random.hpp"

namespace shrinkcast {

// Unobserved-components model with stochastic volatility:
//   y_t   = tau_t + exp(h_eps_t / 2) eps_t
//   tau_t = tau_{t-1} + exp(h_u_t / 2) u_t
// with random-walk log variances h_eps and h_u.
struct UcsvPosterior {
  Eigen::MatrixXd trend;       // n_keep x T
  Eigen::MatrixXd log_vol_eps; // n_keep x T
  Eigen::MatrixXd log_vol_u;   // n_keep x T
  Eigen::VectorXd sigma2_eps;  // innovation variance of h_eps, per draw
  Eigen::VectorXd sigma2_u;    // innovation variance of h_u, per draw

  std::size_t draws() const noexcept { return static_cast<std::size_t>(trend.rows()); }
  Eigen::VectorXd trend_mean() const { return trend.colwise().mean().transpose(); }
};

UcsvPosterior run_ucsv(const Eigen::VectorXd& y, const GibbsConfig& cfg);

// Iterated h-step forecast. Component i is centred at tau_T^(i) with the
// expected accumulated variance; draws holds one simulated path end per
// posterior draw.
PredictiveDensity ucsv_forecast(const UcsvPosterior& posterior, int horizon, Rng& rng);

}  // namespace shrinkcast
