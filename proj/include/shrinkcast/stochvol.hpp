#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "shrinkcast/random.hpp"

namespace shrinkcast {

// Seven-component normal mixture approximating log chi^2_1 (Kim, Shephard
// and Chib 1998); means already shifted by -1.2704.
struct LogChi2Mixture {
  static constexpr std::array<double, 7> kProb = {0.00730, 0.10556, 0.00002, 0.04395,
                                                  0.34001, 0.24566, 0.25750};
  static constexpr std::array<double, 7> kMean = {-10.12999 - 1.2704, -3.97281 - 1.2704,
                                                  -8.56686 - 1.2704,  2.77786 - 1.2704,
                                                  0.61942 - 1.2704,   1.79518 - 1.2704,
                                                  -1.08819 - 1.2704};
  static constexpr std::array<double, 7> kVar = {5.79596, 2.61369, 5.17950, 0.16735,
                                                 0.64009, 0.34023, 1.26261};
};

struct LocalLevelDraw {
  Eigen::VectorXd path;  // x_1..x_T
  double initial = 0.0;  // x_0
};

// Forward-filter backward-sample for
//   obs_t = x_t + N(0, obs_var_t),   x_t = x_{t-1} + N(0, state_var_t),
//   x_0 ~ N(m0, v0).
LocalLevelDraw sample_local_level(const Eigen::VectorXd& obs, const Eigen::VectorXd& obs_var,
                                  const Eigen::VectorXd& state_var, double m0, double v0, Rng& rng);

// Random-walk log-volatility h_t = h_{t-1} + N(0, sigma_eta2).
struct SvState {
  double sigma_eta2 = 0.05;
  double h0_mean = 0.0;
  double h0_var = 10.0;
  double prior_shape = 3.0;   // inverse-gamma prior on sigma_eta2
  double prior_rate = 0.03;
};

struct SvDraw {
  Eigen::VectorXd log_vol;
  SvState state;
};

// One auxiliary-mixture sweep: indicators, smoothed path, then sigma_eta2.
SvDraw sv_update(const Eigen::VectorXd& log_vol_path, const Eigen::VectorXd& residuals,
                 const SvState& state, Rng& rng);

}  // namespace shrinkcast
