#include "shrinkcast/stochvol.hpp"

#include <cmath>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

LocalLevelDraw sample_local_level(const Eigen::VectorXd& obs, const Eigen::VectorXd& obs_var,
                                  const Eigen::VectorXd& state_var, double m0, double v0, Rng& rng) {
  const Eigen::Index T = obs.size();
  if (T == 0) throw ArgumentError("local-level smoother needs at least one observation");
  if (obs_var.size() != T || state_var.size() != T) {
    throw ArgumentError("local-level smoother inputs differ in length");
  }
  Eigen::VectorXd m(T);  // filtered means
  Eigen::VectorXd P(T);  // filtered variances
  double prev_m = m0;
  double prev_P = v0;
  for (Eigen::Index t = 0; t < T; ++t) {
    const double pred_P = prev_P + state_var(t);
    const double gain = pred_P / (pred_P + obs_var(t));
    m(t) = prev_m + gain * (obs(t) - prev_m);
    P(t) = (1.0 - gain) * pred_P;
    prev_m = m(t);
    prev_P = P(t);
  }
  LocalLevelDraw out;
  out.path.resize(T);
  out.path(T - 1) = rng.normal(m(T - 1), std::sqrt(P(T - 1)));
  for (Eigen::Index t = T - 2; t >= 0; --t) {
    const double q = state_var(t + 1);
    const double k = P(t) / (P(t) + q);
    const double mean = m(t) + k * (out.path(t + 1) - m(t));
    const double var = P(t) * q / (P(t) + q);
    out.path(t) = rng.normal(mean, std::sqrt(var));
  }
  const double k0 = v0 / (v0 + state_var(0));
  out.initial = rng.normal(m0 + k0 * (out.path(0) - m0), std::sqrt(v0 * state_var(0) / (v0 + state_var(0))));
  return out;
}

SvDraw sv_update(const Eigen::VectorXd& log_vol_path, const Eigen::VectorXd& residuals,
                 const SvState& state, Rng& rng) {
  const Eigen::Index T = residuals.size();
  if (T == 0) throw ArgumentError("stochastic-volatility update needs residuals");
  if (log_vol_path.size() != T) throw ArgumentError("volatility path and residuals differ in length");

  // Offset keeps log(e^2) finite for exact zeros; scaled to the residuals.
  const double mean_sq = residuals.squaredNorm() / static_cast<double>(T);
  const double offset = 1e-4 * (mean_sq > 0.0 ? mean_sq : 1.0);

  Eigen::VectorXd obs(T);
  Eigen::VectorXd obs_var(T);
  std::array<double, 7> logw{};
  for (Eigen::Index t = 0; t < T; ++t) {
    const double ystar = std::log(residuals(t) * residuals(t) + offset);
    const double d = ystar - log_vol_path(t);
    for (std::size_t k = 0; k < 7; ++k) {
      const double e = d - LogChi2Mixture::kMean[k];
      logw[k] = std::log(LogChi2Mixture::kProb[k]) - 0.5 * std::log(LogChi2Mixture::kVar[k]) -
                0.5 * e * e / LogChi2Mixture::kVar[k];
    }
    const std::size_t s = rng.categorical_log(logw.data(), 7);
    obs(t) = ystar - LogChi2Mixture::kMean[s];
    obs_var(t) = LogChi2Mixture::kVar[s];
  }

  const Eigen::VectorXd state_var = Eigen::VectorXd::Constant(T, state.sigma_eta2);
  LocalLevelDraw h = sample_local_level(obs, obs_var, state_var, state.h0_mean, state.h0_var, rng);

  double ssq = 0.0;
  for (Eigen::Index t = 1; t < T; ++t) {
    const double dh = h.path(t) - h.path(t - 1);
    ssq += dh * dh;
  }
  SvDraw out;
  out.state = state;
  out.state.sigma_eta2 = rng.inv_gamma(state.prior_shape + 0.5 * static_cast<double>(T - 1),
                                       state.prior_rate + 0.5 * ssq);
  out.log_vol = std::move(h.path);
  return out;
}

}  // namespace shrinkcast
