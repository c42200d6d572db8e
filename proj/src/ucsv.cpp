#include "shrinkcast/ucsv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shrinkcast/error.hpp"
#include "shrinkcast/stochvol.hpp"

namespace shrinkcast {

UcsvPosterior run_ucsv(const Eigen::VectorXd& y, const GibbsConfig& cfg) {
  cfg.validate();
  const Eigen::Index T = y.size();
  if (T < 24) throw InsufficientDataError("UC-SV needs at least 24 observations, got " + std::to_string(T));
  if (!y.allFinite()) throw DataError("non-finite entries in UC-SV input");

  Rng rng(cfg.seed);
  const double mean = y.mean();
  const double var = std::max((y.array() - mean).square().sum() / static_cast<double>(T - 1), 1e-4);
  constexpr double kTrendPriorVar = 100.0;  // tau_0 ~ N(y_1, 10^2)

  SvState sv_eps;
  sv_eps.h0_mean = std::log(var);
  sv_eps.h0_var = 10.0;
  sv_eps.sigma_eta2 = 0.015;
  SvState sv_u = sv_eps;

  Eigen::VectorXd h_eps = Eigen::VectorXd::Constant(T, sv_eps.h0_mean);
  Eigen::VectorXd h_u = Eigen::VectorXd::Constant(T, sv_u.h0_mean);

  UcsvPosterior out;
  const auto keep = static_cast<Eigen::Index>(cfg.n_keep);
  out.trend.resize(keep, T);
  out.log_vol_eps.resize(keep, T);
  out.log_vol_u.resize(keep, T);
  out.sigma2_eps.resize(keep);
  out.sigma2_u.resize(keep);

  const std::size_t total = cfg.n_burn + cfg.n_keep * cfg.thin;
  Eigen::Index slot = 0;
  Eigen::VectorXd u(T);
  for (std::size_t sweep = 0; sweep < total; ++sweep) {
    LocalLevelDraw trend = sample_local_level(y, h_eps.array().exp().matrix(), h_u.array().exp().matrix(),
                                              y(0), kTrendPriorVar, rng);
    const Eigen::VectorXd e = y - trend.path;
    SvDraw de = sv_update(h_eps, e, sv_eps, rng);
    h_eps = std::move(de.log_vol);
    sv_eps = de.state;

    u(0) = trend.path(0) - trend.initial;
    u.tail(T - 1) = trend.path.tail(T - 1) - trend.path.head(T - 1);
    SvDraw du = sv_update(h_u, u, sv_u, rng);
    h_u = std::move(du.log_vol);
    sv_u = du.state;

    if (!trend.path.allFinite() || !h_eps.allFinite() || !h_u.allFinite()) {
      throw SamplerFailure("non-finite UC-SV draw", sweep);
    }
    if (sweep < cfg.n_burn || (sweep - cfg.n_burn + 1) % cfg.thin != 0) continue;
    out.trend.row(slot) = trend.path.transpose();
    out.log_vol_eps.row(slot) = h_eps.transpose();
    out.log_vol_u.row(slot) = h_u.transpose();
    out.sigma2_eps(slot) = sv_eps.sigma_eta2;
    out.sigma2_u(slot) = sv_u.sigma_eta2;
    ++slot;
  }
  return out;
}

PredictiveDensity ucsv_forecast(const UcsvPosterior& posterior, int horizon, Rng& rng) {
  if (horizon < 1) throw ArgumentError("horizon must be >= 1");
  const auto draws = posterior.trend.rows();
  if (draws == 0) throw ArgumentError("empty UC-SV posterior");
  const auto last = posterior.trend.cols() - 1;
  Eigen::VectorXd means(draws);
  Eigen::VectorXd vars(draws);
  Eigen::VectorXd sims(draws);
  for (Eigen::Index i = 0; i < draws; ++i) {
    const double tau_T = posterior.trend(i, last);
    const double hu_T = posterior.log_vol_u(i, last);
    const double he_T = posterior.log_vol_eps(i, last);
    const double s2u = posterior.sigma2_u(i);
    const double s2e = posterior.sigma2_eps(i);

    double v = std::exp(he_T + horizon * s2e / 2.0);
    for (int k = 1; k <= horizon; ++k) v += std::exp(hu_T + k * s2u / 2.0);
    means(i) = tau_T;
    vars(i) = v;

    double hu = hu_T;
    double he = he_T;
    double tau = tau_T;
    for (int k = 1; k <= horizon; ++k) {
      hu += std::sqrt(s2u) * rng.normal();
      tau += std::exp(hu / 2.0) * rng.normal();
      he += std::sqrt(s2e) * rng.normal();
    }
    sims(i) = tau + std::exp(he / 2.0) * rng.normal();
  }
  PredictiveDensity d = make_predictive(std::move(means), std::move(vars));
  d.draws = std::move(sims);
  return d;
}

}  // namespace shrinkcast
