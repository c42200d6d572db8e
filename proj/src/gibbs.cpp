#include "shrinkcast/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

// Scales below/above these are clamped; draws can underflow when a
// coefficient is shrunk hard, which is not a divergence.
constexpr double kScaleFloor = 1e-30;
constexpr double kScaleCeil = 1e30;

double clamp_scale(double v) { return std::clamp(v, kScaleFloor, kScaleCeil); }

BetaConditional from_moments(const Eigen::MatrixXd& xtwx, const Eigen::VectorXd& xtwy,
                             double sigma2, const Eigen::VectorXd& prior_diag) {
  if (prior_diag.size() != xtwx.rows()) {
    throw ArgumentError("prior variance vector has length " + std::to_string(prior_diag.size()) +
                        ", design width is " + std::to_string(xtwx.rows()));
  }
  BetaConditional bc;
  bc.sigma2 = sigma2;
  Eigen::MatrixXd A = xtwx;
  A.diagonal() += prior_diag.cwiseInverse();
  bc.precision.compute(A);
  if (bc.precision.info() != Eigen::Success) {
    throw InternalStateError("posterior precision is not positive definite");
  }
  bc.mean = bc.precision.solve(xtwy);
  return bc;
}

void require_finite(const Eigen::MatrixXd& X, const char* what) {
  if (!X.allFinite()) throw DataError(std::string("non-finite entries in ") + what);
}

}  // namespace

void GibbsConfig::validate() const {
  if (n_keep < 1) throw ConfigError("gibbs: n_keep must be >= 1");
  if (thin < 1) throw ConfigError("gibbs: thin must be >= 1");
}

Eigen::MatrixXd BetaConditional::covariance() const {
  const auto k = mean.size();
  return sigma2 * precision.solve(Eigen::MatrixXd::Identity(k, k));
}

Eigen::VectorXd BetaConditional::draw(Rng& rng) const {
  // With A = L L', beta = mean + sigma * L'^{-1} z has covariance sigma2 * A^{-1}.
  Eigen::VectorXd z(mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  precision.matrixU().solveInPlace(z);
  return mean + std::sqrt(sigma2) * z;
}

BetaConditional beta_conditional(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double sigma2,
                                 const Eigen::VectorXd& prior_diag, const Eigen::VectorXd& weights) {
  require_finite(X, "design");
  require_finite(y, "targets");
  if (X.rows() != y.size()) throw ArgumentError("design rows and targets differ");
  if (!(sigma2 > 0.0)) throw InternalStateError("sigma2 must be positive");
  if (weights.size() == 0) return from_moments(X.transpose() * X, X.transpose() * y, sigma2, prior_diag);
  if (weights.size() != X.rows()) throw ArgumentError("weights and design rows differ");
  const Eigen::MatrixXd Xw = weights.asDiagonal() * X;
  return from_moments(X.transpose() * Xw, Xw.transpose() * y, sigma2, prior_diag);
}

ConditionalParams sigma2_conditional(const Eigen::VectorXd& residuals, const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& prior_diag, const std::vector<bool>& active) {
  if (residuals.size() == 0) throw ArgumentError("sigma2 conditional needs residuals");
  if (beta.size() != prior_diag.size()) throw ArgumentError("beta and prior variance lengths differ");
  if (!active.empty() && active.size() != static_cast<std::size_t>(beta.size())) {
    throw ArgumentError("active mask length differs from beta");
  }
  double k = 0.0;
  double penalty = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    if (!active.empty() && !active[static_cast<std::size_t>(j)]) continue;
    k += 1.0;
    penalty += beta(j) * beta(j) / prior_diag(j);
  }
  return ConditionalParams::inverse_gamma(0.5 * (static_cast<double>(residuals.size()) + k),
                                          0.5 * (residuals.squaredNorm() + penalty));
}

double draw(const ConditionalParams& c, Rng& rng) {
  if (!c.valid()) throw InternalStateError("invalid conditional parameters");
  switch (c.kind) {
    case DistKind::kInverseGamma: return rng.inv_gamma(c.shape, c.rate);
    case DistKind::kGamma: return rng.gamma(c.shape, c.rate);
    case DistKind::kInverseGaussian: return rng.inverse_gaussian(c.mean, c.shape);
    case DistKind::kGig: return rng.gig(c.order, c.chi, c.psi);
    case DistKind::kBernoulli: return rng.bernoulli(c.prob) ? 1.0 : 0.0;
    case DistKind::kBeta: return rng.beta(c.shape, c.rate);
  }
  return 0.0;
}

PriorState initial_prior_state(const ModelSpec& model, const DirectDesign& design) {
  const auto k = design.width();
  if (k < 2) throw ArgumentError("design needs an intercept and at least one shrunk column");
  const auto p = static_cast<std::size_t>(k - 1);
  Eigen::VectorXd beta_init;
  if (model.prior == PriorFamily::kAdaptiveLasso) {
    Eigen::VectorXd ridge_diag = Eigen::VectorXd::Ones(k);
    ridge_diag(0) = model.hyper.diffuse_c;
    BetaConditional ridge = beta_conditional(design.regressors, design.targets, 1.0, ridge_diag);
    beta_init = ridge.mean.tail(k - 1);
  }
  return make_prior_state(model.prior, p, model.hyper, beta_init);
}

namespace {

class Chain {
 public:
  Chain(const ModelSpec& model, const DirectDesign& design, const GibbsConfig& cfg)
      : model_(model), X_(design.regressors), y_(design.targets), cfg_(cfg), rng_(cfg.seed),
        state_(initial_prior_state(model, design)) {
    n_ = X_.rows();
    k_ = X_.cols();
    xtx_ = X_.transpose() * X_;
    xty_ = X_.transpose() * y_;

    // Start beta at the ridge solution and sigma2 at its residual variance.
    Eigen::VectorXd d0 = Eigen::VectorXd::Ones(k_);
    d0(0) = model.hyper.diffuse_c;
    beta_ = from_moments(xtx_, xty_, 1.0, d0).mean;
    const Eigen::VectorXd r = y_ - X_ * beta_;
    sigma2_ = std::max(r.squaredNorm() / static_cast<double>(n_), 1e-8);
    if (cfg.sv_enabled) {
      sv_.h0_mean = std::log(sigma2_);
      sv_.h0_var = 10.0;
      sv_.sigma_eta2 = 0.015;
      log_vol_ = Eigen::VectorXd::Constant(n_, sv_.h0_mean);
      sigma2_ = 1.0;
    }
  }

  PosteriorSample run() {
    PosteriorSample out;
    out.family = model_.prior;
    out.sv_enabled = cfg_.sv_enabled;
    const auto keep = static_cast<Eigen::Index>(cfg_.n_keep);
    const auto p = k_ - 1;
    out.beta.resize(keep, k_);
    out.sigma2.resize(keep);
    const bool kappa = has_kappa(model_.prior);
    if (kappa) {
      out.lambda2.resize(keep, p);
      out.tau2.resize(keep);
    }
    if (model_.prior == PriorFamily::kSpikeSlab) out.gamma.resize(keep, p);
    if (cfg_.sv_enabled) {
      out.log_vol.resize(keep, n_);
      out.sv_terminal.resize(keep);
      out.sv_sigma_eta2.resize(keep);
    }

    const std::size_t total = cfg_.n_burn + cfg_.n_keep * cfg_.thin;
    Eigen::Index slot = 0;
    for (std::size_t sweep = 0; sweep < total; ++sweep) {
      step(sweep);
      if (sweep < cfg_.n_burn || (sweep - cfg_.n_burn + 1) % cfg_.thin != 0) continue;
      out.beta.row(slot) = beta_.transpose();
      out.sigma2(slot) = sigma2_;
      if (kappa) {
        out.lambda2.row(slot) = state_.lambda2.transpose();
        out.tau2(slot) = state_.tau2;
      }
      if (model_.prior == PriorFamily::kSpikeSlab) {
        for (Eigen::Index j = 0; j < p; ++j) out.gamma(slot, j) = state_.gamma[static_cast<std::size_t>(j)];
      }
      if (cfg_.sv_enabled) {
        out.log_vol.row(slot) = log_vol_.transpose();
        out.sv_terminal(slot) = log_vol_(n_ - 1);
        out.sv_sigma_eta2(slot) = sv_.sigma_eta2;
      }
      ++slot;
    }
    return out;
  }

 private:
  void step(std::size_t sweep) {
    Eigen::VectorXd D = prior_cov_diag(state_);
    // beta
    BetaConditional bc = cfg_.sv_enabled
                             ? beta_conditional(X_, y_, 1.0, D, (-log_vol_.array()).exp().matrix())
                             : from_moments(xtx_, xty_, sigma2_, D);
    beta_ = bc.draw(rng_);
    const bool ss = model_.prior == PriorFamily::kSpikeSlab;
    if (ss) {
      for (Eigen::Index j = 1; j < k_; ++j) {
        if (!state_.gamma[static_cast<std::size_t>(j - 1)]) beta_(j) = 0.0;
      }
    }
    Eigen::VectorXd resid = y_ - X_ * beta_;

    // sigma2 or the volatility block
    if (cfg_.sv_enabled) {
      SvDraw sv = sv_update(log_vol_, resid, sv_, rng_);
      log_vol_ = std::move(sv.log_vol);
      sv_ = sv.state;
    } else {
      std::vector<bool> active;
      if (ss) {
        active.assign(static_cast<std::size_t>(k_), true);
        for (Eigen::Index j = 1; j < k_; ++j) active[static_cast<std::size_t>(j)] = state_.gamma[static_cast<std::size_t>(j - 1)] != 0;
      }
      ConditionalParams c = sigma2_conditional(resid, beta_, D, active);
      if (!c.valid()) throw SamplerFailure("degenerate sigma2 conditional", sweep);
      sigma2_ = draw(c, rng_);
    }

    update_hierarchy(resid);

    if (!beta_.allFinite() || !std::isfinite(sigma2_) || !(sigma2_ > 0.0) ||
        (cfg_.sv_enabled && !log_vol_.allFinite())) {
      throw SamplerFailure("non-finite draw under prior " + std::string(to_string(model_.prior)), sweep);
    }
  }

  void update_hierarchy(Eigen::VectorXd& resid) {
    const double s2 = sigma2_;
    switch (model_.prior) {
      case PriorFamily::kNoninformative:
      case PriorFamily::kRidge:
        return;
      case PriorFamily::kHorseshoe: {
        auto c = horseshoe_conditionals(state_, beta_, s2);
        for (std::size_t j = 0; j < c.lambda2.size(); ++j) state_.lambda2(static_cast<Eigen::Index>(j)) = clamp_scale(draw(c.lambda2[j], rng_));
        c = horseshoe_conditionals(state_, beta_, s2);
        for (std::size_t j = 0; j < c.nu.size(); ++j) state_.nu(static_cast<Eigen::Index>(j)) = clamp_scale(draw(c.nu[j], rng_));
        state_.tau2 = clamp_scale(draw(horseshoe_conditionals(state_, beta_, s2).tau2, rng_));
        state_.xi = clamp_scale(draw(horseshoe_conditionals(state_, beta_, s2).xi, rng_));
        return;
      }
      case PriorFamily::kHorseshoePlus: {
        auto c = horseshoeplus_conditionals(state_, beta_, s2);
        for (std::size_t j = 0; j < c.lambda2.size(); ++j) state_.lambda2(static_cast<Eigen::Index>(j)) = clamp_scale(draw(c.lambda2[j], rng_));
        c = horseshoeplus_conditionals(state_, beta_, s2);
        for (std::size_t j = 0; j < c.phi.size(); ++j) state_.phi(static_cast<Eigen::Index>(j)) = clamp_scale(draw(c.phi[j], rng_));
        state_.xi = clamp_scale(draw(horseshoeplus_conditionals(state_, beta_, s2).xi, rng_));
        state_.tau2 = clamp_scale(draw(horseshoeplus_conditionals(state_, beta_, s2).tau2, rng_));
        return;
      }
      case PriorFamily::kDirichletLaplace: {
        auto c = dl_conditionals(state_, beta_, s2);
        Eigen::VectorXd t(static_cast<Eigen::Index>(c.phi_block.size()));
        for (std::size_t j = 0; j < c.phi_block.size(); ++j) t(static_cast<Eigen::Index>(j)) = std::max(draw(c.phi_block[j], rng_), 1e-300);
        state_.phi = (t / t.sum()).unaryExpr([](double v) { return std::max(v, 1e-12); });
        state_.tau = std::clamp(draw(dl_conditionals(state_, beta_, s2).tau, rng_), 1e-12, 1e12);
        c = dl_conditionals(state_, beta_, s2);
        for (std::size_t j = 0; j < c.psi.size(); ++j) state_.psi(static_cast<Eigen::Index>(j)) = std::clamp(draw(c.psi[j], rng_), 1e-12, 1e12);
        return;
      }
      case PriorFamily::kAdaptiveLasso: {
        for (Eigen::Index j = 0; j < state_.s.size(); ++j) {
          const double inv = draw(lasso_scale_conditional(beta_(j + 1), state_.lasso_lambda(j), s2), rng_);
          state_.s(j) = clamp_scale(1.0 / inv);
        }
        return;
      }
      case PriorFamily::kSpikeSlab:
        update_spike_slab(resid);
        return;
    }
  }

  // Single-site (gamma_j, beta_j) draws with beta_j integrated out of the
  // inclusion step, then pi and the slab variance.
  void update_spike_slab(Eigen::VectorXd& resid) {
    const double s2 = sigma2_;
    Eigen::VectorXd sqrt_w;
    if (cfg_.sv_enabled) sqrt_w = (-0.5 * log_vol_.array()).exp().matrix();
    for (Eigen::Index col = 1; col < k_; ++col) {
      const auto j = static_cast<std::size_t>(col - 1);
      Eigen::VectorXd partial = resid + X_.col(col) * beta_(col);
      Eigen::VectorXd x = X_.col(col);
      Eigen::VectorXd r = partial;
      if (cfg_.sv_enabled) {
        x = x.cwiseProduct(sqrt_w);
        r = r.cwiseProduct(sqrt_w);
      }
      const double prob = spike_slab_inclusion_prob(x, r, state_.slab_var, s2, state_.pi_incl);
      state_.gamma[j] = rng_.bernoulli(prob) ? 1 : 0;
      if (state_.gamma[j]) {
        const double prec = x.squaredNorm() + 1.0 / state_.slab_var;
        beta_(col) = rng_.normal(x.dot(r) / prec, std::sqrt(s2 / prec));
      } else {
        beta_(col) = 0.0;
      }
      resid = partial - X_.col(col) * beta_(col);
    }
    state_.pi_incl = std::clamp(draw(spike_slab_pi_conditional(state_), rng_), 1e-12, 1.0 - 1e-12);
    state_.slab_var = clamp_scale(draw(spike_slab_slab_var_conditional(state_, beta_, s2), rng_));
  }

  const ModelSpec& model_;
  const Eigen::MatrixXd& X_;
  const Eigen::VectorXd& y_;
  GibbsConfig cfg_;
  Rng rng_;
  PriorState state_;
  Eigen::Index n_ = 0;
  Eigen::Index k_ = 0;
  Eigen::MatrixXd xtx_;
  Eigen::VectorXd xty_;
  Eigen::VectorXd beta_;
  double sigma2_ = 1.0;
  SvState sv_;
  Eigen::VectorXd log_vol_;
};

}  // namespace

PosteriorSample run_gibbs(const ModelSpec& model, const DirectDesign& design, const GibbsConfig& cfg) {
  cfg.validate();
  if (model.kind != ModelKind::kDirect) throw ArgumentError("run_gibbs fits direct regressions only");
  if (design.rows() < 10) {
    throw InsufficientDataError("Gibbs sampler needs at least 10 design rows, got " +
                                std::to_string(design.rows()));
  }
  require_finite(design.regressors, "design");
  require_finite(design.targets, "targets");
  Chain chain(model, design, cfg);
  return chain.run();
}

Eigen::VectorXd kappa_values(const PosteriorSample& posterior) {
  if (!has_kappa(posterior.family)) {
    throw CapabilityError("kappa is defined for horseshoe-family priors only, not " +
                          std::string(to_string(posterior.family)));
  }
  const auto draws = posterior.lambda2.rows();
  const auto p = posterior.lambda2.cols();
  Eigen::VectorXd k = Eigen::VectorXd::Zero(p);
  for (Eigen::Index i = 0; i < draws; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double s = posterior.tau2(i) * posterior.lambda2(i, j);
      k(j) += std::isinf(s) ? 1.0 : s / (1.0 + s);
    }
  }
  return k / static_cast<double>(std::max<Eigen::Index>(draws, 1));
}

std::vector<KappaEntry> kappa_summary(const PosteriorSample& posterior,
                                      const std::vector<std::string>& names, std::size_t top_k,
                                      std::size_t skip) {
  const Eigen::VectorXd k = kappa_values(posterior);
  if (names.size() != static_cast<std::size_t>(k.size())) {
    throw ArgumentError("kappa names: expected " + std::to_string(k.size()) + ", got " +
                        std::to_string(names.size()));
  }
  std::vector<KappaEntry> entries;
  for (std::size_t j = skip; j < names.size(); ++j) {
    entries.push_back({names[j], j, k(static_cast<Eigen::Index>(j))});
  }
  std::stable_sort(entries.begin(), entries.end(), [](const KappaEntry& a, const KappaEntry& b) {
    if (a.kappa != b.kappa) return a.kappa > b.kappa;
    return a.index < b.index;
  });
  if (entries.size() > top_k) entries.resize(top_k);
  return entries;
}

}  // namespace shrinkcast
