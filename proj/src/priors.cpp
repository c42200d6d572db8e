#include "shrinkcast/priors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

void check_sigma2(double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw InternalStateError("sigma2 must be positive and finite, got " + std::to_string(sigma2));
  }
}

// Shrunk part of a coefficient vector that carries the intercept first.
Eigen::VectorXd shrunk(const PriorState& state, const Eigen::VectorXd& beta) {
  const auto p = static_cast<Eigen::Index>(state.p());
  if (beta.size() != p + 1) {
    throw ArgumentError("coefficient vector has length " + std::to_string(beta.size()) +
                        ", expected p + 1 = " + std::to_string(p + 1));
  }
  return beta.tail(p);
}

void require_positive(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > 0.0) || !std::isfinite(v(i))) {
      throw InternalStateError(std::string(what) + "[" + std::to_string(i) +
                               "] is not a positive finite scale");
    }
  }
}

}  // namespace

std::string_view to_string(PriorFamily f) noexcept {
  switch (f) {
    case PriorFamily::kNoninformative: return "noninformative";
    case PriorFamily::kRidge: return "ridge";
    case PriorFamily::kAdaptiveLasso: return "lasso";
    case PriorFamily::kSpikeSlab: return "spike-slab";
    case PriorFamily::kHorseshoe: return "hs";
    case PriorFamily::kHorseshoePlus: return "hs+";
    case PriorFamily::kDirichletLaplace: return "dl";
  }
  return "?";
}

std::string_view display_name(PriorFamily f) noexcept {
  switch (f) {
    case PriorFamily::kNoninformative: return "Noninformative";
    case PriorFamily::kRidge: return "Ridge";
    case PriorFamily::kAdaptiveLasso: return "LASSO";
    case PriorFamily::kSpikeSlab: return "Spike-and-Slab";
    case PriorFamily::kHorseshoe: return "HS";
    case PriorFamily::kHorseshoePlus: return "HS+";
    case PriorFamily::kDirichletLaplace: return "DL";
  }
  return "?";
}

PriorFamily parse_prior_family(std::string_view token) {
  std::string t(token);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "noninformative" || t == "noninf" || t == "flat") return PriorFamily::kNoninformative;
  if (t == "ridge") return PriorFamily::kRidge;
  if (t == "lasso" || t == "adaptive-lasso") return PriorFamily::kAdaptiveLasso;
  if (t == "spike-slab" || t == "ss" || t == "spike-and-slab") return PriorFamily::kSpikeSlab;
  if (t == "hs" || t == "horseshoe") return PriorFamily::kHorseshoe;
  if (t == "hs+" || t == "hsplus" || t == "horseshoe+") return PriorFamily::kHorseshoePlus;
  if (t == "dl" || t == "dirichlet-laplace") return PriorFamily::kDirichletLaplace;
  throw ConfigError("unknown prior family '" + std::string(token) + "'");
}

bool has_kappa(PriorFamily f) noexcept {
  return f == PriorFamily::kHorseshoe || f == PriorFamily::kHorseshoePlus;
}

std::size_t PriorState::p() const noexcept {
  switch (family) {
    case PriorFamily::kHorseshoe:
    case PriorFamily::kHorseshoePlus: return static_cast<std::size_t>(lambda2.size());
    case PriorFamily::kDirichletLaplace: return static_cast<std::size_t>(psi.size());
    case PriorFamily::kAdaptiveLasso: return static_cast<std::size_t>(s.size());
    case PriorFamily::kSpikeSlab: return gamma.size();
    case PriorFamily::kNoninformative:
    case PriorFamily::kRidge: return static_cast<std::size_t>(lambda2.size());
  }
  return 0;
}

PriorState make_prior_state(PriorFamily family, std::size_t p, const PriorHyper& hyper,
                            const Eigen::VectorXd& beta_init) {
  const auto n = static_cast<Eigen::Index>(p);
  PriorState st;
  st.family = family;
  st.hyper = hyper;
  // Every family keeps lambda2 sized to p so p() is always answerable.
  st.lambda2 = Eigen::VectorXd::Ones(n);
  switch (family) {
    case PriorFamily::kNoninformative:
      break;
    case PriorFamily::kRidge:
      if (!(hyper.ridge_lambda > 0.0)) throw ArgumentError("ridge lambda must be positive");
      break;
    case PriorFamily::kAdaptiveLasso:
      if (beta_init.size() != n) {
        throw ArgumentError("adaptive LASSO needs an initial estimate of length p");
      }
      st.lasso_lambda = adaptive_lasso_penalties(beta_init, hyper.adapt_gamma, hyper.adapt_eps);
      // Start s_j at its prior mean 2 / lambda_j^2.
      st.s = (2.0 / st.lasso_lambda.array().square()).matrix();
      break;
    case PriorFamily::kSpikeSlab:
      if (!(hyper.ss_a > 0.0) || !(hyper.ss_b > 0.0)) throw ArgumentError("Beta(a, b) needs a, b > 0");
      st.gamma.assign(p, 1);
      st.pi_incl = 0.5;
      st.slab_var = 1.0;
      break;
    case PriorFamily::kHorseshoe:
      st.nu = Eigen::VectorXd::Ones(n);
      break;
    case PriorFamily::kHorseshoePlus:
      st.phi = Eigen::VectorXd::Ones(n);
      break;
    case PriorFamily::kDirichletLaplace:
      if (!(hyper.dl_a > 0.0) || hyper.dl_a > 1.0) {
        throw ArgumentError("Dirichlet-Laplace concentration must lie in (0, 1]");
      }
      st.psi = Eigen::VectorXd::Ones(n);
      st.phi = Eigen::VectorXd::Constant(n, p > 0 ? 1.0 / static_cast<double>(p) : 1.0);
      st.tau = 1.0;
      break;
  }
  return st;
}

Eigen::VectorXd prior_cov_diag(const PriorState& state) {
  const auto p = static_cast<Eigen::Index>(state.p());
  Eigen::VectorXd d(p + 1);
  d(0) = state.hyper.diffuse_c;
  auto local = d.tail(p);
  switch (state.family) {
    case PriorFamily::kNoninformative:
      local.setConstant(state.hyper.diffuse_c);
      break;
    case PriorFamily::kRidge:
      local.setConstant(1.0 / state.hyper.ridge_lambda);
      break;
    case PriorFamily::kHorseshoe:
    case PriorFamily::kHorseshoePlus:
      local = state.lambda2 * state.tau2;
      break;
    case PriorFamily::kAdaptiveLasso:
      local = state.s;
      break;
    case PriorFamily::kSpikeSlab:
      for (Eigen::Index j = 0; j < p; ++j) {
        local(j) = state.gamma[static_cast<std::size_t>(j)] ? state.slab_var : kSpikePseudoVariance;
      }
      break;
    case PriorFamily::kDirichletLaplace:
      local = (state.psi.array() * state.phi.array().square() * state.tau * state.tau).matrix();
      break;
  }
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0) || !std::isfinite(d(i))) {
      throw InternalStateError("prior variance entry " + std::to_string(i) + " of family " +
                               std::string(to_string(state.family)) + " is " + std::to_string(d(i)));
    }
  }
  return d;
}

Eigen::VectorXd adaptive_lasso_penalties(const Eigen::VectorXd& beta_init, double gamma_adapt,
                                         double eps) {
  if (!(gamma_adapt > 0.0)) throw ArgumentError("adaptive-LASSO exponent must be positive");
  if (!(eps > 0.0)) throw ArgumentError("adaptive-LASSO stabilizer must be positive");
  Eigen::VectorXd out(beta_init.size());
  for (Eigen::Index j = 0; j < beta_init.size(); ++j) {
    out(j) = 1.0 / (std::pow(std::abs(beta_init(j)), gamma_adapt) + eps);
  }
  return out;
}

ConditionalParams ConditionalParams::inverse_gamma(double shape, double rate) {
  ConditionalParams c;
  c.kind = DistKind::kInverseGamma;
  c.shape = shape;
  c.rate = rate;
  return c;
}

ConditionalParams ConditionalParams::gamma_dist(double shape, double rate) {
  ConditionalParams c;
  c.kind = DistKind::kGamma;
  c.shape = shape;
  c.rate = rate;
  return c;
}

ConditionalParams ConditionalParams::inverse_gaussian(double mean, double shape) {
  ConditionalParams c;
  c.kind = DistKind::kInverseGaussian;
  c.mean = mean;
  c.shape = shape;
  return c;
}

ConditionalParams ConditionalParams::gig(double order, double chi, double psi) {
  ConditionalParams c;
  c.kind = DistKind::kGig;
  c.order = order;
  c.chi = chi;
  c.psi = psi;
  return c;
}

ConditionalParams ConditionalParams::bernoulli(double prob) {
  ConditionalParams c;
  c.kind = DistKind::kBernoulli;
  c.prob = prob;
  return c;
}

ConditionalParams ConditionalParams::beta_dist(double a, double b) {
  ConditionalParams c;
  c.kind = DistKind::kBeta;
  c.shape = a;
  c.rate = b;
  return c;
}

bool ConditionalParams::valid() const noexcept {
  auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
  switch (kind) {
    case DistKind::kInverseGamma:
    case DistKind::kGamma:
    case DistKind::kBeta: return pos(shape) && pos(rate);
    case DistKind::kInverseGaussian: return pos(mean) && pos(shape);
    case DistKind::kGig:
      return std::isfinite(order) && chi >= 0.0 && psi >= 0.0 && std::isfinite(chi) &&
             std::isfinite(psi) && !(chi == 0.0 && order <= 0.0) && !(psi == 0.0 && order >= 0.0);
    case DistKind::kBernoulli: return prob >= 0.0 && prob <= 1.0;
  }
  return false;
}

HorseshoeConditionals horseshoe_conditionals(const PriorState& state, const Eigen::VectorXd& beta,
                                             double sigma2, bool include_beta) {
  check_sigma2(sigma2);
  const Eigen::VectorXd b = shrunk(state, beta);
  const auto p = b.size();
  if (p < 1) throw ArgumentError("horseshoe needs at least one shrunk coefficient");
  require_positive(state.lambda2, "lambda2");
  require_positive(state.nu, "nu");
  if (!(state.tau2 > 0.0) || !(state.xi > 0.0)) throw InternalStateError("horseshoe global scale is not positive");

  HorseshoeConditionals out;
  out.lambda2.reserve(static_cast<std::size_t>(p));
  out.nu.reserve(static_cast<std::size_t>(p));
  const double w = include_beta ? 1.0 : 0.0;
  double ssq = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double bj2 = b(j) * b(j);
    out.lambda2.push_back(ConditionalParams::inverse_gamma(
        0.5 + 0.5 * w, 1.0 / state.nu(j) + w * bj2 / (2.0 * state.tau2 * sigma2)));
    out.nu.push_back(ConditionalParams::inverse_gamma(1.0, 1.0 + 1.0 / state.lambda2(j)));
    ssq += bj2 / state.lambda2(j);
  }
  out.tau2 = ConditionalParams::inverse_gamma(0.5 + 0.5 * w * static_cast<double>(p),
                                              1.0 / state.xi + w * ssq / (2.0 * sigma2));
  out.xi = ConditionalParams::inverse_gamma(1.0, 1.0 + 1.0 / state.tau2);
  return out;
}

HorseshoePlusConditionals horseshoeplus_conditionals(const PriorState& state,
                                                     const Eigen::VectorXd& beta, double sigma2) {
  check_sigma2(sigma2);
  const Eigen::VectorXd b = shrunk(state, beta);
  const auto p = b.size();
  if (p < 1) throw ArgumentError("horseshoe+ needs at least one shrunk coefficient");
  require_positive(state.lambda2, "lambda2");
  require_positive(state.phi, "phi");
  if (!(state.tau2 > 0.0) || !(state.xi > 0.0)) throw InternalStateError("horseshoe+ global scale is not positive");

  HorseshoePlusConditionals out;
  double ssq = 0.0;
  double phi_over_lambda = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double bj2 = b(j) * b(j);
    out.lambda2.push_back(ConditionalParams::inverse_gamma(
        1.0, state.phi(j) * state.xi / 2.0 + bj2 / (2.0 * state.tau2 * sigma2)));
    out.phi.push_back(ConditionalParams::gamma_dist(1.0, 0.5 + state.xi / (2.0 * state.lambda2(j))));
    ssq += bj2 / state.lambda2(j);
    phi_over_lambda += state.phi(j) / state.lambda2(j);
  }
  const double shape = 0.5 * static_cast<double>(p + 1);
  out.xi = ConditionalParams::gamma_dist(shape, 0.5 + phi_over_lambda / 2.0);
  out.tau2 = ConditionalParams::inverse_gamma(shape, 0.5 + ssq / (2.0 * sigma2));
  return out;
}

DirichletLaplaceConditionals dl_conditionals(const PriorState& state, const Eigen::VectorXd& beta,
                                             double sigma2) {
  check_sigma2(sigma2);
  const double a = state.hyper.dl_a;
  if (!(a > 0.0) || a > 1.0) throw ArgumentError("Dirichlet-Laplace concentration must lie in (0, 1]");
  const Eigen::VectorXd b = shrunk(state, beta);
  const auto p = b.size();
  if (p < 1) throw ArgumentError("Dirichlet-Laplace needs at least one shrunk coefficient");
  require_positive(state.phi, "phi");
  if (!(state.tau > 0.0)) throw InternalStateError("Dirichlet-Laplace tau is not positive");

  // theta_j = beta_j / sigma; |theta_j| floored so the GIG stays proper.
  constexpr double kFloor = 1e-12;
  const double sigma = std::sqrt(sigma2);
  DirichletLaplaceConditionals out;
  double abs_over_phi = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double theta = b(j) / sigma;
    const double denom = state.phi(j) * state.phi(j) * state.tau * state.tau;
    out.psi.push_back(ConditionalParams::gig(0.5, theta * theta / denom, 1.0));
    out.phi_block.push_back(
        ConditionalParams::gig(a - 1.0, 2.0 * std::max(std::abs(theta), kFloor), 1.0));
    abs_over_phi += std::abs(theta) / state.phi(j);
  }
  const double pd = static_cast<double>(p);
  out.tau = ConditionalParams::gig(pd * a - pd, 2.0 * std::max(abs_over_phi, kFloor), 1.0);
  return out;
}

ConditionalParams lasso_scale_conditional(double beta_j, double lambda_j, double sigma2) {
  check_sigma2(sigma2);
  if (!(lambda_j > 0.0)) throw InternalStateError("LASSO penalty must be positive");
  const double l2 = lambda_j * lambda_j;
  double mean = kInverseGaussianMeanCap;
  if (beta_j != 0.0) mean = std::min(std::sqrt(l2 * sigma2 / (beta_j * beta_j)), kInverseGaussianMeanCap);
  return ConditionalParams::inverse_gaussian(mean, l2);
}

double spike_slab_inclusion_prob(const Eigen::VectorXd& x_j, const Eigen::VectorXd& partial_residual,
                                 double slab_var, double sigma2, double pi_incl) {
  check_sigma2(sigma2);
  if (!(slab_var > 0.0)) throw InternalStateError("slab variance must be positive");
  if (x_j.size() != partial_residual.size()) throw ArgumentError("column and residual lengths differ");
  if (pi_incl >= 1.0) return 1.0;
  if (pi_incl <= 0.0) return 0.0;
  const double xx = x_j.squaredNorm();
  const double xr = x_j.dot(partial_residual);
  const double log_bf = -0.5 * std::log1p(slab_var * xx) + xr * xr / (2.0 * sigma2 * (xx + 1.0 / slab_var));
  const double log_odds = std::log(pi_incl) - std::log1p(-pi_incl) + log_bf;
  // Logistic in a form that cannot overflow.
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

double spike_slab_inclusion_prob(std::size_t j, const PriorState& state, const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y, const Eigen::VectorXd& beta,
                                 double sigma2) {
  if (j >= state.p()) throw ArgumentError("coefficient index out of range");
  if (beta.size() != X.cols() || y.size() != X.rows()) throw ArgumentError("design dimensions mismatch");
  const auto col = static_cast<Eigen::Index>(j + 1);
  Eigen::VectorXd r = y - X * beta + X.col(col) * beta(col);
  return spike_slab_inclusion_prob(X.col(col), r, state.slab_var, sigma2, state.pi_incl);
}

ConditionalParams spike_slab_pi_conditional(const PriorState& state) {
  double included = 0.0;
  for (int g : state.gamma) included += g;
  const double p = static_cast<double>(state.gamma.size());
  return ConditionalParams::beta_dist(state.hyper.ss_a + included, state.hyper.ss_b + p - included);
}

ConditionalParams spike_slab_slab_var_conditional(const PriorState& state, const Eigen::VectorXd& beta,
                                                  double sigma2) {
  check_sigma2(sigma2);
  const Eigen::VectorXd b = shrunk(state, beta);
  double k = 0.0;
  double ssq = 0.0;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (state.gamma[static_cast<std::size_t>(j)]) {
      k += 1.0;
      ssq += b(j) * b(j);
    }
  }
  return ConditionalParams::inverse_gamma(state.hyper.slab_alpha + 0.5 * k,
                                          state.hyper.slab_beta + ssq / (2.0 * sigma2));
}

}  // namespace shrinkcast
