#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace shrinkcast {

enum class PriorFamily {
  kNoninformative,
  kRidge,
  kAdaptiveLasso,
  kSpikeSlab,
  kHorseshoe,
  kHorseshoePlus,
  kDirichletLaplace,
};

std::string_view to_string(PriorFamily f) noexcept;   // config token, e.g. "hs+"
std::string_view display_name(PriorFamily f) noexcept;  // table label, e.g. "HS+"
PriorFamily parse_prior_family(std::string_view token);
bool has_kappa(PriorFamily f) noexcept;

// Variance constant of the diffuse prior; also the intercept's prior variance
// under every family.
inline constexpr double kDiffuseVariance = 1e4;
// Cap on the inverse-Gaussian mean for 1/s_j when beta_j is (near) zero.
inline constexpr double kInverseGaussianMeanCap = 1e8;
// Prior variance reported for coefficients sitting in the spike.
inline constexpr double kSpikePseudoVariance = 1e-10;

struct PriorHyper {
  double diffuse_c = kDiffuseVariance;
  double ridge_lambda = 1.0;
  double dl_a = 0.5;
  double adapt_gamma = 1.0;
  double adapt_eps = 1e-6;
  double ss_a = 1.0;
  double ss_b = 1.0;
  double slab_alpha = 2.0;
  double slab_beta = 1.0;
};

// Hierarchy state for one chain. Local vectors have length p (the shrunk
// coefficients); the intercept is never shrunk. Scales are stored squared
// where the conditionals are written in squares.
struct PriorState {
  PriorFamily family = PriorFamily::kNoninformative;
  PriorHyper hyper;

  Eigen::VectorXd lambda2;   // HS/HS+: local scale squared
  Eigen::VectorXd nu;        // HS: local auxiliary
  Eigen::VectorXd phi;       // HS+: local rate variable; DL: simplex weights
  Eigen::VectorXd psi;       // DL: exponential mixing variable
  Eigen::VectorXd lasso_lambda;  // adaptive-LASSO penalties
  Eigen::VectorXd s;         // adaptive-LASSO mixing variances
  std::vector<int> gamma;    // spike-and-slab inclusion indicators
  double tau2 = 1.0;         // HS/HS+: global scale squared
  double tau = 1.0;          // DL: global scale
  double xi = 1.0;           // HS/HS+: global auxiliary
  double pi_incl = 0.5;
  double slab_var = 1.0;

  std::size_t p() const noexcept;
};

// Fresh state for p shrunk coefficients. beta_init seeds the adaptive-LASSO
// penalties and is ignored by other families.
PriorState make_prior_state(PriorFamily family, std::size_t p, const PriorHyper& hyper,
                            const Eigen::VectorXd& beta_init = {});

// D such that beta | sigma2 ~ N(0, sigma2 * diag(D)); length p + 1, intercept first.
Eigen::VectorXd prior_cov_diag(const PriorState& state);

Eigen::VectorXd adaptive_lasso_penalties(const Eigen::VectorXd& beta_init, double gamma_adapt,
                                         double eps);

enum class DistKind { kInverseGamma, kGamma, kInverseGaussian, kGig, kBernoulli, kBeta };

// Parameters of one full-conditional distribution.
struct ConditionalParams {
  DistKind kind = DistKind::kInverseGamma;
  double shape = 0.0;   // IG / Gamma shape, inverse-Gaussian shape, Beta a
  double rate = 0.0;    // IG / Gamma rate, Beta b
  double mean = 0.0;    // inverse-Gaussian mean
  double order = 0.0;   // GIG lambda
  double chi = 0.0;     // GIG chi (coefficient of 1/x)
  double psi = 0.0;     // GIG psi (coefficient of x)
  double prob = 0.0;    // Bernoulli

  static ConditionalParams inverse_gamma(double shape, double rate);
  static ConditionalParams gamma_dist(double shape, double rate);
  static ConditionalParams inverse_gaussian(double mean, double shape);
  static ConditionalParams gig(double order, double chi, double psi);
  static ConditionalParams bernoulli(double prob);
  static ConditionalParams beta_dist(double a, double b);

  bool valid() const noexcept;
};

struct HorseshoeConditionals {
  std::vector<ConditionalParams> lambda2;  // IG
  std::vector<ConditionalParams> nu;       // IG
  ConditionalParams tau2;                  // IG
  ConditionalParams xi;                    // IG
};

// Auxiliary-variable horseshoe conditionals evaluated at the current state.
// include_beta = false drops the coefficient likelihood, leaving the prior's
// own hierarchy (used to check that the scheme reproduces half-Cauchy scales).
HorseshoeConditionals horseshoe_conditionals(const PriorState& state, const Eigen::VectorXd& beta,
                                             double sigma2, bool include_beta = true);

struct HorseshoePlusConditionals {
  std::vector<ConditionalParams> lambda2;  // IG(1, phi_j xi / 2 + beta_j^2 / (2 tau2 sigma2))
  std::vector<ConditionalParams> phi;      // Gamma
  ConditionalParams xi;                    // Gamma
  ConditionalParams tau2;                  // IG
};

HorseshoePlusConditionals horseshoeplus_conditionals(const PriorState& state,
                                                     const Eigen::VectorXd& beta, double sigma2);

struct DirichletLaplaceConditionals {
  std::vector<ConditionalParams> psi;        // GIG(1/2, theta_j^2/(phi_j^2 tau^2), 1)
  std::vector<ConditionalParams> phi_block;  // GIG(a - 1, 2|theta_j|, 1), normalized to the simplex
  ConditionalParams tau;                     // GIG(p a - p, 2 sum |theta_j|/phi_j, 1)
};

DirichletLaplaceConditionals dl_conditionals(const PriorState& state, const Eigen::VectorXd& beta,
                                             double sigma2);

// Inverse-Gaussian conditional of 1/s_j in the Laplace scale mixture.
ConditionalParams lasso_scale_conditional(double beta_j, double lambda_j, double sigma2);

// P(gamma_j = 1 | rest) with beta_j integrated out, from the partial residual
// r = y - X_{-j} beta_{-j} and column x_j.
double spike_slab_inclusion_prob(const Eigen::VectorXd& x_j, const Eigen::VectorXd& partial_residual,
                                 double slab_var, double sigma2, double pi_incl);

// Same, addressed by shrunk-coefficient index j (design column j + 1). All
// coefficient vectors passed to this module carry the intercept first.
double spike_slab_inclusion_prob(std::size_t j, const PriorState& state, const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y, const Eigen::VectorXd& beta,
                                 double sigma2);

ConditionalParams spike_slab_pi_conditional(const PriorState& state);         // Beta
ConditionalParams spike_slab_slab_var_conditional(const PriorState& state, const Eigen::VectorXd& beta,
                                                  double sigma2);             // IG

}  // namespace shrinkcast
