#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "shrinkcast/data.hpp"
#include "shrinkcast/model.hpp"
#include "shrinkcast/priors.hpp"
#include "shrinkcast/random.hpp"
#include "shrinkcast/stochvol.hpp"

namespace shrinkcast {

struct GibbsConfig {
  std::size_t n_burn = 2000;
  std::size_t n_keep = 3000;
  std::size_t thin = 1;
  std::uint64_t seed = 1;
  bool sv_enabled = false;

  void validate() const;
};

// Retained draws for one fitted window.
struct PosteriorSample {
  PriorFamily family = PriorFamily::kNoninformative;
  Eigen::MatrixXd beta;      // n_keep x k, intercept first
  Eigen::VectorXd sigma2;    // n_keep; ones when SV is enabled
  Eigen::MatrixXd lambda2;   // n_keep x p local scales (HS / HS+ only)
  Eigen::VectorXd tau2;      // n_keep global scale (HS / HS+ only)
  Eigen::MatrixXd gamma;     // n_keep x p inclusion indicators (spike-and-slab only)
  Eigen::MatrixXd log_vol;   // n_keep x n log-variance paths (SV only)
  Eigen::VectorXd sv_terminal;    // h_T per draw (SV only)
  Eigen::VectorXd sv_sigma_eta2;  // log-vol innovation variance per draw (SV only)
  bool sv_enabled = false;

  std::size_t draws() const noexcept { return static_cast<std::size_t>(beta.rows()); }
};

// Gaussian full conditional of beta: N(mean, sigma2 * (X'WX + D^-1)^-1),
// kept in factored form (Cholesky of the precision).
struct BetaConditional {
  Eigen::VectorXd mean;
  Eigen::LLT<Eigen::MatrixXd> precision;  // X'WX + D^-1
  double sigma2 = 1.0;

  Eigen::MatrixXd covariance() const;
  Eigen::VectorXd draw(Rng& rng) const;
};

// weights empty means W = I; otherwise W = diag(weights).
BetaConditional beta_conditional(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 double sigma2, const Eigen::VectorXd& prior_diag,
                                 const Eigen::VectorXd& weights = {});

// Inverse-gamma conditional of sigma2 under the Jeffreys prior. active marks
// the coefficients whose prior is scaled by sigma2 (all when empty); only
// those count in the shape and the rate.
ConditionalParams sigma2_conditional(const Eigen::VectorXd& residuals, const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& prior_diag,
                                     const std::vector<bool>& active = {});

double draw(const ConditionalParams& c, Rng& rng);

// Starting values of the hierarchy for a design (adaptive-LASSO penalties come
// from a ridge fit with lambda = 1 on the same rows).
PriorState initial_prior_state(const ModelSpec& model, const DirectDesign& design);

PosteriorSample run_gibbs(const ModelSpec& model, const DirectDesign& design, const GibbsConfig& cfg);

struct KappaEntry {
  std::string name;
  std::size_t index = 0;  // position among the shrunk coefficients
  double kappa = 0.0;
};

// Posterior mean of tau2*lambda_j^2 / (1 + tau2*lambda_j^2) for every shrunk
// coefficient; high values resist shrinkage.
Eigen::VectorXd kappa_values(const PosteriorSample& posterior);

// Ranks coefficients skip.. by kappa (descending, ties by index) and keeps
// the first top_k. names has one entry per shrunk coefficient.
std::vector<KappaEntry> kappa_summary(const PosteriorSample& posterior,
                                      const std::vector<std::string>& names, std::size_t top_k,
                                      std::size_t skip = 0);

}  // namespace shrinkcast
