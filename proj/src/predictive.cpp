#include "shrinkcast/predictive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shrinkcast/error.hpp"

namespace shrinkcast {

namespace {

constexpr double kQuantileTol = 1e-8;

double mixture_pdf(const Eigen::VectorXd& means, const Eigen::VectorXd& vars, double x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < means.size(); ++i) {
    if (vars(i) <= 0.0) continue;
    const double z = (x - means(i)) / std::sqrt(vars(i));
    acc += std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi * vars(i));
  }
  return acc / static_cast<double>(means.size());
}

}  // namespace

const std::array<double, kQuantileCount>& quantile_levels() noexcept {
  static const std::array<double, kQuantileCount> levels = [] {
    std::array<double, kQuantileCount> a{};
    for (std::size_t j = 0; j < kQuantileCount; ++j) a[j] = static_cast<double>(j + 1) / 20.0;
    return a;
  }();
  return levels;
}

double PredictiveDensity::variance() const {
  // Law of total variance over the equal-weight components.
  const double m = mean();
  return component_vars.mean() + (component_means.array() - m).square().mean();
}

double mixture_cdf(const Eigen::VectorXd& means, const Eigen::VectorXd& vars, double x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < means.size(); ++i) {
    if (vars(i) <= 0.0) {
      acc += x >= means(i) ? 1.0 : 0.0;
    } else {
      acc += 0.5 * std::erfc(-(x - means(i)) / std::sqrt(2.0 * vars(i)));
    }
  }
  return acc / static_cast<double>(means.size());
}

double mixture_quantile(const Eigen::VectorXd& means, const Eigen::VectorXd& vars, double level) {
  if (means.size() == 0 || means.size() != vars.size()) {
    throw ArgumentError("mixture needs matching, nonempty means and variances");
  }
  if (!(level > 0.0 && level < 1.0)) throw ArgumentError("quantile level must lie in (0, 1)");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < means.size(); ++i) {
    const double sd = vars(i) > 0.0 ? std::sqrt(vars(i)) : 0.0;
    lo = std::min(lo, means(i) - 12.0 * sd);
    hi = std::max(hi, means(i) + 12.0 * sd);
  }
  lo -= kQuantileTol;
  hi += kQuantileTol;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > kQuantileTol; ++iter) {
    const double f = mixture_cdf(means, vars, x) - level;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = mixture_pdf(means, vars, x);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 0.1 * kQuantileTol) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

PredictiveDensity make_predictive(Eigen::VectorXd means, Eigen::VectorXd vars) {
  if (means.size() == 0 || means.size() != vars.size()) {
    throw ArgumentError("predictive density needs matching, nonempty means and variances");
  }
  PredictiveDensity d;
  d.component_means = std::move(means);
  d.component_vars = std::move(vars);
  const auto& levels = quantile_levels();
  for (std::size_t j = 0; j < kQuantileCount; ++j) {
    d.quantiles[j] = mixture_quantile(d.component_means, d.component_vars, levels[j]);
  }
  // Root-finding noise must not break the grid's monotonicity.
  for (std::size_t j = 1; j < kQuantileCount; ++j) d.quantiles[j] = std::max(d.quantiles[j], d.quantiles[j - 1]);
  return d;
}

PredictiveDensity predictive_density(const PosteriorSample& posterior, const Eigen::VectorXd& x_new,
                                     int horizon, bool sv_enabled) {
  if (x_new.size() != posterior.beta.cols()) {
    throw ArgumentError("regressor width " + std::to_string(x_new.size()) +
                        " does not match coefficient draws of width " +
                        std::to_string(posterior.beta.cols()));
  }
  if (horizon < 1) throw ArgumentError("horizon must be >= 1");
  Eigen::VectorXd means = posterior.beta * x_new;
  Eigen::VectorXd vars(means.size());
  if (sv_enabled) {
    if (!posterior.sv_enabled) throw ArgumentError("posterior carries no volatility draws");
    for (Eigen::Index i = 0; i < vars.size(); ++i) {
      vars(i) = std::exp(posterior.sv_terminal(i) + horizon * posterior.sv_sigma_eta2(i) / 2.0);
    }
  } else {
    vars = posterior.sigma2;
  }
  return make_predictive(std::move(means), std::move(vars));
}

double predictive_logscore(const PredictiveDensity& density, double y) {
  const auto& m = density.component_means;
  const auto& v = density.component_vars;
  const auto n = m.size();
  if (n == 0) throw ArgumentError("empty predictive density");
  Eigen::VectorXd terms(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double e = y - m(i);
    terms(i) = -0.5 * std::log(2.0 * std::numbers::pi * v(i)) - 0.5 * e * e / v(i);
  }
  const double mx = terms.maxCoeff();
  if (!std::isfinite(mx)) return mx;
  return mx + std::log((terms.array() - mx).exp().sum()) - std::log(static_cast<double>(n));
}

}  // namespace shrinkcast
