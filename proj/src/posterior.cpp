#include "evbayes/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "evbayes/specfun.hpp"

namespace evbayes::posterior {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
using evd::log1p_scaled;

void require_scale(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("scale parameter must be positive and finite");
  }
}

void require_gp_family(const priors::PriorSpec& prior) {
  if (!priors::is_gp_family(prior.family)) {
    throw std::invalid_argument("GP posterior requires a GP prior family");
  }
}

void require_gev_family(const priors::PriorSpec& prior) {
  if (!priors::is_gev_family(prior.family)) {
    throw std::invalid_argument("GEV/NHPP posterior requires a GEV prior family");
  }
}

}  // namespace

NhppData::NhppData(double threshold, std::vector<double> exceedances, int n_blocks)
    : u_(threshold), x_(std::move(exceedances)) {
  if (x_.empty()) throw std::invalid_argument("NhppData: no exceedances");
  std::sort(x_.begin(), x_.end());
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!(x_[i] > u_)) {
      throw std::invalid_argument("NhppData: every exceedance must be above the threshold");
    }
    if (i > 0 && x_[i] == x_[i - 1]) {
      std::ostringstream msg;
      msg << "NhppData: tied value " << x_[i];
      throw std::invalid_argument(msg.str());
    }
  }
  n_blocks_ = n_blocks > 0 ? n_blocks : static_cast<int>(x_.size());
}

double gp_log_posterior(const evd::ExcessSample& data, const priors::PriorSpec& prior,
                        double sigma, double xi) {
  require_scale(sigma);
  require_gp_family(prior);
  const double lp = priors::log_xi_component(prior, xi);
  if (lp == kNegInf) return kNegInf;

  const int m = data.size();
  // The likelihood support is xi > -sigma/z_m; for xi < 0 the binding
  // constraint is the largest excess.
  if (xi < 0.0 && 1.0 + xi * data.max_excess() / sigma <= 0.0) return kNegInf;

  double sum = 0.0;
  for (double z : data.values()) {
    sum += (1.0 + xi) * log1p_scaled(xi, z / sigma);
  }
  return lp - (m + 1) * std::log(sigma) - sum;
}

double gev_log_posterior(const evd::BlockMaximaSample& data,
                         const priors::PriorSpec& prior, double mu, double sigma,
                         double xi) {
  require_scale(sigma);
  require_gev_family(prior);
  const double lp = priors::log_xi_component(prior, xi);
  if (lp == kNegInf) return kNegInf;

  const int n = data.size();
  double sum = 0.0;
  for (double y : data.values()) {
    const double w = (y - mu) / sigma;
    if (1.0 + xi * w <= 0.0) return kNegInf;
    const double lz = log1p_scaled(xi, w);
    sum += (1.0 + xi) * lz + std::exp(-lz);
  }
  return lp - (n + 1) * std::log(sigma) - sum;
}

double nhpp_log_posterior(const NhppData& data, const priors::PriorSpec& prior,
                          double mu, double sigma, double xi) {
  require_scale(sigma);
  require_gev_family(prior);
  const double lp = priors::log_xi_component(prior, xi);
  if (lp == kNegInf) return kNegInf;

  const int m = data.size();
  const int n = data.n_blocks();
  const double wu = (data.threshold() - mu) / sigma;
  if (1.0 + xi * wu <= 0.0) return kNegInf;
  const double rate = n * std::exp(-log1p_scaled(xi, wu));
  double sum = 0.0;
  for (double x : data.values()) {
    const double w = (x - mu) / sigma;
    if (1.0 + xi * w <= 0.0) return kNegInf;
    sum += (1.0 + xi) * log1p_scaled(xi, w);
  }
  return lp - (m + 1) * std::log(sigma) - rate - sum;
}

double reduced_gev_log_integrand(const evd::BlockMaximaSample& data,
                                 const priors::PriorSpec& prior, double phi,
                                 double xi) {
  require_gev_family(prior);
  if (xi == 0.0) return kNegInf;  // degenerate parameterization point
  const double lp = priors::log_xi_component(prior, xi);
  if (lp == kNegInf) return kNegInf;

  const auto& y = data.values();
  const int n = data.size();
  if (xi > 0.0) {
    if (!(phi < y.front())) return kNegInf;
  } else {
    if (!(phi > y.back())) return kNegInf;
  }

  // l_i = ln|y_i - phi|. The i = 1 term dominates sum |y_i - phi|^(-1/xi)
  // for either sign of xi (smallest distance for xi > 0, largest for xi < 0).
  double s1 = 0.0;
  const double l1 = std::log(std::abs(y.front() - phi));
  double tail = 0.0;  // sum_{i>=2} exp((l1 - l_i)/xi), each term <= 1
  for (int i = 0; i < n; ++i) {
    const double li = std::log(std::abs(y[i] - phi));
    s1 += li;
    if (i > 0) tail += std::exp((l1 - li) / xi);
  }
  return specfun::log_gamma(n) + lp + (1 - n) * std::log(std::abs(xi)) - s1 +
         (n * l1 - s1) / xi - n * std::log1p(tail);
}

double reduced_gev_log_integrand_u(const evd::BlockMaximaSample& data,
                                   const priors::PriorSpec& prior, double u,
                                   double xi, double log_dist_to_end) {
  require_gev_family(prior);
  if (xi == 0.0 || !(u > 0.0)) return kNegInf;
  const double lp = priors::log_xi_component(prior, xi);
  if (lp == kNegInf) return kNegInf;

  const int n = data.size();
  const double c = 1.0 + 1.0 / xi;
  double logs = 0.0;  // sum_{i>=2} ln(1 +/- delta_i u)
  double tail = 0.0;  // sum_{i>=2} (1 +/- delta_i u)^(-1/xi)
  for (int i = 1; i < n; ++i) {
    const double d = data.spacing(i);
    double lt;
    if (xi > 0.0) {
      lt = std::log1p(d * u);
    } else if (i == n - 1) {
      // 1 - delta_n u = delta_n * (1/delta_n - u), distance supplied as a log.
      lt = std::log(d) + log_dist_to_end;
    } else {
      const double t = 1.0 - d * u;
      if (t <= 0.0) return kNegInf;
      lt = std::log(t);
    }
    logs += lt;
    tail += std::exp(-lt / xi);
  }
  return specfun::log_gamma(n) + lp + (1 - n) * std::log(std::abs(xi)) +
         (n - 2) * std::log(u) - c * logs - n * std::log1p(tail);
}

double reduced_gev_log_integrand_w(const evd::BlockMaximaSample& data,
                                   const priors::PriorSpec& prior, double log_w,
                                   double xi) {
  require_gev_family(prior);
  if (!(xi > 0.0)) {
    throw std::domain_error("reduced_gev_log_integrand_w: requires xi > 0");
  }
  const double lp = priors::log_xi_component(prior, xi);
  if (lp == kNegInf) return kNegInf;

  const int n = data.size();
  const double c = 1.0 + 1.0 / xi;
  double logs = 0.0;  // sum_{i>=2} ln(1 + delta_i / w) via softplus
  double tail = 0.0;
  for (int i = 1; i < n; ++i) {
    const double a = std::log(data.spacing(i)) - log_w;  // ln(delta_i u)
    const double lt = a > 35.0 ? a : std::log1p(std::exp(a));
    logs += lt;
    tail += std::exp(-lt / xi);
  }
  // log f(u = 1/w) - 2 ln w  (the u^(n-2) power becomes -(n-2) ln w).
  return specfun::log_gamma(n) + lp + (1 - n) * std::log(xi) -
         static_cast<double>(n) * log_w - c * logs - n * std::log1p(tail);
}

}  // namespace evbayes::posterior
