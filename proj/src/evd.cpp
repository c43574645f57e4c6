#include "evbayes/evd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "evbayes/specfun.hpp"

namespace evbayes::evd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_scale(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("scale parameter must be positive and finite");
  }
}

void require_prob(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("probability must lie strictly in (0, 1)");
  }
}

std::vector<double> sorted_tie_checked(std::vector<double> v, const char* what) {
  if (v.empty()) {
    throw std::invalid_argument(std::string(what) + ": sample is empty");
  }
  std::sort(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] == v[i - 1]) {
      std::ostringstream msg;
      msg << what << ": tied value " << v[i]
          << " (ties have probability zero under a continuous model; "
             "deduplicate or jitter upstream)";
      throw std::invalid_argument(msg.str());
    }
  }
  return v;
}

}  // namespace

GpParams::GpParams(double sigma_, double xi_) : sigma(sigma_), xi(xi_) {
  require_scale(sigma);
  if (!std::isfinite(xi)) throw std::domain_error("shape parameter must be finite");
}

GevParams::GevParams(double mu_, double sigma_, double xi_)
    : mu(mu_), sigma(sigma_), xi(xi_) {
  require_scale(sigma);
  if (!std::isfinite(mu) || !std::isfinite(xi)) {
    throw std::domain_error("location and shape parameters must be finite");
  }
}

ExcessSample::ExcessSample(double threshold, std::vector<double> excesses)
    : threshold_(threshold), z_(sorted_tie_checked(std::move(excesses), "ExcessSample")) {
  if (z_.front() <= 0.0) {
    throw std::invalid_argument("ExcessSample: excesses must be strictly positive");
  }
}

BlockMaximaSample::BlockMaximaSample(std::vector<double> maxima)
    : y_(sorted_tie_checked(std::move(maxima), "BlockMaximaSample")) {}

double gp_logpdf(double z, const GpParams& p) {
  if (!(z > 0.0)) return kNegInf;
  const double w = z / p.sigma;
  if (1.0 + p.xi * w <= 0.0) return kNegInf;
  // (1 + 1/xi) ln(1 + xi w) = (1 + xi) * [ln(1 + xi w) / xi]
  return -std::log(p.sigma) - (1.0 + p.xi) * log1p_scaled(p.xi, w);
}

double gp_cdf(double z, const GpParams& p) {
  if (z <= 0.0) return 0.0;
  const double w = z / p.sigma;
  if (1.0 + p.xi * w <= 0.0) return 1.0;  // beyond the upper endpoint
  return -std::expm1(-log1p_scaled(p.xi, w));
}

double gp_quantile(double q, const GpParams& p) {
  require_prob(q);
  const double l = -std::log1p(-q);  // -ln(1-q)
  return p.sigma * expm1_scaled(p.xi, l);
}

std::vector<double> gp_sample(const GpParams& p, int count, Rng& rng) {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(gp_quantile(rng.uniform(), p));
  return out;
}

std::vector<double> gp_sample(const GpParams& p, int count, std::uint64_t seed) {
  Rng rng(seed);
  return gp_sample(p, count, rng);
}

double gev_logpdf(double y, const GevParams& p) {
  const double w = (y - p.mu) / p.sigma;
  if (1.0 + p.xi * w <= 0.0) return kNegInf;
  const double lz = log1p_scaled(p.xi, w);  // ln(1 + xi w)/xi
  return -std::log(p.sigma) - (1.0 + p.xi) * lz - std::exp(-lz);
}

double gev_cdf(double y, const GevParams& p) {
  const double w = (y - p.mu) / p.sigma;
  if (1.0 + p.xi * w <= 0.0) return p.xi > 0.0 ? 0.0 : 1.0;
  return std::exp(-std::exp(-log1p_scaled(p.xi, w)));
}

double gev_quantile(double q, const GevParams& p) {
  require_prob(q);
  const double ll = std::log(-std::log(q));
  // (e^(-xi ll) - 1)/xi = -expm1_scaled(-xi, ll)
  return p.mu - p.sigma * expm1_scaled(-p.xi, ll);
}

std::vector<double> gev_sample(const GevParams& p, int count, Rng& rng) {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(gev_quantile(rng.uniform(), p));
  return out;
}

std::vector<double> gev_sample(const GevParams& p, int count, std::uint64_t seed) {
  Rng rng(seed);
  return gev_sample(p, count, rng);
}

double gp_moment(int r, const GpParams& p) {
  if (r < 1) throw std::domain_error("gp_moment: order must be a positive integer");
  if (!(p.xi < 1.0 / r)) {
    throw std::domain_error("gp_moment: moment does not exist (requires xi < 1/r)");
  }
  double value = 1.0;
  for (int i = 1; i <= r; ++i) {
    value *= i * p.sigma / (1.0 - i * p.xi);
  }
  return value;
}

double gp_negpower_moment(double a, const GpParams& p) {
  if (!(p.xi < 0.0)) {
    throw std::domain_error("gp_negpower_moment: requires xi < 0");
  }
  if (!(a > p.xi)) {
    throw std::domain_error("gp_negpower_moment: requires a > xi");
  }
  using specfun::log_gamma;
  const double xi = p.xi;
  const double lg = (a / xi - 1.0) * std::log(-xi) - (a / xi) * std::log(p.sigma) +
                    log_gamma(1.0 - a / xi) + log_gamma(-1.0 / xi) -
                    log_gamma(1.0 - (a + 1.0) / xi);
  return std::exp(lg);
}

}  // namespace evbayes::evd
