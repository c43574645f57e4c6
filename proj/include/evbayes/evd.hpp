// Generalized Pareto and generalized extreme value distributions: densities,
// distribution functions, quantiles, simulation, and GP moment formulas.
//
// Shape conventions: the GP df is 1 - (1 + xi z / sigma)_+^(-1/xi) for z > 0,
// the GEV df is exp{ -[1 + xi (y - mu) / sigma]_+^(-1/xi) }, both with the
// exponential/Gumbel limit at xi = 0. The removable singularity is handled
// by series expansion whenever |xi*w| is small (the product, not xi alone,
// controls the expansion error), so every function is continuous across
// xi = 0 and exact elsewhere.

#ifndef EVBAYES_EVD_HPP
#define EVBAYES_EVD_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "evbayes/rng.hpp"

namespace evbayes::evd {

// ln(1 + xi w) / xi, continuous at xi = 0 (value w there). Caller guarantees
// 1 + xi w > 0; an overflowing product yields +inf (a zero-density signal
// for the likelihoods built on this).
inline double log1p_scaled(double xi, double w) {
  const double x = xi * w;
  if (std::abs(x) < 1e-4) {
    return w * (1.0 - x * (0.5 - x * (1.0 / 3.0 - 0.25 * x)));
  }
  return std::log1p(x) / xi;
}

// (e^(xi l) - 1) / xi, continuous at xi = 0 (value l there).
inline double expm1_scaled(double xi, double l) {
  const double x = xi * l;
  if (std::abs(x) < 1e-4) {
    return l * (1.0 + x * (0.5 + x * (1.0 / 6.0 + x / 24.0)));
  }
  return std::expm1(x) / xi;
}

struct GpParams {
  double sigma;  // scale, > 0
  double xi;     // shape

  GpParams(double sigma_, double xi_);
};

struct GevParams {
  double mu;     // location
  double sigma;  // scale, > 0
  double xi;     // shape

  GevParams(double mu_, double sigma_, double xi_);
};

// Threshold excesses z_1 < ... < z_m, all positive. Construction sorts the
// values and rejects exact ties (ties have probability zero under the model;
// tied inputs indicate rounding or duplication upstream).
class ExcessSample {
 public:
  ExcessSample(double threshold, std::vector<double> excesses);

  double threshold() const { return threshold_; }
  const std::vector<double>& values() const { return z_; }
  int size() const { return static_cast<int>(z_.size()); }
  double max_excess() const { return z_.back(); }

 private:
  double threshold_;
  std::vector<double> z_;
};

// Block maxima y_1 < ... < y_n; construction sorts and rejects ties.
class BlockMaximaSample {
 public:
  explicit BlockMaximaSample(std::vector<double> maxima);

  const std::vector<double>& values() const { return y_; }
  int size() const { return static_cast<int>(y_.size()); }
  double min() const { return y_.front(); }
  double max() const { return y_.back(); }
  // Spacing delta_i = y_i - y_1 (i is a 0-based index into values()).
  double spacing(int i) const { return y_[i] - y_[0]; }
  double range() const { return y_.back() - y_.front(); }

 private:
  std::vector<double> y_;
};

// --- GP distribution ---
double gp_logpdf(double z, const GpParams& p);
double gp_cdf(double z, const GpParams& p);
double gp_quantile(double q, const GpParams& p);
std::vector<double> gp_sample(const GpParams& p, int count, std::uint64_t seed);
std::vector<double> gp_sample(const GpParams& p, int count, Rng& rng);

// --- GEV distribution ---
double gev_logpdf(double y, const GevParams& p);
double gev_cdf(double y, const GevParams& p);
double gev_quantile(double q, const GevParams& p);
std::vector<double> gev_sample(const GevParams& p, int count, std::uint64_t seed);
std::vector<double> gev_sample(const GevParams& p, int count, Rng& rng);

// E(Z^r) = r! sigma^r / prod_{i=1..r} (1 - i xi), requires xi < 1/r.
double gp_moment(int r, const GpParams& p);

// E(Z^(-a/xi)) for xi < 0 and a > xi:
//   (-xi)^(a/xi - 1) sigma^(-a/xi) Gamma(1 - a/xi) Gamma(-1/xi)
//     / Gamma(1 - (a+1)/xi).
double gp_negpower_moment(double a, const GpParams& p);

}  // namespace evbayes::evd

#endif
