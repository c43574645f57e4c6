// Unnormalized log posteriors for the GP, GEV and NHPP models, and the
// sigma-integrated GEV integrand on (phi, xi) coordinates used by the
// propriety estimators. Support constraints are tested before any power or
// logarithm is taken; off-support points return -inf, never raise.

#ifndef EVBAYES_POSTERIOR_HPP
#define EVBAYES_POSTERIOR_HPP

#include <vector>

#include "evbayes/evd.hpp"
#include "evbayes/priors.hpp"

namespace evbayes::posterior {

// Threshold exceedances for the point-process model: x_1 < ... < x_m, all
// above the threshold u; n_blocks is the notional number of blocks defining
// the GEV parameterization (equal to m unless set otherwise; the propriety
// results here are only exercised for n_blocks = m).
class NhppData {
 public:
  NhppData(double threshold, std::vector<double> exceedances, int n_blocks = 0);

  double threshold() const { return u_; }
  const std::vector<double>& values() const { return x_; }
  int size() const { return static_cast<int>(x_.size()); }
  int n_blocks() const { return n_blocks_; }

 private:
  double u_;
  std::vector<double> x_;
  int n_blocks_;
};

// log pi(xi) - (m+1) ln sigma - (1 + 1/xi) sum ln(1 + xi z_i / sigma)
// on {sigma > 0, xi > -sigma/z_m}; -inf off support.
double gp_log_posterior(const evd::ExcessSample& data, const priors::PriorSpec& prior,
                        double sigma, double xi);

// log of the GEV posterior kernel:
// -(n+1) ln sigma + log pi(xi) - sum t_i - (1 + 1/xi) sum ln z_i
// with z_i = 1 + xi (y_i - mu)/sigma, t_i = z_i^(-1/xi); -inf unless all
// z_i > 0.
double gev_log_posterior(const evd::BlockMaximaSample& data,
                         const priors::PriorSpec& prior, double mu, double sigma,
                         double xi);

// Point-process posterior kernel, Poisson rate over n_blocks blocks:
// -(m+1) ln sigma + log pi(xi) - n [1 + xi (u-mu)/sigma]_+^(-1/xi)
//   - (1 + 1/xi) sum ln[1 + xi (x_i-mu)/sigma]_+;  -inf when any bracket <= 0.
double nhpp_log_posterior(const NhppData& data, const priors::PriorSpec& prior,
                          double mu, double sigma, double xi);

// log of the phi-integrand after integrating sigma out of the GEV posterior
// under the transformation phi = mu - sigma/xi:
//   ln (n-1)! + log pi(xi) + (1-n) ln|xi| - (1 + 1/xi) sum ln|y_i - phi|
//     - n ln( sum |y_i - phi|^(-1/xi) ).
// Requires phi < y_1 for xi > 0 and phi > y_n for xi < 0; -inf otherwise.
double reduced_gev_log_integrand(const evd::BlockMaximaSample& data,
                                 const priors::PriorSpec& prior, double phi,
                                 double xi);

// The same integrand in the substituted coordinate u = 1/|y_1 - phi|,
// Jacobian included: integrating exp(..) du over the u range reproduces the
// phi integral. For xi > 0, u ranges over (0, inf) and log_dist_to_end is
// ignored; for xi < 0 it ranges over (0, 1/delta_n) and log_dist_to_end must
// equal ln(1/delta_n - u) computed without cancellation (the integrand
// carries the factor (1 - delta_n u)^(-(1+1/xi)), singular at the endpoint).
double reduced_gev_log_integrand_u(const evd::BlockMaximaSample& data,
                                   const priors::PriorSpec& prior, double u,
                                   double xi, double log_dist_to_end);

// Far-field form of the xi > 0 leg under the second inversion w = 1/u
// (phi approaching y_1 from below): the w-space integrand with Jacobian,
// parameterized by ln w so that w may lie far below double range. Behaves
// like w^((n-1)/xi - 1) at w -> 0.
double reduced_gev_log_integrand_w(const evd::BlockMaximaSample& data,
                                   const priors::PriorSpec& prior, double log_w,
                                   double xi);

}  // namespace evbayes::posterior

#endif
