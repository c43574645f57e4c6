// Reference-prior catalog for GP and GEV parameters. Every prior here has the
// product form pi(xi) * 1/sigma (flat in mu and log sigma); log_prior returns
// the log of the unnormalized density exactly in that proportional form, and
// log_xi_component returns log pi(xi) alone (used where sigma has been
// integrated out analytically).
//
// Families:
//   jeffreys_gp        1/(sigma (1+xi) sqrt(1+2xi)),        xi > -1/2
//   mdi_gp             e^(-xi)/sigma,                       xi in R
//   mdi_gp_trunc       e^(-(1+xi))/sigma,                   xi >= xi_lower (-1)
//   uniform_gp         1/sigma,                             xi in R
//   jeffreys_gev       pi_xi(xi)/sigma,                     xi > -1/2
//   jeffreys_gev_trunc pi_xi(xi)/sigma,                     -1/2 < xi <= xi_upper
//   mdi_gev            e^(-gamma(1+xi))/sigma,              xi in R
//   mdi_gev_trunc      e^(-gamma(1+xi))/sigma,              xi >= xi_lower (-1)
//   uniform_gev        1/sigma,                             xi in R
//
// pi_xi is the xi part of the location-modified Jeffreys prior for the GEV,
// the square root of the (sigma, xi) Fisher information determinant at fixed
// location, computed through the decomposition pi_xi^2 = (T1 + T2)/xi^4.

#ifndef EVBAYES_PRIORS_HPP
#define EVBAYES_PRIORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "evbayes/evd.hpp"

namespace evbayes::priors {

enum class Family {
  jeffreys_gp,
  mdi_gp,
  mdi_gp_trunc,
  uniform_gp,
  jeffreys_gev,
  jeffreys_gev_trunc,
  mdi_gev,
  mdi_gev_trunc,
  uniform_gev,
};

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);
bool is_gp_family(Family f);
bool is_gev_family(Family f);

struct PriorSpec {
  Family family;
  std::optional<double> xi_lower;  // truncation, mdi_*_trunc only (default -1)
  std::optional<double> xi_upper;  // truncation, jeffreys_gev_trunc only

  static PriorSpec make(Family f,
                        std::optional<double> xi_lower = std::nullopt,
                        std::optional<double> xi_upper = std::nullopt);

  // Effective support bounds for the xi component.
  double support_lower() const;
  double support_upper() const;
};

// log pi(xi): the xi component alone, -inf outside the family's support.
double log_xi_component(const PriorSpec& spec, double xi);

// Full unnormalized log prior density; throws std::invalid_argument when the
// family does not match the parameter type.
double log_prior(const PriorSpec& spec, const evd::GpParams& p);
double log_prior(const PriorSpec& spec, const evd::GevParams& p);

// --- Jeffreys GEV xi component ---

struct JeffreysGevComponents {
  double p;
  double q;
  double T1;
  double T2;
  double pi_xi_sq;  // (T1 + T2)/xi^4
};

// p, q, T1, T2 and pi_xi^2 at a given xi (> -1/2, xi != 0). Values overflow
// for xi beyond ~80; use log_jeffreys_gev_xi for the tail.
JeffreysGevComponents jeffreys_gev_components(double xi);

// pi_xi(xi) for xi > -1/2. xi = 0 is a removable singularity: the value
// returned is the average of evaluations at +-1e-6 (they agree to ~1e-12;
// near zero the computation runs on a pinned Taylor expansion because the
// printed T1/T2 form loses all precision to cancellation there).
double jeffreys_gev_xi(double xi);

// ln pi_xi(xi); stable for arbitrarily large xi.
double log_jeffreys_gev_xi(double xi);

// ln pi_xi(-1/2 + d) with the offset d supplied as ln d. pi_xi carries an
// exact (1+2xi)^(-1/2) factor; evaluating through the distance keeps the
// quadrature legs accurate arbitrarily close to the support edge, where
// -1/2 + d rounds to -1/2 in double.
double log_jeffreys_gev_xi_near_half(double log_dist);

// ln pi(support_lower + d), d = exp(log_dist), computed without cancellation
// at the edge. Only meaningful for families with a finite lower support
// bound; throws otherwise.
double log_xi_component_near_lower(const PriorSpec& spec, double log_dist);

// c^(1/2) (1+xi)^(lambda xi - gamma), the proven tail lower bound for pi_xi
// on xi > 3 (numerically it holds on all of xi > -1/2).
double jeffreys_gev_lower_bound(double xi);

// Constant c = (4/3)^4 { [pi^2/6 + (1-gamma)^2] pi^(-1/2) - 1 } ~ 0.0913.
double jeffreys_gev_bound_c();

// Helper f(xi) = [pi^2/6 + (1-gamma)^2] / (1 + psi(1+xi)) - (1-gamma) from
// the tail-bound derivation; decreasing for xi > 0, f(3) ~ 0.39.
double jeffreys_gev_f(double xi);

// 2 [pi^2/6 + (1-gamma)^2]^(1/2) (1+2xi)^(-1/2): upper bound for pi_xi valid
// on -1/2 < xi < -1/2 + 1.29 (numeric crossing near xi = 0.794). Throws
// outside that window.
double jeffreys_gev_upper_bound_near_half(double xi);

// --- catalog ---

struct CatalogEntry {
  Family family;
  std::string name;
  std::string model;    // "gp" or "gev"
  std::string support;  // human/machine readable xi support description
  bool takes_xi_lower;
  bool takes_xi_upper;
};

const std::vector<CatalogEntry>& catalog();

}  // namespace evbayes::priors

#endif
