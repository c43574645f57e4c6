#include "evbayes/priors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "evbayes/specfun.hpp"

namespace evbayes::priors {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

using specfun::euler_gamma;
using specfun::log_gamma;
using specfun::digamma;

// pi^2/6 + (1 - gamma)^2
constexpr double kA = 1.823680660852879389573236768;

// Taylor coefficients of (T1+T2)/xi^4 about xi = 0; regenerate with
// scripts/gen_specfun_constants.py. The series radius is 1/2 (pole of
// Gamma(1+2xi) at xi = -1/2); truncation error at |xi| = 0.1 is ~9e-14.
constexpr double kShapeSeries[] = {
    4.309337278862907344059,
    -9.084264262632541383271,
    23.82382652665672791233,
    -51.27313544286630284889,
    109.0173050765732634314,
    -224.535300077632956238,
    457.0470590739364554509,
    -922.8726364520683598734,
    1855.608522846133638331,
    -3722.052217878951918604,
    7455.951244146403207129,
    -14924.7465403393432456,
    29863.33852896676395156,
    -59741.52237874118279453,
    119498.8902540891138765,
    -239014.6260267368408565,
    478047.0975995717218587,
    -956113.0407544224732362,
    1912245.927069726460809,
};

constexpr double kShapeSeriesRadius = 0.1;

double shape_series_pi_xi_sq(double xi) {
  double s = 0.0;
  for (int j = static_cast<int>(std::size(kShapeSeries)) - 1; j >= 0; --j) {
    s = s * xi + kShapeSeries[j];
  }
  return s;
}

// log(T1) and the signed pieces of T2 for the large-xi regime, where the
// plain T1/T2 evaluation overflows (Gamma(1+2xi) beyond xi ~ 85).
double log_t1(double xi) {
  return std::log(kA) + 2.0 * std::log1p(xi) + log_gamma(1.0 + 2.0 * xi);
}

// T2 = pi^2/6 + [2(1-g)(g + psi(1+xi)) - pi^2/3] Gamma(2+xi)
//      - [1 + psi(1+xi)]^2 Gamma(2+xi)^2
// evaluated as sign/log pairs and combined against log(T1) with log1p.
double log_t1_plus_t2(double xi) {
  if (xi <= 40.0) {
    const JeffreysGevComponents c = jeffreys_gev_components(xi);
    return std::log(c.T1 + c.T2);
  }
  const double lt1 = log_t1(xi);
  const double lg2 = log_gamma(2.0 + xi);
  const double psi1 = digamma(1.0 + xi);
  const double coef = 2.0 * (1.0 - euler_gamma) * (euler_gamma + psi1) -
                      2.0 * specfun::pi_sq_over_6;
  // Largest-magnitude piece of T2 relative to T1; the quadratic Gamma term
  // dominates and Gamma(2+xi)^2 / Gamma(1+2xi) -> 0 fast, so the ratio is
  // far below 1 here.
  double ratio = -std::exp(2.0 * std::log1p(psi1) + 2.0 * lg2 - lt1);
  ratio += coef * std::exp(lg2 - lt1);
  ratio += specfun::pi_sq_over_6 * std::exp(-lt1);
  return lt1 + std::log1p(ratio);
}

void require_open_support(double xi, const char* who) {
  if (!(xi > -0.5)) {
    throw std::domain_error(std::string(who) + ": requires xi > -1/2");
  }
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::jeffreys_gp: return "jeffreys_gp";
    case Family::mdi_gp: return "mdi_gp";
    case Family::mdi_gp_trunc: return "mdi_gp_trunc";
    case Family::uniform_gp: return "uniform_gp";
    case Family::jeffreys_gev: return "jeffreys_gev";
    case Family::jeffreys_gev_trunc: return "jeffreys_gev_trunc";
    case Family::mdi_gev: return "mdi_gev";
    case Family::mdi_gev_trunc: return "mdi_gev_trunc";
    case Family::uniform_gev: return "uniform_gev";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e.family;
  }
  return std::nullopt;
}

bool is_gp_family(Family f) {
  switch (f) {
    case Family::jeffreys_gp:
    case Family::mdi_gp:
    case Family::mdi_gp_trunc:
    case Family::uniform_gp:
      return true;
    default:
      return false;
  }
}

bool is_gev_family(Family f) { return !is_gp_family(f); }

PriorSpec PriorSpec::make(Family f, std::optional<double> xi_lower,
                          std::optional<double> xi_upper) {
  const bool lower_family = (f == Family::mdi_gp_trunc || f == Family::mdi_gev_trunc);
  const bool upper_family = (f == Family::jeffreys_gev_trunc);
  if (xi_lower && !lower_family) {
    throw std::invalid_argument("xi_lower is only meaningful for mdi_*_trunc priors");
  }
  if (xi_upper && !upper_family) {
    throw std::invalid_argument("xi_upper is only meaningful for jeffreys_gev_trunc");
  }
  if (lower_family && !xi_lower) xi_lower = -1.0;
  if (upper_family && !xi_upper) {
    throw std::invalid_argument(
        "jeffreys_gev_trunc requires an explicit xi_upper (no default)");
  }
  if (xi_lower && !std::isfinite(*xi_lower)) {
    throw std::invalid_argument("xi_lower must be finite");
  }
  if (xi_upper && !std::isfinite(*xi_upper)) {
    throw std::invalid_argument("xi_upper must be finite");
  }
  if (xi_upper && !(*xi_upper > -0.5)) {
    throw std::invalid_argument("xi_upper must exceed -1/2");
  }
  return PriorSpec{f, xi_lower, xi_upper};
}

double PriorSpec::support_lower() const {
  switch (family) {
    case Family::jeffreys_gp:
    case Family::jeffreys_gev:
    case Family::jeffreys_gev_trunc:
      return -0.5;
    case Family::mdi_gp_trunc:
    case Family::mdi_gev_trunc:
      return xi_lower.value_or(-1.0);
    default:
      return -kInf;
  }
}

double PriorSpec::support_upper() const {
  if (family == Family::jeffreys_gev_trunc) return xi_upper.value();
  return kInf;
}

double log_xi_component(const PriorSpec& spec, double xi) {
  switch (spec.family) {
    case Family::jeffreys_gp:
      if (!(xi > -0.5)) return kNegInf;
      return -std::log1p(xi) - 0.5 * std::log1p(2.0 * xi);
    case Family::mdi_gp:
      return -xi;
    case Family::mdi_gp_trunc:
      if (xi < spec.xi_lower.value_or(-1.0)) return kNegInf;
      return -(1.0 + xi);
    case Family::uniform_gp:
    case Family::uniform_gev:
      return 0.0;
    case Family::jeffreys_gev:
      if (!(xi > -0.5)) return kNegInf;
      return log_jeffreys_gev_xi(xi);
    case Family::jeffreys_gev_trunc:
      if (!(xi > -0.5) || xi > spec.xi_upper.value()) return kNegInf;
      return log_jeffreys_gev_xi(xi);
    case Family::mdi_gev:
      return -euler_gamma * (1.0 + xi);
    case Family::mdi_gev_trunc:
      if (xi < spec.xi_lower.value_or(-1.0)) return kNegInf;
      return -euler_gamma * (1.0 + xi);
  }
  return kNegInf;
}

double log_prior(const PriorSpec& spec, const evd::GpParams& p) {
  if (!is_gp_family(spec.family)) {
    throw std::invalid_argument("log_prior: GEV prior applied to GP parameters");
  }
  return log_xi_component(spec, p.xi) - std::log(p.sigma);
}

double log_prior(const PriorSpec& spec, const evd::GevParams& p) {
  if (!is_gev_family(spec.family)) {
    throw std::invalid_argument("log_prior: GP prior applied to GEV parameters");
  }
  return log_xi_component(spec, p.xi) - std::log(p.sigma);
}

JeffreysGevComponents jeffreys_gev_components(double xi) {
  require_open_support(xi, "jeffreys_gev_components");
  if (xi == 0.0) {
    throw std::domain_error("jeffreys_gev_components: xi = 0 (removable singularity)");
  }
  JeffreysGevComponents c{};
  c.p = (1.0 + xi) * (1.0 + xi) * std::exp(log_gamma(1.0 + 2.0 * xi));
  const double g2 = std::exp(log_gamma(2.0 + xi));
  const double psi1 = digamma(1.0 + xi);
  c.q = g2 * (psi1 + (1.0 + xi) / xi);
  c.T1 = kA * c.p;
  c.T2 = specfun::pi_sq_over_6 +
         (2.0 * (1.0 - euler_gamma) * (euler_gamma + psi1) -
          2.0 * specfun::pi_sq_over_6) * g2 -
         (1.0 + psi1) * (1.0 + psi1) * g2 * g2;
  const double x2 = xi * xi;
  c.pi_xi_sq = (c.T1 + c.T2) / (x2 * x2);
  return c;
}

double log_jeffreys_gev_xi(double xi) {
  require_open_support(xi, "jeffreys_gev_xi");
  if (xi == 0.0) {
    // Removable singularity: average of +-1e-6 (documented approximation).
    return 0.5 * (log_jeffreys_gev_xi(1e-6) + log_jeffreys_gev_xi(-1e-6));
  }
  if (std::abs(xi) <= kShapeSeriesRadius) {
    // The printed T1 + T2 cancels to O(xi^4); use the pinned expansion.
    return 0.5 * std::log(shape_series_pi_xi_sq(xi));
  }
  return 0.5 * log_t1_plus_t2(xi) - 2.0 * std::log(std::abs(xi));
}

double jeffreys_gev_xi(double xi) { return std::exp(log_jeffreys_gev_xi(xi)); }

double log_jeffreys_gev_xi_near_half(double log_dist) {
  const double d = std::exp(log_dist);
  const double xi = d - 0.5;
  // Away from the edge the direct evaluation is accurate (and handles its
  // own xi ~ 0 cancellation); the exact-distance form below is needed only
  // where 1 + 2 xi loses digits.
  if (d > 0.05) return log_jeffreys_gev_xi(xi);
  // T1 = A (1+xi)^2 Gamma(1+2xi) with Gamma(1+2xi) = Gamma(1+2d)/(2d); the
  // 1/(2d) pole is carried through log_dist exactly.
  const double log_T1 = std::log(kA) + 2.0 * std::log(0.5 + d) +
                        log_gamma(1.0 + 2.0 * d) -
                        0.693147180559945309417232121458 - log_dist;
  const double g2 = std::exp(log_gamma(2.0 + xi));
  const double psi1 = digamma(1.0 + xi);
  const double T2 = specfun::pi_sq_over_6 +
                    (2.0 * (1.0 - euler_gamma) * (euler_gamma + psi1) -
                     2.0 * specfun::pi_sq_over_6) * g2 -
                    (1.0 + psi1) * (1.0 + psi1) * g2 * g2;
  // T2 is bounded (-3.04 at the edge) while T1 diverges like 1/d.
  const double log_sum = log_T1 + std::log1p(T2 * std::exp(-log_T1));
  return 0.5 * log_sum - 2.0 * std::log(std::abs(xi));
}

double log_xi_component_near_lower(const PriorSpec& spec, double log_dist) {
  const double lower = spec.support_lower();
  if (!std::isfinite(lower)) {
    throw std::invalid_argument(
        "log_xi_component_near_lower: family has no finite lower support bound");
  }
  switch (spec.family) {
    case Family::jeffreys_gp:
      // 1/((1+xi) sqrt(1+2xi)) with 1+2xi = 2d exactly.
      return -std::log(0.5 + std::exp(log_dist)) -
             0.5 * (0.693147180559945309417232121458 + log_dist);
    case Family::jeffreys_gev:
      return log_jeffreys_gev_xi_near_half(log_dist);
    case Family::jeffreys_gev_trunc:
      return log_jeffreys_gev_xi_near_half(log_dist);
    default:
      return log_xi_component(spec, lower + std::exp(log_dist));
  }
}

double jeffreys_gev_lower_bound(double xi) {
  const double c = jeffreys_gev_bound_c();
  return std::sqrt(c) *
         std::exp((specfun::alzer_lambda * xi - euler_gamma) * std::log1p(xi));
}

double jeffreys_gev_bound_c() {
  constexpr double kInvSqrtPi = 0.564189583547756286948079451561;
  const double r = 4.0 / 3.0;
  return r * r * r * r * (kA * kInvSqrtPi - 1.0);
}

double jeffreys_gev_f(double xi) {
  return kA / (1.0 + digamma(1.0 + xi)) - (1.0 - euler_gamma);
}

double jeffreys_gev_upper_bound_near_half(double xi) {
  if (!(xi > -0.5) || !(xi < -0.5 + 1.29)) {
    throw std::domain_error(
        "jeffreys_gev_upper_bound_near_half: valid on (-1/2, -1/2 + 1.29) only");
  }
  return 2.0 * std::sqrt(kA) / std::sqrt(1.0 + 2.0 * xi);
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {Family::jeffreys_gp, "jeffreys_gp", "gp", "xi > -1/2", false, false},
      {Family::mdi_gp, "mdi_gp", "gp", "xi in R", false, false},
      {Family::mdi_gp_trunc, "mdi_gp_trunc", "gp", "xi >= xi_lower (default -1)",
       true, false},
      {Family::uniform_gp, "uniform_gp", "gp", "xi in R", false, false},
      {Family::jeffreys_gev, "jeffreys_gev", "gev", "xi > -1/2", false, false},
      {Family::jeffreys_gev_trunc, "jeffreys_gev_trunc", "gev",
       "-1/2 < xi <= xi_upper (required)", false, true},
      {Family::mdi_gev, "mdi_gev", "gev", "xi in R", false, false},
      {Family::mdi_gev_trunc, "mdi_gev_trunc", "gev",
       "xi >= xi_lower (default -1)", true, false},
      {Family::uniform_gev, "uniform_gev", "gev", "xi in R", false, false},
  };
  return entries;
}

}  // namespace evbayes::priors
