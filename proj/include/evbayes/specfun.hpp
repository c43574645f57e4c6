// Special functions (log-gamma, digamma) and the classical gamma-function
// inequalities used by the shape-prior analysis. All functions are pure and
// re-entrant; domain violations throw std::domain_error.

#ifndef EVBAYES_SPECFUN_HPP
#define EVBAYES_SPECFUN_HPP

namespace evbayes::specfun {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.577215664901532860606512090082;

// lambda = (pi^2/6 - gamma)/2, the exponent constant in the gamma-function
// lower bound gamma(x) > x^(lambda*(x-1) - gamma).
inline constexpr double alzer_lambda = 0.533859200973346787925086943399;

inline constexpr double pi_sq_over_6 = 1.644934066848226436472415166646;

// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 terms), with the
// recurrence ln Gamma(x) = ln Gamma(x+1) - ln x below 0.5. Relative error
// stays under 1e-12 across [1e-3, 1e3]; see scripts/gen_specfun_constants.py
// for the coefficient provenance and an accuracy scan.
double log_gamma(double x);

// psi(x) = d ln Gamma(x) / dx for x > 0. Recurrence shift into x >= 6, then
// the asymptotic Bernoulli series.
double digamma(double x);

// x^(lambda*(x-1) - gamma) for x > 0. A strict lower bound for Gamma(x)
// when x > 1 (the bound fails on (0,1): the same expression is an upper
// bound there).
double alzer_lower_bound(double x);

// ln Gamma(2z) - [ -0.5 ln(2 pi) + (2z - 0.5) ln 2 + ln Gamma(z)
//               + ln Gamma(z + 1/2) ];  identically zero (duplication
// formula), returned as a residual for accuracy checks.
double duplication_residual(double z);

}  // namespace evbayes::specfun

#endif
