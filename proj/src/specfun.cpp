#include "evbayes/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace evbayes::specfun {

namespace {

void require_positive_finite(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(who) + ": argument must be positive and finite");
  }
}

// Lanczos coefficients, g = 7 (Godfrey's set). Regenerate / re-validate with
// scripts/gen_specfun_constants.py.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLog2Pi = 0.918938533204672741780329736406;

double log_gamma_core(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) {
    a += kLanczos[i] / (z + i);
  }
  const double t = z + 7.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

double log_gamma(double x) {
  require_positive_finite(x, "log_gamma");
  if (x < 0.5) {
    return log_gamma_core(x + 1.0) - std::log(x);
  }
  return log_gamma_core(x);
}

double digamma(double x) {
  require_positive_finite(x, "digamma");
  // Shift into the asymptotic regime.
  double acc = 0.0;
  while (x < 6.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n}).
  static constexpr double kAsym[7] = {
      -1.0 / 12.0, 1.0 / 120.0,  -1.0 / 252.0,      1.0 / 240.0,
      -1.0 / 132.0, 691.0 / 32760.0, -1.0 / 12.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double s = std::log(x) - 0.5 * inv;
  double p = inv2;
  for (double b : kAsym) {
    s += b * p;
    p *= inv2;
  }
  return acc + s;
}

double alzer_lower_bound(double x) {
  require_positive_finite(x, "alzer_lower_bound");
  return std::exp((alzer_lambda * (x - 1.0) - euler_gamma) * std::log(x));
}

double duplication_residual(double z) {
  require_positive_finite(z, "duplication_residual");
  constexpr double kLog2 = 0.693147180559945309417232121458;
  return log_gamma(2.0 * z) -
         (-kHalfLog2Pi + (2.0 * z - 0.5) * kLog2 + log_gamma(z) + log_gamma(z + 0.5));
}

}  // namespace evbayes::specfun
