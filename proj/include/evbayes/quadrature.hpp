// Adaptive quadrature operating entirely in log space. Integrands are
// supplied as log f and all accumulation uses log-sum-exp, so integrals with
// values far outside double range (the divergent tail integrals reach
// exp(10^5) and beyond) are representable by their logarithm throughout.
//
// The cell rule is Gauss-Kronrod 7-15. Endpoint power singularities
// (x - a)^p with p > -1 are handled by the substitution x = a + R t^(1/(1+p)),
// which renders the integrand smooth; the integrand callback receives the
// distance to the endpoint computed exactly from t, never by subtraction.

#ifndef EVBAYES_QUADRATURE_HPP
#define EVBAYES_QUADRATURE_HPP

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>
#include <vector>

namespace evbayes::quad {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b)
inline double log_sum_exp(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-(std::abs(a - b))));
}

double log_sum_exp(const std::vector<double>& v);

// log|e^a - e^b|; -inf when equal.
inline double log_diff_exp(double a, double b) {
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  if (hi == neg_inf) return neg_inf;
  const double d = -std::expm1(lo - hi);  // 1 - e^(lo-hi), in [0, 1]
  return d <= 0.0 ? neg_inf : hi + std::log(d);
}

struct Options {
  double rel_tol = 1e-9;
  int min_depth = 3;
  int max_depth = 54;
  long max_cells = 400000;
};

struct Result {
  double log_value = neg_inf;
  double log_error = neg_inf;
  long cells = 0;
  bool converged = true;
};

// Integral of exp(log_f) over [a, b]. log_f may return -inf (zero density);
// NaN marks the result unconverged.
Result integrate_log(const std::function<double(double)>& log_f, double a,
                     double b, const Options& opt = {});

// Integral of exp(log_f) over [a, b] where exp(log_f) behaves like
// C (x-a)^p (lower) or C (b-x)^p (upper) at the indicated endpoint, p > -1.
// log_f receives (x, log_dist) with log_dist the log of the exact distance
// to that endpoint; the distance itself may underflow double range (the
// substitution exponent 1/(1+p) can exceed 1e4), its log never does.
Result integrate_log_power_lower(
    const std::function<double(double, double)>& log_f, double a, double b,
    double p, const Options& opt = {});
Result integrate_log_power_upper(
    const std::function<double(double, double)>& log_f, double a, double b,
    double p, const Options& opt = {});

// Merge: log-sum values, log-sum errors, AND convergence.
Result merge(const Result& x, const Result& y);

// Index-parallel map with deterministic (index-ordered) results.
template <typename F>
auto parallel_map(int n, int threads, F&& fn) {
  using R = decltype(fn(0));
  std::vector<R> out(n);
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      out[i] = fn(i);
    }
  };
  const int k = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int i = 0; i < k; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc > 8 ? 8 : hc);
}

}  // namespace evbayes::quad

#endif
