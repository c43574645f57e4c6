#include "evbayes/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace evbayes::quad {

namespace {

// Gauss-Kronrod 7-15 nodes (positive half) and weights.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};

constexpr double kWeightK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Gauss-7 weights aligned with kNodes indices 1, 3, 5, 7.
constexpr double kWeightG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Cell {
  double a, b;
  int depth;
};

struct CellEstimate {
  double log_k15 = neg_inf;
  double log_err = neg_inf;
  bool nan = false;
  bool peak_left = true;  // largest node value in the left half
};

CellEstimate evaluate_cell(const std::function<double(double)>& log_f, double a,
                           double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double log_h = std::log(h);

  double fk[15];
  int idx = 0;
  for (int i = 0; i < 7; ++i) {
    fk[idx++] = log_f(c - h * kNodes[i]);
    fk[idx++] = log_f(c + h * kNodes[i]);
  }
  fk[idx++] = log_f(c);

  CellEstimate est;
  double m = neg_inf;
  int argmax = 14;
  for (int i = 0; i < 15; ++i) {
    if (std::isnan(fk[i])) {
      est.nan = true;
      return est;
    }
    if (fk[i] > m) {
      m = fk[i];
      argmax = i;
    }
  }
  if (m == neg_inf) return est;  // zero cell
  est.peak_left = argmax != 14 && argmax % 2 == 0;

  double sk = 0.0, sg = 0.0;
  idx = 0;
  for (int i = 0; i < 7; ++i) {
    const double lo = std::exp(fk[idx++] - m);
    const double hi = std::exp(fk[idx++] - m);
    sk += kWeightK[i] * (lo + hi);
    if (i % 2 == 1) sg += kWeightG[i / 2] * (lo + hi);
  }
  const double fc = std::exp(fk[idx] - m);
  sk += kWeightK[7] * fc;
  sg += kWeightG[3] * fc;

  est.log_k15 = m + std::log(sk) + log_h;
  const double diff = std::abs(sk - sg);
  if (diff > 0.0 && sk > 0.0) {
    // QUADPACK-style sharpening of the raw |K15 - G7| estimate.
    const double rel = diff / sk;
    const double sharp = std::pow(200.0 * rel, 1.5);
    est.log_err = est.log_k15 + std::log(std::min(rel, std::min(sharp, 1.0)));
  }
  return est;
}

}  // namespace

double log_sum_exp(const std::vector<double>& v) {
  double m = neg_inf;
  for (double x : v) m = std::max(m, x);
  if (m == neg_inf || !std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

Result integrate_log(const std::function<double(double)>& log_f, double a,
                     double b, const Options& opt) {
  Result res;
  if (!(b > a)) return res;

  const double log_tol = std::log(opt.rel_tol);
  // Threshold acceptances against the running total/peak get a margin below
  // the per-cell relative rule so that accumulated tail-cell errors stay
  // within budget.
  const double log_global_margin = std::log(64.0);
  double log_peak = neg_inf;  // largest single-cell estimate seen so far

  std::vector<Cell> stack;
  stack.push_back({a, b, 0});
  while (!stack.empty()) {
    const Cell cell = stack.back();
    stack.pop_back();
    if (++res.cells > opt.max_cells) {
      res.converged = false;
      break;
    }
    const CellEstimate est = evaluate_cell(log_f, cell.a, cell.b);
    if (est.nan) {
      res.converged = false;
      continue;
    }
    log_peak = std::max(log_peak, est.log_k15);
    const bool no_mass = est.log_k15 == neg_inf && est.log_err == neg_inf;
    if (cell.depth >= opt.min_depth) {
      // Cells are only declared empty or accepted past the forced-split
      // depth, so a narrow mode cannot hide between the root's nodes.
      if (no_mass) continue;
      const bool local_ok = est.log_err <= log_tol + est.log_k15;
      const double floor =
          log_tol - log_global_margin + std::max(res.log_value, log_peak);
      // Negligible relative to what the integral is already known to be at
      // least as large as: the value itself (not just the error) is below
      // tolerance, so no further refinement can matter.
      const bool negligible = est.log_k15 <= floor;
      if (local_ok || est.log_err <= floor || negligible) {
        res.log_value = log_sum_exp(res.log_value, est.log_k15);
        res.log_error = log_sum_exp(res.log_error, est.log_err);
        continue;
      }
    }
    if (cell.depth >= opt.max_depth) {
      res.log_value = log_sum_exp(res.log_value, est.log_k15);
      res.log_error = log_sum_exp(res.log_error, est.log_err);
      res.converged = false;
      continue;
    }
    const double mid = 0.5 * (cell.a + cell.b);
    if (!(mid > cell.a && mid < cell.b)) {
      // interval no longer splittable in floating point
      res.log_value = log_sum_exp(res.log_value, est.log_k15);
      res.log_error = log_sum_exp(res.log_error, est.log_err);
      continue;
    }
    // Process the half holding the largest node first: the running total
    // grows fast, which lets the threshold rules retire far-tail cells.
    if (est.peak_left) {
      stack.push_back({mid, cell.b, cell.depth + 1});
      stack.push_back({cell.a, mid, cell.depth + 1});
    } else {
      stack.push_back({cell.a, mid, cell.depth + 1});
      stack.push_back({mid, cell.b, cell.depth + 1});
    }
  }
  return res;
}

namespace {

Result integrate_power(const std::function<double(double, double)>& log_f,
                       double a, double b, double p, bool lower,
                       const Options& opt) {
  if (!(b > a)) return {};
  if (!(p > -1.0)) {
    Result bad;
    bad.converged = false;
    return bad;
  }
  const double range = b - a;
  const double inv = 1.0 / (1.0 + p);
  const double log_jac = std::log(range) - std::log1p(p);
  auto g = [&](double t) {
    const double log_t = std::log(t);
    const double log_dist = std::log(range) + inv * log_t;
    const double x = lower ? a + std::exp(log_dist) : b - std::exp(log_dist);
    return log_f(x, log_dist) + log_jac + (inv - 1.0) * log_t;
  };
  return integrate_log(g, 0.0, 1.0, opt);
}

}  // namespace

Result integrate_log_power_lower(const std::function<double(double, double)>& log_f,
                                 double a, double b, double p,
                                 const Options& opt) {
  return integrate_power(log_f, a, b, p, true, opt);
}

Result integrate_log_power_upper(const std::function<double(double, double)>& log_f,
                                 double a, double b, double p,
                                 const Options& opt) {
  return integrate_power(log_f, a, b, p, false, opt);
}

Result merge(const Result& x, const Result& y) {
  Result r;
  r.log_value = log_sum_exp(x.log_value, y.log_value);
  r.log_error = log_sum_exp(x.log_error, y.log_error);
  r.cells = x.cells + y.cells;
  r.converged = x.converged && y.converged;
  return r;
}

}  // namespace evbayes::quad
