#include "evbayes/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "evbayes/propriety.hpp"
#include "evbayes/rng.hpp"
#include "evbayes/specfun.hpp"

namespace evbayes::mcmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Lower-triangular Cholesky factor of a row-major SPD matrix; diagonal
// entries floored to keep the proposal full-rank.
std::vector<double> cholesky(const std::vector<double>& a, int d) {
  std::vector<double> l(d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i * d + j];
      for (int k = 0; k < j; ++k) s -= l[i * d + k] * l[j * d + k];
      if (i == j) {
        l[i * d + j] = std::sqrt(std::max(s, 1e-12));
      } else {
        l[i * d + j] = s / l[j * d + j];
      }
    }
  }
  return l;
}

std::vector<double> sample_covariance(const std::vector<std::vector<double>>& xs,
                                      std::size_t from, int d) {
  const std::size_t n = xs.size() - from;
  std::vector<double> mean(d, 0.0);
  for (std::size_t t = from; t < xs.size(); ++t) {
    for (int i = 0; i < d; ++i) mean[i] += xs[t][i];
  }
  for (int i = 0; i < d; ++i) mean[i] /= static_cast<double>(n);
  std::vector<double> cov(d * d, 0.0);
  for (std::size_t t = from; t < xs.size(); ++t) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= i; ++j) {
        cov[i * d + j] += (xs[t][i] - mean[i]) * (xs[t][j] - mean[j]);
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      cov[i * d + j] /= static_cast<double>(n > 1 ? n - 1 : 1);
      cov[j * d + i] = cov[i * d + j];
    }
  }
  for (int i = 0; i < d; ++i) cov[i * d + i] += 1e-9;
  return cov;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 1.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

void gate(Model model, const priors::PriorSpec& prior, int n, int n_blocks,
          bool override_propriety) {
  const auto info = propriety::known_propriety(model, prior, n, n_blocks);
  if (info.status == propriety::KnownPropriety::proper || override_propriety) {
    return;
  }
  const char* kind = info.status == propriety::KnownPropriety::improper
                         ? "improper posterior"
                         : "unverified posterior propriety";
  throw ProprietyRefusal(std::string("refusing to sample (") + kind +
                         "): " + info.citation +
                         "; pass the propriety override to proceed anyway");
}

}  // namespace

void McmcConfig::validate() const {
  if (iterations <= 0 || burn_in <= 0 || thinning <= 0 || adaptation_window <= 0) {
    throw std::invalid_argument("McmcConfig: counts must be positive");
  }
  if (burn_in >= iterations) {
    throw std::invalid_argument("McmcConfig: burn_in must be below iterations");
  }
  if (!(target_accept > 0.0 && target_accept < 1.0)) {
    throw std::invalid_argument("McmcConfig: target acceptance must lie in (0,1)");
  }
}

Chain run_rwm(const std::function<double(const std::vector<double>&)>& log_target,
              std::vector<double> init, const McmcConfig& cfg) {
  cfg.validate();
  const int d = static_cast<int>(init.size());
  double lp = log_target(init);
  if (!std::isfinite(lp)) {
    throw std::invalid_argument("run_rwm: initial state has non-finite target");
  }

  Rng rng(cfg.seed);
  std::vector<double> x = std::move(init);
  std::vector<double> chol(d * d, 0.0);
  for (int i = 0; i < d; ++i) chol[i * d + i] = 0.1;
  double log_scale = std::log(2.38 / std::sqrt(static_cast<double>(d)));

  std::vector<std::vector<double>> history;  // burn-in states, for covariance
  history.reserve(cfg.burn_in);

  Chain chain;
  chain.seed = cfg.seed;
  chain.draws.reserve((cfg.iterations - cfg.burn_in) / cfg.thinning + 1);

  int window_accepts = 0;
  long post_accepts = 0;
  std::vector<double> prop(d);

  for (int it = 0; it < cfg.iterations; ++it) {
    const bool burning = it < cfg.burn_in;
    const double s = std::exp(log_scale);
    for (int i = 0; i < d; ++i) prop[i] = 0.0;
    for (int j = 0; j < d; ++j) {
      const double eta = rng.normal();
      for (int i = j; i < d; ++i) prop[i] += chol[i * d + j] * eta;
    }
    for (int i = 0; i < d; ++i) prop[i] = x[i] + s * prop[i];

    const double lp_new = log_target(prop);
    if (std::log(rng.uniform()) < lp_new - lp) {
      x = prop;
      lp = lp_new;
      if (burning) ++window_accepts; else ++post_accepts;
    }

    if (burning) {
      history.push_back(x);
      if ((it + 1) % cfg.adaptation_window == 0) {
        const double rate =
            static_cast<double>(window_accepts) / cfg.adaptation_window;
        log_scale += 0.66 * (rate - cfg.target_accept);
        window_accepts = 0;
        // Covariance estimation kicks in once half of burn-in has produced
        // some spread; diagonal-only before that.
        if (it + 1 >= cfg.burn_in / 2) {
          const std::size_t lookback =
              std::min<std::size_t>(history.size(), 10u * cfg.adaptation_window);
          chol = cholesky(
              sample_covariance(history, history.size() - lookback, d), d);
        } else {
          std::vector<double> diag(d * d, 0.0);
          const std::size_t lookback =
              std::min<std::size_t>(history.size(), 10u * cfg.adaptation_window);
          const auto cov = sample_covariance(history, history.size() - lookback, d);
          for (int i = 0; i < d; ++i) diag[i * d + i] = cov[i * d + i];
          chol = cholesky(diag, d);
        }
      }
    } else if ((it - cfg.burn_in) % cfg.thinning == 0) {
      chain.draws.push_back(x);
      chain.log_posterior.push_back(lp);
    }
  }

  chain.acceptance_rate =
      static_cast<double>(post_accepts) / (cfg.iterations - cfg.burn_in);
  const double s2 = std::exp(2.0 * log_scale);
  chain.proposal_covariance.assign(d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double v = 0.0;
      for (int k = 0; k < d; ++k) v += chol[i * d + k] * chol[j * d + k];
      chain.proposal_covariance[i * d + j] = s2 * v;
    }
  }
  return chain;
}

Chain sample(const evd::ExcessSample& data, const priors::PriorSpec& prior,
             const McmcConfig& cfg, bool override_propriety) {
  gate(Model::gp, prior, data.size(), -1, override_propriety);
  auto target = [&](const std::vector<double>& v) {
    if (v[0] > 700.0) return kNegInf;
    return posterior::gp_log_posterior(data, prior, std::exp(v[0]), v[1]) + v[0];
  };
  const double t0 = std::log(mean_of(data.values()));
  Chain chain = run_rwm(target, {t0, 0.1}, cfg);
  chain.model = Model::gp;
  chain.parameter_names = {"sigma", "xi"};
  for (auto& draw : chain.draws) draw[0] = std::exp(draw[0]);
  return chain;
}

namespace {

// Gumbel-moment starting values; shape starts at 0.1 and falls back to the
// Gumbel boundary when that is off-support for the data at hand.
std::vector<double> gev_start(
    const std::vector<double>& values,
    const std::function<double(const std::vector<double>&)>& target) {
  const double sd = sd_of(values);
  const double sigma0 = std::max(sd * 0.7796968012336093, 1e-3);  // sd sqrt(6)/pi
  const double mu0 = mean_of(values) - specfun::euler_gamma * sigma0;
  std::vector<double> v = {mu0, std::log(sigma0), 0.1};
  if (!std::isfinite(target(v))) v[2] = 1e-8;
  return v;
}

}  // namespace

Chain sample(const evd::BlockMaximaSample& data, const priors::PriorSpec& prior,
             const McmcConfig& cfg, bool override_propriety) {
  gate(Model::gev, prior, data.size(), -1, override_propriety);
  auto target = [&](const std::vector<double>& v) {
    if (v[1] > 700.0) return kNegInf;
    return posterior::gev_log_posterior(data, prior, v[0], std::exp(v[1]), v[2]) +
           v[1];
  };
  Chain chain = run_rwm(target, gev_start(data.values(), target), cfg);
  chain.model = Model::gev;
  chain.parameter_names = {"mu", "sigma", "xi"};
  for (auto& draw : chain.draws) draw[1] = std::exp(draw[1]);
  return chain;
}

Chain sample(const posterior::NhppData& data, const priors::PriorSpec& prior,
             const McmcConfig& cfg, bool override_propriety) {
  gate(Model::nhpp, prior, data.size(), data.n_blocks(), override_propriety);
  auto target = [&](const std::vector<double>& v) {
    if (v[1] > 700.0) return kNegInf;
    return posterior::nhpp_log_posterior(data, prior, v[0], std::exp(v[1]), v[2]) +
           v[1];
  };
  Chain chain = run_rwm(target, gev_start(data.values(), target), cfg);
  chain.model = Model::nhpp;
  chain.parameter_names = {"mu", "sigma", "xi"};
  for (auto& draw : chain.draws) draw[1] = std::exp(draw[1]);
  return chain;
}

template <typename Data>
std::vector<Chain> sample_chains(const Data& data, const priors::PriorSpec& prior,
                                 const McmcConfig& cfg, int n_chains,
                                 bool override_propriety) {
  std::vector<std::future<Chain>> futs;
  futs.reserve(n_chains);
  for (int c = 0; c < n_chains; ++c) {
    McmcConfig sub = cfg;
    sub.seed = Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(c));
    futs.push_back(std::async(std::launch::async, [&, sub] {
      return sample(data, prior, sub, override_propriety);
    }));
  }
  std::vector<Chain> out;
  out.reserve(n_chains);
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

template std::vector<Chain> sample_chains<evd::ExcessSample>(
    const evd::ExcessSample&, const priors::PriorSpec&, const McmcConfig&, int,
    bool);
template std::vector<Chain> sample_chains<evd::BlockMaximaSample>(
    const evd::BlockMaximaSample&, const priors::PriorSpec&, const McmcConfig&,
    int, bool);
template std::vector<Chain> sample_chains<posterior::NhppData>(
    const posterior::NhppData&, const priors::PriorSpec&, const McmcConfig&, int,
    bool);

std::vector<double> return_level(const Chain& chain, double T) {
  if (!(T > 1.0)) {
    throw std::domain_error("return_level: return period must exceed 1");
  }
  if (chain.model == Model::nhpp) {
    throw std::invalid_argument("return_level: requires a GP or GEV chain");
  }
  const double q = 1.0 - 1.0 / T;
  std::vector<double> out;
  out.reserve(chain.draws.size());
  for (const auto& draw : chain.draws) {
    if (chain.model == Model::gp) {
      out.push_back(evd::gp_quantile(q, {draw[0], draw[1]}));
    } else {
      out.push_back(evd::gev_quantile(q, {draw[0], draw[1], draw[2]}));
    }
  }
  return out;
}

double effective_sample_size(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 4) return static_cast<double>(n);
  const double m = mean_of(x);
  const int max_lag = std::min(n - 2, 4000);
  std::vector<double> c(max_lag + 1, 0.0);
  for (int k = 0; k <= max_lag; ++k) {
    double s = 0.0;
    for (int t = 0; t + k < n; ++t) s += (x[t] - m) * (x[t + k] - m);
    c[k] = s / n;
  }
  if (c[0] <= 0.0) return 1.0;  // constant series
  // Initial positive sequence: accumulate paired autocovariances while the
  // pair sums stay positive.
  double var = -c[0];
  for (int t = 0; 2 * t + 1 <= max_lag; ++t) {
    const double pair = c[2 * t] + c[2 * t + 1];
    if (pair <= 0.0) break;
    var += 2.0 * pair;
  }
  if (var <= 0.0) return static_cast<double>(n);
  const double ess = n * c[0] / var;
  return std::min(std::max(ess, 1.0), static_cast<double>(n));
}

Diagnostics diagnostics(const Chain& chain) {
  Diagnostics d;
  d.acceptance_rate = chain.acceptance_rate;
  const int dim = chain.dimension();
  const int n = chain.length();
  for (int i = 0; i < dim; ++i) {
    std::vector<double> coord(n);
    for (int t = 0; t < n; ++t) coord[t] = chain.draws[t][i];
    d.ess.push_back(effective_sample_size(coord));

    // Split-chain shrink factor over the two halves.
    const int half = n / 2;
    if (half < 2) {
      d.split_rhat.push_back(1.0);
      continue;
    }
    std::vector<double> a(coord.begin(), coord.begin() + half);
    std::vector<double> b(coord.end() - half, coord.end());
    const double ma = mean_of(a), mb = mean_of(b);
    const double va = sd_of(a) * sd_of(a), vb = sd_of(b) * sd_of(b);
    const double w = 0.5 * (va + vb);
    const double grand = 0.5 * (ma + mb);
    const double bvar =
        half * ((ma - grand) * (ma - grand) + (mb - grand) * (mb - grand));
    if (w <= 0.0) {
      d.split_rhat.push_back(1.0);
      continue;
    }
    const double vplus = (half - 1.0) / half * w + bvar / half;
    d.split_rhat.push_back(std::sqrt(vplus / w));
  }
  return d;
}

}  // namespace evbayes::mcmc
