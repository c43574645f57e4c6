// Adaptive random-walk Metropolis sampling of proper posteriors. The walk
// runs on transformed coordinates ((ln sigma, xi) for GP; (mu, ln sigma, xi)
// for GEV and the point process) with the +ln(sigma) change-of-variables term
// in the target. The proposal covariance adapts toward the target acceptance
// rate during burn-in only and is frozen afterwards, preserving the Markov
// property of the retained draws. Identical configurations and seeds give
// bitwise-identical chains.

#ifndef EVBAYES_MCMC_HPP
#define EVBAYES_MCMC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evbayes/evd.hpp"
#include "evbayes/model.hpp"
#include "evbayes/posterior.hpp"
#include "evbayes/priors.hpp"

namespace evbayes::mcmc {

struct McmcConfig {
  int iterations = 20000;
  int burn_in = 5000;
  int thinning = 1;
  double target_accept = 0.234;
  int adaptation_window = 200;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Chain {
  Model model = Model::gp;
  std::vector<std::string> parameter_names;        // natural coordinates
  std::vector<std::vector<double>> draws;          // one vector per retained draw
  std::vector<double> log_posterior;               // trace, same length
  double acceptance_rate = 0.0;                    // post burn-in
  std::vector<double> proposal_covariance;         // frozen, row-major d*d
  std::uint64_t seed = 0;

  int dimension() const { return static_cast<int>(parameter_names.size()); }
  int length() const { return static_cast<int>(draws.size()); }
};

// Raised when a (prior, sample size) combination is improper or unverified
// per the built-in claims table and no override was given.
class ProprietyRefusal : public std::runtime_error {
 public:
  explicit ProprietyRefusal(const std::string& what) : std::runtime_error(what) {}
};

// Generic adaptive random-walk Metropolis on a log target. init must have
// finite target value.
Chain run_rwm(const std::function<double(const std::vector<double>&)>& log_target,
              std::vector<double> init, const McmcConfig& cfg);

Chain sample(const evd::ExcessSample& data, const priors::PriorSpec& prior,
             const McmcConfig& cfg, bool override_propriety = false);
Chain sample(const evd::BlockMaximaSample& data, const priors::PriorSpec& prior,
             const McmcConfig& cfg, bool override_propriety = false);
Chain sample(const posterior::NhppData& data, const priors::PriorSpec& prior,
             const McmcConfig& cfg, bool override_propriety = false);

// Independent chains with generator streams derived from cfg.seed; run in
// parallel, results ordered by stream index.
template <typename Data>
std::vector<Chain> sample_chains(const Data& data, const priors::PriorSpec& prior,
                                 const McmcConfig& cfg, int n_chains,
                                 bool override_propriety = false);

// Per-draw model quantile at probability 1 - 1/T (the T-period return
// level). Chains from GP or GEV fits only; T > 1.
std::vector<double> return_level(const Chain& chain, double T);

struct Diagnostics {
  double acceptance_rate = 0.0;
  std::vector<double> ess;      // effective sample size per coordinate
  std::vector<double> split_rhat;
};

Diagnostics diagnostics(const Chain& chain);

// Effective sample size of a scalar series (initial positive sequence
// estimator); exposed for tests.
double effective_sample_size(const std::vector<double>& x);

}  // namespace evbayes::mcmc

#endif
