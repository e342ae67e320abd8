#ifndef MOMSTAB_SDE_MC_HPP
#define MOMSTAB_SDE_MC_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "momstab/model.hpp"

namespace momstab {

// Explicit Euler-Maruyama ensemble over the Ito SDE of LinearSDESystem.
struct EnsembleConfig {
  LinearSDESystem system;
  Eigen::VectorXd initial_state;
  double dt = 1e-3;
  double horizon = 1.0;
  std::int64_t paths = 1000;
  std::uint64_t seed = 0;
  std::vector<int> moment_degrees = {2};       // p for E[||x||^p]
  std::vector<std::vector<int>> monomials;     // optional E[x^{k_1}...x^{k_m}]
  int samples = 512;                           // uniform sample grid
};

struct MomentTrace {
  std::vector<double> times;
  std::vector<int> degrees;
  // [degree index][sample]
  std::vector<std::vector<double>> norm_values;
  std::vector<std::vector<double>> norm_stderr;
  std::vector<std::vector<int>> monomials;
  // [monomial index][sample]
  std::vector<std::vector<double>> monomial_values;
  std::vector<std::vector<double>> monomial_stderr;
  bool overflow = false;
};

// Soft sanity warnings (explicit-scheme step bound etc.); hard violations
// throw InvalidInput from simulate_ensemble instead.
std::vector<std::string> validate_config(const EnsembleConfig& cfg);

// Deterministic for a fixed (cfg, seed): increments come from a counter-based
// generator keyed by (seed, path, step, driver), and per-sample reductions run
// in fixed path order, so the trace is independent of execution order. On a
// non-finite state the trace is truncated at the first affected sample and
// the overflow flag is set.
MomentTrace simulate_ensemble(const EnsembleConfig& cfg);

struct GrowthRateFit {
  double rate = 0.0;
  double stderr = 0.0;
  int samples_used = 0;
};

// Least-squares slope of log E vs t over the trailing `window` fraction of
// the horizon. Throws NonPositiveMoment / InsufficientSamples.
GrowthRateFit fit_growth_rate(const MomentTrace& trace, int degree,
                              double window);
GrowthRateFit fit_growth_rate_monomial(const MomentTrace& trace,
                                       const std::vector<int>& monomial,
                                       double window);
// Shared core, usable on any positive series.
GrowthRateFit fit_exponential_rate(const std::vector<double>& times,
                                   const std::vector<double>& values,
                                   double window);

// Standard normal draw keyed by (seed, path, step, driver); stateless, so
// ensembles can be evaluated in any order. Steps are 0-based increment
// indices.
double counter_gaussian(std::uint64_t seed, std::uint64_t path,
                        std::uint64_t step, std::uint64_t driver);

}  // namespace momstab

#endif
