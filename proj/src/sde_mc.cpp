#include "momstab/sde_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace momstab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline double uniform_open(std::uint64_t bits) {
  // (0, 1]: safe argument for log
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

inline double uniform_half_open(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Box-Muller pair for counter q; consecutive steps share one counter and
// split the (cos, sin) pair.
inline void gaussian_pair(std::uint64_t seed, std::uint64_t path,
                          std::uint64_t q, std::uint64_t driver, double* g0,
                          double* g1) {
  const std::uint64_t key =
      mix64(seed ^ mix64(path ^ mix64(q ^ mix64(driver))));
  const double u1 = uniform_open(mix64(key ^ 0xA5A5A5A5A5A5A5A5ull));
  const double u2 = uniform_half_open(mix64(key ^ 0x5A5A5A5A5A5A5A5Aull));
  const double r = std::sqrt(-2.0 * std::log(u1));
  double s, c;
  sincos(kTwoPi * u2, &s, &c);
  *g0 = r * c;
  *g1 = r * s;
}

// Streaming signed log-sum accumulator: mean in sign/log-magnitude form plus
// the second moment, so high-degree moments survive until the final exp.
struct LogAccumulator {
  double max_pos = -std::numeric_limits<double>::infinity();
  double sum_pos = 0.0;
  double max_neg = -std::numeric_limits<double>::infinity();
  double sum_neg = 0.0;
  double max_sq = -std::numeric_limits<double>::infinity();
  double sum_sq = 0.0;

  void add(double log_abs, int sign) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity())
      return;
    double& maxv = sign > 0 ? max_pos : max_neg;
    double& sumv = sign > 0 ? sum_pos : sum_neg;
    if (log_abs > maxv) {
      sumv = sumv * std::exp(maxv - log_abs) + 1.0;
      maxv = log_abs;
    } else {
      sumv += std::exp(log_abs - maxv);
    }
    const double l2 = 2.0 * log_abs;
    if (l2 > max_sq) {
      sum_sq = sum_sq * std::exp(max_sq - l2) + 1.0;
      max_sq = l2;
    } else {
      sum_sq += std::exp(l2 - max_sq);
    }
  }

  double total_signed() const {
    double pos = sum_pos > 0.0 ? std::exp(max_pos) * sum_pos : 0.0;
    double neg = sum_neg > 0.0 ? std::exp(max_neg) * sum_neg : 0.0;
    return pos - neg;
  }

  double total_squares() const {
    return sum_sq > 0.0 ? std::exp(max_sq) * sum_sq : 0.0;
  }
};

struct Fit {
  double slope;
  double slope_stderr;
  int n;
};

}  // namespace

double counter_gaussian(std::uint64_t seed, std::uint64_t path,
                        std::uint64_t step, std::uint64_t driver) {
  double g0, g1;
  gaussian_pair(seed, path, step >> 1, driver, &g0, &g1);
  return (step & 1ull) ? g1 : g0;
}

std::vector<std::string> validate_config(const EnsembleConfig& cfg) {
  std::vector<std::string> warnings;
  if (cfg.dt * cfg.system.drift.norm() >= 0.5)
    warnings.push_back(
        "dt * ||drift|| >= 0.5: the explicit scheme may be inaccurate or "
        "unstable");
  return warnings;
}

namespace {

void check_config(const EnsembleConfig& cfg) {
  require_valid(cfg.system);
  if (!(cfg.dt > 0.0)) throw InvalidInput("dt must be positive");
  if (!(cfg.horizon > cfg.dt)) throw InvalidInput("horizon must exceed dt");
  if (cfg.paths < 2) throw InvalidInput("paths must be >= 2");
  if (cfg.samples < 2) throw InvalidInput("samples must be >= 2");
  if (cfg.initial_state.size() != cfg.system.dim)
    throw InvalidInput("initial_state must have length dim");
  if (!cfg.initial_state.allFinite())
    throw InvalidInput("initial_state has non-finite entries");
  for (int p : cfg.moment_degrees)
    if (p < 1) throw InvalidInput("moment degrees must be >= 1");
  for (const auto& mono : cfg.monomials)
    for (int k : mono)
      if (k < 0 || k >= cfg.system.dim)
        throw IndexOutOfRange("monomial index outside state dimension");
}

}  // namespace

MomentTrace simulate_ensemble(const EnsembleConfig& cfg) {
  check_config(cfg);

  const int n = cfg.system.dim;
  const int drivers = cfg.system.noise_count;
  const std::int64_t nsteps =
      std::max<std::int64_t>(1, std::llround(cfg.horizon / cfg.dt));
  const double dt = cfg.dt;
  const double sq_dt = std::sqrt(dt);

  // sample step indices on a uniform grid including t = 0
  const int samples = cfg.samples;
  std::vector<std::int64_t> sample_step(samples);
  for (int s = 0; s < samples; ++s) {
    const double t = cfg.horizon * static_cast<double>(s) / (samples - 1);
    sample_step[s] =
        std::min<std::int64_t>(nsteps, std::llround(t / dt));
  }

  // flat row-major copies for the hot loop
  std::vector<double> drift_dt(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      drift_dt[static_cast<std::size_t>(i) * n + j] = cfg.system.drift(i, j) * dt;
  std::vector<double> rho_sq(static_cast<std::size_t>(drivers) * n * n);
  for (int a = 0; a < drivers; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        rho_sq[(static_cast<std::size_t>(a) * n + i) * n + j] =
            cfg.system.noise[a](i, j) * sq_dt;

  const std::size_t ndeg = cfg.moment_degrees.size();
  const std::size_t nmono = cfg.monomials.size();
  std::vector<LogAccumulator> acc_norm(ndeg * samples);
  std::vector<LogAccumulator> acc_mono(nmono * samples);

  std::int64_t first_bad_sample = samples;

  std::vector<double> x(n), y(n), g(std::max(drivers, 1));
  std::vector<double> pending(std::max(drivers, 1));

  for (std::int64_t path = 0; path < cfg.paths; ++path) {
    for (int i = 0; i < n; ++i) x[i] = cfg.initial_state(i);
    int next_sample = 0;
    bool bad = false;

    for (std::int64_t step = 0; step <= nsteps; ++step) {
      if (step > 0) {
        const std::uint64_t inc = static_cast<std::uint64_t>(step - 1);
        if (inc & 1ull) {
          for (int a = 0; a < drivers; ++a) g[a] = pending[a];
        } else {
          for (int a = 0; a < drivers; ++a) {
            double g1;
            gaussian_pair(cfg.seed, static_cast<std::uint64_t>(path), inc >> 1,
                          static_cast<std::uint64_t>(a), &g[a], &g1);
            pending[a] = g1;
          }
        }
        for (int i = 0; i < n; ++i) {
          const double* arow = drift_dt.data() + static_cast<std::size_t>(i) * n;
          double acc = x[i];
          for (int j = 0; j < n; ++j) acc += arow[j] * x[j];
          for (int a = 0; a < drivers; ++a) {
            const double* rrow =
                rho_sq.data() + (static_cast<std::size_t>(a) * n + i) * n;
            double noise = 0.0;
            for (int j = 0; j < n; ++j) noise += rrow[j] * x[j];
            acc += g[a] * noise;
          }
          y[i] = acc;
        }
        x.swap(y);
        for (int i = 0; i < n; ++i)
          if (!std::isfinite(x[i])) bad = true;
        if (bad) break;
      }

      while (next_sample < samples && sample_step[next_sample] == step) {
        double nrm2 = 0.0;
        for (int i = 0; i < n; ++i) nrm2 += x[i] * x[i];
        const double log_norm =
            nrm2 > 0.0 ? 0.5 * std::log(nrm2)
                       : -std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < ndeg; ++d)
          acc_norm[d * samples + next_sample].add(
              cfg.moment_degrees[d] * log_norm, 1);
        for (std::size_t mi = 0; mi < nmono; ++mi) {
          double log_abs = 0.0;
          int sign = 1;
          for (int k : cfg.monomials[mi]) {
            const double v = x[k];
            if (v == 0.0) {
              sign = 0;
              break;
            }
            if (v < 0.0) sign = -sign;
            log_abs += std::log(std::abs(v));
          }
          acc_mono[mi * samples + next_sample].add(log_abs, sign);
        }
        ++next_sample;
      }
    }

    if (bad && next_sample < first_bad_sample) first_bad_sample = next_sample;
  }

  const int valid =
      static_cast<int>(std::min<std::int64_t>(first_bad_sample, samples));

  MomentTrace trace;
  trace.overflow = valid < samples;
  trace.degrees = cfg.moment_degrees;
  trace.monomials = cfg.monomials;
  trace.times.resize(valid);
  for (int s = 0; s < valid; ++s) trace.times[s] = sample_step[s] * dt;

  const double np = static_cast<double>(cfg.paths);
  auto finish = [&](const LogAccumulator& a, double& mean, double& se) {
    mean = a.total_signed() / np;
    const double second = a.total_squares() / np;
    double var = second - mean * mean;
    if (cfg.paths > 1) var *= np / (np - 1.0);
    se = std::sqrt(std::max(0.0, var) / np);
  };

  trace.norm_values.assign(ndeg, std::vector<double>(valid));
  trace.norm_stderr.assign(ndeg, std::vector<double>(valid));
  for (std::size_t d = 0; d < ndeg; ++d)
    for (int s = 0; s < valid; ++s)
      finish(acc_norm[d * samples + s], trace.norm_values[d][s],
             trace.norm_stderr[d][s]);
  trace.monomial_values.assign(nmono, std::vector<double>(valid));
  trace.monomial_stderr.assign(nmono, std::vector<double>(valid));
  for (std::size_t mi = 0; mi < nmono; ++mi)
    for (int s = 0; s < valid; ++s)
      finish(acc_mono[mi * samples + s], trace.monomial_values[mi][s],
             trace.monomial_stderr[mi][s]);

  // estimates can still overflow double even in log form; truncate there too
  int finite_until = valid;
  auto first_bad = [&](const std::vector<std::vector<double>>& series) {
    for (const auto& v : series)
      for (int s = 0; s < finite_until; ++s)
        if (!std::isfinite(v[s])) finite_until = s;
  };
  first_bad(trace.norm_values);
  first_bad(trace.norm_stderr);
  first_bad(trace.monomial_values);
  first_bad(trace.monomial_stderr);
  if (finite_until < valid) {
    trace.overflow = true;
    trace.times.resize(finite_until);
    for (auto& v : trace.norm_values) v.resize(finite_until);
    for (auto& v : trace.norm_stderr) v.resize(finite_until);
    for (auto& v : trace.monomial_values) v.resize(finite_until);
    for (auto& v : trace.monomial_stderr) v.resize(finite_until);
  }
  return trace;
}

GrowthRateFit fit_exponential_rate(const std::vector<double>& times,
                                   const std::vector<double>& values,
                                   double window) {
  if (times.size() != values.size() || times.empty())
    throw InvalidInput("times and values must be non-empty and equal length");
  if (!(window > 0.0 && window <= 1.0))
    throw InvalidInput("window must lie in (0, 1]");

  const double t_end = times.back();
  const double t_cut = t_end - window * t_end - 1e-12 * std::abs(t_end);
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_cut) continue;
    if (!(values[i] > 0.0))
      throw NonPositiveMoment(
          "moment value " + std::to_string(values[i]) + " at t=" +
          std::to_string(times[i]) + " is not positive; log growth undefined");
    ts.push_back(times[i]);
    ys.push_back(std::log(values[i]));
  }
  const int n = static_cast<int>(ts.size());
  if (n < 10)
    throw InsufficientSamples("only " + std::to_string(n) +
                              " samples in the fit window, need >= 10");

  const double tbar = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (ts[i] - tbar) * (ts[i] - tbar);
    sxy += (ts[i] - tbar) * (ys[i] - ybar);
  }
  if (sxx == 0.0) throw InvalidInput("degenerate time window");
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - ybar - slope * (ts[i] - tbar);
    ssr += r * r;
  }
  const double var = n > 2 ? ssr / (n - 2) : 0.0;
  return GrowthRateFit{slope, std::sqrt(var / sxx), n};
}

GrowthRateFit fit_growth_rate(const MomentTrace& trace, int degree,
                              double window) {
  for (std::size_t d = 0; d < trace.degrees.size(); ++d)
    if (trace.degrees[d] == degree)
      return fit_exponential_rate(trace.times, trace.norm_values[d], window);
  throw InvalidInput("degree " + std::to_string(degree) +
                     " is not tracked by this trace");
}

GrowthRateFit fit_growth_rate_monomial(const MomentTrace& trace,
                                       const std::vector<int>& monomial,
                                       double window) {
  for (std::size_t m = 0; m < trace.monomials.size(); ++m)
    if (trace.monomials[m] == monomial)
      return fit_exponential_rate(trace.times, trace.monomial_values[m],
                                  window);
  throw InvalidInput("monomial is not tracked by this trace");
}

}  // namespace momstab
