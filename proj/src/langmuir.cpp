#include "momstab/langmuir.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace momstab {

namespace {

constexpr double kClassifyTol = 1e-10;  // |Re lambda| classification band

bool spectral_less(const std::complex<double>& a,
                   const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

Stability classify_max_real(double max_real) {
  if (max_real > kClassifyTol) return Stability::Unstable;
  if (max_real < -kClassifyTol) return Stability::Stable;
  return Stability::Marginal;
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Marginal:
      return "marginal";
    case Stability::Unstable:
      return "unstable";
  }
  return "unknown";
}

double CorrelationProfile::value(double x) const {
  switch (kind) {
    case ProfileKind::Constant:
      return amplitude;
    case ProfileKind::Delta:
      throw InvalidInput("delta correlation has no pointwise values");
    case ProfileKind::Gaussian:
      return amplitude * std::exp(-x * x / (2.0 * width * width));
    case ProfileKind::Exponential:
      return amplitude * std::exp(-std::abs(x) / width);
    case ProfileKind::Rectangular:
      return std::abs(x) <= width ? amplitude : 0.0;
  }
  return 0.0;
}

double CorrelationProfile::cell_average(double a, double b) const {
  if (!(b > a)) throw InvalidInput("cell_average needs b > a");
  const double len = b - a;
  switch (kind) {
    case ProfileKind::Constant:
      return amplitude;
    case ProfileKind::Delta:
      throw InvalidInput("delta correlation has no cell averages");
    case ProfileKind::Gaussian: {
      const double s = width * std::sqrt(2.0);
      const double integral = amplitude * width *
                              std::sqrt(std::acos(-1.0) / 2.0) *
                              (std::erf(b / s) - std::erf(a / s));
      return integral / len;
    }
    case ProfileKind::Exponential: {
      // antiderivative of exp(-|x|/w): sign(x) * w * (1 - exp(-|x|/w))
      auto anti = [&](double x) {
        const double w = width;
        return (x >= 0 ? 1.0 : -1.0) * w * (1.0 - std::exp(-std::abs(x) / w));
      };
      return amplitude * (anti(b) - anti(a)) / len;
    }
    case ProfileKind::Rectangular: {
      const double lo = std::max(a, -width);
      const double hi = std::min(b, width);
      return hi > lo ? amplitude * (hi - lo) / len : 0.0;
    }
  }
  return 0.0;
}

double epsilon_k(double m, double k) {
  if (!(m > 0.0)) throw InvalidInput("plasma mass must be positive");
  return std::sqrt(m * m + k * k);
}

std::array<double, 4> dispersion_zero_noise(double m, double k1, double k2) {
  const double e1 = epsilon_k(m, k1);
  const double e2 = epsilon_k(m, k2);
  std::array<double, 4> w = {e1 + e2, e1 - e2, -e1 + e2, -e1 - e2};
  std::sort(w.begin(), w.end(), std::greater<double>());
  return w;
}

DispersionRoots dispersion_complete_correlation(double m, double k1, double k2,
                                                double sigma2) {
  return dispersion_for_energies(epsilon_k(m, k1), epsilon_k(m, k2), sigma2);
}

DispersionRoots dispersion_for_energies(double eps1, double eps2,
                                        double sigma2) {
  if (sigma2 < 0.0) throw InvalidInput("sigma2 must be nonnegative");
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw InvalidInput("mode energies must be positive");
  const double e1s = eps1 * eps1, e2s = eps2 * eps2;

  // monic quartic lambda^4 + c2 l^2 + c1 l + c0
  const double c2 = 2.0 * (e1s + e2s);
  const double c1 = -2.0 * sigma2;
  const double c0 = (e1s - e2s) * (e1s - e2s);

  DispersionRoots out;
  out.roots.reserve(4);
  if (sigma2 == 0.0) {
    // biquadratic: lambda = i(+/-eps1 +/-eps2) exactly
    for (double w : {eps1 + eps2, eps1 - eps2, eps2 - eps1, -eps1 - eps2})
      out.roots.emplace_back(0.0, w);
  } else if (c0 == 0.0) {
    // equal energies: lambda = 0 plus the dominating-mode cubic
    // l^3 + c2 l + c1 = 0, whose roots are simple for sigma2 > 0
    out.roots.emplace_back(0.0, 0.0);
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(1, 0) = companion(2, 1) = 1.0;
    companion(0, 2) = -c1;
    companion(1, 2) = -c2;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
    if (solver.info() != Eigen::Success)
      throw EigenSolveFailure("cubic companion eigensolve did not converge");
    for (int i = 0; i < 3; ++i) out.roots.push_back(solver.eigenvalues()(i));
  } else {
    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
    companion(0, 3) = -c0;
    companion(1, 3) = -c1;
    companion(2, 3) = -c2;
    Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
    if (solver.info() != Eigen::Success)
      throw EigenSolveFailure("quartic companion eigensolve did not converge");
    for (int i = 0; i < 4; ++i) out.roots.push_back(solver.eigenvalues()(i));
  }

  // Newton polish against the quartic; linear convergence near a double
  // root, so iterate rather than single-step
  for (auto& l : out.roots) {
    for (int it = 0; it < 24; ++it) {
      const std::complex<double> l2 = l * l;
      const std::complex<double> p = l2 * l2 + c2 * l2 + c1 * l + c0;
      const double mag = std::abs(l);
      if (std::abs(p) <= 1e-15 * (1.0 + mag * mag * mag * mag)) break;
      const std::complex<double> dp = 4.0 * l2 * l + 2.0 * c2 * l + c1;
      if (std::abs(dp) < 1e-300) break;
      l -= p / dp;
    }
  }

  std::sort(out.roots.begin(), out.roots.end(), spectral_less);
  out.max_real = out.roots.front().real();
  out.classification = classify_max_real(out.max_real);
  return out;
}

AsymptoticGrowth asymptotic_growth_large_k(double m, double k, double sigma2) {
  if (sigma2 < 0.0) throw InvalidInput("sigma2 must be nonnegative");
  const double e = epsilon_k(m, k);
  AsymptoticGrowth out;
  out.rate = sigma2 / (2.0 * e * e);
  out.in_range = e * e > 10.0 * sigma2;
  return out;
}

double white_noise_threshold_sigma4(double m, double k) {
  if (!(m > 0.0)) throw InvalidInput("plasma mass must be positive");
  return 4.0 * k * k * (4.0 * m * m + k * k);
}

DispersionRoots white_noise_growth(double m, double k, double sigma2) {
  if (sigma2 < 0.0) throw InvalidInput("sigma2 must be nonnegative");
  const double threshold = white_noise_threshold_sigma4(m, k);
  const double s4 = sigma2 * sigma2;

  const double shift = 2.0 * m * m + k * k;
  const double disc = std::sqrt(4.0 * m * m * m * m + 0.25 * s4);
  const double y_plus = -shift + disc;
  const double y_minus = -shift - disc;

  DispersionRoots out;
  for (double y : {y_plus, y_minus}) {
    const std::complex<double> root = std::sqrt(std::complex<double>(y, 0.0));
    out.roots.push_back(root);
    out.roots.push_back(-root);
  }
  std::sort(out.roots.begin(), out.roots.end(), spectral_less);
  out.max_real = out.roots.front().real();

  // classification by the closed-form threshold in sigma^4
  const double scale = std::max({threshold, s4, 1e-300});
  if (std::abs(s4 - threshold) <= 1e-12 * scale)
    out.classification = Stability::Marginal;
  else
    out.classification =
        s4 < threshold ? Stability::Stable : Stability::Unstable;
  return out;
}

// ---------------------------------------------------------------------------
// bound states: Sturm-sequence bisection on the discrete tridiagonal operator
// ---------------------------------------------------------------------------

namespace {

// eigenvalue count of the tridiagonal (diag, constant off) strictly below x
int sturm_count_below(const std::vector<double>& diag, double off2, double x) {
  int count = 0;
  double q = 1.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    q = diag[i] - x - (i > 0 ? off2 / q : 0.0);
    if (q < 0.0) ++count;
    if (q == 0.0) q = 1e-300;
  }
  return count;
}

double tridiag_lowest(const std::vector<double>& diag, double off) {
  const double off2 = off * off;
  double lo = diag[0], hi = diag[0];
  for (double d : diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= 2.0 * std::abs(off) + 1.0;
  hi += 2.0 * std::abs(off) + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count_below(diag, off2, mid) >= 1)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi) + std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

void check_profile_for_bound_state(const CorrelationProfile& profile) {
  if (!profile.decaying())
    throw InvalidInput(
        "bound-state solves need a gaussian, exponential or rectangular "
        "profile");
  if (!(profile.amplitude >= 0.0))
    throw InvalidInput("profile amplitude must be nonnegative");
  if (!(profile.width > 0.0)) throw InvalidInput("profile width must be positive");
}

double resolve_half_width(const CorrelationProfile& profile,
                          const BoundStateOptions& opts) {
  return opts.half_width > 0.0 ? opts.half_width : 10.0 * profile.width;
}

}  // namespace

double lowest_eigenvalue_raw(const CorrelationProfile& profile, double lambda,
                             double stretch, double half_width,
                             int grid_points) {
  check_profile_for_bound_state(profile);
  if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
  if (!(stretch >= 1.0)) throw InvalidInput("stretch must be >= 1");
  if (grid_points < 8) throw InvalidInput("grid_points too small");

  const int n = grid_points;
  const double h = 2.0 * half_width / (n + 1);
  const double kin = stretch / (h * h);
  const double well = 1.0 / (2.0 * lambda);

  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) {
    const double x = -half_width + (i + 1) * h;
    diag[i] = 2.0 * kin - well * profile.cell_average(x - 0.5 * h, x + 0.5 * h);
  }
  return tridiag_lowest(diag, -kin);
}

std::optional<double> bound_state_energy(const CorrelationProfile& profile,
                                         double lambda, double half_width,
                                         int grid_points,
                                         const BoundStateOptions& opts) {
  check_profile_for_bound_state(profile);
  if (grid_points < 512) throw InvalidInput("grid_points must be >= 512");
  if (!(half_width >= 10.0 * profile.width))
    throw InvalidInput("half_width must be at least 10 * profile width");

  const double coarse =
      lowest_eigenvalue_raw(profile, lambda, 1.0, half_width, grid_points);
  const double fine =
      lowest_eigenvalue_raw(profile, lambda, 1.0, half_width, 2 * grid_points);
  if (std::abs(fine - coarse) > opts.grid_change_tol) {
    std::ostringstream os;
    os << "lowest eigenvalue moved by " << std::abs(fine - coarse)
       << " when doubling N=" << grid_points;
    throw GridTooCoarse(os.str(), std::abs(fine - coarse));
  }
  if (coarse >= -opts.no_bound_tol) return std::nullopt;
  return coarse;
}

GrowthRateResult find_growth_rate_k0(const LangmuirProblem& problem,
                                     const BoundStateOptions& opts) {
  check_profile_for_bound_state(problem.correlation);
  const double m = problem.plasma_mass;
  if (!(m > 0.0)) throw InvalidInput("plasma mass must be positive");
  if (!(problem.correlation.amplitude > 0.0))
    throw InvalidInput("matching requires a positive correlation amplitude");

  const double half_width = resolve_half_width(problem.correlation, opts);
  const int n = opts.grid_points;

  auto g = [&](double lambda) {
    const double e =
        lowest_eigenvalue_raw(problem.correlation, lambda, 1.0, half_width, n);
    return e + m * m + 0.25 * lambda * lambda;
  };

  // g is strictly increasing: E_lambda grows with lambda and so does the
  // lambda^2/4 term, so a sign-change bracket pins the unique root.
  double lo = 1e-6 * m;
  double g_lo = g(lo);
  double hi = m;
  double g_hi = g(hi);
  for (int it = 0; it < 80 && g_hi <= 0.0; ++it) {
    hi *= 2.0;
    g_hi = g(hi);
  }
  if (!(g_lo < 0.0) || !(g_hi > 0.0)) {
    std::ostringstream os;
    os << "no sign change for the k=0 matching condition: g(" << lo
       << ")=" << g_lo << ", g(" << hi << ")=" << g_hi
       << "; check domain half-width and grid";
    throw BracketNotFound(os.str(), g_lo, g_hi);
  }

  double mid = 0.5 * (lo + hi), g_mid = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    g_mid = g(mid);
    if (g_mid < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= std::min(opts.lambda_tol, 1e-10) * std::max(1.0, mid) &&
        std::abs(g_mid) <= 1e-9)
      break;
  }

  GrowthRateResult out;
  out.lambda_star = mid;
  out.energy = g_mid - m * m - 0.25 * mid * mid;
  out.matching_residual = std::abs(g_mid);
  return out;
}

namespace {

struct MatchingScan {
  double min_value = std::numeric_limits<double>::infinity();
  double min_lambda = 0.0;
  double crossing_lambda = 0.0;  // first sign change, 0 when none
};

// h(lambda) = E_lambda + m^2 + k^2/4 + lambda^2/4 over a geometric grid with
// a zoom pass around the minimum; the mode is unstable when h dips below 0.
MatchingScan scan_matching(const LangmuirProblem& problem, double k,
                           const BoundStateOptions& opts) {
  const double m = problem.plasma_mass;
  const double half_width = resolve_half_width(problem.correlation, opts);
  const int n = opts.grid_points;

  auto h = [&](double lambda) {
    const double stretch = 1.0 + (k / lambda) * (k / lambda);
    const double e = lowest_eigenvalue_raw(problem.correlation, lambda,
                                           stretch, half_width, n);
    return e + m * m + 0.25 * k * k + 0.25 * lambda * lambda;
  };

  const int coarse_points = 96;
  const double lo = 1e-3 * m, hi = 64.0 * m;
  const double ratio = std::pow(hi / lo, 1.0 / (coarse_points - 1));

  MatchingScan scan;
  double prev_lambda = 0.0, prev_value = 0.0;
  double lambda = lo;
  for (int i = 0; i < coarse_points; ++i, lambda *= ratio) {
    const double value = h(lambda);
    if (value < scan.min_value) {
      scan.min_value = value;
      scan.min_lambda = lambda;
    }
    if (i > 0 && scan.crossing_lambda == 0.0 && prev_value > 0.0 &&
        value <= 0.0) {
      // bisect the first crossing for a representative growth rate
      double a = prev_lambda, b = lambda;
      for (int it = 0; it < 80; ++it) {
        const double c = 0.5 * (a + b);
        (h(c) > 0.0 ? a : b) = c;
      }
      scan.crossing_lambda = 0.5 * (a + b);
    }
    prev_lambda = lambda;
    prev_value = value;
  }

  // zoom around the coarse minimum to protect against narrow dips
  double a = scan.min_lambda / ratio, b = scan.min_lambda * ratio;
  for (int pass = 0; pass < 2; ++pass) {
    const int fine_points = 24;
    const double step = (b - a) / (fine_points - 1);
    double best = a;
    for (int i = 0; i < fine_points; ++i) {
      const double l = a + i * step;
      const double value = h(l);
      if (value < scan.min_value) {
        scan.min_value = value;
        scan.min_lambda = l;
        best = l;
      }
    }
    a = std::max(best - step, 1e-6 * m);
    b = best + step;
  }
  return scan;
}

}  // namespace

ModeStability stability_verdict_k(const LangmuirProblem& problem, double k,
                                  const BoundStateOptions& opts) {
  check_profile_for_bound_state(problem.correlation);
  if (!(k > 0.0)) throw InvalidInput("k must be positive; use find_growth_rate_k0 for k = 0");
  if (!(problem.plasma_mass > 0.0))
    throw InvalidInput("plasma mass must be positive");

  ModeStability out;
  if (problem.correlation.amplitude == 0.0) {
    out.verdict = Verdict::Stable;
    out.min_matching = problem.plasma_mass * problem.plasma_mass + 0.25 * k * k;
    return out;
  }

  const MatchingScan scan = scan_matching(problem, k, opts);
  out.min_matching = scan.min_value;
  if (scan.min_value <= 0.0) {
    out.verdict = Verdict::Unstable;
    out.lambda_star =
        scan.crossing_lambda > 0.0 ? scan.crossing_lambda : scan.min_lambda;
  } else {
    out.verdict = Verdict::Stable;
  }
  return out;
}

double stability_threshold_k(const LangmuirProblem& problem, double k,
                             const BoundStateOptions& opts) {
  check_profile_for_bound_state(problem.correlation);
  if (!(k > 0.0)) throw InvalidInput("k must be positive");

  auto verdict_at = [&](double c) {
    LangmuirProblem p = problem;
    p.correlation.amplitude = c;
    return stability_verdict_k(p, k, opts).verdict;
  };

  double hi = std::max(problem.correlation.amplitude, 1.0);
  int guard = 0;
  while (verdict_at(hi) == Verdict::Stable && guard++ < 60) hi *= 2.0;
  if (guard > 60)
    throw BracketNotFound("no unstable amplitude found while growing c", 0.0,
                          hi);
  double lo = hi;
  guard = 0;
  while (verdict_at(lo) == Verdict::Unstable && guard++ < 200) lo *= 0.5;
  if (guard > 200) return 0.0;  // unstable at any tested amplitude

  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    (verdict_at(mid) == Verdict::Stable ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::Matrix4d appendix_matrix(double eps1, double eps2, double sigma2) {
  Eigen::Matrix2d e1, e2, a, id;
  e1 << 0, 1, -eps1 * eps1, 0;
  e2 << 0, 1, -eps2 * eps2, 0;
  a << 0, 0, 1, 0;
  id.setIdentity();

  auto kron = [](const Eigen::Matrix2d& x, const Eigen::Matrix2d& y) {
    Eigen::Matrix4d out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out.block<2, 2>(2 * i, 2 * j) = x(i, j) * y;
    return out;
  };

  return kron(e1, id) + kron(id, e2) + sigma2 * kron(a, a);
}

double appendix_dispersion_check(double eps1, double eps2, double sigma2) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0))
    throw InvalidInput("mode energies must be positive");
  const Eigen::Matrix4d b = appendix_matrix(eps1, eps2, sigma2);
  Eigen::EigenSolver<Eigen::Matrix4d> solver(b, false);
  if (solver.info() != Eigen::Success)
    throw EigenSolveFailure("4x4 eigensolve did not converge");

  const double e1s = eps1 * eps1, e2s = eps2 * eps2;
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    // mu = i omega, so omega^2 = -mu^2 and 2 i omega sigma^2 = 2 mu sigma^2
    const std::complex<double> mu = solver.eigenvalues()(i);
    const std::complex<double> lhs = 4.0 * e1s * e2s + 2.0 * mu * sigma2;
    const std::complex<double> rhs_base = e1s + e2s + mu * mu;
    worst = std::max(worst, std::abs(lhs - rhs_base * rhs_base));
  }
  return worst;
}

}  // namespace momstab
