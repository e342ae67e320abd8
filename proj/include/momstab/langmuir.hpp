#ifndef MOMSTAB_LANGMUIR_HPP
#define MOMSTAB_LANGMUIR_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "momstab/errors.hpp"

namespace momstab {

// Spatial correlation profile of the density noise. All quantities are in
// the scaled units of the wave problem (lengths in sqrt(3) V_thermal units).
enum class ProfileKind { Constant, Delta, Gaussian, Exponential, Rectangular };

struct CorrelationProfile {
  ProfileKind kind = ProfileKind::Gaussian;
  double amplitude = 1.0;  // c = C(0)
  double width = 1.0;      // delta; unused for Constant/Delta

  // Pointwise C(x); not defined for the Delta kind.
  double value(double x) const;
  // Mean of C over [a, b]; used by the finite-difference potential.
  double cell_average(double a, double b) const;
  bool decaying() const {
    return kind == ProfileKind::Gaussian || kind == ProfileKind::Exponential ||
           kind == ProfileKind::Rectangular;
  }
};

struct LangmuirProblem {
  double plasma_mass = 1.0;  // m, with m^2 the squared plasma frequency
  double sigma2 = 0.0;       // noise intensity sigma^2
  CorrelationProfile correlation;
};

enum class Stability { Stable, Marginal, Unstable };

const char* to_string(Stability s);

struct DispersionRoots {
  std::vector<std::complex<double>> roots;  // sorted: Re desc, Im desc
  double max_real = 0.0;
  Stability classification = Stability::Marginal;
};

// sqrt(m^2 + k^2)
double epsilon_k(double m, double k);

// Zero-noise mode frequencies of the two-point correlation function:
// all sign combinations +/- eps_k1 +/- eps_k2, descending.
std::array<double, 4> dispersion_zero_noise(double m, double k1, double k2);

// Roots of the constant-correlation quartic
//   lambda^4 + 2 lambda^2 (eps1^2 + eps2^2) + (eps1^2 - eps2^2)^2
//     = 2 lambda sigma^2,
// via companion-matrix eigenvalues; classification is by the sign of the
// maximal real part at 1e-10 absolute tolerance.
DispersionRoots dispersion_complete_correlation(double m, double k1, double k2,
                                                double sigma2);

// Same quartic parameterized by the mode energies eps1, eps2 directly.
DispersionRoots dispersion_for_energies(double eps1, double eps2,
                                        double sigma2);

struct AsymptoticGrowth {
  double rate = 0.0;
  bool in_range = true;  // false when eps_k^2 <= 10 sigma^2
};

// Leading-order growth sigma^2 / (2 eps_k^2) of the high-k dominating mode.
AsymptoticGrowth asymptotic_growth_large_k(double m, double k, double sigma2);

// Closed-form 1D spatio-temporal white-noise growth: solves
// lambda^2 = -(2 m^2 + k^2) +/- sqrt(4 m^4 + sigma^4/4) and classifies by the
// instability threshold sigma^4 vs 4 k^2 (4 m^2 + k^2).
DispersionRoots white_noise_growth(double m, double k, double sigma2);
double white_noise_threshold_sigma4(double m, double k);

struct BoundStateOptions {
  double half_width = 0.0;  // L; 0 selects 10 * profile width
  int grid_points = 4096;   // interior points N
  double lambda_tol = 1e-8;
  double no_bound_tol = 1e-10;
  double grid_change_tol = 1e-6;
};

// Lowest eigenvalue of -psi'' - C(x)/(2 lambda) psi on [-L, L] with Dirichlet
// walls, second-order central Laplacian on N interior points. Returns
// nullopt (no bound state) when the lowest eigenvalue clears -no_bound_tol.
// Throws GridTooCoarse when doubling N moves the result by more than
// grid_change_tol.
std::optional<double> bound_state_energy(const CorrelationProfile& profile,
                                         double lambda, double half_width,
                                         int grid_points,
                                         const BoundStateOptions& opts = {});

// Grid-check-free discrete ground state of -B psi'' - C(x)/(2 lambda) psi,
// shared by the matching-condition solvers (their residual contract is
// against this fixed discretization).
double lowest_eigenvalue_raw(const CorrelationProfile& profile, double lambda,
                             double stretch, double half_width,
                             int grid_points);

struct GrowthRateResult {
  double lambda_star = 0.0;
  double energy = 0.0;             // E at lambda_star
  double matching_residual = 0.0;  // |E + m^2 + lambda^2/4|
};

// Unique lambda > 0 with E_lambda = -(m^2 + lambda^2/4) for the k = 0 mode of
// a positive decaying correlation profile; bisection over a sign-change
// bracket. Throws BracketNotFound with the endpoint values.
GrowthRateResult find_growth_rate_k0(const LangmuirProblem& problem,
                                     const BoundStateOptions& opts = {});

enum class Verdict { Stable, Unstable };

struct ModeStability {
  Verdict verdict = Verdict::Stable;
  double lambda_star = 0.0;    // matched growth rate when unstable
  double min_matching = 0.0;   // min over lambda of the matching mismatch
};

// k > 0 mode in the 1D reduction (transverse Laplacian dropped): operator
// -(1 + (k/lambda)^2) d^2/dz^2 - C(z)/(2 lambda) against the matching value
// -(m^2 + k^2/4 + lambda^2/4). Unstable when some lambda > 0 matches.
ModeStability stability_verdict_k(const LangmuirProblem& problem, double k,
                                  const BoundStateOptions& opts = {});

// Critical amplitude c* for the k > 0 mode: bisection in the amplitude with
// relative tolerance 1e-4. Below c* the verdict is Stable, above Unstable.
double stability_threshold_k(const LangmuirProblem& problem, double k,
                             const BoundStateOptions& opts = {});

// 4x4 constant-correlation mode matrix E(k1) (x) 1 + 1 (x) E(k2)
// + sigma^2 a (x) a.
Eigen::Matrix4d appendix_matrix(double eps1, double eps2, double sigma2);

// Max over eigenvalues mu = i omega of the residual of
// 4 eps1^2 eps2^2 + 2 i omega sigma^2 = (eps1^2 + eps2^2 - omega^2)^2.
double appendix_dispersion_check(double eps1, double eps2, double sigma2);

}  // namespace momstab

#endif
