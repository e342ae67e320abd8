#ifndef MOMSTAB_SPECTRAL_HPP
#define MOMSTAB_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "momstab/errors.hpp"

namespace momstab {

// Full spectrum of a real square matrix with both-sided eigenvectors.
// Eigenvalues are sorted by descending real part, ties by descending
// imaginary part; left vectors satisfy M^T v = nu v with the same nu as the
// paired right vector. Pairings use the bilinear form v^T u (no conjugation),
// matching the dual-space convention of the perturbation formulas.
struct SpectrumResult {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd right_vectors;  // unit-norm columns
  Eigen::MatrixXcd left_vectors;   // unit-norm columns
  Eigen::VectorXd residuals;       // max of right/left backward error per pair
  double matrix_norm = 0.0;        // Frobenius norm of the input
  bool degenerate = false;         // some eigenvalue clustered within the gap

  std::complex<double> pairing(int k) const {
    return left_vectors.col(k).transpose() * right_vectors.col(k);
  }
};

struct SpectralOptions {
  double gap = 1e-8;          // relative cluster gap (times matrix norm)
  double pairing_tol = 1e-6;  // VanishingPairing threshold on |v^T u|
  double rank_tol = 1e-10;    // relative rank cutoff for the G matrix
};

// Max real part over the spectrum. Throws EigenSolveFailure on
// non-convergence.
double spectral_abscissa(const Eigen::MatrixXd& m);

SpectrumResult eigenpairs(const Eigen::MatrixXd& m,
                          SpectralOptions opts = {});

// First-order shift of a simple eigenvalue under the perturbation dM:
//   delta_nu = <v, dM u> / <v, u>.
// Throws DegenerateEigenvalue when another eigenvalue sits within
// gap * ||M||, VanishingPairing when the denominator is numerically zero.
std::complex<double> perturb_simple(const SpectrumResult& base,
                                    const Eigen::MatrixXd& dm, int k,
                                    SpectralOptions opts = {});

// First-order shifts of a semisimple eigenvalue of multiplicity m_k: the
// m_k roots z of det[F - z G] = 0 with F_{a,b} = <v_a, dM u_b> and
// G_{a,b} = <v_a, u_b>, solved as a generalized eigenproblem. Throws
// NotSemisimple when the cluster carries a rank-deficient G (Jordan
// structure), SingularPairing when G vanishes outright.
std::vector<std::complex<double>> perturb_degenerate(const Eigen::MatrixXd& m,
                                                     const Eigen::MatrixXd& dm,
                                                     int k,
                                                     SpectralOptions opts = {});

}  // namespace momstab

#endif
