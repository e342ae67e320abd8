#include "momstab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace momstab {

namespace {

bool spectral_less(const std::complex<double>& a,
                   const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

void check_finite(const Eigen::MatrixXd& m, const char* name) {
  if (!m.allFinite()) throw InvalidInput(std::string(name) + " has non-finite entries");
  if (m.rows() != m.cols()) throw InvalidInput(std::string(name) + " must be square");
}

struct SortedEigen {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

SortedEigen solve_sorted(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw EigenSolveFailure("dense nonsymmetric eigensolver did not converge");

  const Eigen::VectorXcd vals = solver.eigenvalues();
  const Eigen::MatrixXcd vecs = solver.eigenvectors();
  std::vector<int> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spectral_less(vals(a), vals(b));
  });

  SortedEigen out;
  out.values.resize(vals.size());
  out.vectors.resize(vecs.rows(), vecs.cols());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    out.values(k) = vals(order[k]);
    out.vectors.col(k) = vecs.col(order[k]).normalized();
  }
  return out;
}

}  // namespace

double spectral_abscissa(const Eigen::MatrixXd& m) {
  check_finite(m, "matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw EigenSolveFailure("dense nonsymmetric eigensolver did not converge");
  return solver.eigenvalues().real().maxCoeff();
}

SpectrumResult eigenpairs(const Eigen::MatrixXd& m, SpectralOptions opts) {
  check_finite(m, "matrix");
  const Eigen::Index n = m.rows();

  SortedEigen right = solve_sorted(m);
  SortedEigen left = solve_sorted(m.transpose());

  SpectrumResult out;
  out.eigenvalues = right.values;
  out.right_vectors = right.vectors;
  out.left_vectors = left.vectors;
  out.matrix_norm = m.norm();
  out.residuals.resize(n);

  const double scale = std::max(out.matrix_norm, 1e-300);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::complex<double> nu = out.eigenvalues(k);
    const double r_right =
        (m * out.right_vectors.col(k) - nu * out.right_vectors.col(k)).norm();
    const double r_left = (m.transpose() * out.left_vectors.col(k) -
                           nu * out.left_vectors.col(k))
                              .norm();
    out.residuals(k) = std::max(r_right, r_left);
  }

  const double gap = opts.gap * scale;
  for (Eigen::Index k = 0; k + 1 < n && !out.degenerate; ++k)
    if (std::abs(out.eigenvalues(k) - out.eigenvalues(k + 1)) <= gap)
      out.degenerate = true;
  return out;
}

std::complex<double> perturb_simple(const SpectrumResult& base,
                                    const Eigen::MatrixXd& dm, int k,
                                    SpectralOptions opts) {
  const Eigen::Index n = base.eigenvalues.size();
  if (k < 0 || k >= n) throw IndexOutOfRange("eigenvalue index out of range");
  check_finite(dm, "perturbation");

  const std::complex<double> nu = base.eigenvalues(k);
  const double gap = opts.gap * std::max(base.matrix_norm, 1e-300);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (j == k) continue;
    if (std::abs(base.eigenvalues(j) - nu) <= gap)
      throw DegenerateEigenvalue(
          "eigenvalue is not isolated at the configured gap; use "
          "perturb_degenerate");
  }

  const Eigen::VectorXcd u = base.right_vectors.col(k);
  const Eigen::VectorXcd v = base.left_vectors.col(k);
  const std::complex<double> denom = v.transpose() * u;
  if (std::abs(denom) < opts.pairing_tol)
    throw VanishingPairing("left/right pairing is numerically zero");
  const std::complex<double> numer = v.transpose() * (dm * u);
  return numer / denom;
}

std::vector<std::complex<double>> perturb_degenerate(const Eigen::MatrixXd& m,
                                                     const Eigen::MatrixXd& dm,
                                                     int k,
                                                     SpectralOptions opts) {
  check_finite(m, "matrix");
  check_finite(dm, "perturbation");
  SpectrumResult base = eigenpairs(m, opts);
  const Eigen::Index n = base.eigenvalues.size();
  if (k < 0 || k >= n) throw IndexOutOfRange("eigenvalue index out of range");

  const std::complex<double> nu = base.eigenvalues(k);
  const double gap = opts.gap * std::max(base.matrix_norm, 1e-300);
  std::vector<Eigen::Index> cluster;
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(base.eigenvalues(j) - nu) <= gap) cluster.push_back(j);
  const Eigen::Index mk = static_cast<Eigen::Index>(cluster.size());

  Eigen::MatrixXcd f(mk, mk), g(mk, mk);
  for (Eigen::Index a = 0; a < mk; ++a) {
    const Eigen::VectorXcd v = base.left_vectors.col(cluster[a]);
    for (Eigen::Index b = 0; b < mk; ++b) {
      const Eigen::VectorXcd u = base.right_vectors.col(cluster[b]);
      f(a, b) = v.transpose() * (dm * u);
      g(a, b) = v.transpose() * u;
    }
  }

  // semisimplicity: the cluster's pairing matrix must have full rank,
  // otherwise left and right eigenspaces do not pair up (Jordan structure)
  // vectors are unit norm, so a semisimple cluster pairs at O(1); a G that
  // is tiny outright or rank deficient signals Jordan structure
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(mk - 1);
  if (smax <= opts.pairing_tol || smin <= opts.rank_tol * smax)
    throw NotSemisimple(
        "pairing matrix G is rank deficient: eigenvalue cluster is not "
        "semisimple");

  // det[F - z G] = 0 as the standard eigenproblem of G^{-1} F
  const Eigen::MatrixXcd ginv_f = g.partialPivLu().solve(f);
  if (!ginv_f.allFinite())
    throw SingularPairing("pairing matrix G is numerically singular");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(ginv_f);
  if (solver.info() != Eigen::Success)
    throw EigenSolveFailure("secular eigenproblem did not converge");

  std::vector<std::complex<double>> shifts(solver.eigenvalues().data(),
                                           solver.eigenvalues().data() + mk);
  std::sort(shifts.begin(), shifts.end(), spectral_less);
  return shifts;
}

}  // namespace momstab
