#ifndef MOMSTAB_MODEL_HPP
#define MOMSTAB_MODEL_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "momstab/errors.hpp"

namespace momstab {

// Linear Ito SDE with multiplicative white noise,
//
//   dx^i = A^i_j x^j dt + rho^i_{j,a} x^j dW^a,   1 <= i,j <= n, 1 <= a <= A,
//
// where the W^a are independent standard Wiener processes. Indices are
// 0-based in code. noise_count = 0 is legal and degenerates to the
// deterministic system dx/dt = A x.
struct LinearSDESystem {
  int dim = 0;
  int noise_count = 0;
  Eigen::MatrixXd drift;               // drift(i, j) = A^i_j
  std::vector<Eigen::MatrixXd> noise;  // noise[a](i, j) = rho^i_{j,a}

  double rho(int i, int j, int a) const { return noise[a](i, j); }
};

// Covariance tensor of the matrix-valued Brownian driver,
//   C^{i,m}_{j,n} = sum_a rho^i_{j,a} rho^m_{n,a},
// immutable after construction by correlation_from_noise.
class CorrelationTensor {
public:
  CorrelationTensor() = default;
  explicit CorrelationTensor(int dim)
      : dim_(dim),
        values_(static_cast<std::size_t>(dim) * dim * dim * dim, 0.0) {}

  int dim() const { return dim_; }

  // at(i, j, m, n) = C^{i,m}_{j,n}
  double at(int i, int j, int m, int n) const {
    return values_[flat(i, j, m, n)];
  }
  double& at(int i, int j, int m, int n) { return values_[flat(i, j, m, n)]; }

  // Gram flattening: row (i,j), column (m,n). Positive semidefinite by
  // construction, since it equals sum_a vec(rho_a) vec(rho_a)^T.
  Eigen::MatrixXd grouped() const;

private:
  std::size_t flat(int i, int j, int m, int n) const {
    return ((static_cast<std::size_t>(i) * dim_ + j) * dim_ + m) * dim_ + n;
  }

  int dim_ = 0;
  std::vector<double> values_;
};

// Diagonal noise rho^i_{j,a} = delta^i_j r^i_a, described by the rate matrix
// r and the pair matrix V2 = r r^T.
struct DiagonalNoiseSpec {
  int dim = 0;
  Eigen::MatrixXd rates;        // n x A, rates(i, a) = r^i_a
  Eigen::MatrixXd pair_matrix;  // n x n, V2(i, m) = sum_a r^i_a r^m_a
};

// Returns every invariant violation with index coordinates; empty when the
// system is accepted by all other operations.
std::vector<std::string> validate_system(const LinearSDESystem& sys);

// Throws InvalidInput listing all violations when the system is not valid.
void require_valid(const LinearSDESystem& sys);

CorrelationTensor correlation_from_noise(const LinearSDESystem& sys);

struct NoiseLinearization {
  double alpha;                // dF/du at (0,0)
  double beta;                 // dF/dv at (0,0)
  double slope_at_unit_noise;  // d/du [F(u,1) - F(u,0)] at u = 0
};

// Central finite differences with spacing `step` around (0,0). The additive
// term F(0, v) is the caller's responsibility. Throws NonFiniteEvaluation if
// any sample of F is NaN or Inf.
NoiseLinearization linearize_noise_coupling(
    const std::function<double(double, double)>& F, double step = 1e-5);

// Builds the spec (pair_matrix = rates * rates^T) from a rate matrix.
DiagonalNoiseSpec make_diagonal_spec(const Eigen::MatrixXd& rates);

// Full-system embedding of a diagonal spec, for cross-checks.
LinearSDESystem embed_diagonal(const DiagonalNoiseSpec& spec,
                               const Eigen::MatrixXd& drift);

}  // namespace momstab

#endif
