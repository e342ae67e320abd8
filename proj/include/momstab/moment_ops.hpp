#ifndef MOMSTAB_MOMENT_OPS_HPP
#define MOMSTAB_MOMENT_OPS_HPP

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <vector>

#include "momstab/model.hpp"

namespace momstab {

// Basis of the symmetric (multiset) moment space of degree m in n variables:
// all non-decreasing index tuples (k_1 <= ... <= k_m), 0-based, enumerated in
// lexicographic order. Size is binomial(n+m-1, m), which is why moments are
// kept on this basis instead of the full n^m tensor space.
class MomentBasis {
public:
  static constexpr std::size_t kDefaultCap = 20000;

  MomentBasis(int dim, int degree, std::size_t cap = kDefaultCap);

  // binomial(n+m-1, m); saturates at SIZE_MAX on overflow.
  static std::size_t size_for(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::size_t size() const { return tuples_.size(); }

  const std::vector<int>& tuple(std::size_t idx) const { return tuples_[idx]; }

  // Position of a tuple after ascending sort. Throws IndexOutOfRange for
  // indices outside 0..dim-1.
  std::size_t position(std::vector<int> tuple) const;

private:
  int dim_;
  int degree_;
  std::vector<std::vector<int>> tuples_;
  std::map<std::vector<int>, std::size_t> lookup_;
};

// Matrix of the degree-m moment evolution operator U_m on the symmetric
// basis: d/dt Y = matrix * Y with Y_t = E[x^{k_1} ... x^{k_m}] for the t-th
// basis tuple. Row t holds the expansion of d/dt Y_t, so for m = 1 the
// matrix equals the drift exactly.
struct MomentOperator {
  MomentBasis basis;
  Eigen::MatrixXd matrix;
};

// d/dt E[x^{k_1} ... x^{k_m}] as a linear combination of sorted monomials:
// drift replaces one index at a time, the noise tensor replaces every
// unordered pair of positions.
std::map<std::vector<int>, double> apply_generator(
    const LinearSDESystem& sys, const CorrelationTensor& c,
    const std::vector<int>& monomial);

MomentOperator build_moment_operator(const LinearSDESystem& sys, int degree,
                                     std::size_t cap = MomentBasis::kDefaultCap);

// Diagonal-noise fast path: the noise contributes the scalar
// sum_{s<t} V2(k_s, k_t) on the diagonal of each basis element. Throws
// InconsistentSpec when pair_matrix is not the Gram product of the rates.
MomentOperator build_moment_operator_diagonal(
    const DiagonalNoiseSpec& spec, const Eigen::MatrixXd& drift, int degree,
    std::size_t cap = MomentBasis::kDefaultCap);

// Weak-noise split U_m = M_m + delta_M_m: the pure Kronecker-sum part and
// the noise perturbation, on the same symmetric basis.
struct SplitOperator {
  MomentOperator unperturbed;
  Eigen::MatrixXd perturbation;
};

SplitOperator split_unperturbed(const LinearSDESystem& sys, int degree,
                                std::size_t cap = MomentBasis::kDefaultCap);

}  // namespace momstab

#endif
