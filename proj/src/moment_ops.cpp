#include "momstab/moment_ops.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace momstab {

std::size_t MomentBasis::size_for(int dim, int degree) {
  // binomial(dim + degree - 1, degree) with saturation.
  std::size_t result = 1;
  for (int i = 1; i <= degree; ++i) {
    const std::size_t num = static_cast<std::size_t>(dim - 1 + i);
    if (result > std::numeric_limits<std::size_t>::max() / num)
      return std::numeric_limits<std::size_t>::max();
    result = result * num / static_cast<std::size_t>(i);
  }
  return result;
}

MomentBasis::MomentBasis(int dim, int degree, std::size_t cap)
    : dim_(dim), degree_(degree) {
  if (dim < 1) throw InvalidInput("basis dim must be >= 1");
  if (degree < 1) throw InvalidInput("basis degree must be >= 1");
  const std::size_t required = size_for(dim, degree);
  if (required > cap) {
    std::ostringstream os;
    os << "moment basis for dim=" << dim << " degree=" << degree
       << " needs " << required << " elements, cap is " << cap;
    throw BasisTooLarge(os.str(), required);
  }

  tuples_.reserve(required);
  std::vector<int> t(degree, 0);
  while (true) {
    tuples_.push_back(t);
    // next non-decreasing tuple in lexicographic order
    int pos = degree - 1;
    while (pos >= 0 && t[pos] == dim - 1) --pos;
    if (pos < 0) break;
    const int v = t[pos] + 1;
    for (int i = pos; i < degree; ++i) t[i] = v;
  }

  for (std::size_t i = 0; i < tuples_.size(); ++i) lookup_[tuples_[i]] = i;
}

std::size_t MomentBasis::position(std::vector<int> tuple) const {
  for (int k : tuple)
    if (k < 0 || k >= dim_)
      throw IndexOutOfRange("tuple index " + std::to_string(k) +
                            " outside 0.." + std::to_string(dim_ - 1));
  std::sort(tuple.begin(), tuple.end());
  auto it = lookup_.find(tuple);
  if (it == lookup_.end())
    throw IndexOutOfRange("tuple has wrong length for this basis");
  return it->second;
}

namespace {

void accumulate(std::map<std::vector<int>, double>& out, std::vector<int> key,
                double coeff) {
  if (coeff == 0.0) return;
  std::sort(key.begin(), key.end());
  out[std::move(key)] += coeff;
}

}  // namespace

std::map<std::vector<int>, double> apply_generator(
    const LinearSDESystem& sys, const CorrelationTensor& c,
    const std::vector<int>& monomial) {
  const int n = sys.dim;
  const int m = static_cast<int>(monomial.size());
  for (int k : monomial)
    if (k < 0 || k >= n)
      throw IndexOutOfRange("monomial index " + std::to_string(k) +
                            " outside 0.." + std::to_string(n - 1));

  std::map<std::vector<int>, double> out;

  // drift: one position at a time, k_s -> j with weight A^{k_s}_j
  for (int s = 0; s < m; ++s) {
    for (int j = 0; j < n; ++j) {
      const double a = sys.drift(monomial[s], j);
      if (a == 0.0) continue;
      std::vector<int> key = monomial;
      key[s] = j;
      accumulate(out, std::move(key), a);
    }
  }

  // noise: every unordered pair of positions, (k_s, k_t) -> (j, l) with
  // weight C^{k_s,k_t}_{j,l}
  if (c.dim() > 0) {
    for (int s = 0; s < m; ++s) {
      for (int t = s + 1; t < m; ++t) {
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            const double w = c.at(monomial[s], j, monomial[t], l);
            if (w == 0.0) continue;
            std::vector<int> key = monomial;
            key[s] = j;
            key[t] = l;
            accumulate(out, std::move(key), w);
          }
      }
    }
  }
  return out;
}

namespace {

MomentOperator assemble(const LinearSDESystem& sys, const CorrelationTensor& c,
                        int degree, std::size_t cap) {
  MomentBasis basis(sys.dim, degree, cap);
  const std::size_t sz = basis.size();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(sz, sz);
  for (std::size_t t = 0; t < sz; ++t) {
    auto combo = apply_generator(sys, c, basis.tuple(t));
    for (const auto& [key, coeff] : combo)
      mat(static_cast<Eigen::Index>(t),
          static_cast<Eigen::Index>(basis.position(key))) += coeff;
  }
  return MomentOperator{std::move(basis), std::move(mat)};
}

}  // namespace

MomentOperator build_moment_operator(const LinearSDESystem& sys, int degree,
                                     std::size_t cap) {
  require_valid(sys);
  return assemble(sys, correlation_from_noise(sys), degree, cap);
}

MomentOperator build_moment_operator_diagonal(const DiagonalNoiseSpec& spec,
                                              const Eigen::MatrixXd& drift,
                                              int degree, std::size_t cap) {
  if (spec.dim < 1) throw InvalidInput("diagonal spec dim must be >= 1");
  if (spec.rates.rows() != spec.dim)
    throw InconsistentSpec("rates must have dim rows");
  const Eigen::MatrixXd gram = spec.rates * spec.rates.transpose();
  const double scale = std::max(1.0, gram.norm());
  if ((spec.pair_matrix - gram).norm() > 1e-12 * scale)
    throw InconsistentSpec(
        "pair_matrix is not the Gram product of the rate rows");

  // drift-only operator, then the scalar noise shifts on the diagonal
  LinearSDESystem det;
  det.dim = spec.dim;
  det.noise_count = 0;
  det.drift = drift;
  MomentOperator op = assemble(det, CorrelationTensor(spec.dim), degree, cap);
  for (std::size_t t = 0; t < op.basis.size(); ++t) {
    const auto& tup = op.basis.tuple(t);
    double shift = 0.0;
    for (std::size_t s = 0; s < tup.size(); ++s)
      for (std::size_t u = s + 1; u < tup.size(); ++u)
        shift += spec.pair_matrix(tup[s], tup[u]);
    op.matrix(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) +=
        shift;
  }
  return op;
}

SplitOperator split_unperturbed(const LinearSDESystem& sys, int degree,
                                std::size_t cap) {
  require_valid(sys);

  LinearSDESystem det;
  det.dim = sys.dim;
  det.noise_count = 0;
  det.drift = sys.drift;
  MomentOperator unperturbed =
      assemble(det, CorrelationTensor(sys.dim), degree, cap);

  // noise-only assembly (zero drift) gives delta_M_m directly
  LinearSDESystem noise_only;
  noise_only.dim = sys.dim;
  noise_only.noise_count = sys.noise_count;
  noise_only.drift = Eigen::MatrixXd::Zero(sys.dim, sys.dim);
  noise_only.noise = sys.noise;
  MomentOperator delta =
      assemble(noise_only, correlation_from_noise(noise_only), degree, cap);

  return SplitOperator{std::move(unperturbed), std::move(delta.matrix)};
}

}  // namespace momstab
