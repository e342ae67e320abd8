#include "momstab/model.hpp"

#include <cmath>
#include <sstream>

namespace momstab {

Eigen::MatrixXd CorrelationTensor::grouped() const {
  const int n = dim_;
  Eigen::MatrixXd g(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) g(i * n + j, m * n + l) = at(i, j, m, l);
  return g;
}

std::vector<std::string> validate_system(const LinearSDESystem& sys) {
  std::vector<std::string> violations;
  auto add = [&](const std::string& s) { violations.push_back(s); };

  if (sys.dim < 1) add("dim must be >= 1 (got " + std::to_string(sys.dim) + ")");
  if (sys.noise_count < 0)
    add("noise_count must be >= 0 (got " + std::to_string(sys.noise_count) + ")");
  if (sys.drift.rows() != sys.dim || sys.drift.cols() != sys.dim) {
    std::ostringstream os;
    os << "drift must be " << sys.dim << "x" << sys.dim << " (got "
       << sys.drift.rows() << "x" << sys.drift.cols() << ")";
    add(os.str());
  }
  if (static_cast<int>(sys.noise.size()) != sys.noise_count) {
    add("noise must hold exactly noise_count matrices (got " +
        std::to_string(sys.noise.size()) + ", expected " +
        std::to_string(sys.noise_count) + ")");
  }

  for (int i = 0; i < sys.drift.rows(); ++i)
    for (int j = 0; j < sys.drift.cols(); ++j)
      if (!std::isfinite(sys.drift(i, j))) {
        std::ostringstream os;
        os << "drift(" << i << "," << j << ") is not finite";
        add(os.str());
      }

  for (std::size_t a = 0; a < sys.noise.size(); ++a) {
    const auto& r = sys.noise[a];
    if (r.rows() != sys.dim || r.cols() != sys.dim) {
      std::ostringstream os;
      os << "noise[" << a << "] must be " << sys.dim << "x" << sys.dim
         << " (got " << r.rows() << "x" << r.cols() << ")";
      add(os.str());
      continue;
    }
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j)
        if (!std::isfinite(r(i, j))) {
          std::ostringstream os;
          os << "noise[" << a << "](" << i << "," << j << ") is not finite";
          add(os.str());
        }
  }
  return violations;
}

void require_valid(const LinearSDESystem& sys) {
  auto v = validate_system(sys);
  if (v.empty()) return;
  std::string msg = "invalid system:";
  for (const auto& s : v) msg += "\n  - " + s;
  throw InvalidInput(msg);
}

CorrelationTensor correlation_from_noise(const LinearSDESystem& sys) {
  require_valid(sys);
  const int n = sys.dim;
  CorrelationTensor c(n);
  for (int a = 0; a < sys.noise_count; ++a) {
    const auto& r = sys.noise[a];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double rij = r(i, j);
        if (rij == 0.0) continue;
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) c.at(i, j, m, l) += rij * r(m, l);
      }
  }
  return c;
}

namespace {

double checked(const std::function<double(double, double)>& F, double u,
               double v) {
  const double y = F(u, v);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << "F(" << u << ", " << v << ") evaluated to a non-finite value";
    throw NonFiniteEvaluation(os.str());
  }
  return y;
}

}  // namespace

NoiseLinearization linearize_noise_coupling(
    const std::function<double(double, double)>& F, double step) {
  if (!(step > 0.0)) throw InvalidInput("step must be positive");
  const double h = step;

  const double fp0 = checked(F, h, 0.0);
  const double fm0 = checked(F, -h, 0.0);
  const double f0p = checked(F, 0.0, h);
  const double f0m = checked(F, 0.0, -h);
  const double fp1 = checked(F, h, 1.0);
  const double fm1 = checked(F, -h, 1.0);

  NoiseLinearization out;
  out.alpha = (fp0 - fm0) / (2.0 * h);
  out.beta = (f0p - f0m) / (2.0 * h);
  // d/du of F(u,1) - F(u,0) at u = 0: the multiplicative coupling sampled at
  // unit noise value.
  out.slope_at_unit_noise = ((fp1 - fp0) - (fm1 - fm0)) / (2.0 * h);
  return out;
}

DiagonalNoiseSpec make_diagonal_spec(const Eigen::MatrixXd& rates) {
  DiagonalNoiseSpec spec;
  spec.dim = static_cast<int>(rates.rows());
  spec.rates = rates;
  spec.pair_matrix = rates * rates.transpose();
  return spec;
}

LinearSDESystem embed_diagonal(const DiagonalNoiseSpec& spec,
                               const Eigen::MatrixXd& drift) {
  LinearSDESystem sys;
  sys.dim = spec.dim;
  sys.noise_count = static_cast<int>(spec.rates.cols());
  sys.drift = drift;
  sys.noise.reserve(sys.noise_count);
  for (int a = 0; a < sys.noise_count; ++a) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(spec.dim, spec.dim);
    for (int i = 0; i < spec.dim; ++i) r(i, i) = spec.rates(i, a);
    sys.noise.push_back(std::move(r));
  }
  return sys;
}

}  // namespace momstab
