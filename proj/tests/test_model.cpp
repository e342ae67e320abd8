#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "momstab/model.hpp"

using namespace momstab;

namespace {

LinearSDESystem example_1d(double a, double rho) {
  LinearSDESystem sys;
  sys.dim = 1;
  sys.noise_count = 1;
  sys.drift = Eigen::MatrixXd::Constant(1, 1, -a);
  sys.noise = {Eigen::MatrixXd::Constant(1, 1, rho)};
  return sys;
}

LinearSDESystem random_system(int n, int drivers, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LinearSDESystem sys;
  sys.dim = n;
  sys.noise_count = drivers;
  sys.drift = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return dist(gen); });
  for (int a = 0; a < drivers; ++a)
    sys.noise.push_back(
        Eigen::MatrixXd::NullaryExpr(n, n, [&] { return dist(gen); }));
  return sys;
}

}  // namespace

TEST_CASE("validate_system accepts the 1D example") {
  CHECK(validate_system(example_1d(1.0, 0.5)).empty());
}

TEST_CASE("validate_system names non-finite entries") {
  auto sys = example_1d(1.0, 0.5);
  sys.drift(0, 0) = std::numeric_limits<double>::quiet_NaN();
  const auto v = validate_system(sys);
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("drift(0,0)") != std::string::npos);

  auto sys2 = random_system(2, 1, 7);
  sys2.noise[0](1, 0) = std::numeric_limits<double>::infinity();
  const auto v2 = validate_system(sys2);
  REQUIRE(v2.size() == 1);
  CHECK(v2[0].find("noise[0](1,0)") != std::string::npos);
}

TEST_CASE("validate_system rejects dim zero") {
  LinearSDESystem sys;
  sys.dim = 0;
  sys.noise_count = 0;
  sys.drift = Eigen::MatrixXd::Zero(0, 0);
  const auto v = validate_system(sys);
  REQUIRE(!v.empty());
  CHECK(v[0].find("dim must be >= 1") != std::string::npos);
}

TEST_CASE("noise_count zero is a legal deterministic system") {
  LinearSDESystem sys;
  sys.dim = 2;
  sys.noise_count = 0;
  sys.drift = Eigen::MatrixXd::Identity(2, 2);
  CHECK(validate_system(sys).empty());
  const auto c = correlation_from_noise(sys);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) CHECK(c.at(i, j, m, n) == 0.0);
}

TEST_CASE("correlation of the 1D example is rho^2") {
  const auto c = correlation_from_noise(example_1d(1.0, 0.5));
  CHECK(c.at(0, 0, 0, 0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("correlation matches a brute-force triple loop") {
  const auto sys = random_system(2, 2, 42);
  const auto c = correlation_from_noise(sys);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          double expected = 0.0;
          for (int a = 0; a < 2; ++a)
            expected += sys.noise[a](i, j) * sys.noise[a](m, n);
          CHECK(c.at(i, j, m, n) == doctest::Approx(expected).epsilon(1e-14));
        }
}

TEST_CASE("correlation tensor symmetry and PSD grouping") {
  const auto sys = random_system(3, 2, 99);
  const auto c = correlation_from_noise(sys);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          CHECK(c.at(i, j, m, n) == doctest::Approx(c.at(m, n, i, j)));

  const Eigen::MatrixXd g = c.grouped();
  CHECK((g - g.transpose()).norm() < 1e-14 * g.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12 * g.norm());
}

TEST_CASE("correlation is invariant under driver permutation") {
  auto sys = random_system(2, 3, 5);
  const auto c1 = correlation_from_noise(sys);
  std::swap(sys.noise[0], sys.noise[2]);
  const auto c2 = correlation_from_noise(sys);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          CHECK(c1.at(i, j, m, n) == doctest::Approx(c2.at(i, j, m, n)));
}

TEST_CASE("correlation is quadratic in the noise amplitude") {
  auto sys = random_system(2, 2, 11);
  const auto c1 = correlation_from_noise(sys);
  for (auto& r : sys.noise) r *= 3.0;
  const auto c9 = correlation_from_noise(sys);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          CHECK(c9.at(i, j, m, n) ==
                doctest::Approx(9.0 * c1.at(i, j, m, n)).epsilon(1e-13));
}

TEST_CASE("linearize_noise_coupling on a linear function") {
  const auto lin = linearize_noise_coupling(
      [](double u, double v) { return 2.0 * u + 3.0 * v; }, 1e-5);
  CHECK(lin.alpha == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(lin.beta == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(std::abs(lin.slope_at_unit_noise) < 1e-8);
}

TEST_CASE("linearize_noise_coupling on the bilinear coupling") {
  const auto lin = linearize_noise_coupling(
      [](double u, double v) { return u * (1.0 + v); }, 1e-5);
  CHECK(lin.alpha == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lin.slope_at_unit_noise == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("linearize_noise_coupling against analytic derivatives") {
  const auto lin = linearize_noise_coupling(
      [](double u, double v) { return std::sin(u) * std::exp(v); }, 1e-4);
  CHECK(std::abs(lin.alpha - 1.0) < 1e-6);
  CHECK(std::abs(lin.beta - 0.0) < 1e-6);  // sin(0) e^v has no v-slope at u=0
  CHECK(std::abs(lin.slope_at_unit_noise - (std::exp(1.0) - 1.0)) < 1e-6);
}

TEST_CASE("linearize_noise_coupling rejects non-finite samples") {
  CHECK_THROWS_AS(linearize_noise_coupling(
                      [](double, double) {
                        return std::numeric_limits<double>::quiet_NaN();
                      },
                      1e-5),
                  NonFiniteEvaluation);
  CHECK_THROWS_AS(
      linearize_noise_coupling([](double u, double) { return u; }, 0.0),
      InvalidInput);
}

TEST_CASE("diagonal spec embedding reproduces the rates") {
  Eigen::MatrixXd rates(2, 2);
  rates << 1.0, 0.5, -0.25, 2.0;
  const auto spec = make_diagonal_spec(rates);
  CHECK((spec.pair_matrix - rates * rates.transpose()).norm() < 1e-15);

  const auto sys = embed_diagonal(spec, Eigen::MatrixXd::Zero(2, 2));
  CHECK(sys.noise_count == 2);
  CHECK(sys.rho(0, 0, 0) == 1.0);
  CHECK(sys.rho(1, 1, 1) == 2.0);
  CHECK(sys.rho(0, 1, 0) == 0.0);
}
