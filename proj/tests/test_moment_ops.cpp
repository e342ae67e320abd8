#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <random>

#include "momstab/moment_ops.hpp"

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

LinearSDESystem random_system(int n, int drivers, unsigned seed,
                              double noise_scale = 1.0) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  LinearSDESystem sys;
  sys.dim = n;
  sys.noise_count = drivers;
  sys.drift = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return dist(gen); });
  for (int a = 0; a < drivers; ++a)
    sys.noise.push_back(Eigen::MatrixXd::NullaryExpr(
        n, n, [&] { return noise_scale * dist(gen); }));
  return sys;
}

// full n^m tensor-space assembly, index tuples enumerated little-endian
Eigen::MatrixXd full_tensor_operator(const LinearSDESystem& sys, int m) {
  const int n = sys.dim;
  const auto c = correlation_from_noise(sys);
  int dim = 1;
  for (int i = 0; i < m; ++i) dim *= n;

  auto decode = [&](int idx) {
    std::vector<int> t(m);
    for (int p = 0; p < m; ++p) {
      t[p] = idx % n;
      idx /= n;
    }
    return t;
  };
  auto encode = [&](const std::vector<int>& t) {
    int idx = 0;
    for (int p = m - 1; p >= 0; --p) idx = idx * n + t[p];
    return idx;
  };

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
  for (int row = 0; row < dim; ++row) {
    const auto k = decode(row);
    for (int s = 0; s < m; ++s)
      for (int j = 0; j < n; ++j) {
        auto t = k;
        t[s] = j;
        u(row, encode(t)) += sys.drift(k[s], j);
      }
    for (int s = 0; s < m; ++s)
      for (int t2 = s + 1; t2 < m; ++t2)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l) {
            auto t = k;
            t[s] = j;
            t[t2] = l;
            u(row, encode(t)) += c.at(k[s], j, k[t2], l);
          }
  }
  return u;
}

std::vector<std::complex<double>> sorted_eigs(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<std::complex<double>> v(es.eigenvalues().data(),
                                      es.eigenvalues().data() + m.rows());
  std::sort(v.begin(), v.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST_CASE("basis enumerates multisets in lexicographic order") {
  MomentBasis basis(3, 2);
  CHECK(basis.size() == 6);  // binomial(4, 2)
  CHECK(basis.tuple(0) == std::vector<int>{0, 0});
  CHECK(basis.tuple(1) == std::vector<int>{0, 1});
  CHECK(basis.tuple(5) == std::vector<int>{2, 2});
  CHECK(basis.position({1, 0}) == 1);  // sorted before lookup
  CHECK(basis.position({2, 1}) == 4);
  CHECK_THROWS_AS(basis.position({0, 3}), IndexOutOfRange);
  CHECK(MomentBasis::size_for(30, 4) == 40920);
}

TEST_CASE("basis cap raises BasisTooLarge with the required size") {
  try {
    MomentBasis basis(30, 4, 20000);
    FAIL("expected BasisTooLarge");
  } catch (const BasisTooLarge& e) {
    CHECK(e.required_size == 40920);
  }
}

TEST_CASE("apply_generator degree 1 reproduces the drift row") {
  const auto sys = random_system(3, 1, 21);
  const auto c = correlation_from_noise(sys);
  const auto combo = apply_generator(sys, c, {1});
  for (int j = 0; j < 3; ++j) {
    const auto it = combo.find({j});
    const double coeff = it == combo.end() ? 0.0 : it->second;
    CHECK(coeff == doctest::Approx(sys.drift(1, j)).epsilon(1e-14));
  }
}

TEST_CASE("apply_generator 1D second moment") {
  const auto sys = example_1d(1.0, 0.5);
  const auto combo = apply_generator(sys, correlation_from_noise(sys), {0, 0});
  REQUIRE(combo.size() == 1);
  CHECK(combo.at({0, 0}) == doctest::Approx(-2.0 + 0.25).epsilon(1e-15));
}

TEST_CASE("apply_generator with zero noise is the two-fold Kronecker action") {
  auto sys = random_system(2, 0, 3);
  const auto c = correlation_from_noise(sys);
  const auto combo = apply_generator(sys, c, {0, 1});
  // d/dt Y^{01} = A^0_j Y^{j1} + A^1_j Y^{0j}
  const auto coeff = [&](std::vector<int> key) {
    const auto it = combo.find(key);
    return it == combo.end() ? 0.0 : it->second;
  };
  CHECK(coeff({0, 1}) ==
        doctest::Approx(sys.drift(0, 0) + sys.drift(1, 1)).epsilon(1e-14));
  CHECK(coeff({1, 1}) == doctest::Approx(sys.drift(0, 1)).epsilon(1e-14));
  CHECK(coeff({0, 0}) == doctest::Approx(sys.drift(1, 0)).epsilon(1e-14));
}

TEST_CASE("apply_generator rejects out-of-range indices") {
  const auto sys = example_1d(1.0, 0.5);
  CHECK_THROWS_AS(
      apply_generator(sys, correlation_from_noise(sys), {0, 1}),
      IndexOutOfRange);
}

TEST_CASE("1D moment operators match the closed form") {
  const auto op2 = build_moment_operator(example_1d(1.0, 0.5), 2);
  REQUIRE(op2.matrix.rows() == 1);
  CHECK(op2.matrix(0, 0) == doctest::Approx(-1.75).epsilon(1e-15));

  const auto op4 = build_moment_operator(example_1d(1.0, 0.5), 4);
  CHECK(op4.matrix(0, 0) == doctest::Approx(-2.5).epsilon(1e-15));
}

TEST_CASE("degree-1 operator equals the drift exactly") {
  const auto sys = random_system(4, 2, 17);
  const auto op = build_moment_operator(sys, 1);
  CHECK((op.matrix - sys.drift).norm() == 0.0);
}

TEST_CASE("1D growth rates reproduce lambda_m = -a + (m-1) rho^2 / 2") {
  for (double a : {0.5, 1.0, 2.0})
    for (double rho : {0.25, 0.5, 1.0})
      for (int m = 1; m <= 8; ++m) {
        const auto op = build_moment_operator(example_1d(a, rho), m);
        const double lambda_m = op.matrix(0, 0) / m;
        const double expected = -a + (m - 1) * rho * rho / 2.0;
        CHECK(std::abs(lambda_m - expected) <= 1e-12);
      }
}

TEST_CASE("zero-noise spectrum is the Kronecker sum of drift eigenvalues") {
  auto sys = random_system(3, 0, 31);
  sys.drift -= 1.5 * Eigen::MatrixXd::Identity(3, 3);
  const auto op = build_moment_operator(sys, 2);
  auto got = sorted_eigs(op.matrix);

  Eigen::EigenSolver<Eigen::MatrixXd> es(sys.drift, false);
  std::vector<std::complex<double>> expected;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      expected.push_back(es.eigenvalues()(i) + es.eigenvalues()(j));

  REQUIRE(got.size() == expected.size());
  // nearest-match with consumption; sums can tie in real part
  for (const auto& e : expected) {
    std::size_t best_idx = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < got.size(); ++i)
      if (std::abs(got[i] - e) < best) {
        best = std::abs(got[i] - e);
        best_idx = i;
      }
    CHECK(best < 1e-9);
    got.erase(got.begin() + static_cast<std::ptrdiff_t>(best_idx));
  }
}

TEST_CASE("symmetric-basis abscissa matches the full tensor operator") {
  for (int m : {2, 3}) {
    const auto sys = random_system(2, 1, 57, 0.6);
    const auto op = build_moment_operator(sys, m);
    const Eigen::MatrixXd full = full_tensor_operator(sys, m);

    Eigen::EigenSolver<Eigen::MatrixXd> e1(op.matrix, false);
    Eigen::EigenSolver<Eigen::MatrixXd> e2(full, false);
    const double a1 = e1.eigenvalues().real().maxCoeff();
    const double a2 = e2.eigenvalues().real().maxCoeff();
    CHECK(a1 == doctest::Approx(a2).epsilon(1e-9));
  }
}

TEST_CASE("diagonal fast path agrees with the embedded full system") {
  Eigen::MatrixXd rates(2, 2);
  rates << 0.7, 0.0, 0.0, -0.4;  // orthogonal rows
  const auto spec = make_diagonal_spec(rates);
  Eigen::MatrixXd drift(2, 2);
  drift << -1.0, 0.3, 0.1, -2.0;

  for (int m : {1, 2, 3}) {
    const auto fast = build_moment_operator_diagonal(spec, drift, m);
    const auto full = build_moment_operator(embed_diagonal(spec, drift), m);
    CHECK((fast.matrix - full.matrix).norm() < 1e-13);
  }
}

TEST_CASE("diagonal fast path with non-orthogonal rates") {
  Eigen::MatrixXd rates(3, 2);
  rates << 0.5, 0.2, -0.3, 0.8, 0.1, -0.6;
  const auto spec = make_diagonal_spec(rates);
  Eigen::MatrixXd drift = random_system(3, 0, 77).drift;
  const auto fast = build_moment_operator_diagonal(spec, drift, 2);
  const auto full = build_moment_operator(embed_diagonal(spec, drift), 2);
  CHECK((fast.matrix - full.matrix).norm() < 1e-13);
}

TEST_CASE("diagonal path reduces to the 1D operator") {
  Eigen::MatrixXd rates(1, 1);
  rates << 0.5;
  const auto spec = make_diagonal_spec(rates);
  const auto fast = build_moment_operator_diagonal(
      spec, Eigen::MatrixXd::Constant(1, 1, -1.0), 2);
  CHECK(fast.matrix(0, 0) == doctest::Approx(-1.75).epsilon(1e-15));
}

TEST_CASE("zero pair matrix gives the zero-noise operator") {
  const auto spec = make_diagonal_spec(Eigen::MatrixXd::Zero(2, 1));
  Eigen::MatrixXd drift(2, 2);
  drift << -1.0, 0.5, 0.0, -2.0;
  const auto fast = build_moment_operator_diagonal(spec, drift, 2);
  LinearSDESystem det;
  det.dim = 2;
  det.noise_count = 0;
  det.drift = drift;
  const auto bare = build_moment_operator(det, 2);
  CHECK((fast.matrix - bare.matrix).norm() == 0.0);
}

TEST_CASE("inconsistent pair matrix is rejected") {
  auto spec = make_diagonal_spec(Eigen::MatrixXd::Ones(2, 1));
  spec.pair_matrix(0, 1) += 0.5;
  CHECK_THROWS_AS(
      build_moment_operator_diagonal(spec, Eigen::MatrixXd::Zero(2, 2), 2),
      InconsistentSpec);
}

TEST_CASE("split_unperturbed adds up to the full operator") {
  SUBCASE("no noise means zero perturbation") {
    const auto sys = random_system(2, 0, 12);
    const auto split = split_unperturbed(sys, 2);
    CHECK(split.perturbation.norm() == 0.0);
  }
  SUBCASE("1D example split") {
    const auto split = split_unperturbed(example_1d(1.0, 0.5), 2);
    CHECK(split.unperturbed.matrix(0, 0) == doctest::Approx(-2.0));
    CHECK(split.perturbation(0, 0) == doctest::Approx(0.25));
  }
  SUBCASE("random 3x3 additivity") {
    const auto sys = random_system(3, 2, 8);
    const auto split = split_unperturbed(sys, 2);
    const auto full = build_moment_operator(sys, 2);
    CHECK((split.unperturbed.matrix + split.perturbation - full.matrix)
              .norm() < 1e-13 * full.matrix.norm());
  }
}
