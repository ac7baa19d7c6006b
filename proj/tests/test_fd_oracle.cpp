#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "catenoid/fd_oracle.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace catenoid;

namespace {

const CatenoidConstants& constants() {
  static const CatenoidConstants c = solve_balance_length();
  return c;
}

// Dense generalized eigenvalues of (K, M), ascending.
Eigen::VectorXd dense_eigenvalues(const fd::DiscreteModeProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n), M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = p.diag[i];
    M(i, i) = p.mass[i];
    if (i + 1 < n) K(i, i + 1) = K(i + 1, i) = p.off[i];
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(K, M);
  return solver.eigenvalues();
}

double residual(const fd::DiscreteModeProblem& p, const fd::EigenPair& e) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double kv = p.diag[i] * e.vector[i];
    if (i > 0) kv += p.off[i - 1] * e.vector[i - 1];
    if (i + 1 < p.size()) kv += p.off[i] * e.vector[i + 1];
    worst = std::max(worst, std::abs(kv - e.mu * p.mass[i] * e.vector[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("assembly: grid, stencil and mass") {
  const auto& c = constants();
  const auto p = fd::assemble(c, 1, 128);
  CHECK(p.size() == 130);
  CHECK(p.off.size() == 129);
  CHECK(p.h == doctest::Approx(2.0 * c.L / 129).epsilon(1e-15));
  CHECK(p.x.front() == -c.L);
  CHECK(p.x.back() == c.L);
  for (double o : p.off) CHECK(o == doctest::Approx(-1.0 / (p.h * p.h)));
  for (double m : p.mass) CHECK(m >= 1.0);
  const double x = p.x[40], ch = std::cosh(x);
  CHECK(p.diag[40] == doctest::Approx(2.0 / (p.h * p.h) + 1.0 - 2.0 / (ch * ch)));
  CHECK(p.mass[40] == doctest::Approx(ch * ch));
  // symmetric in x
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.diag[i] == doctest::Approx(p.diag[p.size() - 1 - i]));
    CHECK(p.mass[i] == doctest::Approx(p.mass[p.size() - 1 - i]));
  }
  CHECK_THROWS_AS(fd::assemble(c, 0, 63), std::invalid_argument);
  CHECK_THROWS_AS(fd::assemble(c, -1, 128), std::invalid_argument);
}

TEST_CASE("negative counts per mode") {
  const auto& c = constants();
  for (int n : {256, 512}) {
    CHECK(fd::count_negative_mu(fd::assemble(c, 0, n)) == 2);
    CHECK(fd::count_negative_mu(fd::assemble(c, 1, n)) == 1);
    CHECK(fd::count_negative_mu(fd::assemble(c, 2, n)) == 0);
    CHECK(fd::count_negative_mu(fd::assemble(c, 3, n)) == 0);
  }
}

TEST_CASE("Sturm count is monotone in the shift") {
  const auto p = fd::assemble(constants(), 0, 128);
  int prev = 0;
  for (double sigma = -5.0; sigma <= 50.0; sigma += 0.37) {
    const int k = fd::sturm_count(p, sigma);
    REQUIRE(k >= 0);
    CHECK(k >= prev);
    prev = k;
  }
  CHECK(fd::sturm_count(p, -1e6) == 0);
  CHECK(fd::sturm_count(p, 1e9) == static_cast<int>(p.size()));
}

TEST_CASE("Sturm count and eigenpairs agree with a dense solver") {
  const auto& c = constants();
  for (int m : {0, 1, 2}) {
    const auto p = fd::assemble(c, m, 96);
    const Eigen::VectorXd dense = dense_eigenvalues(p);
    for (double sigma : {-1.0, -0.3, 0.5, 2.0, 10.0}) {
      const int expected = static_cast<int>(std::count_if(dense.begin(), dense.end(),
                                                          [&](double mu) { return mu < sigma; }));
      CHECK(fd::sturm_count(p, sigma) == expected);
    }
    const auto pairs = fd::eigenvalues_near_zero(p, 3);
    REQUIRE(pairs.size() == 3);
    for (int k = 0; k < 3; ++k) {
      CAPTURE(m);
      CHECK(std::abs(pairs[k].mu - dense[k]) <= 1e-8 * std::max(1.0, std::abs(dense[k])));
    }
  }
}

TEST_CASE("eigenpairs are M-orthonormal residual-small and sign-normalized") {
  const auto p = fd::assemble(constants(), 0, 256);
  const auto pairs = fd::eigenvalues_near_zero(p, 3);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].mu < pairs[1].mu);
  CHECK(pairs[1].mu < pairs[2].mu);
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    CHECK(residual(p, pairs[a]) < 1e-6 * std::max(1.0, std::abs(pairs[a].mu)) * 1.0 / (p.h * p.h));
    const auto& v = pairs[a].vector;
    const auto big = std::max_element(v.begin(), v.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    CHECK(*big > 0.0);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      double ip = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) ip += pairs[a].vector[i] * p.mass[i] * pairs[b].vector[i];
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-8);
    }
  }
  // ground state: no sign change and even; next state odd
  const auto& g = pairs[0].vector;
  for (double v : g) CHECK(v > 0.0);
  const auto& o = pairs[1].vector;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g[i] == doctest::Approx(g[g.size() - 1 - i]).epsilon(1e-8));
    CHECK(std::abs(o[i] + o[o.size() - 1 - i]) < 1e-8);
  }
}

TEST_CASE("k = 2 near zero: two negative μ for m = 0, one negative and one tiny for m = 1") {
  const auto& c = constants();
  const auto m0 = fd::eigenvalues_near_zero(fd::assemble(c, 0, 512), 2);
  REQUIRE(m0.size() == 2);
  CHECK(m0[0].mu < 0.0);
  CHECK(m0[1].mu < 0.0);
  const auto m1 = fd::eigenvalues_near_zero(fd::assemble(c, 1, 512), 2);
  REQUIRE(m1.size() == 2);
  CHECK(m1[0].mu < 0.0);
  CHECK(std::abs(m1[1].mu) < 1e-4);
  CHECK_THROWS_AS(fd::eigenvalues_near_zero(fd::assemble(c, 1, 128), 0), std::invalid_argument);
}

TEST_CASE("discrete eigenvalues converge at second order") {
  const auto& c = constants();
  const double L = oracle::balance_length_bisection();
  const double exact = oracle::rk4_eigenvalue(L, 0, true, 0.01, 3.0);
  std::vector<double> errors;
  for (int n : {127, 255, 511, 1023}) errors.push_back(std::abs(fd::negative_lambdas(fd::assemble(c, 0, n)).back() - exact));
  CHECK(oracle::fitted_order(errors) >= 1.9);

  // the rotation kernel μ ≈ 0 shrinks like h²
  const double mu256 = fd::eigenvalues_near_zero(fd::assemble(c, 1, 255), 2)[1].mu;
  const double mu512 = fd::eigenvalues_near_zero(fd::assemble(c, 1, 511), 2)[1].mu;
  CHECK(std::log2(std::abs(mu256 / mu512)) >= 1.9);
}

TEST_CASE("Richardson extrapolation") {
  // exact on a + b h²
  auto v = [](double h) { return 0.75 + 3.0 * h * h; };
  CHECK(fd::richardson(v(0.1), 0.1, v(0.05), 0.05) == doctest::Approx(0.75).epsilon(1e-13));
  const auto& c = constants();
  const auto coarse = fd::negative_lambdas(fd::assemble(c, 0, 256));
  const auto fine = fd::negative_lambdas(fd::assemble(c, 0, 512));
  REQUIRE(coarse.size() == 2);
  REQUIRE(fine.size() == 2);
  CHECK(fine[0] < fine[1]);
  const double L = oracle::balance_length_bisection();
  const double exact = oracle::rk4_eigenvalue(L, 0, true, 0.01, 3.0);
  const double extrapolated = fd::richardson(coarse[1], 2 * c.L / 257, fine[1], 2 * c.L / 513);
  CHECK(std::abs(extrapolated - exact) < std::abs(fine[1] - exact));
  CHECK(std::abs(extrapolated - exact) / exact < 1e-6);
}
