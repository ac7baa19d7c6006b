#pragma once

// Finite-difference cross-check for the Fourier-mode Robin problems.
//
// Each mode is discretized on the full interval [−L, L] (no parity split)
// as the symmetric tridiagonal pencil (K, M):
//
//   −f'' + (m² − 2/cosh²x) f = μ cosh²(x) f,   f(±L) = ±L f'(±L),
//
// whose eigenvalues relate to the shooting parameter by λ = −μ. The Robin
// rows come from ghost-point elimination, halved to restore symmetry.

#include <cstddef>
#include <vector>

#include "catenoid/geometry.hpp"

namespace catenoid::fd {

struct DiscreteModeProblem {
  int m = 0;
  int n = 0;     // interior nodes; unknowns live on all n + 2 nodes
  double h = 0;  // 2L / (n + 1)
  std::vector<double> x;
  std::vector<double> diag;  // stiffness diagonal
  std::vector<double> off;   // stiffness off-diagonal, size n + 1
  std::vector<double> mass;  // positive diagonal mass

  std::size_t size() const { return diag.size(); }
};

/// Throws std::invalid_argument unless n >= 64 and m >= 0.
DiscreteModeProblem assemble(const CatenoidConstants& c, int m, int n);

/// Number of generalized eigenvalues strictly below sigma, from the pivot
/// signs of the LDLᵀ factorization of K − σM. Returns −1 when a pivot
/// vanishes exactly.
int sturm_count(const DiscreteModeProblem& p, double sigma);

/// Number of μ < 0, i.e. shooting eigenvalues λ > 0. The shift is σ = −guard with
/// guard = 1e−12·max|diag|, enlarged tenfold on a singular pivot, at most
/// five retries before std::runtime_error.
int count_negative_mu(const DiscreteModeProblem& p);

struct EigenPair {
  double mu = 0.0;
  std::vector<double> vector;  // M-normalized, largest component positive
};

/// The k algebraically smallest eigenpairs (the negative and near-zero end
/// of the spectrum), located by Sturm bisection to relative tolerance
/// 1e−10 and completed by inverse iteration.
std::vector<EigenPair> eigenvalues_near_zero(const DiscreteModeProblem& p, int k);

/// λ = −μ for every μ < 0, ascending in λ.
std::vector<double> negative_lambdas(const DiscreteModeProblem& p);

/// Richardson extrapolation of an O(h²) sequence from two grid spacings.
double richardson(double value_coarse, double h_coarse, double value_fine, double h_fine);

}  // namespace catenoid::fd
