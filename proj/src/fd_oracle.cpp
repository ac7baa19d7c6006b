#include "catenoid/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace catenoid::fd {

DiscreteModeProblem assemble(const CatenoidConstants& c, int m, int n) {
  if (n < 64) throw std::invalid_argument("fd::assemble: n must be >= 64");
  if (m < 0) throw std::invalid_argument("fd::assemble: m must be >= 0");

  DiscreteModeProblem p;
  p.m = m;
  p.n = n;
  p.h = 2.0 * c.L / (n + 1);
  const std::size_t size = static_cast<std::size_t>(n) + 2;
  p.x.resize(size);
  p.diag.resize(size);
  p.mass.resize(size);
  p.off.assign(size - 1, -1.0 / (p.h * p.h));

  const double inv_h2 = 1.0 / (p.h * p.h);
  for (std::size_t i = 0; i < size; ++i) {
    p.x[i] = i + 1 == size ? c.L : -c.L + static_cast<double>(i) * p.h;
    const double ch = std::cosh(p.x[i]);
    const double potential = static_cast<double>(m) * m - 2.0 / (ch * ch);
    p.diag[i] = 2.0 * inv_h2 + potential;
    p.mass[i] = ch * ch;
  }

  // Ghost node f_{N+1} = f_{N-1} + 2h f_N / L (and its mirror at −L); the
  // eliminated boundary rows are halved so the pencil stays symmetric.
  for (std::size_t i : {std::size_t{0}, size - 1}) {
    const double ch = std::cosh(p.x[i]);
    const double potential = static_cast<double>(m) * m - 2.0 / (ch * ch);
    p.diag[i] = inv_h2 - 1.0 / (p.h * c.L) + 0.5 * potential;
    p.mass[i] = 0.5 * ch * ch;
  }
  return p;
}

int sturm_count(const DiscreteModeProblem& p, double sigma) {
  int count = 0;
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d = p.diag[i] - sigma * p.mass[i] - (i == 0 ? 0.0 : p.off[i - 1] * p.off[i - 1] / d);
    if (d == 0.0) return -1;
    if (d < 0.0) ++count;
  }
  return count;
}

int count_negative_mu(const DiscreteModeProblem& p) {
  double max_diag = 0.0;
  for (double a : p.diag) max_diag = std::max(max_diag, std::abs(a));
  double guard = 1e-12 * max_diag;
  for (int attempt = 0; attempt <= 5; ++attempt, guard *= 10.0) {
    const int count = sturm_count(p, -guard);
    if (count >= 0) return count;
  }
  throw std::runtime_error("fd::count_negative_mu: singular pivot persists after 5 shift retries");
}

namespace {

// Solves the tridiagonal system (sub, diag, sup) x = b with partial pivoting.
// Arrays are taken by value and overwritten as in LAPACK dgtsv.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> sup, std::vector<double> b,
                                      double pivmin) {
  const std::size_t n = diag.size();
  auto safe = [pivmin](double v) { return std::abs(v) < pivmin ? (v < 0.0 ? -pivmin : pivmin) : v; };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(sub[i])) {
      diag[i] = safe(diag[i]);
      const double fact = sub[i] / diag[i];
      diag[i + 1] -= fact * sup[i];
      b[i + 1] -= fact * b[i];
      sub[i] = 0.0;
    } else {
      const double fact = diag[i] / sub[i];
      diag[i] = sub[i];
      const double temp = diag[i + 1];
      diag[i + 1] = sup[i] - fact * temp;
      if (i + 2 < n) {
        sub[i] = sup[i + 1];
        sup[i + 1] = -fact * sub[i];
      } else {
        sub[i] = 0.0;
      }
      sup[i] = temp;
      const double tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  // sub[i] now holds the second superdiagonal fill-in
  diag[n - 1] = safe(diag[n - 1]);
  b[n - 1] /= diag[n - 1];
  if (n > 1) {
    diag[n - 2] = safe(diag[n - 2]);
    b[n - 2] = (b[n - 2] - sup[n - 2] * b[n - 1]) / diag[n - 2];
  }
  for (std::size_t i = n - 2; i-- > 0;) {
    diag[i] = safe(diag[i]);
    b[i] = (b[i] - sup[i] * b[i + 1] - sub[i] * b[i + 2]) / diag[i];
  }
  return b;
}

double m_inner(const DiscreteModeProblem& p, const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * p.mass[i] * b[i];
  return s;
}

}  // namespace

std::vector<EigenPair> eigenvalues_near_zero(const DiscreteModeProblem& p, int k) {
  if (k < 1) throw std::invalid_argument("fd::eigenvalues_near_zero: k must be >= 1");
  const std::size_t n = p.size();
  if (static_cast<std::size_t>(k) > n) throw std::invalid_argument("fd::eigenvalues_near_zero: k exceeds size");

  // Gershgorin bounds of M^{-1/2} K M^{-1/2}
  double lower = std::numeric_limits<double>::infinity();
  double upper = -lower;
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(p.off[i - 1]) / std::sqrt(p.mass[i - 1] * p.mass[i]);
    if (i + 1 < n) r += std::abs(p.off[i]) / std::sqrt(p.mass[i] * p.mass[i + 1]);
    const double t = p.diag[i] / p.mass[i];
    lower = std::min(lower, t - r);
    upper = std::max(upper, t + r);
    max_diag = std::max(max_diag, std::abs(p.diag[i]));
  }
  lower -= 1.0;
  upper += 1.0;

  auto count = [&](double sigma, double width) {
    for (int nudge = 0; nudge < 8; ++nudge) {
      const int c = sturm_count(p, sigma);
      if (c >= 0) return c;
      sigma += 1e-3 * width;
    }
    throw std::runtime_error("fd::eigenvalues_near_zero: repeated singular pivots");
  };

  std::vector<EigenPair> pairs;
  for (int j = 1; j <= k; ++j) {
    double lo = lower, hi = upper;
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 1e-10 * std::max(std::abs(lo), std::abs(hi)) || mid <= lo || mid >= hi) break;
      if (count(mid, hi - lo) >= j)
        hi = mid;
      else
        lo = mid;
    }
    const double mu = 0.5 * (lo + hi);

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = 1.0 + 0.7 * p.x[i] / p.x.back() + 0.1 * std::sin(3.0 * static_cast<double>(i));
    const double pivmin = std::numeric_limits<double>::epsilon() * max_diag;
    for (int it = 0; it < 4; ++it) {
      std::vector<double> sub(p.off), sup(p.off), shifted(n), rhs(n);
      for (std::size_t i = 0; i < n; ++i) {
        shifted[i] = p.diag[i] - mu * p.mass[i];
        rhs[i] = p.mass[i] * v[i];
      }
      v = solve_tridiagonal(std::move(sub), std::move(shifted), std::move(sup), std::move(rhs), pivmin);
      for (const auto& prev : pairs) {
        const double proj = m_inner(p, v, prev.vector);
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * prev.vector[i];
      }
      const double nrm = std::sqrt(m_inner(p, v, v));
      for (double& a : v) a /= nrm;
    }
    const auto big = std::max_element(v.begin(), v.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*big < 0.0)
      for (double& a : v) a = -a;
    pairs.push_back({mu, std::move(v)});
  }
  return pairs;
}

std::vector<double> negative_lambdas(const DiscreteModeProblem& p) {
  const int count = count_negative_mu(p);
  std::vector<double> lambdas;
  if (count == 0) return lambdas;
  for (const auto& pair : eigenvalues_near_zero(p, count)) lambdas.push_back(-pair.mu);
  std::sort(lambdas.begin(), lambdas.end());
  return lambdas;
}

double richardson(double value_coarse, double h_coarse, double value_fine, double h_fine) {
  const double c2 = h_coarse * h_coarse, f2 = h_fine * h_fine;
  return (c2 * value_fine - f2 * value_coarse) / (c2 - f2);
}

}  // namespace catenoid::fd
