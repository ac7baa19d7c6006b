#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's solvers.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

/// Plain bisection for coth(L) = L on [1, 2] down to adjacent doubles.
inline double balance_length_bisection() {
  double lo = 1.0, hi = 2.0;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    (1.0 / std::tanh(mid) - mid > 0.0 ? lo : hi) = mid;
  }
}

struct Sample {
  double f;
  double df;
};

/// The four λ = 0 solutions, written out independently of the library.
inline Sample dilation(double x) {
  return {1.0 - x * std::tanh(x), -std::tanh(x) - x / (std::cosh(x) * std::cosh(x))};
}
inline Sample axial_translation(double x) {
  return {std::tanh(x), 1.0 / (std::cosh(x) * std::cosh(x))};
}
inline Sample orthogonal_translation(double x) {
  return {1.0 / std::cosh(x), -std::sinh(x) / (std::cosh(x) * std::cosh(x))};
}
inline Sample rotation(double x) {
  const double ch = std::cosh(x);
  return {std::sinh(x) + x / ch, ch + 1.0 / ch - x * std::sinh(x) / (ch * ch)};
}

/// Central second difference of a scalar function.
inline double second_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Observed order of a sequence of errors at spacings halving each level,
/// from a least-squares fit of log2(err) against level.
template <class Range>
double fitted_order(const Range& errors) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  double level = 0;
  for (double e : errors) {
    const double y = std::log2(e);
    sx += level;
    sy += y;
    sxx += level * level;
    sxy += level * y;
    n += 1;
    level += 1;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}


/// Robin mismatch f(L) − L f'(L) of the mode equation f'' = q f by classical
/// RK4 with a fixed number of steps, started from (1, 0) or (0, 1).
inline double rk4_mismatch(double L, int m, double lambda, bool even, int steps = 4000) {
  auto q = [&](double x) {
    const double ch = std::cosh(x);
    return m * m + lambda * ch * ch - 2.0 / (ch * ch);
  };
  double f = even ? 1.0 : 0.0, g = even ? 0.0 : 1.0;
  const double h = L / steps;
  for (int k = 0; k < steps; ++k) {
    const double x = k * h;
    const double k1f = g, k1g = q(x) * f;
    const double k2f = g + 0.5 * h * k1g, k2g = q(x + 0.5 * h) * (f + 0.5 * h * k1f);
    const double k3f = g + 0.5 * h * k2g, k3g = q(x + 0.5 * h) * (f + 0.5 * h * k2f);
    const double k4f = g + h * k3g, k4g = q(x + h) * (f + h * k3f);
    f += h / 6.0 * (k1f + 2 * k2f + 2 * k3f + k4f);
    g += h / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
  }
  return (f - L * g) / std::hypot(f, g);
}

/// Root of rk4_mismatch in λ on a sign-changing bracket, by bisection.
inline double rk4_eigenvalue(double L, int m, bool even, double lo, double hi) {
  double b_lo = rk4_mismatch(L, m, lo, even);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double b = rk4_mismatch(L, m, mid, even);
    if ((b > 0.0) == (b_lo > 0.0)) {
      lo = mid;
      b_lo = b;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
