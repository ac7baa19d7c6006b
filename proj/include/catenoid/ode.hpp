#pragma once

// Explicit Dormand–Prince 5(4) integrator for small fixed-size systems.
//
// The adaptive driver advances the 5th-order solution (local extrapolation)
// and controls the embedded 4th-order error estimate. The fixed-step driver
// uses the same 5th-order formula and exists for convergence-order checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>

namespace catenoid::ode {

template <std::size_t N>
using State = std::array<double, N>;

enum class Status { Completed, Stopped, StepUnderflow };

template <std::size_t N>
struct Outcome {
  Status status = Status::Completed;
  double x = 0.0;
  State<N> y{};
  int accepted = 0;
  int rejected = 0;
};

struct AdaptiveSettings {
  double tol = 1e-12;
  // error scale per step is tol * max(abs_floor, |y|_inf, |y_new|_inf)
  double abs_floor = 0.0;
  double h_initial = 0.0;  // 0 selects (x1 - x0) / 64
  double h_min_rel = 1e-14;
  int max_steps = 1'000'000;
};

namespace detail {

struct Tableau {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b* (5th minus embedded 4th order weights)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <std::size_t N>
double inf_norm(const State<N>& v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

}  // namespace detail

/// One Dormand–Prince step of size h from (x, y). Writes the 5th-order
/// solution to y_out and the local error estimate to err.
template <std::size_t N, class Rhs>
void dopri_step(const Rhs& rhs, double x, const State<N>& y, double h, State<N>& y_out,
                State<N>& err) {
  using T = detail::Tableau;
  State<N> k1, k2, k3, k4, k5, k6, k7, tmp;
  rhs(x, y, k1);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * T::a21 * k1[i];
  rhs(x + T::c2 * h, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
  rhs(x + T::c3 * h, tmp, k3);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
  rhs(x + T::c4 * h, tmp, k4);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
  rhs(x + T::c5 * h, tmp, k5);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] + T::a64 * k4[i] +
                         T::a65 * k5[i]);
  rhs(x + h, tmp, k6);
  for (std::size_t i = 0; i < N; ++i)
    y_out[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] + T::b5 * k5[i] +
                           T::b6 * k6[i]);
  rhs(x + h, y_out, k7);
  for (std::size_t i = 0; i < N; ++i)
    err[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                  T::e7 * k7[i]);
}

/// Fixed-step integration with n_steps equal steps.
template <std::size_t N, class Rhs>
State<N> integrate_fixed(const Rhs& rhs, double x0, State<N> y, double x1, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("integrate_fixed: n_steps must be positive");
  const double h = (x1 - x0) / n_steps;
  State<N> next, err;
  for (int k = 0; k < n_steps; ++k) {
    dopri_step<N>(rhs, x0 + k * h, y, h, next, err);
    y = next;
  }
  return y;
}

/// Adaptive integration from x0 to x1 (x1 >= x0).
///
/// `stops` is a sorted list of abscissae in [x0, x1] the driver lands on
/// exactly. After every accepted step the observer is called as
/// `observe(x, y, stop_index)` where stop_index is set when x is a requested
/// stop. The observer may rescale y in place; returning false ends the
/// integration with Status::Stopped.
template <std::size_t N, class Rhs, class Observer>
Outcome<N> integrate_adaptive(const Rhs& rhs, double x0, State<N> y, double x1,
                              const AdaptiveSettings& s, std::span<const double> stops,
                              Observer&& observe) {
  if (!(x1 >= x0)) throw std::invalid_argument("integrate_adaptive: x1 < x0");
  if (!(s.tol > 0.0)) throw std::invalid_argument("integrate_adaptive: tol must be positive");

  Outcome<N> out;
  double x = x0;
  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= x0) {
    if (stops[next_stop] == x0 && !observe(x, y, std::optional<std::size_t>(next_stop))) {
      out.status = Status::Stopped;
      out.x = x;
      out.y = y;
      return out;
    }
    ++next_stop;
  }

  double h = s.h_initial > 0.0 ? s.h_initial : (x1 - x0) / 64.0;
  State<N> y_new, err;
  while (x < x1) {
    if (out.accepted + out.rejected >= s.max_steps) {
      out.status = Status::StepUnderflow;
      break;
    }
    const double target = next_stop < stops.size() ? std::min(stops[next_stop], x1) : x1;
    bool lands = false;
    double step = h;
    if (x + step >= target) {
      step = target - x;
      lands = true;
    }
    if (step < s.h_min_rel * std::max(1.0, std::abs(x))) {
      if (!lands) {
        out.status = Status::StepUnderflow;
        break;
      }
    }

    dopri_step<N>(rhs, x, y, step, y_new, err);
    const double scale =
        s.tol * std::max({s.abs_floor, detail::inf_norm<N>(y), detail::inf_norm<N>(y_new)});
    double ratio = detail::inf_norm<N>(err) / scale;
    if (!std::isfinite(ratio)) ratio = 1e10;

    if (ratio <= 1.0) {
      ++out.accepted;
      x = lands ? target : x + step;
      y = y_new;
      std::optional<std::size_t> stop_index;
      if (lands && next_stop < stops.size() && stops[next_stop] == target) {
        stop_index = next_stop;
        ++next_stop;
      }
      const double grow = ratio > 0.0 ? 0.9 * std::pow(ratio, -0.2) : 5.0;
      // do not let a short landing step shrink the working step size
      if (!lands || step >= h) h = step * std::clamp(grow, 0.2, 5.0);
      if (!observe(x, y, stop_index)) {
        out.status = Status::Stopped;
        break;
      }
    } else {
      ++out.rejected;
      h = step * std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9);
      if (h < s.h_min_rel * std::max(1.0, std::abs(x))) {
        out.status = Status::StepUnderflow;
        break;
      }
    }
  }
  out.x = x;
  out.y = y;
  return out;
}

}  // namespace catenoid::ode
