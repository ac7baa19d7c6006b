#include "catenoid/mode_ode.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "catenoid/ode.hpp"

namespace catenoid {

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parse_parity(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "even") return Parity::Even;
  if (lower == "odd") return Parity::Odd;
  throw std::invalid_argument("unknown parity '" + std::string(s) + "' (expected even|odd)");
}

double potential_q(int m, double lambda, double x) {
  const double ch = std::cosh(x);
  return static_cast<double>(m) * m + lambda * ch * ch - 2.0 / (ch * ch);
}

namespace {

ode::State<2> initial_data(Parity parity) {
  return parity == Parity::Even ? ode::State<2>{1.0, 0.0} : ode::State<2>{0.0, 1.0};
}

struct LinearRhs {
  int m;
  double lambda;
  double sign;
  void operator()(double x, const ode::State<2>& y, ode::State<2>& dy) const {
    dy[0] = y[1];
    dy[1] = sign * potential_q(m, lambda, x) * y[0];
  }
};

void check_trace_points(const std::vector<double>& xs, double lo, double hi) {
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw std::invalid_argument("trace abscissae must be strictly increasing");
  if (!xs.empty() && (xs.front() < lo || xs.back() > hi))
    throw std::invalid_argument("trace abscissae outside the integration interval");
}

}  // namespace

ShotResult shoot(const CatenoidConstants& c, const ModeProblem& p, const ShootOptions& opts) {
  if (!(opts.step_tol > 0.0)) throw std::invalid_argument("shoot: step_tol must be positive");
  if (!(opts.renorm_threshold > 1.0)) throw std::invalid_argument("shoot: renorm_threshold must exceed 1");
  check_trace_points(opts.trace_x, 0.0, c.L);

  const LinearRhs rhs{p.m, p.lambda, opts.flip_potential ? -1.0 : 1.0};
  ShotResult result;
  result.trace.reserve(opts.trace_x.size());

  ode::AdaptiveSettings settings;
  settings.tol = opts.step_tol;
  settings.h_initial = c.L / 64.0;

  auto observe = [&](double x, ode::State<2>& y, std::optional<std::size_t> stop) {
    const double big = std::max(std::abs(y[0]), std::abs(y[1]));
    if (big > opts.renorm_threshold) {
      const int e = std::ilogb(big);
      y[0] = std::ldexp(y[0], -e);
      y[1] = std::ldexp(y[1], -e);
      for (auto& t : result.trace) {
        t.f = std::ldexp(t.f, -e);
        t.df = std::ldexp(t.df, -e);
      }
      ++result.scale_exponent;
    }
    if (stop) result.trace.push_back({x, y[0], y[1]});
    return true;
  };

  const auto out = ode::integrate_adaptive<2>(rhs, 0.0, initial_data(p.parity), c.L, settings,
                                              opts.trace_x, observe);
  if (out.status != ode::Status::Completed)
    throw std::runtime_error("shoot: integration did not reach x = L");
  result.fL = out.y[0];
  result.dfL = out.y[1];
  return result;
}

ShotResult shoot(const CatenoidConstants& c, const ModeProblem& p, double step_tol) {
  ShootOptions opts;
  opts.step_tol = step_tol;
  return shoot(c, p, opts);
}

ShotResult shoot_fixed(const CatenoidConstants& c, const ModeProblem& p, int n_steps) {
  const LinearRhs rhs{p.m, p.lambda, 1.0};
  const auto y = ode::integrate_fixed<2>(rhs, 0.0, initial_data(p.parity), c.L, n_steps);
  return {y[0], y[1], 0, {}};
}

RiccatiShot riccati_shoot(const CatenoidConstants& c, const ModeProblem& p, double x_start,
                          double gamma_start, const RiccatiOptions& opts) {
  if (!(x_start >= 0.0 && x_start < c.L))
    throw std::invalid_argument("riccati_shoot: x_start must lie in [0, L)");
  if (!(opts.step_tol > 0.0)) throw std::invalid_argument("riccati_shoot: step_tol must be positive");
  check_trace_points(opts.trace_x, x_start, c.L);

  const double sign = opts.flip_potential ? -1.0 : 1.0;
  auto rhs = [&](double x, const ode::State<1>& y, ode::State<1>& dy) {
    dy[0] = sign * potential_q(p.m, p.lambda, x) - y[0] * y[0];
  };

  RiccatiShot shot;
  ode::AdaptiveSettings settings;
  settings.tol = opts.step_tol;
  settings.abs_floor = 1.0;
  settings.h_initial = (c.L - x_start) / 64.0;

  bool diverged = false;
  auto observe = [&](double x, ode::State<1>& y, std::optional<std::size_t> stop) {
    if (!(y[0] >= -opts.pole_threshold)) {
      diverged = true;
      return false;
    }
    if (stop) shot.trace.push_back({x, y[0]});
    return true;
  };

  const auto out = ode::integrate_adaptive<1>(rhs, x_start, ode::State<1>{gamma_start}, c.L,
                                              settings, opts.trace_x, observe);
  if (diverged || out.status == ode::Status::StepUnderflow)
    shot.end = PoleDetected{out.x};
  else
    shot.end = out.y[0];
  return shot;
}

RiccatiShot riccati_shoot(const CatenoidConstants& c, const ModeProblem& p, double x_start,
                          double gamma_start, double step_tol) {
  RiccatiOptions opts;
  opts.step_tol = step_tol;
  return riccati_shoot(c, p, x_start, gamma_start, opts);
}

std::string_view ZeroMode::label() const {
  if (m == 0)
    return parity == Parity::Even ? "dilatations centred on the origin"
                                  : "translations along the x-axis";
  return parity == Parity::Even ? "translations orthogonal to the x-axis"
                                : "rotations about axes orthogonal to the x-axis";
}

TracePoint ZeroMode::operator()(double x) const {
  const double th = std::tanh(x), ch = std::cosh(x), sech = 1.0 / ch;
  if (m == 0) {
    if (parity == Parity::Even) return {x, 1.0 - x * th, -th - x * sech * sech};
    return {x, th, sech * sech};
  }
  if (parity == Parity::Even) return {x, sech, -sech * th};
  return {x, std::sinh(x) + x * sech, ch + sech - x * sech * th};
}

ZeroMode analytic_zero_mode(int m, Parity parity) {
  if (m != 0 && m != 1) throw std::invalid_argument("analytic_zero_mode: m must be 0 or 1");
  return {m, parity};
}

std::array<double, 2> foliation_field(double lambda, double x, double y) {
  return {1.0, potential_q(0, lambda, x) - y * y};
}

}  // namespace catenoid
