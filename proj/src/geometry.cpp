#include "catenoid/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catenoid {

namespace {

double balance_residual(double L) { return 1.0 / std::tanh(L) - L; }

// d/dL (coth L − L) = −csch² L − 1
double balance_slope(double L) {
  const double s = std::sinh(L);
  return -1.0 / (s * s) - 1.0;
}

}  // namespace

CatenoidConstants solve_balance_length(double root_tol) {
  if (!(root_tol > 0.0)) throw std::invalid_argument("solve_balance_length: root_tol must be positive");

  // g(1) > 0 > g(2) and g is strictly decreasing.
  double lo = 1.0, hi = 2.0;
  double L = 0.5 * (lo + hi);
  for (double g = balance_residual(L); std::abs(g) > root_tol && hi - lo > 1e-3; g = balance_residual(L)) {
    (g > 0.0 ? lo : hi) = L;
    L = 0.5 * (lo + hi);
  }

  for (int it = 0; it < 50; ++it) {
    const double g = balance_residual(L);
    if (std::abs(g) <= root_tol) break;
    double next = L - g / balance_slope(L);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    (g > 0.0 ? lo : hi) = L;
    if (next == L) break;
    L = next;
  }

  return {L, L * std::cosh(L), root_tol};
}

SurfacePoint parametrize(const CatenoidConstants& c, double theta, double x) {
  if (!(std::abs(x) <= c.L)) throw std::domain_error("parametrize: x outside [-L, L]");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  const double ch = std::cosh(x);
  return {t, x, {x / c.R, ch * std::cos(theta) / c.R, ch * std::sin(theta) / c.R}};
}

SurfaceFrame surface_frame(const CatenoidConstants& c, double theta, double x) {
  const double ch = std::cosh(x), sh = std::sinh(x);
  const double ct = std::cos(theta), st = std::sin(theta);
  SurfaceFrame fr;
  fr.d_x = {1.0 / c.R, sh * ct / c.R, sh * st / c.R};
  fr.d_theta = {0.0, -ch * st / c.R, ch * ct / c.R};
  fr.normal = cross(fr.d_x, fr.d_theta);
  return fr;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

GridFunction::GridFunction(const CatenoidConstants& c, std::size_t n_theta, std::size_t n_x)
    : n_theta_(n_theta), n_x_(n_x), L_(c.L), values_(n_theta * n_x, 0.0) {
  if (n_theta < 8 || n_x < 8)
    throw std::invalid_argument("GridFunction: need at least 8 points in each direction");
}

double GridFunction::theta(std::size_t j) const { return static_cast<double>(j) * d_theta(); }
double GridFunction::x(std::size_t i) const { return -L_ + static_cast<double>(i) * d_x(); }
double GridFunction::d_theta() const { return 2.0 * std::numbers::pi / static_cast<double>(n_theta_); }
double GridFunction::d_x() const { return 2.0 * L_ / static_cast<double>(n_x_ - 1); }

double second_variation(const CatenoidConstants& c, const GridFunction& f) {
  const std::size_t nt = f.n_theta(), nx = f.n_x();
  if (nt < 8 || nx < 8) throw std::invalid_argument("second_variation: grid too coarse");
  if (f.half_length() != c.L) throw std::invalid_argument("second_variation: grid built for other constants");

  const double ht = f.d_theta(), hx = f.d_x();

  double interior = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    const std::size_t jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
    for (std::size_t i = 0; i < nx; ++i) {
      double fx;
      if (i == 0)
        fx = (-3.0 * f.at(j, 0) + 4.0 * f.at(j, 1) - f.at(j, 2)) / (2.0 * hx);
      else if (i == nx - 1)
        fx = (3.0 * f.at(j, nx - 1) - 4.0 * f.at(j, nx - 2) + f.at(j, nx - 3)) / (2.0 * hx);
      else
        fx = (f.at(j, i + 1) - f.at(j, i - 1)) / (2.0 * hx);
      const double ft = (f.at(jp, i) - f.at(jm, i)) / (2.0 * ht);
      const double sech = 1.0 / std::cosh(f.x(i));
      const double v = f.at(j, i);
      const double density = fx * fx + ft * ft - 2.0 * sech * sech * v * v;
      const double w = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
      interior += w * density;
    }
  }
  interior *= hx * ht;

  double boundary = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    const double a = f.at(j, 0), b = f.at(j, nx - 1);
    boundary += a * a + b * b;
  }
  boundary *= ht * std::cosh(c.L) / c.R;

  return interior - boundary;
}

}  // namespace catenoid
