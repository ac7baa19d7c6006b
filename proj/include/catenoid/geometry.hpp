#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace catenoid {

using Vec3 = std::array<double, 3>;

/// Defining constants of the critical catenoid.
///
/// `L` is the positive root of coth(L) = L, the half-length of the profile
/// coordinate interval. `R = L*cosh(L)` is the scale that places the
/// boundary circles on the unit sphere.
struct CatenoidConstants {
  double L = 0.0;
  double R = 0.0;
  double root_tol = 0.0;
};

/// Solves coth(L) = L by bisection on [1, 2] followed by Newton polishing.
/// Throws std::invalid_argument unless root_tol > 0.
CatenoidConstants solve_balance_length(double root_tol = 1e-12);

struct SurfacePoint {
  double theta = 0.0;  // reduced to [0, 2*pi)
  double x = 0.0;
  Vec3 position{};
};

/// Embedding (1/R)(x, cosh(x)cos(theta), cosh(x)sin(theta)).
/// Throws std::domain_error when |x| > L.
SurfacePoint parametrize(const CatenoidConstants& c, double theta, double x);

/// Coordinate tangents and the (unnormalized) normal d_x × d_theta.
struct SurfaceFrame {
  Vec3 d_x{};
  Vec3 d_theta{};
  Vec3 normal{};
};

SurfaceFrame surface_frame(const CatenoidConstants& c, double theta, double x);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// A real function sampled on the tensor grid
///   theta_j = 2*pi*j / n_theta,      j = 0 .. n_theta-1
///   x_i     = -L + 2*L*i / (n_x-1),  i = 0 .. n_x-1
/// stored row-major in theta (values[j*n_x + i]).
class GridFunction {
 public:
  GridFunction(const CatenoidConstants& c, std::size_t n_theta, std::size_t n_x);

  template <class F>
  static GridFunction sample(const CatenoidConstants& c, std::size_t n_theta,
                             std::size_t n_x, F&& f) {
    GridFunction g(c, n_theta, n_x);
    for (std::size_t j = 0; j < n_theta; ++j)
      for (std::size_t i = 0; i < n_x; ++i) g.at(j, i) = f(g.theta(j), g.x(i));
    return g;
  }

  std::size_t n_theta() const { return n_theta_; }
  std::size_t n_x() const { return n_x_; }
  double half_length() const { return L_; }
  double theta(std::size_t j) const;
  double x(std::size_t i) const;
  double d_theta() const;
  double d_x() const;

  double& at(std::size_t j, std::size_t i) { return values_[j * n_x_ + i]; }
  double at(std::size_t j, std::size_t i) const { return values_[j * n_x_ + i]; }

 private:
  std::size_t n_theta_;
  std::size_t n_x_;
  double L_;
  std::vector<double> values_;
};

/// Quadrature value of the second variation of area S(f, f) in the
/// conformal coordinates of the embedding:
///
///   S(f,f) = ∬ (f_x² + f_θ² − 2 sech²(x) f²) dx dθ
///            − (cosh(L)/R) ∮ f² dθ   on both circles x = ±L.
///
/// Derivatives are centered differences (second-order one-sided at x = ±L,
/// periodic in θ); integrals are composite trapezoid in both directions.
/// Throws std::invalid_argument for grids with fewer than 8 points in either
/// direction or a grid built for different constants.
double second_variation(const CatenoidConstants& c, const GridFunction& f);

}  // namespace catenoid
