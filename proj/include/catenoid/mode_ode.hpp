#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "catenoid/geometry.hpp"

namespace catenoid {

enum class Parity { Even, Odd };

std::string_view to_string(Parity p);
/// Accepts "even"/"odd" (case-insensitive); throws std::invalid_argument otherwise.
Parity parse_parity(std::string_view s);

/// One Fourier-mode boundary-value problem
///   f'' = (m² + λ cosh²(x) − 2/cosh²(x)) f   on [−L, L]
/// restricted to one parity class. Modes ±m share a problem.
struct ModeProblem {
  int m = 0;
  double lambda = 0.0;
  Parity parity = Parity::Even;
};

double potential_q(int m, double lambda, double x);

struct TracePoint {
  double x = 0.0;
  double f = 0.0;
  double df = 0.0;
};

/// Terminal data of a shot, defined up to a positive factor.
struct ShotResult {
  double fL = 0.0;
  double dfL = 0.0;
  int scale_exponent = 0;  // number of positive renormalizations applied
  std::vector<TracePoint> trace;
};

struct ShootOptions {
  double step_tol = 1e-12;
  // (f, f') is divided by a power of two whenever max(|f|,|f'|) exceeds this
  double renorm_threshold = 1e150;
  // sorted abscissae in [0, L] at which to record (x, f, f'); all samples
  // share the final scale of (fL, dfL)
  std::vector<double> trace_x;
  // fault-injection hook: integrate with −q instead of q
  bool flip_potential = false;
};

/// Integrates (f, f')' = (f', q f) on [0, L] from parity data at x = 0:
/// f(0)=1, f'(0)=0 (Even) or f(0)=0, f'(0)=1 (Odd).
ShotResult shoot(const CatenoidConstants& c, const ModeProblem& p, const ShootOptions& opts);
ShotResult shoot(const CatenoidConstants& c, const ModeProblem& p, double step_tol);

/// Same initial data and scheme as shoot() but with n_steps equal steps and
/// no renormalization. Used for convergence-order checks.
ShotResult shoot_fixed(const CatenoidConstants& c, const ModeProblem& p, int n_steps);

struct PoleDetected {
  double x_pole = 0.0;
};

struct RiccatiPoint {
  double x = 0.0;
  double gamma = 0.0;
};

struct RiccatiShot {
  std::variant<double, PoleDetected> end;  // γ(L) or the detected pole
  std::vector<RiccatiPoint> trace;         // samples reached before any pole

  bool pole() const { return std::holds_alternative<PoleDetected>(end); }
  double gamma_end() const { return std::get<double>(end); }
  double x_pole() const { return std::get<PoleDetected>(end).x_pole; }
};

struct RiccatiOptions {
  double step_tol = 1e-12;
  double pole_threshold = 1e8;
  std::vector<double> trace_x;  // sorted, in [x_start, L]
  bool flip_potential = false;
};

/// Integrates γ' = q(x) − γ² from (x_start, gamma_start) to L. γ can only
/// blow up towards −∞; γ < −pole_threshold or a step-size underflow is
/// reported as PoleDetected. Throws std::invalid_argument unless
/// 0 <= x_start < L.
RiccatiShot riccati_shoot(const CatenoidConstants& c, const ModeProblem& p, double x_start,
                          double gamma_start, const RiccatiOptions& opts);
RiccatiShot riccati_shoot(const CatenoidConstants& c, const ModeProblem& p, double x_start,
                          double gamma_start, double step_tol);

/// Closed-form λ = 0 solutions of the m = 0 and m = 1 problems. Each is the
/// normal component of an ambient Killing field or of the dilation field.
struct ZeroMode {
  int m = 0;
  Parity parity = Parity::Even;

  std::string_view label() const;
  /// (f(x), f'(x))
  TracePoint operator()(double x) const;
};

/// Throws std::invalid_argument for m outside {0, 1}.
ZeroMode analytic_zero_mode(int m, Parity parity);

/// X_λ(x, y) = (1, λ cosh²(x) − 2/cosh²(x) − y²), the direction field whose
/// integral curves are the graphs of m = 0 Riccati solutions.
std::array<double, 2> foliation_field(double lambda, double x, double y);

}  // namespace catenoid
