#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catenoid/geometry.hpp"
#include "catenoid/mode_ode.hpp"

namespace catenoid {

struct SolverSettings {
  double step_tol = 1e-12;
  double bisect_tol = 1e-12;
  // λ = 0 is a Robin eigenvalue when |B(0)| <= nullity_tol * scale
  double nullity_tol = 1e-8;
  int n_scan = 256;
  bool flip_potential = false;

  ShootOptions shoot_options() const;
};

/// Robin boundary mismatch B(λ) = f(L) − L f'(L) of a shot. Its sign and
/// zeros are scale-free; `scale` is |(f(L), f'(L))|_2 at the same scale.
struct Mismatch {
  double value = 0.0;
  double scale = 1.0;
  int scale_exponent = 0;

  double relative() const { return value / scale; }
};

Mismatch robin_mismatch(const CatenoidConstants& c, const ModeProblem& p,
                        const ShootOptions& opts = {});

struct EigenvalueRecord {
  int m = 0;
  Parity parity = Parity::Even;
  double lambda_star = 0.0;
  int multiplicity = 1;  // 2 for the pair ±m when m >= 1
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;  // |B(λ*)| / scale

  /// Eigenvalue of the Jacobi operator in the geometric normalization of
  /// the embedded surface, −R²λ*.
  double jacobi_eigenvalue(const CatenoidConstants& c) const { return -c.R * c.R * lambda_star; }
};

struct ModeSearch {
  std::vector<EigenvalueRecord> records;  // sorted by lambda_star
  int sign_changes = 0;
  std::vector<std::string> diagnostics;
};

/// Number of positive Robin eigenvalues expected in the certified window
/// (0, 3 − m²]: one for (0, Even), (0, Odd), (1, Even); none otherwise.
int predicted_sign_changes(int m, Parity parity);

/// Scans B on the uniform grid λ_k = k·lambda_max/n_scan, k = 1..n_scan,
/// bisects every sign change (B(0) joins the scan unless it is a λ = 0
/// root), and reports a λ = 0 record when |B(0)| <= nullity_tol·scale.
/// A non-positive lambda_max leaves only the λ = 0 test.
ModeSearch find_eigenvalues_in_mode(const CatenoidConstants& c, int m, Parity parity,
                                    double lambda_max, const SolverSettings& s);

struct ModeCount {
  int m = 0;  // signed Fourier order
  int negative = 0;
  int zero = 0;
};

struct SpectrumReport {
  int index = 0;
  int nullity = 0;
  std::vector<EigenvalueRecord> records;
  std::vector<ModeCount> per_mode;  // m = 0, +1, −1, +2, −2, ...
  CatenoidConstants constants;
  SolverSettings settings;
  std::vector<std::string> diagnostics;
};

/// Assembles index and nullity over the given nonnegative Fourier orders.
/// Orders with m² >= 3 have an empty search window.
SpectrumReport morse_index(const CatenoidConstants& c, const SolverSettings& s,
                           const std::vector<int>& modes = {0, 1});

int nullity(const CatenoidConstants& c, const SolverSettings& s);

struct PhiSample {
  double lambda = 0.0;
  std::optional<double> gamma_L;  // f'(L)/f(L); empty marks a pole of γ at L
  double mismatch = 0.0;          // relative B(λ)
};

std::vector<PhiSample> phi_scan(const CatenoidConstants& c, int m, Parity parity,
                                const std::vector<double>& lambda_grid,
                                const SolverSettings& s = {});

struct EigenProfile {
  int m = 0;
  Parity parity = Parity::Even;
  double lambda_star = 0.0;
  std::vector<double> x;
  std::vector<double> f;
  std::vector<double> df;
  double boundary_residual = 0.0;  // |f(L) − L f'(L)| / |(f(L), f'(L))|
};

/// Re-shoots at record.lambda_star on the uniform grid of n_samples points
/// over [−L, L] (n_samples odd, >= 3), extends by parity and normalizes so
/// that ∫ f² cosh²(x) dx = 1 (composite Simpson).
EigenProfile eigenfunction(const CatenoidConstants& c, const EigenvalueRecord& record,
                           int n_samples, const SolverSettings& s = {});

}  // namespace catenoid
