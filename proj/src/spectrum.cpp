#include "catenoid/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <string>

namespace catenoid {

ShootOptions SolverSettings::shoot_options() const {
  ShootOptions o;
  o.step_tol = step_tol;
  o.flip_potential = flip_potential;
  return o;
}

Mismatch robin_mismatch(const CatenoidConstants& c, const ModeProblem& p, const ShootOptions& opts) {
  if (!(p.lambda >= 0.0)) throw std::invalid_argument("robin_mismatch: lambda must be >= 0");
  const ShotResult shot = shoot(c, p, opts);
  return {shot.fL - c.L * shot.dfL, std::hypot(shot.fL, shot.dfL), shot.scale_exponent};
}

int predicted_sign_changes(int m, Parity parity) {
  if (m == 0) return 1;
  if (m == 1) return parity == Parity::Even ? 1 : 0;
  return 0;
}

namespace {

int multiplicity_of(int m) { return m == 0 ? 1 : 2; }

std::string mode_name(int m, Parity parity) {
  return "m=" + std::to_string(m) + " " + std::string(to_string(parity));
}

struct Bisection {
  double lambda_star;
  double lo, hi;
};

// B changes sign on [lo, hi]; shrink to bisect_tol then take one
// regula-falsi step inside the final bracket.
Bisection bisect_mismatch(const CatenoidConstants& c, int m, Parity parity, double lo, double b_lo,
                          double hi, double b_hi, const SolverSettings& s) {
  const ShootOptions opts = s.shoot_options();
  for (int it = 0; it < 200 && hi - lo > s.bisect_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double b_mid = robin_mismatch(c, {m, mid, parity}, opts).relative();
    if (b_mid == 0.0) return {mid, lo, hi};
    if ((b_mid > 0.0) == (b_lo > 0.0)) {
      lo = mid;
      b_lo = b_mid;
    } else {
      hi = mid;
      b_hi = b_mid;
    }
  }
  double star = lo - b_lo * (hi - lo) / (b_hi - b_lo);
  if (!(star >= lo && star <= hi)) star = 0.5 * (lo + hi);
  return {star, lo, hi};
}

}  // namespace

ModeSearch find_eigenvalues_in_mode(const CatenoidConstants& c, int m, Parity parity,
                                    double lambda_max, const SolverSettings& s) {
  if (m < 0) throw std::invalid_argument("find_eigenvalues_in_mode: m must be >= 0");
  if (s.n_scan < 32) throw std::invalid_argument("find_eigenvalues_in_mode: n_scan must be >= 32");
  if (!(s.bisect_tol > 0.0) || !(s.nullity_tol > 0.0))
    throw std::invalid_argument("find_eigenvalues_in_mode: tolerances must be positive");

  const ShootOptions opts = s.shoot_options();
  const int mult = multiplicity_of(m);
  ModeSearch out;

  const Mismatch b0 = robin_mismatch(c, {m, 0.0, parity}, opts);
  const bool zero_root = std::abs(b0.relative()) <= s.nullity_tol;
  if (zero_root) {
    EigenvalueRecord r{m, parity, 0.0, mult, {0.0, 0.0}, std::abs(b0.relative())};
    out.records.push_back(r);
  }

  if (lambda_max > 0.0) {
    // a λ = 0 root carries no usable sign for the first scan interval
    double prev_lambda = 0.0;
    double prev_b = zero_root ? 0.0 : b0.relative();
    bool have_prev = !zero_root;
    for (int k = 1; k <= s.n_scan; ++k) {
      const double lam = k == s.n_scan ? lambda_max : lambda_max * k / s.n_scan;
      const double b = robin_mismatch(c, {m, lam, parity}, opts).relative();
      if (have_prev && ((b > 0.0) != (prev_b > 0.0) || b == 0.0)) {
        ++out.sign_changes;
        Bisection root = b == 0.0 ? Bisection{lam, lam, lam}
                                  : bisect_mismatch(c, m, parity, prev_lambda, prev_b, lam, b, s);
        const double residual =
            std::abs(robin_mismatch(c, {m, root.lambda_star, parity}, opts).relative());
        out.records.push_back({m, parity, root.lambda_star, mult, {root.lo, root.hi}, residual});
        if (residual > 10.0 * s.bisect_tol)
          out.diagnostics.push_back(mode_name(m, parity) + ": residual " + std::to_string(residual) +
                                    " at lambda* exceeds 10*bisect_tol");
        if (b == 0.0) {
          have_prev = false;
          prev_lambda = lam;
          continue;
        }
      }
      prev_lambda = lam;
      prev_b = b;
      have_prev = true;
    }
  }

  std::sort(out.records.begin(), out.records.end(),
            [](const auto& a, const auto& b) { return a.lambda_star < b.lambda_star; });

  const int expected = predicted_sign_changes(m, parity);
  if (lambda_max >= 3.0 - static_cast<double>(m) * m && out.sign_changes != expected)
    out.diagnostics.push_back(mode_name(m, parity) + ": found " + std::to_string(out.sign_changes) +
                              " sign changes of the Robin mismatch, expected " +
                              std::to_string(expected));
  return out;
}

SpectrumReport morse_index(const CatenoidConstants& c, const SolverSettings& s,
                           const std::vector<int>& modes) {
  std::set<int> orders;
  for (int m : modes) {
    if (m < 0) throw std::invalid_argument("morse_index: mode orders must be >= 0");
    orders.insert(m);
  }

  SpectrumReport report;
  report.constants = c;
  report.settings = s;

  for (int m : orders) {
    ModeCount count{m, 0, 0};
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      ModeSearch search = find_eigenvalues_in_mode(c, m, parity, 3.0 - static_cast<double>(m) * m, s);
      for (const auto& d : search.diagnostics) report.diagnostics.push_back(d);
      for (const auto& r : search.records) {
        if (r.lambda_star > s.nullity_tol) {
          report.index += r.multiplicity;
          ++count.negative;
        } else {
          report.nullity += r.multiplicity;
          ++count.zero;
        }
        report.records.push_back(r);
      }
    }
    report.per_mode.push_back(count);
    if (m > 0) report.per_mode.push_back({-m, count.negative, count.zero});
  }
  return report;
}

int nullity(const CatenoidConstants& c, const SolverSettings& s) {
  // |m| >= 2 has no λ = 0 solution since m² >= 4 > 3
  int total = 0;
  for (int m : {0, 1})
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      const Mismatch b0 = robin_mismatch(c, {m, 0.0, parity}, s.shoot_options());
      if (std::abs(b0.relative()) <= s.nullity_tol) total += multiplicity_of(m);
    }
  return total;
}

std::vector<PhiSample> phi_scan(const CatenoidConstants& c, int m, Parity parity,
                                const std::vector<double>& lambda_grid, const SolverSettings& s) {
  constexpr double pole_ratio = 1e8;
  std::vector<PhiSample> table;
  table.reserve(lambda_grid.size());
  const ShootOptions opts = s.shoot_options();
  for (double lam : lambda_grid) {
    if (!(lam >= 0.0)) throw std::invalid_argument("phi_scan: lambda values must be >= 0");
    const ShotResult shot = shoot(c, {m, lam, parity}, opts);
    const double scale = std::hypot(shot.fL, shot.dfL);
    PhiSample row;
    row.lambda = lam;
    if (std::abs(shot.fL) * pole_ratio > scale) row.gamma_L = shot.dfL / shot.fL;
    row.mismatch = (shot.fL - c.L * shot.dfL) / scale;
    table.push_back(row);
  }
  return table;
}

EigenProfile eigenfunction(const CatenoidConstants& c, const EigenvalueRecord& record,
                           int n_samples, const SolverSettings& s) {
  if (n_samples < 3 || n_samples % 2 == 0)
    throw std::invalid_argument("eigenfunction: n_samples must be odd and >= 3");

  const int half = (n_samples - 1) / 2;
  ShootOptions opts = s.shoot_options();
  opts.trace_x.resize(static_cast<std::size_t>(half) + 1);
  for (int k = 0; k < half; ++k) opts.trace_x[k] = c.L * k / half;
  opts.trace_x[half] = c.L;

  const ShotResult shot = shoot(c, {record.m, record.lambda_star, record.parity}, opts);

  EigenProfile prof;
  prof.m = record.m;
  prof.parity = record.parity;
  prof.lambda_star = record.lambda_star;
  prof.x.resize(n_samples);
  prof.f.resize(n_samples);
  prof.df.resize(n_samples);
  const double f_sign = record.parity == Parity::Even ? 1.0 : -1.0;
  for (int k = 0; k <= half; ++k) {
    const TracePoint& t = shot.trace[k];
    prof.x[half + k] = t.x;
    prof.f[half + k] = t.f;
    prof.df[half + k] = t.df;
    if (k == 0) continue;
    prof.x[half - k] = -t.x;
    prof.f[half - k] = f_sign * t.f;
    prof.df[half - k] = -f_sign * t.df;
  }

  const double h = 2.0 * c.L / (n_samples - 1);
  double integral = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double w = (i == 0 || i == n_samples - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double ch = std::cosh(prof.x[i]);
    integral += w * prof.f[i] * prof.f[i] * ch * ch;
  }
  integral *= h / 3.0;
  const double scale = 1.0 / std::sqrt(integral);
  for (int i = 0; i < n_samples; ++i) {
    prof.f[i] *= scale;
    prof.df[i] *= scale;
  }

  const double fL = prof.f.back(), dfL = prof.df.back();
  prof.boundary_residual = std::abs(fL - c.L * dfL) / std::hypot(fL, dfL);
  return prof;
}

}  // namespace catenoid
