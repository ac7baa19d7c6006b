// Cross-module invariant suite behind `catenoid verify`.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "catenoid/cli.hpp"
#include "catenoid/fd_oracle.hpp"
#include "emit.hpp"

namespace catenoid::cli {

namespace {

using std::numbers::pi;

struct ModeKey {
  int m;
  Parity parity;
};

constexpr ModeKey kLowModes[] = {
    {0, Parity::Even}, {0, Parity::Odd}, {1, Parity::Even}, {1, Parity::Odd}};

std::string fmt_g(double v) { return format_double(v); }

std::string mode_tag(int m, Parity p) { return "m=" + std::to_string(m) + "/" + std::string(to_string(p)); }

// Max-norm error of an adaptive shot against the closed-form λ = 0 solution,
// relative to the largest |f| on the sample grid.
double zero_mode_error(const CatenoidConstants& c, int m, Parity parity, double step_tol) {
  ShootOptions opts;
  opts.step_tol = step_tol;
  constexpr int kSamples = 32;
  for (int k = 0; k <= kSamples; ++k) opts.trace_x.push_back(k == kSamples ? c.L : c.L * k / kSamples);
  const ShotResult shot = shoot(c, {m, 0.0, parity}, opts);

  const ZeroMode zm = analytic_zero_mode(m, parity);
  const TracePoint at0 = zm(0.0);
  const double alpha = parity == Parity::Even ? 1.0 / at0.f : 1.0 / at0.df;
  double err = 0.0, big = 0.0;
  for (const auto& t : shot.trace) {
    const TracePoint exact = zm(t.x);
    err = std::max({err, std::abs(t.f - alpha * exact.f), std::abs(t.df - alpha * exact.df)});
    big = std::max(big, std::abs(alpha * exact.f));
  }
  return err / big;
}

double fixed_step_error(const CatenoidConstants& c, int m, Parity parity, int n_steps) {
  const ShotResult shot = shoot_fixed(c, {m, 0.0, parity}, n_steps);
  const ZeroMode zm = analytic_zero_mode(m, parity);
  const TracePoint at0 = zm(0.0), atL = zm(c.L);
  const double alpha = parity == Parity::Even ? 1.0 / at0.f : 1.0 / at0.df;
  return std::max(std::abs(shot.fL - alpha * atL.f), std::abs(shot.dfL - alpha * atL.df));
}

struct ComparisonSample {
  int m;
  double lambda;
};

// m² + λ uniform in (3, 12] with λ >= 0.
std::vector<ComparisonSample> comparison_samples(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(0, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ComparisonSample> out;
  for (int i = 0; i < count; ++i) {
    const int m = pick_m(rng);
    const double lo = std::max(3.0, static_cast<double>(m * m)), hi = 12.0;
    const double s = hi - unit(rng) * (hi - lo);
    out.push_back({m, s - m * m});
  }
  return out;
}

std::vector<double> uniform_points(double a, double b, int n) {
  std::vector<double> xs;
  for (int k = 0; k <= n; ++k) xs.push_back(k == n ? b : a + (b - a) * k / n);
  return xs;
}

GridFunction lift(const CatenoidConstants& c, const EigenProfile& prof, int n_theta, bool use_sin) {
  GridFunction g(c, static_cast<std::size_t>(n_theta), prof.x.size());
  for (std::size_t j = 0; j < g.n_theta(); ++j) {
    const double t = g.theta(j);
    const double angular =
        prof.m == 0 ? 1.0 : (use_sin ? std::sin(prof.m * t) : std::cos(prof.m * t));
    for (std::size_t i = 0; i < g.n_x(); ++i) g.at(j, i) = angular * prof.f[i];
  }
  return g;
}

}  // namespace

std::vector<CheckResult> run_verification(const RunConfig& config) {
  config.validate();
  const CatenoidConstants c = solve_balance_length(config.root_tol);
  const SolverSettings settings = config.solver();
  std::vector<CheckResult> checks;
  auto add = [&](std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
  };

  {
    const double res = std::abs(1.0 / std::tanh(c.L) - c.L);
    add("constants.root_residual", res <= config.root_tol, "|coth(L)-L| = " + fmt_g(res));
    const double ident = std::abs(c.L * std::tanh(c.L) - 1.0);
    add("constants.tanh_identity", ident <= 4.0 * config.root_tol, "|L*tanh(L)-1| = " + fmt_g(ident));
  }

  {
    double sphere = 0.0, contact = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double theta = 2.0 * pi * k / 32;
      for (double x : {-c.L, c.L}) {
        const SurfacePoint pt = parametrize(c, theta, x);
        sphere = std::max(sphere, std::abs(norm(pt.position) - 1.0));
        contact = std::max(contact, std::abs(dot(pt.position, surface_frame(c, theta, x).normal)));
      }
    }
    add("geometry.boundary_on_sphere", sphere <= 1e-12, "max | |Phi(theta,+-L)| - 1 | = " + fmt_g(sphere));
    add("geometry.orthogonal_contact", contact <= 1e-10, "max |<Phi, Phi_x x Phi_theta>| = " + fmt_g(contact));
  }

  {
    double worst = 0.0;
    std::string detail;
    for (const auto& [m, parity] : kLowModes) {
      const double e = zero_mode_error(c, m, parity, config.step_tol);
      worst = std::max(worst, e);
      detail += (detail.empty() ? "" : "; ") + mode_tag(m, parity) + " err " + fmt_g(e);
    }
    add("mode_ode.zero_mode_oracles", worst <= 1e-8, detail);
  }

  {
    double min_order = 1e300;
    std::string detail;
    for (const auto& [m, parity] : kLowModes) {
      const double coarse = fixed_step_error(c, m, parity, 4);
      const double fine = fixed_step_error(c, m, parity, 8);
      const double order = std::log2(coarse / fine);
      min_order = std::min(min_order, order);
      detail += (detail.empty() ? "" : "; ") + mode_tag(m, parity) + " order " + fmt_g(order);
    }
    add("mode_ode.integrator_order", min_order >= 4.0, detail);
  }

  const auto samples = comparison_samples(50, 20160907);
  {
    int violations = 0;
    const auto xs = uniform_points(0.0, c.L, 20);
    for (const auto& s : samples) {
      RiccatiOptions opts;
      opts.step_tol = config.step_tol;
      opts.flip_potential = config.flip_potential;
      opts.trace_x.assign(xs.begin() + 1, xs.end());
      const RiccatiShot shot = riccati_shoot(c, {s.m, s.lambda, Parity::Even}, 0.0, 0.0, opts);
      bool ok = !shot.pole() && shot.gamma_end() > 1.0 / c.L &&
                shot.trace.size() == opts.trace_x.size();
      for (const auto& t : shot.trace) ok = ok && t.gamma > std::tanh(t.x);
      if (!ok) ++violations;
    }
    add("comparison.even_riccati", violations == 0,
        std::to_string(violations) + " violations in " + std::to_string(samples.size()) + " samples");
  }

  {
    int violations = 0;
    const auto xs = uniform_points(c.L / 10.0, c.L, 18);
    for (const auto& s : samples) {
      ShootOptions opts = settings.shoot_options();
      opts.trace_x = xs;
      const ShotResult shot = shoot(c, {s.m, s.lambda, Parity::Odd}, opts);
      bool ok = shot.fL - c.L * shot.dfL < 0.0;
      for (const auto& t : shot.trace) ok = ok && t.f > 0.0 && t.df / t.f > 1.0 / std::tanh(t.x);
      if (!ok) ++violations;
    }
    add("comparison.odd_mismatch", violations == 0,
        std::to_string(violations) + " violations in " + std::to_string(samples.size()) + " samples");
  }

  {
    int violations = 0;
    std::string detail;
    for (const auto& [m, parity] : kLowModes) {
      const double top = 3.0 - m * m;
      std::vector<double> grid;
      for (int k = 1; k <= 256; ++k) grid.push_back(top * k / 256);
      double prev = -1e300;
      int bad = 0;
      for (double lam : grid) {
        const ShotResult shot = shoot(c, {m, lam, parity}, settings.shoot_options());
        if (!(shot.fL > 0.0)) {
          ++bad;
          continue;
        }
        const double ratio = shot.dfL / shot.fL;
        if (!(ratio > prev)) ++bad;
        prev = ratio;
      }
      violations += bad;
      detail += (detail.empty() ? "" : "; ") + mode_tag(m, parity) + " " + std::to_string(bad);
    }
    add("spectrum.monotonicity", violations == 0, "violations " + detail);
  }

  const SpectrumReport report = morse_index(c, settings, {0, 1, 2, 3});
  {
    int m0 = 0, m1 = 0, higher = 0;
    for (const auto& r : report.records) {
      if (r.lambda_star <= settings.nullity_tol) continue;
      (r.m == 0 ? m0 : r.m == 1 ? m1 : higher) += 1;
    }
    const bool ok = m0 == 2 && m1 == 1 && higher == 0 && report.diagnostics.empty();
    add("spectrum.mode_counts", ok,
        "m=0: " + std::to_string(m0) + ", m=+-1: " + std::to_string(m1) + " each, |m|>=2: " +
            std::to_string(higher) + ", diagnostics: " + std::to_string(report.diagnostics.size()));
    add("spectrum.index", report.index == 4, "index = " + std::to_string(report.index));
  }

  {
    const int k = nullity(c, settings);
    const ZeroMode rot = analytic_zero_mode(1, Parity::Odd);
    const TracePoint g = rot(c.L);
    const double identity = std::abs(g.f - c.L * g.df) / std::hypot(g.f, g.df);
    add("spectrum.nullity", k == 2 && k == report.nullity && identity <= 1e-14,
        "nullity = " + std::to_string(k) + ", |g(L)-L*g'(L)|/scale = " + fmt_g(identity));
  }

  const int n_fine = config.oracle_n;
  const int n_coarse = std::max(64, n_fine / 2);
  {
    std::string detail;
    bool ok = true;
    for (int m : {0, 1, 2}) {
      const int count = fd::count_negative_mu(fd::assemble(c, m, n_fine));
      const int expected = m == 0 ? 2 : m == 1 ? 1 : 0;
      ok = ok && count == expected;
      detail += (detail.empty() ? "" : "; ") + ("m=" + std::to_string(m) + ": " + std::to_string(count));
    }
    add("fd_oracle.mode_counts", ok, "n = " + std::to_string(n_fine) + ", " + detail);
  }

  {
    double worst = 0.0;
    bool counts = true;
    for (int m : {0, 1}) {
      const auto pc = fd::assemble(c, m, n_coarse), pf = fd::assemble(c, m, n_fine);
      const auto lc = fd::negative_lambdas(pc), lf = fd::negative_lambdas(pf);
      std::vector<double> shooting;
      for (const auto& r : report.records)
        if (r.m == m && r.lambda_star > settings.nullity_tol) shooting.push_back(r.lambda_star);
      std::sort(shooting.begin(), shooting.end());
      if (lc.size() != shooting.size() || lf.size() != shooting.size()) {
        counts = false;
        continue;
      }
      for (std::size_t i = 0; i < shooting.size(); ++i) {
        const double ext = n_coarse == n_fine ? lf[i] : fd::richardson(lc[i], pc.h, lf[i], pf.h);
        worst = std::max(worst, std::abs(ext - shooting[i]) / std::abs(shooting[i]));
      }
    }
    add("fd_oracle.agreement", counts && worst <= 1e-6,
        "max relative difference " + fmt_g(worst) + " (n = " + std::to_string(n_coarse) + ", " +
            std::to_string(n_fine) + ")");
  }

  {
    constexpr int kThetas = 64, kSamples = 129;
    bool ok = true;
    std::string detail;
    for (const auto& r : report.records) {
      if (r.lambda_star <= settings.nullity_tol) continue;
      const EigenProfile prof = eigenfunction(c, r, kSamples, settings);
      const int lifts = r.m == 0 ? 1 : 2;
      for (int l = 0; l < lifts; ++l) {
        const double value = second_variation(c, lift(c, prof, kThetas, l == 1));
        ok = ok && value < 0.0;
        detail += (detail.empty() ? "" : "; ") + mode_tag(r.m, r.parity) + (l == 1 ? " sin" : "") +
                  " S = " + fmt_g(value);
      }
    }
    add("geometry.second_variation_negative", ok && !detail.empty(), detail);
  }

  {
    EigenvalueRecord rotation{1, Parity::Odd, 0.0, 2, {0.0, 0.0}, 0.0};
    bool ok = true;
    std::string detail;
    for (bool use_sin : {false, true}) {
      std::vector<double> values;
      for (int level = 0; level < 3; ++level) {
        const int scale = 1 << level;
        const EigenProfile prof = eigenfunction(c, rotation, 32 * scale + 1, settings);
        values.push_back(std::abs(second_variation(c, lift(c, prof, 32 * scale, use_sin))));
      }
      const double order = std::log2(values[1] / values[2]);
      ok = ok && values[1] < values[0] && values[2] < values[1] && order >= 2.0;
      detail += std::string(detail.empty() ? "" : "; ") + (use_sin ? "sin" : "cos") +
                " |S| = " + fmt_g(values[2]) + " order " + fmt_g(order);
    }
    add("geometry.null_field_convergence", ok, detail);
  }

  return checks;
}

CommandOutput cmd_verify(const RunConfig& config) {
  const auto checks = run_verification(config);
  const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& k) { return k.pass; });
  CommandOutput out;
  out.exit_code = all ? 0 : 1;
  if (config.format == Format::Csv) {
    CsvWriter csv({"name", "pass", "detail"});
    for (const auto& k : checks) {
      std::string detail = k.detail;
      std::replace(detail.begin(), detail.end(), ',', ';');
      csv.row({k.name, k.pass ? "true" : "false", detail});
    }
    out.text = csv.str();
    return out;
  }
  Json j;
  j["checks"] = Json::array();
  int passed = 0;
  for (const auto& k : checks) {
    j["checks"].push_back(Json{{"name", k.name}, {"pass", k.pass}, {"detail", k.detail}});
    passed += k.pass ? 1 : 0;
  }
  j["passed"] = passed;
  j["failed"] = static_cast<int>(checks.size()) - passed;
  j["all_pass"] = all;
  out.text = dump_json(j);
  return out;
}

}  // namespace catenoid::cli
