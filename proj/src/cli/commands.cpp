#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "catenoid/cli.hpp"
#include "catenoid/fd_oracle.hpp"
#include "emit.hpp"

namespace catenoid::cli {

namespace {

constexpr int kExpectedIndex = 4;
constexpr int kExpectedNullity = 2;

Json constants_json(const CatenoidConstants& c) {
  return Json{{"L", c.L}, {"R", c.R}, {"root_tol", c.root_tol}};
}

Json settings_json(const RunConfig& config) {
  return Json{{"root_tol", config.root_tol},       {"step_tol", config.step_tol},
              {"bisect_tol", config.bisect_tol},   {"nullity_tol", config.nullity_tol},
              {"n_scan", config.n_scan},           {"oracle_n", config.oracle_n},
              {"modes", config.modes}};
}

struct OracleSummary {
  Json json;
  bool counts_agree = true;
  double max_relative_difference = 0.0;
};

OracleSummary oracle_cross_check(const CatenoidConstants& c, const SpectrumReport& report,
                                 const RunConfig& config) {
  const int n_fine = config.oracle_n;
  const int n_coarse = std::max(64, n_fine / 2);
  OracleSummary out;
  Json modes = Json::array();
  for (int m : config.modes) {
    const auto pc = fd::assemble(c, m, n_coarse), pf = fd::assemble(c, m, n_fine);
    const auto lc = fd::negative_lambdas(pc), lf = fd::negative_lambdas(pf);
    std::vector<double> shooting;
    for (const auto& r : report.records)
      if (r.m == m && r.lambda_star > config.nullity_tol) shooting.push_back(r.lambda_star);
    std::sort(shooting.begin(), shooting.end());

    Json entry{{"m", m}, {"count_coarse", lc.size()}, {"count_fine", lf.size()},
               {"count_shooting", shooting.size()}};
    Json extrapolated = Json::array(), rel = Json::array();
    const bool agree = lc.size() == lf.size() && lf.size() == shooting.size();
    out.counts_agree = out.counts_agree && agree;
    for (std::size_t i = 0; i < lf.size() && i < lc.size(); ++i) {
      const double ext = n_coarse == n_fine ? lf[i] : fd::richardson(lc[i], pc.h, lf[i], pf.h);
      extrapolated.push_back(ext);
      if (agree) {
        const double d = std::abs(ext - shooting[i]) / std::abs(shooting[i]);
        rel.push_back(d);
        out.max_relative_difference = std::max(out.max_relative_difference, d);
      }
    }
    entry["lambda_coarse"] = lc;
    entry["lambda_fine"] = lf;
    entry["lambda_extrapolated"] = extrapolated;
    entry["relative_difference"] = rel;
    modes.push_back(entry);
  }
  out.json = Json{{"n_coarse", n_coarse},
                  {"n_fine", n_fine},
                  {"modes", modes},
                  {"counts_agree", out.counts_agree},
                  {"max_relative_difference", out.max_relative_difference}};
  return out;
}

}  // namespace

CommandOutput cmd_constants(const RunConfig& config) {
  config.validate();
  const CatenoidConstants c = solve_balance_length(config.root_tol);
  const double residual = std::abs(1.0 / std::tanh(c.L) - c.L);
  const double tanh_identity = std::abs(c.L * std::tanh(c.L) - 1.0);
  const double ch = std::cosh(c.L);
  const double sphere_identity = std::abs(c.L * c.L * ch * ch - (c.L * c.L + ch * ch)) / (c.R * c.R);
  double sphere = 0.0;
  for (int k = 0; k < 32; ++k)
    for (double x : {-c.L, c.L})
      sphere = std::max(
          sphere, std::abs(norm(parametrize(c, 2.0 * std::numbers::pi * k / 32, x).position) - 1.0));

  CommandOutput out;
  if (config.format == Format::Csv) {
    CsvWriter csv({"quantity", "value"});
    csv.row({"L", format_double(c.L)});
    csv.row({"R", format_double(c.R)});
    csv.row({"residual", format_double(residual)});
    csv.row({"root_tol", format_double(c.root_tol)});
    csv.row({"tanh_identity_residual", format_double(tanh_identity)});
    csv.row({"sphere_identity_residual", format_double(sphere_identity)});
    csv.row({"boundary_sphere_max_deviation", format_double(sphere)});
    out.text = csv.str();
  } else {
    out.text = dump_json(Json{{"L", c.L},
                              {"R", c.R},
                              {"residual", residual},
                              {"root_tol", c.root_tol},
                              {"tanh_identity_residual", tanh_identity},
                              {"sphere_identity_residual", sphere_identity},
                              {"boundary_sphere_max_deviation", sphere}});
  }
  return out;
}

CommandOutput cmd_index(const RunConfig& config) {
  config.validate();
  const CatenoidConstants c = solve_balance_length(config.root_tol);
  const SpectrumReport report = morse_index(c, config.solver(), config.modes);
  const bool regression = report.index == kExpectedIndex && report.nullity == kExpectedNullity;

  CommandOutput out;
  out.exit_code = regression ? 0 : 1;

  std::optional<OracleSummary> oracle;
  if (!config.skip_oracle) oracle = oracle_cross_check(c, report, config);

  if (config.format == Format::Csv) {
    CsvWriter csv({"m", "parity", "lambda_star", "multiplicity", "jacobi_eigenvalue", "residual"});
    for (const auto& r : report.records)
      csv.row({std::to_string(r.m), std::string(to_string(r.parity)), format_double(r.lambda_star),
               std::to_string(r.multiplicity), format_double(r.jacobi_eigenvalue(c)),
               format_double(r.residual)});
    out.text = csv.str();
    return out;
  }

  Json per_mode = Json::array();
  for (const auto& pm : report.per_mode)
    per_mode.push_back(Json{{"m", pm.m}, {"negative", pm.negative}, {"zero", pm.zero}});
  Json records = Json::array();
  for (const auto& r : report.records)
    records.push_back(Json{{"m", r.m},
                           {"parity", std::string(to_string(r.parity))},
                           {"lambda_star", r.lambda_star},
                           {"multiplicity", r.multiplicity},
                           {"bracket", Json::array({r.bracket.first, r.bracket.second})},
                           {"residual", r.residual},
                           {"jacobi_eigenvalue", r.jacobi_eigenvalue(c)}});

  Json j;
  j["index"] = report.index;
  j["nullity"] = report.nullity;
  j["constants"] = constants_json(c);
  j["settings"] = settings_json(config);
  j["per_mode"] = per_mode;
  j["records"] = records;
  j["jacobi_eigenvalue_convention"] = "-R^2 * lambda_star (geometric scale of the embedded surface)";
  if (oracle) j["oracle"] = oracle->json;
  j["diagnostics"] = report.diagnostics;
  j["regression"] = Json{{"expected_index", kExpectedIndex},
                         {"expected_nullity", kExpectedNullity},
                         {"pass", regression}};
  out.text = dump_json(j);
  return out;
}

CommandOutput cmd_scan(const RunConfig& config, const ScanRequest& request) {
  config.validate();
  if (!(request.lambda_min >= 0.0 && request.lambda_min < request.lambda_max))
    throw std::domain_error("scan: need 0 <= lambda_min < lambda_max");
  if (request.n < 2) throw std::domain_error("scan: need at least 2 grid points");
  if (request.m < 0) throw std::domain_error("scan: m must be >= 0");

  const CatenoidConstants c = solve_balance_length(config.root_tol);
  std::vector<double> grid;
  for (int k = 0; k < request.n; ++k)
    grid.push_back(k + 1 == request.n
                       ? request.lambda_max
                       : request.lambda_min + (request.lambda_max - request.lambda_min) * k / (request.n - 1));
  const auto table = phi_scan(c, request.m, request.parity, grid, config.solver());

  CommandOutput out;
  if (config.format == Format::Csv) {
    CsvWriter csv({"lambda", "mismatch", "gammaL"});
    for (const auto& row : table)
      csv.row({format_double(row.lambda), format_double(row.mismatch),
               row.gamma_L ? format_double(*row.gamma_L) : "pole"});
    out.text = csv.str();
    return out;
  }
  Json rows = Json::array();
  for (const auto& row : table)
    rows.push_back(Json{{"lambda", row.lambda},
                        {"mismatch", row.mismatch},
                        {"gammaL", row.gamma_L ? Json(*row.gamma_L) : Json(nullptr)}});
  out.text = dump_json(Json{{"m", request.m},
                            {"parity", std::string(to_string(request.parity))},
                            {"rows", rows}});
  return out;
}

CommandOutput cmd_eigenfunction(const RunConfig& config, const EigenfunctionRequest& request) {
  config.validate();
  if (request.m < 0) throw std::domain_error("eigenfunction: m must be >= 0");
  const CatenoidConstants c = solve_balance_length(config.root_tol);
  const SolverSettings settings = config.solver();
  const ModeSearch search = find_eigenvalues_in_mode(
      c, request.m, request.parity, 3.0 - static_cast<double>(request.m) * request.m, settings);
  if (request.which < 0 || static_cast<std::size_t>(request.which) >= search.records.size())
    throw std::out_of_range("eigenfunction: no eigenvalue #" + std::to_string(request.which) +
                            " for m=" + std::to_string(request.m) + " " +
                            std::string(to_string(request.parity)) + " (found " +
                            std::to_string(search.records.size()) + ")");
  const EigenvalueRecord& record = search.records[static_cast<std::size_t>(request.which)];
  const EigenProfile prof = eigenfunction(c, record, request.samples, settings);

  CommandOutput out;
  if (config.format == Format::Csv) {
    CsvWriter csv({"x", "f"});
    for (std::size_t i = 0; i < prof.x.size(); ++i)
      csv.row({format_double(prof.x[i]), format_double(prof.f[i])});
    out.text = csv.str() + "# m=" + std::to_string(prof.m) +
               " parity=" + std::string(to_string(prof.parity)) +
               " lambda_star=" + format_double(prof.lambda_star) +
               " boundary_residual=" + format_double(prof.boundary_residual) + "\n";
    return out;
  }
  out.text = dump_json(Json{{"m", prof.m},
                            {"parity", std::string(to_string(prof.parity))},
                            {"which", request.which},
                            {"lambda_star", prof.lambda_star},
                            {"multiplicity", record.multiplicity},
                            {"boundary_residual", prof.boundary_residual},
                            {"x", prof.x},
                            {"f", prof.f}});
  return out;
}

}  // namespace catenoid::cli
