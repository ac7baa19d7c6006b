// catenoid: Morse index and nullity of the critical catenoid by shooting,
// cross-checked against a finite-difference pencil.
//
//   catenoid constants
//   catenoid index [--modes 0..5] [--skip-oracle]
//   catenoid scan --m 0 --parity even --lambda-min 0.01 --lambda-max 3 --n 100
//   catenoid eigenfunction --m 1 --parity odd --which 0
//   catenoid verify --format json
//
// Every flag can also be set through CATENOID_<FLAG> (e.g. CATENOID_STEP_TOL);
// command-line values win.

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "catenoid/cli.hpp"

namespace {

using namespace catenoid;

struct Flags {
  cli::RunConfig config;
  std::string modes = "0,1";
  std::string format = "json";
  std::string out;

  int m = 0;
  std::string parity = "even";
  double lambda_min = 0.0;
  double lambda_max = 3.0;
  int n = 100;
  int which = 0;
  int samples = 201;
};

void add_common(CLI::App& app, Flags& f) {
  auto& c = f.config;
  app.add_option("--root-tol", c.root_tol, "residual tolerance for coth(L) = L")
      ->envname("CATENOID_ROOT_TOL")->capture_default_str();
  app.add_option("--step-tol", c.step_tol, "local error bound per integrator step")
      ->envname("CATENOID_STEP_TOL")->capture_default_str();
  app.add_option("--bisect-tol", c.bisect_tol, "final bracket width for eigenvalue bisection")
      ->envname("CATENOID_BISECT_TOL")->capture_default_str();
  app.add_option("--nullity-tol", c.nullity_tol, "relative Robin residual that counts as a kernel")
      ->envname("CATENOID_NULLITY_TOL")->capture_default_str();
  app.add_option("--n-scan", c.n_scan, "scan points per certified window")
      ->envname("CATENOID_N_SCAN")->capture_default_str();
  app.add_option("--oracle-n", c.oracle_n, "finite-difference grid (fine level)")
      ->envname("CATENOID_ORACLE_N")->capture_default_str();
  app.add_option("--modes", f.modes, "Fourier orders, e.g. 0..5 or 0,1,3")
      ->envname("CATENOID_MODES")->capture_default_str();
  app.add_option("--format", f.format, "json | csv")
      ->envname("CATENOID_FORMAT")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", f.out, "write to this file instead of stdout")->envname("CATENOID_OUT");
  app.add_flag("--skip-oracle", c.skip_oracle, "omit the finite-difference cross-check")
      ->envname("CATENOID_SKIP_ORACLE");
  app.add_flag("--potential-sign-flip", c.flip_potential)
      ->envname("CATENOID_POTENTIAL_SIGN_FLIP")->group("");
}

int emit(const Flags& f, const cli::CommandOutput& result) {
  if (f.out.empty()) {
    std::cout << result.text;
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + f.out + "'");
    file << result.text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morse index and nullity of the critical catenoid"};
  app.require_subcommand(1);
  Flags f;
  add_common(app, f);

  auto* constants = app.add_subcommand("constants", "L, R and the identities they satisfy");
  auto* index = app.add_subcommand("index", "Morse index, nullity and eigenvalue records");
  auto* scan = app.add_subcommand("scan", "Robin mismatch table over a lambda range");
  auto* eig = app.add_subcommand("eigenfunction", "normalized eigenfunction profile");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  for (auto* sub : {constants, index, scan, eig, verify}) sub->fallthrough();

  for (auto* sub : {scan, eig}) {
    sub->add_option("--m", f.m, "Fourier order")->capture_default_str();
    sub->add_option("--parity", f.parity, "even | odd")
        ->check(CLI::IsMember({"even", "odd"}, CLI::ignore_case))->capture_default_str();
  }
  scan->add_option("--lambda-min", f.lambda_min)->capture_default_str();
  scan->add_option("--lambda-max", f.lambda_max)->capture_default_str();
  scan->add_option("--n", f.n, "number of grid points")->capture_default_str();
  eig->add_option("--which", f.which, "record index within the mode (ascending lambda)")
      ->capture_default_str();
  eig->add_option("--samples", f.samples, "odd number of samples on [-L, L]")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    f.config.modes = cli::parse_modes(f.modes);
    f.config.format = cli::parse_format(f.format);
    if (!f.out.empty()) f.config.output_path = f.out;

    if (*constants) return emit(f, cli::cmd_constants(f.config));
    if (*index) return emit(f, cli::cmd_index(f.config));
    if (*verify) return emit(f, cli::cmd_verify(f.config));
    if (*scan)
      return emit(f, cli::cmd_scan(f.config, {f.m, parse_parity(f.parity), f.lambda_min,
                                              f.lambda_max, f.n}));
    if (*eig)
      return emit(f, cli::cmd_eigenfunction(f.config, {f.m, parse_parity(f.parity), f.which,
                                                       f.samples}));
  } catch (const std::exception& e) {
    std::cerr << "catenoid: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
