#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catenoid/cli.hpp"
#include "doctest.h"
#include "emit.hpp"

using namespace catenoid;
using namespace catenoid::cli;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig fast() {
  RunConfig c;
  c.n_scan = 64;
  c.oracle_n = 256;
  return c;
}

}  // namespace

TEST_CASE("parse_modes") {
  CHECK(parse_modes("0..5") == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(parse_modes("0,1,3") == std::vector<int>{0, 1, 3});
  CHECK(parse_modes("0..2,7") == std::vector<int>{0, 1, 2, 7});
  CHECK(parse_modes("3,1,1") == std::vector<int>{1, 3});
  CHECK(parse_modes("2") == std::vector<int>{2});
  for (const char* bad : {"", "a", "1..", "..3", "3..1", "-1", "1,,2", "1;2", "0..x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_modes(bad), std::invalid_argument);
  }
}

TEST_CASE("parse_format and config validation") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);

  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.step_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.n_scan = 31;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.oracle_n = 63;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.nullity_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = {};
  c.step_tol = 3e-12;
  c.flip_potential = true;
  const SolverSettings s = c.solver();
  CHECK(s.step_tol == 3e-12);
  CHECK(s.flip_potential);
}

TEST_CASE("constants command") {
  RunConfig c;
  const CommandOutput out = cmd_constants(c);
  CHECK(out.exit_code == 0);
  const auto j = Json::parse(out.text);
  CHECK(j["L"].get<double>() == doctest::Approx(1.19967864025773).epsilon(1e-12));
  CHECK(j["R"].get<double>() == doctest::Approx(j["L"].get<double>() * std::cosh(j["L"].get<double>())));
  CHECK(j["residual"].get<double>() <= 1e-12);
  CHECK(out.text.back() == '\n');

  c.root_tol = 1e-6;
  const auto loose = Json::parse(cmd_constants(c).text);
  CHECK(loose["residual"].get<double>() <= 1e-6);
  CHECK(std::abs(loose["L"].get<double>() - j["L"].get<double>()) <= 1e-6);

  c = {};
  c.format = Format::Csv;
  const auto rows = lines(cmd_constants(c).text);
  REQUIRE(rows.size() >= 3);
  CHECK(rows[0] == "quantity,value");
  CHECK(rows[1].rfind("L,", 0) == 0);
  CHECK(rows[2].rfind("R,", 0) == 0);
  CHECK(cmd_constants(c).text.find('\r') == std::string::npos);
}

TEST_CASE("index command") {
  RunConfig c = fast();
  const CommandOutput out = cmd_index(c);
  CHECK(out.exit_code == 0);
  const auto j = Json::parse(out.text);
  CHECK(j["index"] == 4);
  CHECK(j["nullity"] == 2);
  CHECK(j["records"].size() == 4);
  CHECK(j["oracle"]["counts_agree"] == true);
  CHECK(j["oracle"]["max_relative_difference"].get<double>() < 1e-6);
  CHECK(j["regression"]["pass"] == true);
  for (const auto& r : j["records"])
    CHECK(r["jacobi_eigenvalue"].get<double>() ==
          doctest::Approx(-std::pow(j["constants"]["R"].get<double>(), 2) * r["lambda_star"].get<double>()));

  c.skip_oracle = true;
  c.modes = {0, 1, 2, 3, 4, 5};
  const auto wide = Json::parse(cmd_index(c).text);
  CHECK(wide["index"] == 4);
  CHECK(wide["nullity"] == 2);
  CHECK_FALSE(wide.contains("oracle"));
  CHECK(wide["per_mode"].size() == 11);

  c.format = Format::Csv;
  c.modes = {0, 1};
  const auto rows = lines(cmd_index(c).text);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "m,parity,lambda_star,multiplicity,jacobi_eigenvalue,residual");
}

TEST_CASE("index command fails loudly with the potential sign flipped") {
  RunConfig c = fast();
  c.skip_oracle = true;
  c.flip_potential = true;
  const CommandOutput out = cmd_index(c);
  CHECK(out.exit_code != 0);
}

TEST_CASE("scan command") {
  RunConfig c;
  const auto j = Json::parse(cmd_scan(c, {0, Parity::Even, 0.01, 3.0, 100}).text);
  REQUIRE(j["rows"].size() == 100);
  CHECK(j["rows"][0]["lambda"].get<double>() == 0.01);
  CHECK(j["rows"][99]["lambda"].get<double>() == 3.0);
  int changes = 0;
  for (std::size_t k = 1; k < 100; ++k)
    if ((j["rows"][k]["mismatch"].get<double>() > 0) != (j["rows"][k - 1]["mismatch"].get<double>() > 0)) ++changes;
  CHECK(changes == 1);

  c.format = Format::Csv;
  const auto rows = lines(cmd_scan(c, {0, Parity::Even, 0.0, 3.0, 4}).text);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "lambda,mismatch,gammaL");
  CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "pole");

  CHECK_THROWS_AS(cmd_scan(c, {0, Parity::Even, 2.0, 1.0, 10}), std::domain_error);
  CHECK_THROWS(cmd_scan(c, {0, Parity::Even, -1.0, 1.0, 10}));
  CHECK_THROWS(cmd_scan(c, {0, Parity::Even, 0.0, 1.0, 1}));
}

TEST_CASE("eigenfunction command") {
  RunConfig c = fast();
  const auto j = Json::parse(cmd_eigenfunction(c, {0, Parity::Even, 0, 51}).text);
  CHECK(j["x"].size() == 51);
  CHECK(j["f"].size() == 51);
  CHECK(j["lambda_star"].get<double>() == doctest::Approx(1.31899284812055).epsilon(1e-9));
  CHECK(j["boundary_residual"].get<double>() < 1e-8);

  c.format = Format::Csv;
  const auto rows = lines(cmd_eigenfunction(c, {1, Parity::Odd, 0, 11}).text);
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "x,f");
  CHECK(rows[6] == "0,0");
  CHECK(rows.back().rfind("# m=1 parity=odd", 0) == 0);

  CHECK_THROWS_AS(cmd_eigenfunction(c, {1, Parity::Odd, 3, 11}), std::out_of_range);
  CHECK_THROWS_AS(cmd_eigenfunction(c, {2, Parity::Odd, 0, 11}), std::out_of_range);
  CHECK_THROWS(cmd_eigenfunction(c, {0, Parity::Even, 0, 10}));
}

TEST_CASE("verify command") {
  RunConfig c;
  const auto checks = run_verification(c);
  CHECK(checks.size() == 16);
  for (const auto& r : checks) {
    CAPTURE(r.name);
    CAPTURE(r.detail);
    CHECK(r.pass);
  }
  const CommandOutput a = cmd_verify(c);
  const CommandOutput b = cmd_verify(c);
  CHECK(a.exit_code == 0);
  CHECK(a.text == b.text);
  const auto j = Json::parse(a.text);
  CHECK(j["all_pass"] == true);
  CHECK(j["passed"] == 16);
  CHECK(j["failed"] == 0);
  CHECK(j["checks"][0].contains("name"));
  CHECK(j["checks"][0].contains("detail"));

  c.format = Format::Csv;
  const auto rows = lines(cmd_verify(c).text);
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == "name,pass,detail");
  for (const auto& r : rows) CHECK(std::count(r.begin(), r.end(), ',') == 2);
}

TEST_CASE("verify detects a flipped potential") {
  RunConfig c;
  c.flip_potential = true;
  const CommandOutput out = cmd_verify(c);
  CHECK(out.exit_code == 1);
  for (const auto& r : run_verification(c))
    if (r.name == "comparison.even_riccati" || r.name == "comparison.odd_mismatch") CHECK_FALSE(r.pass);
}

TEST_CASE("JSON writer") {
  Json j;
  j["x"] = 0.1;
  j["n"] = std::numeric_limits<double>::quiet_NaN();
  j["i"] = std::numeric_limits<double>::infinity();
  j["k"] = 3;
  j["s"] = "a\"b";
  const std::string text = dump_json(j);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("\"n\": null") != std::string::npos);
  CHECK(text.find("\"i\": null") != std::string::npos);
  CHECK(text.find("\"k\": 3") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(Json::parse(text)["s"] == "a\"b");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");

  CsvWriter w({"a", "b"});
  w.row({"1", "2"});
  CHECK(w.str() == "a,b\n1,2\n");
  CHECK_THROWS(w.row({"1"}));
}
