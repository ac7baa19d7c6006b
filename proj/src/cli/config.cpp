#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <stdexcept>
#include <string>

#include "catenoid/cli.hpp"

namespace catenoid::cli {

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (expected json|csv)");
}

namespace {

int parse_order(std::string_view token, std::string_view whole) {
  int v = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (token.empty() || ec != std::errc{} || ptr != end || v < 0)
    throw std::invalid_argument("malformed mode list '" + std::string(whole) + "'");
  return v;
}

}  // namespace

std::vector<int> parse_modes(std::string_view s) {
  std::set<int> orders;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    const std::string_view item = s.substr(start, comma - start);
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      orders.insert(parse_order(item, s));
    } else {
      const int lo = parse_order(item.substr(0, dots), s);
      const int hi = parse_order(item.substr(dots + 2), s);
      if (hi < lo) throw std::invalid_argument("empty mode range '" + std::string(item) + "'");
      for (int m = lo; m <= hi; ++m) orders.insert(m);
    }
    start = comma + 1;
  }
  return {orders.begin(), orders.end()};
}

void RunConfig::validate() const {
  for (double t : {root_tol, step_tol, bisect_tol, nullity_tol})
    if (!(t > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (n_scan < 32) throw std::invalid_argument("n_scan must be >= 32");
  if (oracle_n < 64) throw std::invalid_argument("oracle_n must be >= 64");
  if (modes.empty()) throw std::invalid_argument("mode list is empty");
}

SolverSettings RunConfig::solver() const {
  SolverSettings s;
  s.step_tol = step_tol;
  s.bisect_tol = bisect_tol;
  s.nullity_tol = nullity_tol;
  s.n_scan = n_scan;
  s.flip_potential = flip_potential;
  return s;
}

}  // namespace catenoid::cli
