#pragma once

// Output helpers shared by the subcommands. Every float is written with 17
// significant digits so identical runs produce byte-identical files.

#include <string>
#include <vector>

#include "json.hpp"

namespace catenoid::cli {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

/// Pretty-printed JSON (two-space indent, LF, trailing newline). Non-finite
/// floats are written as null.
std::string dump_json(const Json& j);

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);

  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

 private:
  std::size_t columns_;
  std::string out_;
};

}  // namespace catenoid::cli
