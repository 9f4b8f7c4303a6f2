#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cdsort::cli {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
  std::optional<nlohmann::json> json;
};

// Exit codes: 0 success, 1 "not sortable", 2 usage, parse and engine errors.
inline constexpr int kExitNotSortable = 1;
inline constexpr int kExitError = 2;

// args excludes the program name. `serve` blocks until the server stops.
CommandResult run(const std::vector<std::string>& args);

}  // namespace cdsort::cli
