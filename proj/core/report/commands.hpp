#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "runner.hpp"

namespace anholkit::report {

struct CommandOptions {
  int jobs = 1;
  double tolerance_scale = 1.0;
  std::optional<std::uint64_t> seed;
  bool timing = true;
  std::string format = "json";  // json or csv
};

// What the CLI writes and the process exit code.
struct CommandOutput {
  int code = 0;
  std::string body;
  std::vector<std::string> log;  // informational lines for the caller's logger
};

// analyze: 0 all checks pass, 1 a check failed (report still in body), 2 parse or validation error.
CommandOutput analyze_command(const std::string& scenario_text, const CommandOptions& opts = {});
// grid: 0 on success, 2 on validation errors (axis mismatch, unknown column).
CommandOutput grid_command(const std::string& scenario_text, const CommandOptions& opts = {});

// One row per check.
std::string checks_csv(const Report& r);

}  // namespace anholkit::report
