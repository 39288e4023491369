#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotocool/config.hpp"

namespace rotocool::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kInfeasible = 2,
  kValidationFailed = 3,
};

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<OutputFormat> format;
  std::string axis;                 // sweep only
  std::vector<std::string> values;  // sweep only
};

// Each command reads the config, writes its files and returns an ExitCode.
// Progress goes to `log`, diagnostics to `err`.
int cmd_levels(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_plan(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_simulate(const CommandOptions& opts, std::ostream& log, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& log, std::ostream& err);

/// ROTOCOOL_OUT, then --out, then [output] dir, then the working directory.
std::filesystem::path resolve_output_dir(const CommandOptions& opts, const RunConfig& cfg);

}  // namespace rotocool::cli
