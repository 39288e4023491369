#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "rotocool/dynamics.hpp"
#include "rotocool/planner.hpp"
#include "rotocool/species.hpp"

namespace rotocool {

/// Config problem, anchored to a line of the input when one applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message);
  int line() const { return line_; }  // 0 when not tied to a line

 private:
  int line_;
};

// Minimal TOML reader: [section] headers, bare keys, and scalar values
// (basic strings, integers, floats, booleans). Comments start with '#'.
namespace toml {

struct Value {
  std::variant<std::string, long long, double, bool> data;
  int line = 0;
};

using Table = std::map<std::string, Value>;
using Document = std::map<std::string, Table>;  // keys outside a section land in ""

Document parse(std::string_view text);

}  // namespace toml

enum class CavityMode { A, B, manual };
enum class OutputFormat { csv, json };

struct CavitySection {
  std::optional<CavityMode> mode;  // unset: derived from the scheme
  int s = 1;
  double q_factor = 1e6;
  std::optional<double> lambda_m;
};

struct PlanSection {
  Scheme scheme = Scheme::pi_only;
  int jmax_x2 = 0;
  std::optional<double> efield_max_v_per_m;
};

struct SimulateSection {
  double temperature_k = 1.0;
  NbarMode nbar = NbarMode::zero;
  double stage_cycles = 4.0;
  bool include_offresonant = false;
  int record_interior_points = 0;
  std::string initial = "thermal";  // or a state label such as "J10M0"
};

struct RunConfig {
  MolecularSpecies species;
  CavitySection cavity;
  PlanSection plan;
  SimulateSection simulate;
  std::optional<std::string> output_dir;
  OutputFormat format = OutputFormat::csv;
};

/// Parses and validates a run configuration. Unknown keys, missing required
/// keys, type mismatches and cross-field inconsistencies raise ConfigError.
RunConfig parse_config(std::string_view text);

/// Cavities for the configured scheme and mode.
std::vector<CavityConfig> resolve_cavities(const RunConfig& cfg);

}  // namespace rotocool
