#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rotocool/dynamics.hpp"
#include "rotocool/io.hpp"
#include "rotocool/planner.hpp"
#include "rotocool/spectroscopy.hpp"

namespace rotocool::cli {

namespace {

namespace fs = std::filesystem;

struct Failure {
  int code;
  std::string message;
};

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kConfigError, "cannot read config file " + path.string()};
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw Failure{kConfigError, path.string() + ": " + e.what()};
  }
}

OutputFormat output_format(const CommandOptions& opts, const RunConfig& cfg) {
  return opts.format.value_or(cfg.format);
}

void write_file(const fs::path& path, const std::string& contents, std::ostream& log) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kConfigError, "cannot write " + path.string()};
  out << contents;
  if (!out) throw Failure{kConfigError, "write failed for " + path.string()};
  log << "wrote " << path.string() << '\n';
}

fs::path prepare_output_dir(const CommandOptions& opts, const RunConfig& cfg) {
  const fs::path dir = resolve_output_dir(opts, cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kConfigError, "cannot create output directory " + dir.string()};
  return dir;
}

CoolingPlan make_plan(const RunConfig& cfg) {
  PlanOptions options;
  options.stage_cycles = cfg.simulate.stage_cycles;
  try {
    return build_plan(cfg.species, cfg.plan.scheme, cfg.plan.jmax_x2, resolve_cavities(cfg), options);
  } catch (const InfeasibleTransition& e) {
    throw Failure{kInfeasible, std::string("infeasible: ") + e.what()};
  }
}

ValidationReport validate(const RunConfig& cfg, const CoolingPlan& plan) {
  return validate_plan(plan, cfg.plan.efield_max_v_per_m, cfg.simulate.temperature_k);
}

void report_checks(const ValidationReport& report, std::ostream& err) {
  for (const auto& check : report.checks) {
    if (check.status == CheckStatus::pass) continue;
    err << to_string(check.status) << ": " << check.name;
    if (check.step_index) err << " (step " << *check.step_index << ")";
    err << ": " << check.detail << '\n';
  }
}

PopulationState initial_population(const RunConfig& cfg) {
  if (cfg.simulate.initial == "thermal") {
    return thermal_state(cfg.species, cfg.simulate.temperature_k, cfg.plan.jmax_x2);
  }
  const RoState target = io::parse_state_label(cfg.simulate.initial, cfg.species.twoOmega);
  return PopulationState::delta(enumerate_states(cfg.species, cfg.plan.jmax_x2), target);
}

SimOptions sim_options(const RunConfig& cfg) {
  SimOptions opts;
  opts.nbar_mode = cfg.simulate.nbar;
  opts.temperature = cfg.simulate.temperature_k;
  opts.include_offresonant = cfg.simulate.include_offresonant;
  opts.record_interior_points = cfg.simulate.record_interior_points;
  return opts;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Failure& f) {
    err << "rotocool: " << f.message << '\n';
    return f.code;
  } catch (const io::FormatError& e) {
    err << "rotocool: " << e.what() << '\n';
    return kConfigError;
  }
}

struct SweepRow {
  std::string value;
  int exit_code = kOk;
  std::string status = "ok";
  std::size_t steps = 0;
  double total_time = 0.0;
  double ground_fraction = 0.0;
  double max_field = 0.0;
  std::string message;
};

void apply_axis(RunConfig& cfg, const std::string& axis, const std::string& text) {
  double value = 0.0;
  std::size_t used = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(value)) {
    throw Failure{kConfigError, "sweep value '" + text + "' is not a number"};
  }
  if (axis == "q_factor") {
    if (value <= 0.0) throw Failure{kConfigError, "q_factor must be positive"};
    cfg.cavity.q_factor = value;
  } else if (axis == "temperature_k") {
    if (value <= 0.0) throw Failure{kConfigError, "temperature_k must be positive"};
    cfg.simulate.temperature_k = value;
  } else {
    if (value != std::floor(value)) throw Failure{kConfigError, "jmax_x2 must be an integer"};
    const int jmax = static_cast<int>(value);
    if ((jmax - cfg.species.twoOmega) % 2 != 0 || jmax < cfg.species.twoOmega + 2) {
      throw Failure{kConfigError, "jmax_x2=" + text + " does not fit omega_x2=" +
                                      std::to_string(cfg.species.twoOmega)};
    }
    cfg.plan.jmax_x2 = jmax;
    if (cfg.simulate.initial != "thermal") {
      const RoState s = io::parse_state_label(cfg.simulate.initial, cfg.species.twoOmega);
      if (s.twoJ > jmax) throw Failure{kConfigError, "initial state above jmax_x2=" + text};
    }
  }
}

SweepRow sweep_point(RunConfig cfg, const std::string& axis, const std::string& value) {
  SweepRow row;
  row.value = value;
  try {
    apply_axis(cfg, axis, value);
    const CoolingPlan plan = make_plan(cfg);
    const ValidationReport report = validate(cfg, plan);
    const SimulationResult result = simulate(plan, initial_population(cfg), sim_options(cfg));
    row.steps = plan.steps.size();
    row.total_time = result.total_time;
    row.ground_fraction = result.ground_fraction;
    for (const auto& step : plan.steps) row.max_field = std::max(row.max_field, step.e_field);
    if (!report.passed()) {
      row.exit_code = kValidationFailed;
      row.status = "validation_failed";
    } else if (report.worst() == CheckStatus::warn) {
      row.status = "warn";
    }
  } catch (const Failure& f) {
    row.exit_code = f.code;
    row.status = f.code == kInfeasible ? "infeasible" : "config_error";
    row.message = f.message;
  }
  return row;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(17) << v;
  return os.str();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

fs::path resolve_output_dir(const CommandOptions& opts, const RunConfig& cfg) {
  if (const char* env = std::getenv("ROTOCOOL_OUT"); env && *env) return env;
  if (opts.out) return *opts.out;
  if (cfg.output_dir) return *cfg.output_dir;
  return ".";
}

int cmd_levels(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(opts.config);
    const PopulationState thermal =
        thermal_state(cfg.species, cfg.simulate.temperature_k, cfg.plan.jmax_x2);
    const fs::path dir = prepare_output_dir(opts, cfg);
    if (output_format(opts, cfg) == OutputFormat::json) {
      write_file(dir / "levels.json", io::levels_json(cfg.species, thermal) + "\n", log);
    } else {
      std::ostringstream os;
      io::write_levels_csv(os, cfg.species, thermal);
      write_file(dir / "levels.csv", os.str(), log);
    }
    return int{kOk};
  });
}

int cmd_plan(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(opts.config);
    const CoolingPlan plan = make_plan(cfg);
    const ValidationReport report = validate(cfg, plan);
    const fs::path dir = prepare_output_dir(opts, cfg);
    if (output_format(opts, cfg) == OutputFormat::json) {
      write_file(dir / "plan.json", io::plan_json(plan) + "\n", log);
    } else {
      std::ostringstream os;
      io::write_plan_csv(os, plan);
      write_file(dir / "plan.csv", os.str(), log);
    }
    write_file(dir / "plan_summary.json", io::plan_summary_json(plan, report) + "\n", log);
    report_checks(report, err);
    return report.passed() ? int{kOk} : int{kValidationFailed};
  });
}

int cmd_simulate(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(opts.config);
    const CoolingPlan plan = make_plan(cfg);
    const ValidationReport report = validate(cfg, plan);
    const SimulationResult result = simulate(plan, initial_population(cfg), sim_options(cfg));
    const fs::path dir = prepare_output_dir(opts, cfg);
    if (output_format(opts, cfg) == OutputFormat::json) {
      write_file(dir / "timeline.json", io::timeline_json(result) + "\n", log);
    } else {
      std::ostringstream os;
      io::write_timeline_csv(os, result);
      write_file(dir / "timeline.csv", os.str(), log);
    }
    write_file(dir / "simulation_summary.json",
               io::simulation_summary_json(plan, result, report) + "\n", log);
    report_checks(report, err);
    return report.passed() ? int{kOk} : int{kValidationFailed};
  });
}

int cmd_sweep(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.axis != "q_factor" && opts.axis != "temperature_k" && opts.axis != "jmax_x2") {
      throw Failure{kConfigError,
                    "unknown sweep axis '" + opts.axis + "' (q_factor, temperature_k, jmax_x2)"};
    }
    if (opts.values.empty()) throw Failure{kConfigError, "sweep needs at least one value"};
    const RunConfig cfg = load_config(opts.config);

    std::vector<std::future<SweepRow>> pending;
    pending.reserve(opts.values.size());
    for (const auto& value : opts.values) {
      pending.push_back(std::async(std::launch::async, sweep_point, cfg, opts.axis, value));
    }
    std::vector<SweepRow> rows;
    for (auto& f : pending) rows.push_back(f.get());

    for (const auto& row : rows) {
      if (row.status == "config_error") throw Failure{kConfigError, row.message};
    }

    const fs::path dir = prepare_output_dir(opts, cfg);
    if (output_format(opts, cfg) == OutputFormat::json) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& row : rows) {
        out.push_back({{"axis", opts.axis},
                       {"value", row.value},
                       {"status", row.status},
                       {"exit_code", row.exit_code},
                       {"steps", row.steps},
                       {"total_time_s", row.total_time},
                       {"ground_fraction", row.ground_fraction},
                       {"max_e_field_v_per_m", row.max_field},
                       {"message", row.message}});
      }
      write_file(dir / "sweep.json", out.dump(2) + "\n", log);
    } else {
      std::ostringstream os;
      os << "axis,value,status,exit_code,steps,total_time_s,ground_fraction,max_e_field_v_per_m,"
            "message\n";
      for (const auto& row : rows) {
        os << opts.axis << ',' << row.value << ',' << row.status << ',' << row.exit_code << ','
           << row.steps << ',' << sci(row.total_time) << ',' << sci(row.ground_fraction) << ','
           << sci(row.max_field) << ',' << csv_escape(row.message) << '\n';
      }
      write_file(dir / "sweep.csv", os.str(), log);
    }
    for (const auto& row : rows) {
      if (row.exit_code != kOk) err << "sweep " << opts.axis << "=" << row.value << ": " << row.status << '\n';
    }
    return int{kOk};
  });
}

}  // namespace rotocool::cli
