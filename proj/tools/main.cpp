#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace rotocool;

  CLI::App app{"rotocool: cavity-assisted rotational cooling planner and simulator"};
  app.require_subcommand(1);

  cli::CommandOptions opts;
  std::string format;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "Run configuration (TOML)")->required();
    sub->add_option("--out", opts.out, "Output directory (ROTOCOOL_OUT overrides)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* levels = app.add_subcommand("levels", "Write the level table with thermal weights");
  auto* plan = app.add_subcommand("plan", "Build and validate a tuning plan");
  auto* simulate = app.add_subcommand("simulate", "Run the rate-equation simulation");
  auto* sweep = app.add_subcommand("sweep", "Repeat plan and simulation over one parameter");
  for (auto* sub : {levels, plan, simulate, sweep}) add_common(sub);
  sweep->add_option("--axis", opts.axis, "q_factor, temperature_k or jmax_x2")->required();
  sweep->add_option("--values", opts.values, "Comma-separated values")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : cli::kConfigError;
  }

  if (format == "csv") opts.format = OutputFormat::csv;
  if (format == "json") opts.format = OutputFormat::json;
  std::erase_if(opts.values, [](const std::string& v) { return v.empty(); });

  if (*levels) return cli::cmd_levels(opts, std::cout, std::cerr);
  if (*plan) return cli::cmd_plan(opts, std::cout, std::cerr);
  if (*simulate) return cli::cmd_simulate(opts, std::cout, std::cerr);
  return cli::cmd_sweep(opts, std::cout, std::cerr);
}
