#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <string>
#include <vector>

#include "rotocool/dynamics.hpp"
#include "rotocool/planner.hpp"
#include "rotocool/population.hpp"
#include "rotocool/species.hpp"

namespace rotocool::io {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plan CSV: one row per step, first transition of the mirror pair.
void write_plan_csv(std::ostream& os, const CoolingPlan& plan);
/// Rebuilds the steps (mirror transitions included) from a plan CSV.
std::vector<TuningStep> read_plan_csv(std::istream& is, int twoOmega);

// Level table: two_j, two_m, energy_j, energy_cm, thermal_weight.
void write_levels_csv(std::ostream& os, const MolecularSpecies& species,
                      const PopulationState& thermal);

struct TimelineRow {
  std::size_t stage_index = 0;
  double time = 0.0;
  std::vector<double> weights;
};

// Timeline CSV: stage_index, time_s, then one J{2J}M{2M} column per state.
void write_timeline_csv(std::ostream& os, const SimulationResult& result);
/// Returns the states from the header (in column order) and the rows.
std::pair<std::vector<RoState>, std::vector<TimelineRow>> read_timeline_csv(std::istream& is,
                                                                            int twoOmega);

std::string plan_summary_json(const CoolingPlan& plan, const ValidationReport& report);
std::string simulation_summary_json(const CoolingPlan& plan, const SimulationResult& result,
                                    const ValidationReport& report);
std::string plan_json(const CoolingPlan& plan);
std::string levels_json(const MolecularSpecies& species, const PopulationState& thermal);
std::string timeline_json(const SimulationResult& result);

/// Parses a label such as "J10M-2" back into a state.
RoState parse_state_label(std::string_view label, int twoOmega);

}  // namespace rotocool::io
