#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rotocool/planner.hpp"
#include "rotocool/population.hpp"
#include "rotocool/spectroscopy.hpp"

namespace rotocool {

enum class NbarMode { zero, planck };

struct SimOptions {
  NbarMode nbar_mode = NbarMode::zero;
  bool include_offresonant = false;
  double temperature = 0.0;  // K, used by planck mode
  int record_interior_points = 0;
  LineStrengthMode g_mode = LineStrengthMode::paper;  // for off-resonant channels
};

struct Snapshot {
  std::size_t stage_index = 0;  // 0 is the initial state, k the end of step k-1
  double time = 0.0;
  PopulationState population;
};

struct StageSummary {
  std::size_t step_index = 0;
  double upper_population = 0.0;  // left in the step's upper states at stage end
  std::optional<double> residual_fraction;  // end/start upper population
};

struct SimulationResult {
  std::vector<Snapshot> timeline;
  double total_time = 0.0;
  double ground_fraction = 0.0;
  std::vector<StageSummary> per_stage;
};

class StateSpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evolves one stage. The resonant pairs follow the closed-form two-level
/// rate solution; with include_offresonant every other dipole channel leaks at
/// its free-space rate through explicit sub-steps of at most 0.01/max-rate.
PopulationState stage_evolve(const PopulationState& pop, const TuningStep& step,
                             const MolecularSpecies& species, const SimOptions& opts);

/// Same, for an explicit duration instead of step.duration.
PopulationState stage_evolve_for(const PopulationState& pop, const TuningStep& step,
                                 const MolecularSpecies& species, const SimOptions& opts,
                                 double duration);

SimulationResult simulate(const CoolingPlan& plan, const PopulationState& initial,
                          const SimOptions& opts);

struct PopulationMetrics {
  double ground_fraction = 0.0;
  double mean_energy = 0.0;  // J
  double entropy = 0.0;      // nats
};

PopulationMetrics metrics(const PopulationState& pop, const MolecularSpecies& species);

}  // namespace rotocool
