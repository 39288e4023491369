#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rotocool/cavity.hpp"
#include "rotocool/quantum.hpp"
#include "rotocool/spectroscopy.hpp"
#include "rotocool/species.hpp"

namespace rotocool {

enum class Scheme { pi_only, seq_A, seq_B, combined };

std::string_view to_string(Scheme scheme);
/// Accepts "pi", "A", "B", "combined" (and the enum spellings).
std::optional<Scheme> parse_scheme(std::string_view text);

/// The transition cannot be brought into resonance with this cavity: the
/// required (mu E)^2 would be negative.
class InfeasibleTransition : public std::runtime_error {
 public:
  InfeasibleTransition(const Transition& t, std::optional<std::size_t> step_index,
                       const std::string& what);
  const Transition& transition() const { return transition_; }
  /// Set when raised from build_plan.
  std::optional<std::size_t> step_index() const { return step_index_; }

 private:
  Transition transition_;
  std::optional<std::size_t> step_index_;
};

class ExceedsFieldLimit : public std::runtime_error {
 public:
  ExceedsFieldLimit(std::size_t step_index, double efield, double limit);
  std::size_t step_index() const { return step_index_; }
  double efield() const { return efield_; }

 private:
  std::size_t step_index_;
  double efield_;
};

/// One stage of the schedule: a transition and (unless M = 0 pi) its mirror,
/// held at cavity resonance by a common field.
struct TuningStep {
  std::vector<Transition> transitions;
  double e_field = 0.0;       // V/m
  Rational delta_f;
  double gamma_free = 0.0;    // s^-1, nbar = 0
  double eta = 0.0;
  double gamma_cavity = 0.0;  // s^-1
  double duration = 0.0;      // s
  double lambda_c = 0.0;      // m
};

struct CoolingPlan {
  Scheme scheme = Scheme::pi_only;
  MolecularSpecies species;
  std::vector<CavityConfig> cavities;
  std::vector<TuningStep> steps;
  int twoJmax = 0;
  double stage_cycles = 4.0;

  [[nodiscard]] double total_duration() const;
};

/// Cavity per scheme: 1/lambda = 2Be - ae for pi_only and seq_A,
/// Jmax (2Be - ae) for seq_B. combined returns {B, A} in execution order.
std::vector<CavityConfig> choose_cavity(const MolecularSpecies& species, Scheme scheme,
                                        int twoJmax, int s, double Q);

/// Field that puts t on resonance with lambda_c (n = 0). Throws
/// InfeasibleTransition when no real field exists.
double tuning_field(const MolecularSpecies& species, double lambda_c, const Transition& t);

enum class StarkSign { negative, zero, positive };
StarkSign classify_transition(const Transition& t);

/// The species-independent part of a plan: the ordered list of transition
/// groups (one group per tuning step).
std::vector<std::vector<Transition>> schedule_transitions(Scheme scheme, int twoJmax, int twoOmega);

/// Closed-form number of tuning steps.
int step_count(Scheme scheme, int twoJmax, int twoOmega);

struct PlanOptions {
  double stage_cycles = 4.0;
  std::optional<double> efield_max;
  LineStrengthMode g_mode = LineStrengthMode::paper;
};

/// `cavities` must hold one config (two for combined: B then A, as returned by
/// choose_cavity).
CoolingPlan build_plan(const MolecularSpecies& species, Scheme scheme, int twoJmax,
                       const std::vector<CavityConfig>& cavities, const PlanOptions& options = {});

enum class CheckStatus { pass, warn, fail };
std::string_view to_string(CheckStatus status);

struct PlanCheck {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::optional<std::size_t> step_index;
};

struct ValidationReport {
  std::vector<PlanCheck> checks;
  [[nodiscard]] CheckStatus worst() const;
  [[nodiscard]] bool passed() const { return worst() != CheckStatus::fail; }
};

/// Fields above this are flagged as warnings when no explicit limit is given.
inline constexpr double kAdvisoryFieldLimit = 1e8;  // V/m

ValidationReport validate_plan(const CoolingPlan& plan, std::optional<double> efield_max,
                               double temperature);

/// True when no step feeds a state whose own step has already run.
bool is_topologically_ordered(const std::vector<std::vector<Transition>>& groups);

}  // namespace rotocool
