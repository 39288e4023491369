#include "rotocool/planner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rotocool/constants.hpp"

namespace rotocool {

namespace {

std::string format_field(double e) {
  std::ostringstream os;
  os.precision(4);
  os << std::scientific << e;
  return os.str();
}

void require_plan_ladder(int twoJmax, int twoOmega) {
  if (twoOmega < 0 || twoJmax < twoOmega + 2 || (twoJmax - twoOmega) % 2 != 0) {
    throw std::invalid_argument("jmax_x2=" + std::to_string(twoJmax) +
                                " needs Jmax >= Omega+1 with the parity of omega_x2=" +
                                std::to_string(twoOmega));
  }
}

// True unless the lower level is a corner above the ground level.
bool lands_outside_corners(const Transition& t) {
  return !(t.lower.is_corner() && t.lower.twoJ != t.lower.twoOmega);
}

bool tunable_with_base_cavity(const Transition& t) {
  return t.upper.twoJ == 2 || delta_f(t).sign() < 0;
}

Transition seq_a_transition(const RoState& upper) {
  std::vector<Transition> options;
  if (std::abs(upper.twoM) <= upper.twoJ - 2) options.push_back(make_transition(upper, 0));
  if (upper.twoM != 0) options.push_back(make_transition(upper, upper.twoM > 0 ? 1 : -1));

  std::erase_if(options, [](const Transition& t) { return !lands_outside_corners(t); });
  if (options.empty()) {
    throw std::logic_error("no downward transition for " + state_label(upper));
  }
  for (const auto& t : options) {
    if (tunable_with_base_cavity(t)) return t;
  }
  return options.back();
}

std::vector<Transition> mirror_group(const Transition& t) {
  if (t.is_self_mirror()) return {t};
  return {t, t.mirror()};
}

std::vector<std::vector<Transition>> pi_groups(int twoJmax, int twoOmega) {
  std::vector<std::vector<Transition>> groups;
  for (int twoJ = twoJmax; twoJ >= twoOmega + 2; twoJ -= 2) {
    for (int twoM = twoOmega; twoM >= 0; twoM -= 2) {
      groups.push_back(mirror_group(make_transition(RoState{0, twoJ, twoM, twoOmega}, 0)));
    }
  }
  return groups;
}

std::vector<std::vector<Transition>> a_groups(int twoJmax, int twoOmega) {
  std::vector<std::vector<Transition>> groups;
  for (int twoJ = twoJmax; twoJ >= twoOmega + 2; twoJ -= 2) {
    for (int twoM = twoJ - 2; twoM >= 0; twoM -= 2) {
      groups.push_back(mirror_group(seq_a_transition(RoState{0, twoJ, twoM, twoOmega})));
    }
  }
  return groups;
}

std::vector<std::vector<Transition>> b_groups(int twoJmax, int twoOmega) {
  std::vector<std::vector<Transition>> groups;
  for (int twoJ = twoJmax; twoJ >= twoOmega + 2; twoJ -= 2) {
    groups.push_back(mirror_group(make_transition(RoState{0, twoJ, twoJ, twoOmega}, 1)));
  }
  return groups;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::pi_only: return "pi";
    case Scheme::seq_A: return "A";
    case Scheme::seq_B: return "B";
    case Scheme::combined: return "combined";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view text) {
  if (text == "pi" || text == "pi_only") return Scheme::pi_only;
  if (text == "A" || text == "seq_A") return Scheme::seq_A;
  if (text == "B" || text == "seq_B") return Scheme::seq_B;
  if (text == "combined") return Scheme::combined;
  return std::nullopt;
}

InfeasibleTransition::InfeasibleTransition(const Transition& t,
                                           std::optional<std::size_t> step_index,
                                           const std::string& what)
    : std::runtime_error(what), transition_(t), step_index_(step_index) {}

ExceedsFieldLimit::ExceedsFieldLimit(std::size_t step_index, double efield, double limit)
    : std::runtime_error("step " + std::to_string(step_index) + ": field " + format_field(efield) +
                         " V/m exceeds limit " + format_field(limit) + " V/m"),
      step_index_(step_index),
      efield_(efield) {}

double CoolingPlan::total_duration() const {
  double t = 0.0;
  for (const auto& s : steps) t += s.duration;
  return t;
}

std::vector<CavityConfig> choose_cavity(const MolecularSpecies& species, Scheme scheme,
                                        int twoJmax, int s, double Q) {
  require_plan_ladder(twoJmax, species.twoOmega);
  const double step = species.ladder_step();
  const CavityConfig base{s, Q, 1.0 / step};
  const CavityConfig top{s, Q, 1.0 / (twoJmax / 2.0 * step)};
  if (!base.is_valid()) throw std::invalid_argument("choose_cavity: need s >= 1 and Q > 0");
  switch (scheme) {
    case Scheme::pi_only:
    case Scheme::seq_A: return {base};
    case Scheme::seq_B: return {top};
    case Scheme::combined: return {top, base};
  }
  return {};
}

double tuning_field(const MolecularSpecies& species, double lambda_c, const Transition& t) {
  if (!t.is_valid()) throw std::invalid_argument("tuning_field: invalid transition");
  const double line = t.upper.J() * species.ladder_step();
  const double cavity = 1.0 / lambda_c;
  double detuning = cavity - line;
  // 1/(1/x) round-off must not turn an exact zero-field resonance infeasible.
  if (std::abs(detuning) <= 1e-12 * std::max(cavity, line)) detuning = 0.0;
  if (detuning == 0.0) return 0.0;

  const Rational df = delta_f(t);
  if (df.sign() == 0) {
    throw InfeasibleTransition(t, std::nullopt,
                               describe(t) + ": Stark-insensitive line is off cavity resonance");
  }
  const double radicand = 2.0 * species.B_e / df.value() * detuning;
  if (radicand < 0.0) {
    throw InfeasibleTransition(
        t, std::nullopt,
        describe(t) + ": Stark shift has the wrong sign for this cavity (delta_f=" +
            to_string(df) + ")");
  }
  return constants::hc / species.dipole * std::sqrt(radicand);
}

StarkSign classify_transition(const Transition& t) {
  switch (delta_f(t).sign()) {
    case -1: return StarkSign::negative;
    case 1: return StarkSign::positive;
    default: return StarkSign::zero;
  }
}

std::vector<std::vector<Transition>> schedule_transitions(Scheme scheme, int twoJmax,
                                                          int twoOmega) {
  require_plan_ladder(twoJmax, twoOmega);
  switch (scheme) {
    case Scheme::pi_only: return pi_groups(twoJmax, twoOmega);
    case Scheme::seq_A: return a_groups(twoJmax, twoOmega);
    case Scheme::seq_B: return b_groups(twoJmax, twoOmega);
    case Scheme::combined: {
      auto groups = b_groups(twoJmax, twoOmega);
      auto rest = a_groups(twoJmax, twoOmega);
      groups.insert(groups.end(), rest.begin(), rest.end());
      return groups;
    }
  }
  return {};
}

int step_count(Scheme scheme, int twoJmax, int twoOmega) {
  require_plan_ladder(twoJmax, twoOmega);
  const int j = twoJmax;
  const int o = twoOmega;
  if (o % 2 == 0) {
    // Integer Omega; work in undoubled numbers.
    const int J = j / 2;
    const int W = o / 2;
    switch (scheme) {
      case Scheme::pi_only: return (W + 1) * (J - W);
      case Scheme::seq_A: return (J - W) * (J + W + 1) / 2;
      case Scheme::seq_B: return J - W;
      case Scheme::combined: return (J - W) * (J + W + 3) / 2;
    }
  } else {
    switch (scheme) {
      case Scheme::pi_only: return (o + 1) * (j - o) / 4;
      case Scheme::seq_A: return (j * j - o * o) / 8;
      case Scheme::seq_B: return (j - o) / 2;
      case Scheme::combined: return (j - o) * (j + o + 4) / 8;
    }
  }
  return 0;
}

CoolingPlan build_plan(const MolecularSpecies& species, Scheme scheme, int twoJmax,
                       const std::vector<CavityConfig>& cavities, const PlanOptions& options) {
  const std::size_t needed = scheme == Scheme::combined ? 2 : 1;
  if (cavities.size() != needed) {
    throw std::invalid_argument("build_plan: scheme " + std::string(to_string(scheme)) + " needs " +
                                std::to_string(needed) + " cavity config(s)");
  }
  for (const auto& c : cavities) {
    if (!c.is_valid()) throw std::invalid_argument("build_plan: invalid cavity config");
  }
  if (!(options.stage_cycles > 0.0)) {
    throw std::invalid_argument("build_plan: stage_cycles must be > 0");
  }

  CoolingPlan plan;
  plan.scheme = scheme;
  plan.species = species;
  plan.cavities = cavities;
  plan.twoJmax = twoJmax;
  plan.stage_cycles = options.stage_cycles;

  const auto groups = schedule_transitions(scheme, twoJmax, species.twoOmega);
  const std::size_t b_steps =
      scheme == Scheme::combined ? static_cast<std::size_t>(step_count(Scheme::seq_B, twoJmax, species.twoOmega)) : 0;

  for (std::size_t i = 0; i < groups.size(); ++i) {
    const CavityConfig& cav = (scheme == Scheme::combined && i >= b_steps) ? cavities[1] : cavities[0];
    const CavityGeometry geom = confocal_geometry(cav);
    const Transition& lead = groups[i].front();

    TuningStep step;
    step.transitions = groups[i];
    step.lambda_c = cav.lambda_c;
    step.delta_f = delta_f(lead);
    try {
      step.e_field = tuning_field(species, cav.lambda_c, lead);
    } catch (const InfeasibleTransition& e) {
      throw InfeasibleTransition(e.transition(), i, "step " + std::to_string(i) + ": " + e.what());
    }
    if (options.efield_max && step.e_field > *options.efield_max) {
      throw ExceedsFieldLimit(i, step.e_field, *options.efield_max);
    }
    step.gamma_free = free_space_rate(species, cav.lambda_c, lead, 0.0, options.g_mode);
    step.eta = geom.eta;
    step.gamma_cavity = purcell_rate(step.gamma_free, step.eta);
    step.duration = options.stage_cycles / step.gamma_cavity;
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::warn: return "warn";
    case CheckStatus::fail: return "fail";
  }
  return "?";
}

CheckStatus ValidationReport::worst() const {
  CheckStatus w = CheckStatus::pass;
  for (const auto& c : checks) w = std::max(w, c.status);
  return w;
}

bool is_topologically_ordered(const std::vector<std::vector<Transition>>& groups) {
  std::set<RoState> drained;
  for (const auto& group : groups) {
    for (const auto& t : group) {
      if (drained.contains(t.lower)) return false;
    }
    for (const auto& t : group) drained.insert(t.upper);
  }
  return true;
}

ValidationReport validate_plan(const CoolingPlan& plan, std::optional<double> efield_max,
                               double temperature) {
  ValidationReport report;
  auto add = [&](std::string name, CheckStatus status, std::string detail,
                 std::optional<std::size_t> step = std::nullopt) {
    report.checks.push_back(PlanCheck{std::move(name), status, std::move(detail), step});
  };

  std::vector<std::vector<Transition>> groups;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const TuningStep& step = plan.steps[i];
    groups.push_back(step.transitions);

    const bool real = std::isfinite(step.e_field) && step.e_field >= 0.0;
    add("field_real", real ? CheckStatus::pass : CheckStatus::fail,
        real ? "" : "field is not a finite non-negative number", i);

    const double target = constants::hc / step.lambda_c;
    double worst = 0.0;
    for (const auto& t : step.transitions) {
      const double spacing = stark_spacing(plan.species, 0, t, step.e_field);
      worst = std::max(worst, std::abs(spacing - target) / target);
    }
    std::ostringstream detail;
    detail << "max relative detuning " << worst;
    add("resonance", real && worst <= 1e-9 ? CheckStatus::pass : CheckStatus::fail, detail.str(), i);

    if (efield_max) {
      const bool ok = step.e_field <= *efield_max;
      add("field_limit", ok ? CheckStatus::pass : CheckStatus::fail,
          format_field(step.e_field) + " V/m vs limit " + format_field(*efield_max), i);
    } else {
      const bool ok = step.e_field <= kAdvisoryFieldLimit;
      add("field_limit", ok ? CheckStatus::pass : CheckStatus::warn,
          format_field(step.e_field) + " V/m vs advisory " + format_field(kAdvisoryFieldLimit), i);
    }
  }

  if (temperature > 0.0) {
    const double v = doppler_speed(plan.species, temperature);
    const double q_max = doppler_q_bound(v);
    for (const auto& cav : plan.cavities) {
      std::ostringstream detail;
      detail << "Q=" << cav.Q << " vs Doppler bound " << q_max << " (v_max=" << v << " m/s)";
      add("doppler", cav.Q <= q_max ? CheckStatus::pass : CheckStatus::fail, detail.str());
    }
  } else {
    add("doppler", CheckStatus::warn, "no temperature given; Doppler bound not checked");
  }

  const bool ordered = is_topologically_ordered(groups);
  add("ordering", ordered ? CheckStatus::pass : CheckStatus::fail,
      ordered ? "" : "a step feeds a state that was already drained");

  const int expected = step_count(plan.scheme, plan.twoJmax, plan.species.twoOmega);
  const bool count_ok = static_cast<int>(plan.steps.size()) == expected;
  add("step_count", count_ok ? CheckStatus::pass : CheckStatus::fail,
      std::to_string(plan.steps.size()) + " steps, expected " + std::to_string(expected));
  return report;
}

}  // namespace rotocool
