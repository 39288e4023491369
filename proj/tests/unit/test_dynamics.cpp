#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rotocool/dynamics.hpp"

using namespace rotocool;

namespace {

const MolecularSpecies& csf() {
  static const MolecularSpecies s = *find_species("CsF");
  return s;
}
const MolecularSpecies& oh() {
  static const MolecularSpecies s = *find_species("OH");
  return s;
}

CoolingPlan plan_for(const MolecularSpecies& s, Scheme scheme, int twoJmax, double Q = 1e6,
                     double cycles = 4.0) {
  PlanOptions options;
  options.stage_cycles = cycles;
  return build_plan(s, scheme, twoJmax, choose_cavity(s, scheme, twoJmax, 1, Q), options);
}

SimOptions planck(double T) {
  SimOptions o;
  o.nbar_mode = NbarMode::planck;
  o.temperature = T;
  return o;
}

}  // namespace

TEST(StageEvolve, ResidualAfterFourCycles) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 4);
  const auto start = PopulationState::delta(enumerate_states(csf(), 4), make_state(4, 0, 0));
  const PopulationState after = stage_evolve(start, plan.steps[0], csf(), SimOptions{});
  EXPECT_NEAR(after.weight(make_state(4, 0, 0)), std::exp(-4.0), 1e-12);
  EXPECT_NEAR(after.weight(make_state(2, 0, 0)), 1.0 - std::exp(-4.0), 1e-12);
  EXPECT_NEAR(after.total(), 1.0, 1e-12);
}

TEST(StageEvolve, ZeroDurationIsIdentity) {
  const CoolingPlan plan = plan_for(csf(), Scheme::seq_A, 6);
  const PopulationState start = thermal_state(csf(), 1.0, 6);
  const PopulationState same = stage_evolve_for(start, plan.steps[0], csf(), SimOptions{}, 0.0);
  for (std::size_t i = 0; i < start.size(); ++i) EXPECT_EQ(same.weights()[i], start.weights()[i]);
  EXPECT_THROW(stage_evolve_for(start, plan.steps[0], csf(), SimOptions{}, -1.0), std::invalid_argument);
}

TEST(StageEvolve, ThermalSteadyState) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 2);
  const TuningStep& step = plan.steps[0];
  const auto start = PopulationState::delta(enumerate_states(csf(), 2), make_state(2, 0, 0));
  for (double T : {0.5, 4.0, 20.0}) {
    const double n = thermal_occupation(step.lambda_c, T);
    const double t = 100.0 / (step.gamma_cavity * (2.0 * n + 1.0));
    const PopulationState eq = stage_evolve_for(start, step, csf(), planck(T), t);
    const double u = eq.weight(make_state(2, 0, 0));
    const double l = eq.weight(make_state(0, 0, 0));
    EXPECT_NEAR(u / (u + l), n / (2.0 * n + 1.0), 1e-9);
  }
}

TEST(StageEvolve, ThermalRelaxationRate) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 2);
  const TuningStep& step = plan.steps[0];
  const auto start = PopulationState::delta(enumerate_states(csf(), 2), make_state(2, 0, 0));
  const double n = thermal_occupation(step.lambda_c, 4.0);
  const double rate = step.gamma_cavity * (2.0 * n + 1.0);
  const double t = 0.7 / rate;
  const double expected = n / (2.0 * n + 1.0) + (1.0 - n / (2.0 * n + 1.0)) * std::exp(-rate * t);
  EXPECT_NEAR(stage_evolve_for(start, step, csf(), planck(4.0), t).weight(make_state(2, 0, 0)), expected,
              1e-12);
}

TEST(StageEvolve, SharedLowerStateIsConserved) {
  const CoolingPlan plan = plan_for(csf(), Scheme::seq_A, 4);
  const TuningStep* shared = nullptr;
  for (const auto& step : plan.steps) {
    if (step.transitions.size() == 2 && step.transitions[0].lower == step.transitions[1].lower) {
      shared = &step;
    }
  }
  ASSERT_NE(shared, nullptr);
  const PopulationState start = PopulationState::uniform(enumerate_states(csf(), 4));
  for (const SimOptions& o : {SimOptions{}, planck(3.0)}) {
    const PopulationState after = stage_evolve(start, *shared, csf(), o);
    EXPECT_NEAR(after.total(), 1.0, 1e-12);
    for (double w : after.weights()) EXPECT_GE(w, 0.0);
  }
  const PopulationState after = stage_evolve(start, *shared, csf(), SimOptions{});
  for (const auto& t : shared->transitions) {
    EXPECT_NEAR(after.weight(t.upper), start.weight(t.upper) * std::exp(-4.0), 1e-12);
  }
}

TEST(StageEvolve, PlanckNeedsTemperature) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 2);
  const auto start = PopulationState::uniform(enumerate_states(csf(), 2));
  EXPECT_THROW(stage_evolve(start, plan.steps[0], csf(), planck(0.0)), std::invalid_argument);
}

TEST(StageEvolve, OffResonantLeakage) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 6);
  const PopulationState start = PopulationState::delta(enumerate_states(csf(), 6), make_state(6, 6, 0));
  SimOptions leak;
  leak.include_offresonant = true;
  const double t = 1e4;
  const PopulationState frozen = stage_evolve_for(start, plan.steps[0], csf(), SimOptions{}, t);
  const PopulationState leaked = stage_evolve_for(start, plan.steps[0], csf(), leak, t);
  EXPECT_DOUBLE_EQ(frozen.weight(make_state(6, 6, 0)), 1.0);
  EXPECT_LT(leaked.weight(make_state(6, 6, 0)), 1.0);
  EXPECT_NEAR(leaked.total(), 1.0, 1e-9);
  for (double w : leaked.weights()) EXPECT_GE(w, 0.0);

  const Transition corner = make_transition(make_state(6, 6, 0), 1);
  const double gamma = free_space_rate(csf(), 1.0 / (3.0 * csf().ladder_step()), corner);
  EXPECT_NEAR(leaked.weight(make_state(6, 6, 0)), std::exp(-gamma * t), 5e-3);
}

TEST(Simulate, CsFCascadeFromTopLevel) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 10);
  const auto start = PopulationState::delta(enumerate_states(csf(), 10), make_state(10, 0, 0));
  const SimulationResult r = simulate(plan, start, SimOptions{});
  EXPECT_NEAR(r.total_time, 148.3, 148.3 * 0.05);
  EXPECT_NEAR(r.total_time, plan.total_duration(), 1e-12);
  EXPECT_NEAR(r.ground_fraction, oracle::cascade_ground_fraction(5, 4.0), 1e-12);
  EXPECT_GE(r.ground_fraction, 0.90);
  ASSERT_EQ(r.timeline.size(), 6u);
  ASSERT_EQ(r.per_stage.size(), 5u);
  for (const auto& s : r.per_stage) {
    ASSERT_TRUE(s.residual_fraction);
    EXPECT_NEAR(*s.residual_fraction, std::exp(-4.0), 1e-12);
  }
}

TEST(Simulate, OHPipelineTime) {
  const CoolingPlan plan = plan_for(oh(), Scheme::pi_only, 11, 1e3);
  const SimulationResult r = simulate(plan, thermal_state(oh(), 1.0, 11), SimOptions{});
  EXPECT_NEAR(r.total_time, 3.33, 0.03);
  const CoolingPlan four = plan_for(oh(), Scheme::pi_only, 9, 1e3);
  EXPECT_NEAR(simulate(four, thermal_state(oh(), 1.0, 9), SimOptions{}).total_time, 2.66, 0.02);
}

TEST(Simulate, EmptyPlanLeavesPopulation) {
  CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 4);
  plan.steps.clear();
  const PopulationState start = thermal_state(csf(), 1.0, 4);
  const SimulationResult r = simulate(plan, start, SimOptions{});
  EXPECT_EQ(r.total_time, 0.0);
  ASSERT_EQ(r.timeline.size(), 1u);
  EXPECT_TRUE(r.per_stage.empty());
  EXPECT_NEAR(r.ground_fraction, start.weight(make_state(0, 0, 0)), 1e-15);
}

TEST(Simulate, StateSpaceMismatch) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 10);
  EXPECT_THROW(simulate(plan, thermal_state(csf(), 1.0, 8), SimOptions{}), StateSpaceMismatch);
  EXPECT_THROW(simulate(plan, thermal_state(oh(), 1.0, 11), SimOptions{}), StateSpaceMismatch);
}

TEST(Simulate, InvariantsAcrossStages) {
  for (Scheme s : {Scheme::pi_only, Scheme::seq_A, Scheme::seq_B, Scheme::combined}) {
    const CoolingPlan plan = plan_for(csf(), s, 10);
    const SimulationResult r = simulate(plan, thermal_state(csf(), 2.0, 10), SimOptions{});
    for (std::size_t i = 1; i < r.timeline.size(); ++i) {
      const auto& prev = r.timeline[i - 1].population;
      const auto& now = r.timeline[i].population;
      EXPECT_NEAR(now.total(), 1.0, 1e-12);
      for (double w : now.weights()) EXPECT_GE(w, 0.0);
      EXPECT_GE(metrics(now, csf()).ground_fraction, metrics(prev, csf()).ground_fraction - 1e-15);
      EXPECT_LE(metrics(now, csf()).mean_energy, metrics(prev, csf()).mean_energy * (1.0 + 1e-15));
    }
  }
}

TEST(Simulate, CombinedSchemeReachesGround) {
  const CoolingPlan plan = plan_for(csf(), Scheme::combined, 10, 1e6, 12.0);
  const SimulationResult r = simulate(plan, thermal_state(csf(), 1.0, 10), SimOptions{});
  EXPECT_GT(r.ground_fraction, 0.999);
}

TEST(Simulate, DoublingCyclesSquaresResiduals) {
  const PopulationState start = thermal_state(csf(), 1.0, 10);
  const auto four = simulate(plan_for(csf(), Scheme::seq_A, 10), start, SimOptions{});
  const auto eight = simulate(plan_for(csf(), Scheme::seq_A, 10, 1e6, 8.0), start, SimOptions{});
  ASSERT_EQ(four.per_stage.size(), eight.per_stage.size());
  for (std::size_t i = 0; i < four.per_stage.size(); ++i) {
    ASSERT_TRUE(four.per_stage[i].residual_fraction);
    EXPECT_NEAR(*eight.per_stage[i].residual_fraction, std::pow(*four.per_stage[i].residual_fraction, 2), 1e-9);
  }
}

TEST(Simulate, ThermalPhotonsLowerGroundFraction) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 10);
  const PopulationState start = thermal_state(csf(), 1.0, 10);
  const auto cold = simulate(plan, start, SimOptions{});
  const auto warm = simulate(plan, start, planck(4.0));
  EXPECT_LT(warm.ground_fraction, cold.ground_fraction);
}

TEST(Simulate, InteriorPoints) {
  const CoolingPlan plan = plan_for(csf(), Scheme::pi_only, 6);
  SimOptions o;
  o.record_interior_points = 3;
  const auto start = PopulationState::delta(enumerate_states(csf(), 6), make_state(6, 0, 0));
  const SimulationResult r = simulate(plan, start, o);
  ASSERT_EQ(r.timeline.size(), 1u + 3u * 4u);
  for (std::size_t i = 1; i < r.timeline.size(); ++i) EXPECT_GT(r.timeline[i].time, r.timeline[i - 1].time);
  EXPECT_EQ(r.timeline.back().time, plan.total_duration());
  const auto plain = simulate(plan, start, SimOptions{});
  EXPECT_NEAR(r.ground_fraction, plain.ground_fraction, 1e-12);
}

TEST(Metrics, DeltaUniformThermal) {
  const auto states = enumerate_states(csf(), 6);
  const auto ground = PopulationState::delta(states, make_state(0, 0, 0));
  EXPECT_EQ(metrics(ground, csf()).ground_fraction, 1.0);
  EXPECT_EQ(metrics(ground, csf()).entropy, 0.0);

  const auto u = PopulationState::uniform(states);
  EXPECT_NEAR(metrics(u, csf()).entropy, std::log(16.0), 1e-12);

  const auto raw = to_table_units(csf());
  const auto levels = oracle::boltzmann_levels(raw.be_cm, raw.alpha_e_cm, 0.0, 10.0, 1.0);
  const double g = metrics(thermal_state(csf(), 1.0, 20), csf()).ground_fraction;
  EXPECT_GT(g, 0.0);
  EXPECT_LT(g, 1.0);
  EXPECT_NEAR(g, levels[0], 1e-9);

  const auto oh_ground = PopulationState::delta(enumerate_states(oh(), 5), make_state(1, -1, 1));
  EXPECT_EQ(metrics(oh_ground, oh()).ground_fraction, 1.0);
}
