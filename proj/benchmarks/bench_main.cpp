#include <benchmark/benchmark.h>

#include "rotocool/dynamics.hpp"
#include "rotocool/planner.hpp"
#include "rotocool/spectroscopy.hpp"

namespace {

using namespace rotocool;

const MolecularSpecies& csf() {
  static const MolecularSpecies s = *find_species("CsF");
  return s;
}

void BM_BuildPlanPi(benchmark::State& state) {
  const int twoJmax = static_cast<int>(state.range(0));
  const auto cav = choose_cavity(csf(), Scheme::pi_only, twoJmax, 1, 1e6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_plan(csf(), Scheme::pi_only, twoJmax, cav));
  }
}
BENCHMARK(BM_BuildPlanPi)->Arg(10)->Arg(30);

void BM_ScheduleCombined(benchmark::State& state) {
  const int twoJmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(schedule_transitions(Scheme::combined, twoJmax, 0));
  }
}
BENCHMARK(BM_ScheduleCombined)->Arg(10)->Arg(30);

void BM_SimulateCombined(benchmark::State& state) {
  const auto cav = choose_cavity(csf(), Scheme::combined, 10, 1, 1e6);
  const CoolingPlan plan = build_plan(csf(), Scheme::combined, 10, cav);
  const PopulationState start = thermal_state(csf(), 1.0, 10);
  SimOptions opts;
  opts.nbar_mode = NbarMode::planck;
  opts.temperature = 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(plan, start, opts));
  }
}
BENCHMARK(BM_SimulateCombined);

void BM_SimulateOffResonant(benchmark::State& state) {
  const auto cav = choose_cavity(csf(), Scheme::pi_only, 10, 1, 1e6);
  const CoolingPlan plan = build_plan(csf(), Scheme::pi_only, 10, cav);
  const PopulationState start = thermal_state(csf(), 1.0, 10);
  SimOptions opts;
  opts.include_offresonant = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(plan, start, opts));
  }
}
BENCHMARK(BM_SimulateOffResonant);

void BM_TuningField(benchmark::State& state) {
  const auto cav = choose_cavity(csf(), Scheme::seq_A, 10, 1, 1e6).front();
  const Transition t = make_transition(make_state(10, 0, 0), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tuning_field(csf(), cav.lambda_c, t));
  }
}
BENCHMARK(BM_TuningField);

}  // namespace
BENCHMARK_MAIN();
