#include "rotocool/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rotocool/cavity.hpp"

namespace rotocool {

namespace {

struct Channel {
  std::size_t upper;
  std::size_t lower;
  double down;  // upper -> lower, s^-1
  double up;    // lower -> upper
};

double occupation(const SimOptions& opts, double lambda) {
  if (opts.nbar_mode == NbarMode::zero) return 0.0;
  return thermal_occupation(lambda, opts.temperature);
}

std::size_t require_index(const PopulationState& pop, const RoState& s) {
  auto i = pop.index_of(s);
  if (!i) throw StateSpaceMismatch("state " + state_label(s) + " is not in the population support");
  return *i;
}

// Exact solution of the resonant rate equations over dt. Uppers that share a
// lower state (sigma pairs landing on M=0) are solved together.
void evolve_resonant(std::vector<double>& w, const PopulationState& pop, const TuningStep& step,
                     const SimOptions& opts, double dt) {
  const double nbar = occupation(opts, step.lambda_c);
  const double a = step.gamma_cavity * (nbar + 1.0);
  const double b = step.gamma_cavity * nbar;

  std::map<std::size_t, std::vector<std::size_t>> by_lower;
  for (const auto& t : step.transitions) {
    by_lower[require_index(pop, t.lower)].push_back(require_index(pop, t.upper));
  }

  const double decay_a = std::exp(-a * dt);
  for (const auto& [il, uppers] : by_lower) {
    const double m = static_cast<double>(uppers.size());
    double s0 = 0.0;
    for (auto iu : uppers) s0 += w[iu];
    const double total = s0 + w[il];
    const double rate = a + m * b;
    const double s_inf = m * b * total / rate;
    const double s_t = s_inf + (s0 - s_inf) * std::exp(-rate * dt);
    for (auto iu : uppers) {
      w[iu] = std::max(0.0, s_t / m + (w[iu] - s0 / m) * decay_a);
    }
    double s_new = 0.0;
    for (auto iu : uppers) s_new += w[iu];
    w[il] = std::max(0.0, total - s_new);
  }
}

std::vector<Channel> offresonant_channels(const PopulationState& pop, const TuningStep& step,
                                          const MolecularSpecies& species, const SimOptions& opts) {
  std::vector<Channel> channels;
  const auto states = pop.states();
  for (std::size_t iu = 0; iu < states.size(); ++iu) {
    const RoState& u = states[iu];
    if (u.twoJ - 2 < u.twoOmega) continue;
    for (int q = -1; q <= 1; ++q) {
      Transition t{u, RoState{u.n, u.twoJ - 2, u.twoM - 2 * q, u.twoOmega}, q};
      if (!t.is_valid()) continue;
      if (std::find(step.transitions.begin(), step.transitions.end(), t) != step.transitions.end()) {
        continue;
      }
      auto il = pop.index_of(t.lower);
      if (!il) continue;
      const double lambda = 1.0 / (u.J() * species.ladder_step());
      const double gamma = free_space_rate(species, lambda, t, 0.0, opts.g_mode);
      const double nbar = occupation(opts, lambda);
      channels.push_back(Channel{iu, *il, gamma * (nbar + 1.0), gamma * nbar});
    }
  }
  return channels;
}

void euler_step(std::vector<double>& w, const std::vector<Channel>& channels, double dt) {
  std::vector<double> dw(w.size(), 0.0);
  for (const auto& c : channels) {
    const double flow = (c.down * w[c.upper] - c.up * w[c.lower]) * dt;
    dw[c.upper] -= flow;
    dw[c.lower] += flow;
  }
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(0.0, w[i] + dw[i]);
}

}  // namespace

PopulationState stage_evolve_for(const PopulationState& pop, const TuningStep& step,
                                 const MolecularSpecies& species, const SimOptions& opts,
                                 double duration) {
  if (duration < 0.0) throw std::invalid_argument("stage_evolve: negative duration");
  if (opts.nbar_mode == NbarMode::planck && !(opts.temperature > 0.0)) {
    throw std::invalid_argument("stage_evolve: planck occupation needs temperature > 0");
  }
  std::vector<double> w(pop.weights().begin(), pop.weights().end());
  if (duration == 0.0) return pop;

  if (!opts.include_offresonant) {
    evolve_resonant(w, pop, step, opts, duration);
    return pop.with_weights(std::move(w));
  }

  const auto channels = offresonant_channels(pop, step, species, opts);
  std::vector<double> outflow(w.size(), 0.0);
  for (const auto& c : channels) {
    outflow[c.upper] += c.down;
    outflow[c.lower] += c.up;
  }
  const double max_rate = channels.empty() ? 0.0 : *std::max_element(outflow.begin(), outflow.end());
  const auto substeps = static_cast<std::size_t>(
      std::max(1.0, std::ceil(duration * max_rate / 0.01)));
  const double h = duration / static_cast<double>(substeps);
  for (std::size_t k = 0; k < substeps; ++k) {
    evolve_resonant(w, pop, step, opts, h);
    euler_step(w, channels, h);
  }
  return pop.with_weights(std::move(w));
}

PopulationState stage_evolve(const PopulationState& pop, const TuningStep& step,
                             const MolecularSpecies& species, const SimOptions& opts) {
  return stage_evolve_for(pop, step, species, opts, step.duration);
}

SimulationResult simulate(const CoolingPlan& plan, const PopulationState& initial,
                          const SimOptions& opts) {
  for (const auto& s : initial.states()) {
    if (s.twoOmega != plan.species.twoOmega) {
      throw StateSpaceMismatch("initial population has omega_x2=" + std::to_string(s.twoOmega) +
                               ", plan species has " + std::to_string(plan.species.twoOmega));
    }
  }
  for (const auto& step : plan.steps) {
    for (const auto& t : step.transitions) {
      require_index(initial, t.upper);
      require_index(initial, t.lower);
    }
  }

  SimulationResult result;
  PopulationState pop = initial;
  double time = 0.0;
  result.timeline.push_back(Snapshot{0, 0.0, pop});

  const int segments = std::max(0, opts.record_interior_points) + 1;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const TuningStep& step = plan.steps[i];
    double upper_start = 0.0;
    for (const auto& t : step.transitions) upper_start += pop.weight(t.upper);

    const double stage_start = time;
    const double dt = step.duration / segments;
    for (int k = 0; k < segments; ++k) {
      pop = stage_evolve_for(pop, step, plan.species, opts, dt);
      time += dt;
      if (k + 1 < segments) result.timeline.push_back(Snapshot{i + 1, time, pop});
    }
    time = stage_start + step.duration;
    result.timeline.push_back(Snapshot{i + 1, time, pop});

    StageSummary summary;
    summary.step_index = i;
    for (const auto& t : step.transitions) summary.upper_population += pop.weight(t.upper);
    if (upper_start > 0.0) summary.residual_fraction = summary.upper_population / upper_start;
    result.per_stage.push_back(summary);
  }
  result.total_time = time;
  result.ground_fraction = metrics(pop, plan.species).ground_fraction;
  return result;
}

PopulationMetrics metrics(const PopulationState& pop, const MolecularSpecies& species) {
  PopulationMetrics m;
  const auto states = pop.states();
  const auto w = pop.weights();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].twoJ == states[i].twoOmega) m.ground_fraction += w[i];
    m.mean_energy += w[i] * rovib_energy(species, states[i].n, states[i].twoJ);
    if (w[i] > 0.0) m.entropy -= w[i] * std::log(w[i]);
  }
  return m;
}

}  // namespace rotocool
