#include "rotocool/population.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rotocool {

namespace {
constexpr double kSumTolerance = 1e-9;
}

PopulationState::PopulationState(std::vector<RoState> states, std::vector<double> weights)
    : states_(std::move(states)), weights_(std::move(weights)) {
  if (states_.size() != weights_.size()) {
    throw std::invalid_argument("PopulationState: states and weights differ in length");
  }
  if (states_.empty()) throw std::invalid_argument("PopulationState: empty support");
  for (const auto& st : states_) {
    if (!st.is_valid()) throw std::invalid_argument("PopulationState: invalid state " + state_label(st));
  }

  if (!std::is_sorted(states_.begin(), states_.end())) {
    std::vector<std::size_t> order(states_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return states_[a] < states_[b]; });
    std::vector<RoState> s;
    std::vector<double> w;
    for (auto i : order) {
      s.push_back(states_[i]);
      w.push_back(weights_[i]);
    }
    states_ = std::move(s);
    weights_ = std::move(w);
  }
  if (std::adjacent_find(states_.begin(), states_.end()) != states_.end()) {
    throw std::invalid_argument("PopulationState: duplicate state");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw std::invalid_argument("PopulationState: bad weight for " + state_label(states_[i]));
    }
  }
  if (std::abs(total() - 1.0) > kSumTolerance) {
    throw std::invalid_argument("PopulationState: weights sum to " + std::to_string(total()));
  }
}

PopulationState PopulationState::delta(std::vector<RoState> states, const RoState& target) {
  std::vector<double> w(states.size(), 0.0);
  auto it = std::find(states.begin(), states.end(), target);
  if (it == states.end()) {
    throw std::invalid_argument("PopulationState::delta: " + state_label(target) + " not in support");
  }
  w[static_cast<std::size_t>(it - states.begin())] = 1.0;
  return PopulationState(std::move(states), std::move(w));
}

PopulationState PopulationState::uniform(std::vector<RoState> states) {
  std::vector<double> w(states.size(), 1.0 / static_cast<double>(states.size()));
  return PopulationState(std::move(states), std::move(w));
}

std::optional<std::size_t> PopulationState::index_of(const RoState& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

double PopulationState::weight(const RoState& s) const {
  auto i = index_of(s);
  return i ? weights_[*i] : 0.0;
}

double PopulationState::total() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

PopulationState PopulationState::with_weights(std::vector<double> weights) const {
  return PopulationState(states_, std::move(weights));
}

}  // namespace rotocool
