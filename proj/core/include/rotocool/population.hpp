#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rotocool/quantum.hpp"

namespace rotocool {

/// Probability distribution over an ordered set of states.
///
/// States are kept sorted and unique. Weights must be non-negative and sum to
/// one (checked to 1e-9 on construction).
class PopulationState {
 public:
  PopulationState() = default;
  PopulationState(std::vector<RoState> states, std::vector<double> weights);

  /// All weight on `target`, which must be one of `states`.
  static PopulationState delta(std::vector<RoState> states, const RoState& target);
  static PopulationState uniform(std::vector<RoState> states);

  [[nodiscard]] std::size_t size() const { return states_.size(); }
  [[nodiscard]] std::span<const RoState> states() const { return states_; }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] std::optional<std::size_t> index_of(const RoState& s) const;
  [[nodiscard]] bool contains(const RoState& s) const { return index_of(s).has_value(); }
  /// Zero for states outside the support.
  [[nodiscard]] double weight(const RoState& s) const;
  [[nodiscard]] double total() const;

  /// Same support, new weights (validated).
  [[nodiscard]] PopulationState with_weights(std::vector<double> weights) const;

 private:
  std::vector<RoState> states_;
  std::vector<double> weights_;
};

}  // namespace rotocool
