#include "rotocool/spectroscopy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rotocool/constants.hpp"

namespace rotocool {

namespace {

void require_ladder(const MolecularSpecies& species, int twoJmax) {
  if (twoJmax < species.twoOmega || (twoJmax - species.twoOmega) % 2 != 0) {
    throw std::invalid_argument("jmax_x2=" + std::to_string(twoJmax) +
                                " is incompatible with omega_x2=" +
                                std::to_string(species.twoOmega) +
                                " (needs Jmax >= Omega and matching parity)");
  }
}

}  // namespace

std::vector<RoState> enumerate_states(const MolecularSpecies& species, int twoJmax) {
  require_ladder(species, twoJmax);
  std::vector<RoState> states;
  for (int twoJ = species.twoOmega; twoJ <= twoJmax; twoJ += 2) {
    for (int twoM = -twoJ; twoM <= twoJ; twoM += 2) {
      states.push_back(RoState{0, twoJ, twoM, species.twoOmega});
    }
  }
  return states;
}

double rovib_energy(const MolecularSpecies& s, int n, int twoJ) {
  const double v = n + 0.5;
  const double J = twoJ / 2.0;
  const double omega = s.twoOmega / 2.0;
  const double term = s.Te + s.omega_e * v - s.omega_e_x_e * v * v +
                      (s.B_e - s.alpha_e * v) * (J * (J + 1.0) - omega * omega);
  return constants::hc * term;
}

PopulationState thermal_state(const MolecularSpecies& species, double temperature, int twoJmax) {
  if (!(temperature > 0.0)) throw std::invalid_argument("thermal_state: temperature must be > 0");
  auto states = enumerate_states(species, twoJmax);
  const double e0 = rovib_energy(species, 0, species.twoOmega);
  const double kT = constants::k_B * temperature;

  std::vector<double> w(states.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    w[i] = std::exp(-(rovib_energy(species, 0, states[i].twoJ) - e0) / kT);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return PopulationState(std::move(states), std::move(w));
}

Rational stark_f(int twoJ, int twoM) {
  if (twoJ == 0) return Rational(-1, 3);
  if (twoJ == 1) return Rational(1, 3);
  const std::int64_t jj = static_cast<std::int64_t>(twoJ) * (twoJ + 2);
  const std::int64_t m2 = static_cast<std::int64_t>(twoM) * twoM;
  return Rational(jj - 3 * m2, jj * (twoJ - 1) * (twoJ + 3));
}

Rational delta_f(const Transition& t) {
  return stark_f(t.upper.twoJ, t.upper.twoM) - stark_f(t.lower.twoJ, t.lower.twoM);
}

double stark_spacing(const MolecularSpecies& s, int n, const Transition& t, double efield) {
  using constants::hc;
  const double J = t.upper.J();
  const double zero_field = hc * 2.0 * J * (s.B_e - s.alpha_e * (n + 0.5));
  const double mu_e = s.dipole * efield;
  return zero_field + mu_e * mu_e / (2.0 * hc * s.B_e) * delta_f(t).value();
}

Rational line_strength_g(const Transition& t, LineStrengthMode mode) {
  const std::int64_t j = t.upper.twoJ;
  const std::int64_t m = t.upper.twoM;
  // (2J-1)(2J+1) in doubled numbers.
  const std::int64_t norm = (j - 1) * (j + 1);
  if (t.q == 0) return Rational((j + m) * (j - m), 4 * norm);

  const std::int64_t jm = t.q > 0 ? j + m : j - m;  // 2(J +- M)
  if (mode == LineStrengthMode::paper) {
    return Rational((jm + 2) * (jm + 4), 4 * norm);
  }
  return Rational(jm * (jm - 2), 8 * norm);
}

}  // namespace rotocool
