#pragma once

#include <vector>

#include "rotocool/population.hpp"
#include "rotocool/quantum.hpp"
#include "rotocool/species.hpp"

namespace rotocool {

/// All |J,M> with Omega <= J <= Jmax, n = 0, J then M ascending.
std::vector<RoState> enumerate_states(const MolecularSpecies& species, int twoJmax);

/// Rovibrational term energy in joules:
/// hc{Te + we(n+1/2) - wexe(n+1/2)^2 + (Be - ae(n+1/2))(J(J+1) - Omega^2)}.
double rovib_energy(const MolecularSpecies& species, int n, int twoJ);

/// Boltzmann populations over the enumerated states; the (2J+1) level
/// degeneracy is spread evenly over M.
PopulationState thermal_state(const MolecularSpecies& species, double temperature, int twoJmax);

/// Quadratic Stark coefficient f_{J,M} = [J(J+1) - 3M^2] / [J(J+1)(2J-1)(2J+3)],
/// in units of (mu E)^2 / (2 hc B_e).
///
/// The closed form is 0/0 at J = 0 and at J = 1/2. Both are filled with the
/// limit in J at fixed M: f_{0,0} = -1/3 (the rigid-rotor ground-state shift)
/// and f_{1/2,+-1/2} = 1/3, which is what f(J, 1/2) = 1/(4J(J+1)) gives.
Rational stark_f(int twoJ, int twoM);

/// f_{J,M} - f_{J-1,M-q}.
Rational delta_f(const Transition& t);

/// Energy separation of the transition's two levels in a static field E (V/m).
double stark_spacing(const MolecularSpecies& species, int n, const Transition& t, double efield);

enum class LineStrengthMode {
  paper,     // sigma factor (J±M+1)(J±M+2)/((2J-1)(2J+1)), sign tied to q
  sum_rule,  // normalized Honl-London factors, pi + sigma sums to J/(2J+1)
};

/// Line-strength factor g(J,M) for emission along t.
Rational line_strength_g(const Transition& t, LineStrengthMode mode = LineStrengthMode::paper);

}  // namespace rotocool
