#include "rotocool/cavity.hpp"

#include <cmath>
#include <stdexcept>

#include "rotocool/constants.hpp"

namespace rotocool {

using namespace constants;

CavityGeometry confocal_geometry(const CavityConfig& cfg) {
  if (!cfg.is_valid()) throw std::invalid_argument("confocal_geometry: invalid cavity config");
  const double order = cfg.s + 0.5;
  CavityGeometry g;
  g.lambda_c = cfg.lambda_c;
  g.L = order * cfg.lambda_c / 2.0;
  g.w0 = std::sqrt(cfg.lambda_c * g.L / (2.0 * pi));
  g.V = cfg.lambda_c * g.L * g.L / 4.0;
  g.D = std::sqrt(3.0) * g.L;
  g.eta = 12.0 * cfg.Q / (pi * pi * order * order);
  return g;
}

double mode_intensity(const CavityGeometry& g, double x, double y, double z) {
  // Rayleigh range pi w0^2 / lambda, which is L/2 for the confocal geometry.
  const double zr = pi * g.w0 * g.w0 / g.lambda_c;
  const double w2 = g.w0 * g.w0 * (1.0 + (z / zr) * (z / zr));
  return g.w0 * g.w0 / w2 * std::exp(-2.0 * (x * x + y * y) / w2);
}

double thermal_occupation(double lambda_c, double temperature) {
  if (temperature < 0.0) throw std::invalid_argument("thermal_occupation: negative temperature");
  if (temperature == 0.0) return 0.0;
  const double x = hc / (lambda_c * k_B * temperature);
  return 1.0 / std::expm1(x);
}

double free_space_prefactor() { return 16.0 * pi * pi * pi / (3.0 * epsilon0 * h); }

double free_space_rate(const MolecularSpecies& species, double lambda_c, const Transition& t,
                       double nbar, LineStrengthMode mode) {
  const double mu = species.reduced_dipole;
  const double g = line_strength_g(t, mode).value();
  return free_space_prefactor() * mu * mu / (lambda_c * lambda_c * lambda_c) * g *
         (2.0 * nbar + 1.0);
}

double purcell_rate(double free_rate, double eta) { return eta * free_rate; }

double purcell_rate_from_volume(const MolecularSpecies& species, const Transition& t,
                                const CavityGeometry& geometry, double Q, LineStrengthMode mode) {
  const double mu = species.reduced_dipole;
  const double g = line_strength_g(t, mode).value();
  return 2.0 * mu * mu * g * Q / (epsilon0 * geometry.V * hbar);
}

double doppler_q_bound(double v_max) {
  if (!(v_max > 0.0)) throw std::invalid_argument("doppler_q_bound: v_max must be > 0");
  return c / v_max;
}

double doppler_speed(const MolecularSpecies& species, double temperature) {
  return 3.0 * std::sqrt(k_B * temperature / species.mass);
}

}  // namespace rotocool
