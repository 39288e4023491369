#pragma once

#include "rotocool/quantum.hpp"
#include "rotocool/spectroscopy.hpp"
#include "rotocool/species.hpp"

namespace rotocool {

/// Symmetric confocal resonator driven on the TEM00 mode of longitudinal order s.
struct CavityConfig {
  int s = 1;
  double Q = 1e6;
  double lambda_c = 0.0;  // m

  [[nodiscard]] bool is_valid() const { return s >= 1 && Q > 0.0 && lambda_c > 0.0; }
};

struct CavityGeometry {
  double lambda_c = 0.0;
  double L = 0.0;    // mirror spacing (s+1/2) lambda/2
  double w0 = 0.0;   // waist sqrt(lambda L / 2pi)
  double V = 0.0;    // mode volume lambda L^2 / 4
  double D = 0.0;    // largest usable diameter, sqrt(3) L
  double eta = 0.0;  // Purcell enhancement 12Q / (pi^2 (s+1/2)^2)
};

CavityGeometry confocal_geometry(const CavityConfig& cfg);

/// |u00(x,y,z)|^2 normalized to 1 at the waist centre.
double mode_intensity(const CavityGeometry& geometry, double x, double y, double z);

/// Mean thermal photon number at the cavity wavelength (Bose-Einstein).
double thermal_occupation(double lambda_c, double temperature);

/// 16 pi^3 / (3 eps0 h), the SI prefactor of the free-space emission rate.
double free_space_prefactor();

/// Spontaneous rate ||mu||^2 g / lambda^3 * prefactor, times (2 nbar + 1).
double free_space_rate(const MolecularSpecies& species, double lambda_c, const Transition& t,
                       double nbar = 0.0, LineStrengthMode mode = LineStrengthMode::paper);

/// Gamma_c = eta * Gamma_o.
double purcell_rate(double free_rate, double eta);

/// Same rate from the mode volume: 2 mu^2 g Q / (eps0 V hbar).
double purcell_rate_from_volume(const MolecularSpecies& species, const Transition& t,
                                const CavityGeometry& geometry, double Q,
                                LineStrengthMode mode = LineStrengthMode::paper);

/// Largest Q whose linewidth still covers the Doppler shift at speed v_max.
double doppler_q_bound(double v_max);

/// Speed used for the Doppler check: 3 sqrt(k_B T / m).
double doppler_speed(const MolecularSpecies& species, double temperature);

}  // namespace rotocool
