#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rotocool/cavity.hpp"
#include "rotocool/constants.hpp"
#include "rotocool/planner.hpp"

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

CavityConfig cavity_a(const MolecularSpecies& s, double Q = 1e6) {
  return CavityConfig{1, Q, 1.0 / s.ladder_step()};
}

}  // namespace

TEST(ConfocalGeometry, CsFCavityA) {
  const CavityGeometry g = confocal_geometry(cavity_a(csf()));
  EXPECT_NEAR(g.lambda_c, 0.0272, 0.0001);
  EXPECT_NEAR(g.L, 0.0204, 0.0204 * 5e-3);
  EXPECT_NEAR(g.D, 0.0353, 0.0353 * 1e-2);
  EXPECT_NEAR(g.eta, 5.40e5, 5.40e5 * 2e-3);
  EXPECT_NEAR(g.w0, std::sqrt(g.lambda_c * g.L / (2.0 * constants::pi)), 1e-15);
}

TEST(ConfocalGeometry, VolumeFormsAgree) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lambda(1e-4, 1e-1);
  for (int i = 0; i < 200; ++i) {
    const int s = 1 + static_cast<int>(rng() % 20);
    const CavityGeometry g = confocal_geometry(CavityConfig{s, 1e5, lambda(rng)});
    const double v1 = g.L * g.w0 * g.w0 * constants::pi / 2.0;
    const double v2 = g.lambda_c * g.L * g.L / 4.0;
    const double v3 = (s + 0.5) * (s + 0.5) * std::pow(g.lambda_c, 3) / 16.0;
    EXPECT_NEAR(v1 / g.V, 1.0, 1e-12);
    EXPECT_NEAR(v2 / g.V, 1.0, 1e-12);
    EXPECT_NEAR(v3 / g.V, 1.0, 1e-12);
    const double eta_purcell =
        3.0 * std::pow(g.lambda_c, 3) * 1e5 / (4.0 * constants::pi * constants::pi * g.V);
    EXPECT_NEAR(eta_purcell / g.eta, 1.0, 1e-12);
  }
}

TEST(ConfocalGeometry, RejectsInvalidConfig) {
  EXPECT_THROW(confocal_geometry(CavityConfig{0, 1e6, 0.01}), std::invalid_argument);
  EXPECT_THROW(confocal_geometry(CavityConfig{1, 0.0, 0.01}), std::invalid_argument);
  EXPECT_THROW(confocal_geometry(CavityConfig{1, 1e6, -0.01}), std::invalid_argument);
}

TEST(ModeIntensity, ShapeAndNormalization) {
  const CavityGeometry g = confocal_geometry(cavity_a(csf()));
  EXPECT_DOUBLE_EQ(mode_intensity(g, 0, 0, 0), 1.0);
  double previous = 1.0;
  for (int k = 1; k <= 20; ++k) {
    const double z = k * g.L / 20.0;
    const double now = mode_intensity(g, 0, 0, z);
    EXPECT_LT(now, previous);
    EXPECT_DOUBLE_EQ(now, mode_intensity(g, 0, 0, -z));
    previous = now;
  }
  EXPECT_NEAR(mode_intensity(g, 0, 0, g.L / 2.0), 0.5, 1e-12);
  EXPECT_NEAR(mode_intensity(g, g.w0, 0, 0), std::exp(-2.0), 1e-15);
}

TEST(ModeIntensity, QuadratureReproducesModeVolume) {
  for (int s : {1, 3}) {
    const CavityGeometry g = confocal_geometry(CavityConfig{s, 1e6, 0.0272});
    const double v = oracle::mode_volume_quadrature(g.lambda_c, g.L, 60);
    EXPECT_NEAR(v / g.V, 1.0, 1e-2);
  }
}

TEST(ThermalOccupation, PlanckValues) {
  EXPECT_EQ(thermal_occupation(0.0272, 0.0), 0.0);
  EXPECT_NEAR(thermal_occupation(0.0272, 4.0), 7.07, 0.01);
  const double x = oracle::kH * oracle::kC / (0.0272 * oracle::kBoltzmann * 4.0);
  EXPECT_NEAR(thermal_occupation(0.0272, 4.0), 1.0 / (std::exp(x) - 1.0), 1e-12);
  double previous = 0.0;
  for (double T = 0.1; T < 300.0; T *= 1.5) {
    const double n = thermal_occupation(0.0272, T);
    EXPECT_GT(n, previous);
    previous = n;
  }
  EXPECT_THROW(thermal_occupation(0.0272, -1.0), std::invalid_argument);
}

TEST(FreeSpaceRate, Prefactor) {
  const double expected = 16.0 * std::pow(oracle::kPi, 3) / (3.0 * oracle::kEps0 * oracle::kH);
  EXPECT_NEAR(free_space_prefactor() / expected, 1.0, 1e-12);
  EXPECT_NEAR(free_space_prefactor() / 2.8187e46, 1.0, 5e-4);
}

TEST(FreeSpaceRate, CsFAndOHCoefficients) {
  for (int J = 1; J <= 6; ++J) {
    const Transition t = make_transition(make_state(2 * J, 0, 0), 0);
    const double g = static_cast<double>(J * J) / ((2 * J - 1) * (2 * J + 1));
    EXPECT_NEAR(free_space_rate(csf(), cavity_a(csf()).lambda_c, t) / (g * 9.65e-7), 1.0, 1e-2);
  }
  for (int j = 3; j <= 11; j += 2) {
    const Transition t = make_transition(make_state(j, -1, 1), 0);
    EXPECT_NEAR(free_space_rate(oh(), cavity_a(oh()).lambda_c, t) / (0.25 * 4.4521e-2), 1.0, 1e-2);
  }
}

TEST(FreeSpaceRate, Scaling) {
  const Transition t = make_transition(make_state(6, 2, 0), 0);
  const double base = free_space_rate(csf(), 0.01, t);
  EXPECT_NEAR(free_space_rate(csf(), 0.02, t) * 8.0 / base, 1.0, 1e-12);
  EXPECT_NEAR(free_space_rate(csf(), 0.01, t, 2.5) / base, 6.0, 1e-12);
}

TEST(FreeSpaceRate, UsesReducedDipole) {
  RawSpecies raw = to_table_units(csf());
  raw.reduced_dipole_debye = raw.dipole_debye / 2.0;
  const MolecularSpecies half = ingest_species(raw);
  const Transition t = make_transition(make_state(4, 0, 0), 0);
  EXPECT_NEAR(free_space_rate(half, 0.01, t) * 4.0 / free_space_rate(csf(), 0.01, t), 1.0, 1e-12);
}

TEST(PurcellRate, TwoFormsAgree) {
  for (const auto* s : {&csf(), &oh()}) {
    for (int order : {1, 2, 5}) {
      const CavityConfig cfg{order, 3e5, 1.0 / s->ladder_step()};
      const CavityGeometry g = confocal_geometry(cfg);
      for (int j = s->twoOmega + 2; j <= s->twoOmega + 12; j += 2) {
        const Transition t = make_transition(make_state(j, s->twoOmega, s->twoOmega), 0);
        const double a = purcell_rate(free_space_rate(*s, cfg.lambda_c, t), g.eta);
        const double b = purcell_rate_from_volume(*s, t, g, cfg.Q);
        EXPECT_NEAR(a / b, 1.0, 1e-10);
      }
    }
  }
}

TEST(PurcellRate, CsFCoefficientAndIdentity) {
  const CavityGeometry g = confocal_geometry(cavity_a(csf()));
  const Transition t = make_transition(make_state(2, 0, 0), 0);
  const double coef = purcell_rate(free_space_rate(csf(), g.lambda_c, t), g.eta) * 3.0;
  EXPECT_NEAR(coef / 0.52, 1.0, 2e-2);
  EXPECT_DOUBLE_EQ(purcell_rate(0.37, 1.0), 0.37);
}

TEST(PurcellRate, OHLowQEnhancement) {
  const CavityGeometry g = confocal_geometry(cavity_a(oh(), 1e3));
  EXPECT_NEAR(g.eta, 540.38, 0.01);
  EXPECT_NEAR(g.eta, 540.9, 1.0);
}

TEST(Doppler, Bound) {
  EXPECT_NEAR(doppler_q_bound(70.0), 4.283e6, 1e3);
  EXPECT_DOUBLE_EQ(doppler_q_bound(constants::c), 1.0);
  EXPECT_DOUBLE_EQ(doppler_q_bound(35.0), 2.0 * doppler_q_bound(70.0));
  EXPECT_THROW(doppler_q_bound(0.0), std::invalid_argument);
}

TEST(Doppler, CsFAtTenKelvinIsAboutSeventyMetresPerSecond) {
  EXPECT_NEAR(doppler_speed(csf(), 10.0), 70.0, 3.0);
  EXPECT_GT(doppler_q_bound(doppler_speed(csf(), 10.0)), 1e6);
}
