#include "rotocool/species.hpp"

#include <cmath>

#include "rotocool/constants.hpp"

namespace rotocool {

namespace {

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw SpeciesError(std::string(field) + ": value is not finite");
  }
}

}  // namespace

MolecularSpecies ingest_species(const RawSpecies& raw) {
  require_finite(raw.be_cm, "be_cm");
  require_finite(raw.alpha_e_cm, "alpha_e_cm");
  require_finite(raw.we_cm, "we_cm");
  require_finite(raw.wexe_cm, "wexe_cm");
  require_finite(raw.te_cm, "te_cm");
  require_finite(raw.dipole_debye, "dipole_debye");
  require_finite(raw.mass_amu, "mass_amu");
  if (raw.reduced_dipole_debye) require_finite(*raw.reduced_dipole_debye, "reduced_dipole_debye");

  if (raw.be_cm <= 0.0) throw SpeciesError("be_cm: non-positive rotational constant");
  if (raw.alpha_e_cm < 0.0) throw SpeciesError("alpha_e_cm: negative vibration-rotation constant");
  if (2.0 * raw.be_cm <= raw.alpha_e_cm) {
    throw SpeciesError("alpha_e_cm: 2*be_cm must exceed alpha_e_cm");
  }
  if (raw.dipole_debye <= 0.0) throw SpeciesError("dipole_debye: non-positive dipole");
  if (raw.reduced_dipole_debye && *raw.reduced_dipole_debye <= 0.0) {
    throw SpeciesError("reduced_dipole_debye: non-positive dipole");
  }
  if (raw.mass_amu <= 0.0) throw SpeciesError("mass_amu: non-positive mass");
  if (raw.omega_x2 < 0) throw SpeciesError("omega_x2: must be non-negative");

  using namespace constants;
  MolecularSpecies s;
  s.name = raw.name;
  s.mass = raw.mass_amu * amu_to_kg;
  s.twoOmega = raw.omega_x2;
  s.Te = raw.te_cm * per_cm_to_per_m;
  s.omega_e = raw.we_cm * per_cm_to_per_m;
  s.omega_e_x_e = raw.wexe_cm * per_cm_to_per_m;
  s.B_e = raw.be_cm * per_cm_to_per_m;
  s.alpha_e = raw.alpha_e_cm * per_cm_to_per_m;
  s.dipole = raw.dipole_debye * debye_to_SI;
  s.reduced_dipole = raw.reduced_dipole_debye.value_or(raw.dipole_debye) * debye_to_SI;
  return s;
}

RawSpecies to_table_units(const MolecularSpecies& s) {
  using namespace constants;
  RawSpecies raw;
  raw.name = s.name;
  raw.be_cm = s.B_e / per_cm_to_per_m;
  raw.alpha_e_cm = s.alpha_e / per_cm_to_per_m;
  raw.we_cm = s.omega_e / per_cm_to_per_m;
  raw.wexe_cm = s.omega_e_x_e / per_cm_to_per_m;
  raw.te_cm = s.Te / per_cm_to_per_m;
  raw.dipole_debye = s.dipole / debye_to_SI;
  raw.reduced_dipole_debye = s.reduced_dipole / debye_to_SI;
  raw.mass_amu = s.mass / amu_to_kg;
  raw.omega_x2 = s.twoOmega;
  return raw;
}

const std::vector<MolecularSpecies>& builtin_registry() {
  // CsF X1Sigma+ and OH X2Pi_1/2. Masses are standard atomic weights; OH
  // vibrational constants are the usual ground-state table values.
  static const std::vector<MolecularSpecies> registry = [] {
    std::vector<MolecularSpecies> out;

    RawSpecies csf;
    csf.name = "CsF";
    csf.be_cm = 0.1844;
    csf.alpha_e_cm = 1.18e-3;
    csf.we_cm = 352.56;
    csf.wexe_cm = 1.61;
    csf.dipole_debye = 7.87;
    csf.mass_amu = 151.9;
    csf.omega_x2 = 0;
    out.push_back(ingest_species(csf));

    RawSpecies oh;
    oh.name = "OH";
    oh.be_cm = 18.91;
    oh.alpha_e_cm = 0.724;
    oh.we_cm = 3737.76;
    oh.wexe_cm = 84.88;
    oh.dipole_debye = 1.6676;
    oh.mass_amu = 17.01;
    oh.omega_x2 = 1;
    out.push_back(ingest_species(oh));

    return out;
  }();
  return registry;
}

std::optional<MolecularSpecies> find_species(std::string_view name) {
  for (const auto& s : builtin_registry()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace rotocool
