#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rotocool {

/// Spectroscopic record as it appears in tables: wavenumbers in cm^-1,
/// dipole in Debye, mass in amu.
struct RawSpecies {
  std::string name;
  double be_cm = 0.0;
  double alpha_e_cm = 0.0;
  double we_cm = 0.0;
  double wexe_cm = 0.0;
  double te_cm = 0.0;
  double dipole_debye = 0.0;
  std::optional<double> reduced_dipole_debye;  // defaults to dipole_debye
  double mass_amu = 0.0;
  int omega_x2 = 0;
};

/// A diatomic species in SI units. Term values are m^-1, dipoles C m, mass kg.
struct MolecularSpecies {
  std::string name;
  double mass = 0.0;
  int twoOmega = 0;
  double Te = 0.0;
  double omega_e = 0.0;
  double omega_e_x_e = 0.0;
  double B_e = 0.0;
  double alpha_e = 0.0;
  double dipole = 0.0;
  double reduced_dipole = 0.0;

  /// 2B_e - alpha_e: the n=0 zero-field spacing of J -> J-1 is J times this.
  [[nodiscard]] double ladder_step() const { return 2.0 * B_e - alpha_e; }
};

class SpeciesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Converts a table record to SI and checks the physical invariants
/// (B_e > 0, alpha_e >= 0, 2B_e > alpha_e, dipole > 0, mass > 0).
MolecularSpecies ingest_species(const RawSpecies& raw);

/// Inverse of ingest_species, for reporting.
RawSpecies to_table_units(const MolecularSpecies& species);

const std::vector<MolecularSpecies>& builtin_registry();
std::optional<MolecularSpecies> find_species(std::string_view name);

}  // namespace rotocool
