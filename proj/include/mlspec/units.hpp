#pragma once

#include <optional>
#include <string_view>

/**
 * Internal unit system.
 *
 * hbar = 1, energies in eV, lengths in angstrom. Masses then carry units of
 * 1/(eV * angstrom^2) and the deformation parameter beta has units of
 * angstrom^2 (inverse momentum squared with hbar = 1). All conversions to and
 * from the spectroscopic units used in data files and CLI output live here.
 *
 * Constants are CODATA 2018.
 */
namespace mlspec::units {

/// hbar * c in eV * angstrom.
inline constexpr double kHbarC = 1973.269804;
/// Atomic mass constant m_u c^2 in eV.
inline constexpr double kAtomicMassEnergy = 931.49410242e6;
/// hbar^2 / (1 amu * 1 angstrom^2) in eV.
inline constexpr double kHbar2PerAmuAngstrom2 = kHbarC * kHbarC / kAtomicMassEnergy;
/// 1 eV expressed in cm^-1, i.e. 1 / (h c) with h c = 1.239841984e-4 eV cm.
inline constexpr double kWavenumberPerEv = 1.0 / 1.239841984e-4;

}  // namespace mlspec::units

namespace mlspec {

enum class EnergyUnit { Wavenumber, ElectronVolt, Internal };

/// Accepts "cm-1", "eV" and "internal" (case-sensitive, as on the command line).
std::optional<EnergyUnit> parse_energy_unit(std::string_view text);
std::string_view to_string(EnergyUnit unit);

struct UnitSystem {
  static double energy_to_internal(double value, EnergyUnit unit);
  static double energy_from_internal(double value, EnergyUnit unit);

  static constexpr double length_from_angstrom(double angstrom) { return angstrom; }
  static constexpr double length_to_angstrom(double internal) { return internal; }

  static constexpr double mass_from_amu(double amu) {
    return amu / units::kHbar2PerAmuAngstrom2;
  }
  static constexpr double mass_to_amu(double internal) {
    return internal * units::kHbar2PerAmuAngstrom2;
  }

  static constexpr double hbar = 1.0;
};

}  // namespace mlspec
