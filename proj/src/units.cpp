#include "mlspec/units.hpp"

#include <stdexcept>

namespace mlspec {

std::optional<EnergyUnit> parse_energy_unit(std::string_view text) {
  if (text == "cm-1") return EnergyUnit::Wavenumber;
  if (text == "eV") return EnergyUnit::ElectronVolt;
  if (text == "internal") return EnergyUnit::Internal;
  return std::nullopt;
}

std::string_view to_string(EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::Wavenumber: return "cm-1";
    case EnergyUnit::ElectronVolt: return "eV";
    case EnergyUnit::Internal: return "internal";
  }
  return "?";
}

double UnitSystem::energy_to_internal(double value, EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::Wavenumber: return value / units::kWavenumberPerEv;
    case EnergyUnit::ElectronVolt:
    case EnergyUnit::Internal: return value;
  }
  throw std::invalid_argument("unknown energy unit");
}

double UnitSystem::energy_from_internal(double value, EnergyUnit unit) {
  switch (unit) {
    case EnergyUnit::Wavenumber: return value * units::kWavenumberPerEv;
    case EnergyUnit::ElectronVolt:
    case EnergyUnit::Internal: return value;
  }
  throw std::invalid_argument("unknown energy unit");
}

}  // namespace mlspec
