#include "mlspec/core.hpp"

#include <cmath>
#include <utility>

#include "mlspec/errors.hpp"
#include "mlspec/units.hpp"

namespace mlspec {

namespace {

void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || value <= 0.0)
    throw DomainError(std::string(what) + " must be finite and positive");
}

}  // namespace

Molecule::Molecule(std::string name, double dissociation_energy, double equilibrium_distance,
                   double reduced_mass)
    : name_(std::move(name)),
      de_(dissociation_energy),
      re_(equilibrium_distance),
      mu_(reduced_mass) {
  require_positive(de_, "dissociation energy");
  require_positive(re_, "equilibrium distance");
  require_positive(mu_, "reduced mass");
}

Molecule Molecule::from_spectroscopic(std::string name, double de_ev, double re_angstrom,
                                      double mu_amu) {
  return Molecule(std::move(name), UnitSystem::energy_to_internal(de_ev, EnergyUnit::ElectronVolt),
                  UnitSystem::length_from_angstrom(re_angstrom),
                  UnitSystem::mass_from_amu(mu_amu));
}

Molecule Molecule::with_gamma(double g, std::string name) {
  require_positive(g, "gamma");
  // gamma^2 = 2 mu De re^2 / hbar^2 with De = re = hbar = 1
  return Molecule(std::move(name), 1.0, 1.0, 0.5 * g * g);
}

Deformation::Deformation(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || beta < 0.0)
    throw DomainError("deformation parameter beta must be finite and >= 0");
}

QuantumNumbers::QuantumNumbers(int n_, int l_) : n(n_), l(l_) {
  if (n < 0 || l < 0) throw DomainError("quantum numbers must be non-negative");
}

double spectroscopic_energy(const SpectroscopicConstants& c, QuantumNumbers qn) {
  const double v = qn.n + 0.5;
  const double rot = static_cast<double>(qn.l) * (qn.l + 1);
  return c.Y00 + c.we * v - c.wexe * v * v + c.weye * v * v * v + c.Be * rot -
         c.alphae * v * rot;
}

std::string_view to_string(PotentialKind kind) {
  return kind == PotentialKind::Kratzer ? "kratzer" : "pho";
}

PotentialKind parse_potential_kind(std::string_view text) {
  if (text == "kratzer") return PotentialKind::Kratzer;
  if (text == "pho") return PotentialKind::Pho;
  throw DomainError("unknown potential '" + std::string(text) + "' (expected kratzer or pho)");
}

double gamma(const Molecule& m) {
  return m.equilibrium_distance() * std::sqrt(2.0 * m.reduced_mass() * m.dissociation_energy()) /
         UnitSystem::hbar;
}

double lambda_kratzer(double g, int l) {
  const double a = l + 0.5;
  return 0.5 + std::sqrt(a * a + g * g);
}

double lambda_pho(double g, int l) {
  const double a = l + 0.5;
  return std::sqrt(g * g + a * a);
}

double minimal_length(const Deformation& d) {
  return UnitSystem::hbar * std::sqrt(5.0 * d.beta());
}

Deformation beta_from_minimal_length(double length) {
  if (!std::isfinite(length) || length < 0.0)
    throw DomainError("minimal length must be finite and >= 0");
  const double hbar = UnitSystem::hbar;
  return Deformation(length * length / (5.0 * hbar * hbar));
}

}  // namespace mlspec
