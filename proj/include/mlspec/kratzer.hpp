#pragma once

#include "mlspec/core.hpp"

/// Kratzer molecular potential V(r) = g1/r^2 - g2/r in minimal-length quantum mechanics.
namespace mlspec {

struct KratzerPotential {
  double g1 = 0.0;  ///< De re^2
  double g2 = 0.0;  ///< 2 De re

  /// Throws DomainError unless g1 > 0 and g2 > 0.
  KratzerPotential(double g1_, double g2_);
  static KratzerPotential from_molecule(const Molecule& m);

  double dissociation_energy() const { return g2 * g2 / (4.0 * g1); }
  double equilibrium_distance() const { return 2.0 * g1 / g2; }

  /// Same as kratzer_potential_value but without the r > 0 check.
  double operator()(double r) const { return g1 / (r * r) - g2 / r; }
};

/// g1/r^2 - g2/r. Throws DomainError for r <= 0.
double kratzer_potential_value(const KratzerPotential& p, double r);

/// -gamma^2 De / (lambda + n)^2.
double kratzer_energy_undeformed(const Molecule& m, QuantumNumbers qn);

/// Closed-form first-order minimal-length spectrum. Throws DomainError when
/// lambda <= 3/2, where the correction has poles.
EnergyLevel kratzer_energy_deformed(const Molecule& m, const Deformation& d, QuantumNumbers qn);

/// Truncated large-gamma series split into its two parts.
struct SeriesParts {
  double undeformed = 0.0;
  double correction = 0.0;
  double total() const { return undeformed + correction; }
};

/**
 * Large-gamma expansion of the deformed spectrum through 1/gamma^3, with
 * v = n + 1/2 and w = l + 1/2:
 *
 *   De [-1 + 2v/g + (w^2 - 3v^2)/g^2 + (4v^3 - 3v w^2)/g^3]
 *   + beta mu De^2 [6(v^2 + 1/4)/g^2 + 2v(-1/4 + 4w^2 - 15v^2)/g^3]
 *
 * The coefficients were obtained by re-expanding the closed form. The
 * omitted 1/g^4 terms are -(v^2 - w^2)(5v^2 - w^2) for the ordinary part and
 * (720v^4 - 432v^2w^2 - 72v^2 + 32w^4 - 92w^2 + 39)/8 for the beta part.
 */
SeriesParts kratzer_expansion_parts(const Molecule& m, const Deformation& d, QuantumNumbers qn);
double kratzer_energy_expansion(const Molecule& m, const Deformation& d, QuantumNumbers qn);

/// Deformed constants from identifying the series with the master formula.
/// Energies are measured from the bottom of the well (V(re) = -De).
SpectroscopicConstants kratzer_spectroscopic_constants(const Molecule& m, const Deformation& d);

}  // namespace mlspec
