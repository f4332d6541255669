#pragma once

#include "mlspec/core.hpp"
#include "mlspec/kratzer.hpp"

/// Pseudoharmonic oscillator V(r) = De (r/re - re/r)^2 in minimal-length quantum mechanics.
namespace mlspec {

struct PhoPotential {
  double de = 0.0;
  double re = 0.0;

  PhoPotential(double de_, double re_);
  static PhoPotential from_molecule(const Molecule& m);

  double operator()(double r) const {
    const double x = r / re - re / r;
    return de * x * x;
  }
};

/// De (r/re - re/r)^2. Throws DomainError for r <= 0.
double pho_potential_value(const PhoPotential& p, double r);

/// -2 De (1 - (2n + 1 + lambda)/gamma), lambda = lambda_pho(gamma, l).
double pho_energy_undeformed(const Molecule& m, QuantumNumbers qn);

/// Closed-form first-order minimal-length spectrum. Throws DomainError when
/// lambda <= 1 (pole of the lambda (lambda^2 - 1) denominator).
EnergyLevel pho_energy_deformed(const Molecule& m, const Deformation& d, QuantumNumbers qn);

/**
 * Large-gamma expansion through 1/gamma^3 (v = n + 1/2, w = l + 1/2):
 *
 *   De [4v/g + w^2/g^2] + beta mu De^2 [6(4v^2 + 1)/g^2 + 8v(2w^2 + 1)/g^3]
 *
 * The ordinary part has no 1/g^3 term. Next omitted terms are -De w^4/(4g^4)
 * and 4 beta mu De^2 (w^2 - 1)^2/g^4.
 */
SeriesParts pho_expansion_parts(const Molecule& m, const Deformation& d, QuantumNumbers qn);
double pho_energy_expansion(const Molecule& m, const Deformation& d, QuantumNumbers qn);

/// Y00 = (1/4 + 6 mu beta De) De/g^2, we = (4De/g)(1 + 3 mu beta De/g^2),
/// wexe = -24 mu beta De^2/g^2, weye = 0, Be = De/g^2, alphae = -16 mu beta De^2/g^3.
SpectroscopicConstants pho_spectroscopic_constants(const Molecule& m, const Deformation& d);

}  // namespace mlspec
