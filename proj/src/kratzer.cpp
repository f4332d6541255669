#include "mlspec/kratzer.hpp"

#include <cmath>

#include "mlspec/errors.hpp"

namespace mlspec {

KratzerPotential::KratzerPotential(double g1_, double g2_) : g1(g1_), g2(g2_) {
  if (!(g1 > 0.0) || !(g2 > 0.0) || !std::isfinite(g1) || !std::isfinite(g2))
    throw DomainError("Kratzer couplings g1 and g2 must be positive");
}

KratzerPotential KratzerPotential::from_molecule(const Molecule& m) {
  const double de = m.dissociation_energy();
  const double re = m.equilibrium_distance();
  return KratzerPotential(de * re * re, 2.0 * de * re);
}

double kratzer_potential_value(const KratzerPotential& p, double r) {
  if (!(r > 0.0)) throw DomainError("Kratzer potential requires r > 0");
  return p(r);
}

double kratzer_energy_undeformed(const Molecule& m, QuantumNumbers qn) {
  const double g = gamma(m);
  const double shifted = lambda_kratzer(g, qn.l) + qn.n;
  return -g * g * m.dissociation_energy() / (shifted * shifted);
}

EnergyLevel kratzer_energy_deformed(const Molecule& m, const Deformation& d, QuantumNumbers qn) {
  const double g = gamma(m);
  const double lam = lambda_kratzer(g, qn.l);
  if (lam <= 1.5)
    throw DomainError("Kratzer minimal-length correction has a pole for lambda <= 3/2 (gamma = " +
                      std::to_string(g) + ")");

  EnergyLevel level;
  level.qn = qn;
  level.e0 = kratzer_energy_undeformed(m, qn);
  if (d.beta() != 0.0) {
    const double n = qn.n;
    const double g2 = g * g;
    const double shifted = lam + n;
    const double de = m.dissociation_energy();
    const double ratio = 2.0 * g / shifted;
    const double ratio2 = ratio * ratio;

    const double vib = shifted / (lam - 0.5) *
                       (1.0 + 0.5 * g2 * (1.0 / (shifted * shifted) - 2.0 / (lam * (lam - 1.0))));
    const double tail = 0.25 * g2 * g2 / ((lam - 0.5) * (lam - 1.0) * (lam - 1.5) * shifted) *
                        (1.0 + 3.0 * n * (2.0 * lam + n) / (lam * (2.0 * lam + 1.0)));
    const double bracket = -0.75 + vib + tail;

    level.de = d.beta() * m.reduced_mass() * de * de * ratio2 * ratio2 * bracket;
  }
  level.total = level.e0 + level.de;
  level.first_order_warning = std::abs(level.de) > 0.1 * std::abs(level.e0);
  return level;
}

SeriesParts kratzer_expansion_parts(const Molecule& m, const Deformation& d, QuantumNumbers qn) {
  const double g = gamma(m);
  const double v = qn.n + 0.5;
  const double w = qn.l + 0.5;
  const double v2 = v * v;
  const double w2 = w * w;
  const double de = m.dissociation_energy();

  SeriesParts parts;
  parts.undeformed =
      de * (-1.0 + 2.0 * v / g + (w2 - 3.0 * v2) / (g * g) + (4.0 * v2 * v - 3.0 * v * w2) / (g * g * g));
  if (d.beta() != 0.0) {
    const double scale = d.beta() * m.reduced_mass() * de * de;
    parts.correction = scale * (6.0 * (v2 + 0.25) / (g * g) +
                                2.0 * v * (-0.25 + 4.0 * w2 - 15.0 * v2) / (g * g * g));
  }
  return parts;
}

double kratzer_energy_expansion(const Molecule& m, const Deformation& d, QuantumNumbers qn) {
  return kratzer_expansion_parts(m, d, qn).total();
}

SpectroscopicConstants kratzer_spectroscopic_constants(const Molecule& m, const Deformation& d) {
  const double g = gamma(m);
  const double g2 = g * g;
  const double g3 = g2 * g;
  const double de = m.dissociation_energy();
  const double shift = d.beta() * m.reduced_mass() * de * de;

  SpectroscopicConstants c;
  c.Y00 = 0.25 * de / g2 + 1.5 * shift / g2;
  c.we = 2.0 * de / g - 0.75 * de / g3 + 1.5 * shift / g3;
  c.wexe = 3.0 * de / g2 - 6.0 * shift / g2;
  c.weye = 4.0 * de / g3 - 30.0 * shift / g3;
  c.Be = de / g2;
  c.alphae = 3.0 * de / g3 - 8.0 * shift / g3;
  return c;
}

}  // namespace mlspec
