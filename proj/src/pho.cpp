#include "mlspec/pho.hpp"

#include <cmath>
#include <string>

#include "mlspec/errors.hpp"

namespace mlspec {

PhoPotential::PhoPotential(double de_, double re_) : de(de_), re(re_) {
  if (!(de > 0.0) || !(re > 0.0) || !std::isfinite(de) || !std::isfinite(re))
    throw DomainError("PHO parameters De and re must be positive");
}

PhoPotential PhoPotential::from_molecule(const Molecule& m) {
  return PhoPotential(m.dissociation_energy(), m.equilibrium_distance());
}

double pho_potential_value(const PhoPotential& p, double r) {
  if (!(r > 0.0)) throw DomainError("PHO potential requires r > 0");
  return p(r);
}

double pho_energy_undeformed(const Molecule& m, QuantumNumbers qn) {
  const double g = gamma(m);
  const double lam = lambda_pho(g, qn.l);
  return -2.0 * m.dissociation_energy() * (1.0 - (2.0 * qn.n + 1.0 + lam) / g);
}

EnergyLevel pho_energy_deformed(const Molecule& m, const Deformation& d, QuantumNumbers qn) {
  const double g = gamma(m);
  const double lam = lambda_pho(g, qn.l);
  if (lam <= 1.0)
    throw DomainError("PHO minimal-length correction has a pole for lambda <= 1 (gamma = " +
                      std::to_string(g) + ")");

  EnergyLevel level;
  level.qn = qn;
  level.e0 = pho_energy_undeformed(m, qn);
  if (d.beta() != 0.0) {
    const double n = qn.n;
    const double de = m.dissociation_energy();
    const double e0 = level.e0;
    const double de2 = de * de;
    const double ladder = lam + 2.0 * n + 1.0;

    const double sum = e0 * e0 + 4.0 * de * e0 + 6.0 * de2 -
                       (4.0 * de2 + 2.0 * de * e0) * ladder / g +
                       de2 * (lam * lam + (6.0 * n + 3.0) * lam + 6.0 * n * (n + 1.0) + 2.0) / (g * g) -
                       g * 2.0 * de * (2.0 * de + e0) / lam +
                       de2 * g * g * ladder / (lam * (lam * lam - 1.0));
    level.de = 4.0 * m.reduced_mass() * d.beta() * sum;
  }
  level.total = level.e0 + level.de;
  level.first_order_warning = std::abs(level.de) > 0.1 * std::abs(level.e0);
  return level;
}

SeriesParts pho_expansion_parts(const Molecule& m, const Deformation& d, QuantumNumbers qn) {
  const double g = gamma(m);
  const double v = qn.n + 0.5;
  const double w2 = (qn.l + 0.5) * (qn.l + 0.5);
  const double de = m.dissociation_energy();

  SeriesParts parts;
  parts.undeformed = de * (4.0 * v / g + w2 / (g * g));
  if (d.beta() != 0.0) {
    const double scale = d.beta() * m.reduced_mass() * de * de;
    parts.correction =
        scale * (6.0 * (4.0 * v * v + 1.0) / (g * g) + 8.0 * v * (2.0 * w2 + 1.0) / (g * g * g));
  }
  return parts;
}

double pho_energy_expansion(const Molecule& m, const Deformation& d, QuantumNumbers qn) {
  return pho_expansion_parts(m, d, qn).total();
}

SpectroscopicConstants pho_spectroscopic_constants(const Molecule& m, const Deformation& d) {
  const double g = gamma(m);
  const double g2 = g * g;
  const double de = m.dissociation_energy();
  const double mbd = m.reduced_mass() * d.beta() * de;  // dimensionless

  SpectroscopicConstants c;
  c.Y00 = (0.25 + 6.0 * mbd) * de / g2;
  c.we = 4.0 * de / g * (1.0 + 3.0 * mbd / g2);
  c.weye = 0.0;
  c.Be = de / g2;
  if (mbd != 0.0) {
    c.wexe = -24.0 * mbd * de / g2;
    c.alphae = -16.0 * mbd * de / (g2 * g);
  }
  return c;
}

}  // namespace mlspec
