#include <doctest.h>

#include <cmath>

#include "mlspec/errors.hpp"
#include "mlspec/kratzer.hpp"
#include "mlspec/pho.hpp"

using namespace mlspec;

namespace {
const Molecule unit("unit", 1.0, 1.0, 1.0);
}

TEST_CASE("Kratzer potential values") {
  const auto p = KratzerPotential::from_molecule(unit);
  CHECK(kratzer_potential_value(p, 1.0) == -1.0);
  CHECK(kratzer_potential_value(p, 0.5) == 0.0);
  CHECK(kratzer_potential_value(p, 1e8) < 0.0);
  CHECK(kratzer_potential_value(p, 1e8) > -1e-7);
  CHECK_THROWS_AS(kratzer_potential_value(p, 0.0), DomainError);
  CHECK_THROWS_AS(kratzer_potential_value(p, -1.0), DomainError);
  CHECK(p.dissociation_energy() == doctest::Approx(1.0));
  CHECK(p.equilibrium_distance() == doctest::Approx(1.0));
  const auto q = KratzerPotential::from_molecule(Molecule("m", 3.0, 0.8, 1.0));
  for (double r : {0.79, 0.81}) CHECK(q(r) > q(0.8));
}

TEST_CASE("Kratzer undeformed spectrum") {
  CHECK(kratzer_energy_undeformed(unit, QuantumNumbers(0, 0)) == doctest::Approx(-0.5).epsilon(1e-15));
  const Molecule m = Molecule::with_gamma(30.0);
  double previous = -m.dissociation_energy();
  for (int n = 0; n < 400; n += 7) {
    const double e = kratzer_energy_undeformed(m, QuantumNumbers(n, 1));
    CHECK(e > previous);
    CHECK(e < 0.0);
    previous = e;
  }
  CHECK(previous > -0.05);
}

TEST_CASE("Kratzer deformed spectrum at the synthetic point") {
  for (double beta : {1e-6, 1e-3, 0.25}) {
    const EnergyLevel level = kratzer_energy_deformed(unit, Deformation(beta), QuantumNumbers(0, 0));
    CHECK(level.e0 == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(level.de / beta == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(kratzer_energy_deformed(unit, Deformation(0.2), QuantumNumbers(0, 0)).first_order_warning);
  CHECK_FALSE(kratzer_energy_deformed(unit, Deformation(1e-3), QuantumNumbers(0, 0)).first_order_warning);
  CHECK_THROWS_AS(kratzer_energy_deformed(Molecule::with_gamma(0.5), Deformation(1e-3), QuantumNumbers(0, 0)),
                  DomainError);
}

TEST_CASE("beta = 0 reduces both potentials bit for bit") {
  for (double g : {1.7, 20.0, 100.0, 3000.0})
    for (int n = 0; n <= 5; ++n)
      for (int l = 0; l <= 5; ++l) {
        const Molecule m = Molecule::with_gamma(g);
        const QuantumNumbers qn(n, l);
        const EnergyLevel k = kratzer_energy_deformed(m, Deformation(0.0), qn);
        CHECK(k.de == 0.0);
        CHECK(k.total == kratzer_energy_undeformed(m, qn));
        const EnergyLevel p = pho_energy_deformed(m, Deformation(0.0), qn);
        CHECK(p.de == 0.0);
        CHECK(p.total == pho_energy_undeformed(m, qn));
      }
}

TEST_CASE("corrections are linear in beta") {
  const Molecule m = Molecule::from_spectroscopic("HCl", 4.619, 1.2746, 0.9801);
  for (int n = 0; n <= 3; ++n)
    for (int l = 0; l <= 3; ++l) {
      const QuantumNumbers qn(n, l);
      const double k1 = kratzer_energy_deformed(m, Deformation(1e-5), qn).de;
      const double k2 = kratzer_energy_deformed(m, Deformation(2e-5), qn).de;
      CHECK(k2 == doctest::Approx(2 * k1).epsilon(1e-14));
      const double p1 = pho_energy_deformed(m, Deformation(1e-5), qn).de;
      const double p2 = pho_energy_deformed(m, Deformation(2e-5), qn).de;
      CHECK(p2 == doctest::Approx(2 * p1).epsilon(1e-14));
      CHECK(k1 > 0.0);
      CHECK(p1 > 0.0);
    }
}

TEST_CASE("Kratzer expansion converges at fourth order") {
  const Molecule m = Molecule::with_gamma(1e4);
  CHECK(kratzer_energy_expansion(m, Deformation(0.0), QuantumNumbers(0, 0)) ==
        doctest::Approx(kratzer_energy_undeformed(m, QuantumNumbers(0, 0))).epsilon(1e-15));
  CHECK(kratzer_expansion_parts(Molecule::with_gamma(1e12), Deformation(), QuantumNumbers(0, 0)).undeformed ==
        doctest::Approx(-1.0).epsilon(1e-11));

  // the omitted 1/g^4 coefficients predict the truncation error
  const QuantumNumbers qn(2, 1);
  const double v = 2.5;
  const double w = 1.5;
  const double g = 400.0;
  const Molecule mg = Molecule::with_gamma(g);
  const Deformation d(1e-3);
  const SeriesParts parts = kratzer_expansion_parts(mg, d, qn);
  const EnergyLevel exact = kratzer_energy_deformed(mg, d, qn);
  const double g4 = std::pow(g, 4);
  CHECK((exact.e0 - parts.undeformed) * g4 == doctest::Approx(-(v * v - w * w) * (5 * v * v - w * w)).epsilon(2e-2));
  const double scale = d.beta() * mg.reduced_mass();
  const double c4 = (720 * std::pow(v, 4) - 432 * v * v * w * w - 72 * v * v + 32 * std::pow(w, 4) - 92 * w * w + 39) / 8;
  CHECK((exact.de - parts.correction) / scale * g4 == doctest::Approx(c4).epsilon(2e-2));
}

TEST_CASE("Kratzer closed-form constants") {
  const auto c0 = kratzer_spectroscopic_constants(unit, Deformation(0.0));
  CHECK(c0.we == doctest::Approx(2 / std::sqrt(2.0) - 0.75 / (2 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(c0.we == doctest::Approx(1.1490485).epsilon(1e-7));
  const Molecule m = Molecule::with_gamma(100.0);
  const auto a = kratzer_spectroscopic_constants(m, Deformation(0.0));
  CHECK(a.Be == doctest::Approx(1e-4).epsilon(1e-14));
  for (double value : {a.we, a.wexe, a.weye, a.Be, a.alphae}) CHECK(value > 0.0);
  for (double beta : {1e-8, 1e-6, 1e-3}) CHECK(kratzer_spectroscopic_constants(m, Deformation(beta)).Be == a.Be);
}

TEST_CASE("PHO potential values") {
  const auto p = PhoPotential::from_molecule(unit);
  CHECK(pho_potential_value(p, 1.0) == 0.0);
  CHECK(pho_potential_value(p, 2.0) == 2.25);
  for (double k : {0.3, 1.7, 5.0}) CHECK(pho_potential_value(p, k) == doctest::Approx(pho_potential_value(p, 1 / k)));
  CHECK_THROWS_AS(pho_potential_value(p, 0.0), DomainError);
}

TEST_CASE("PHO undeformed spectrum") {
  CHECK(pho_energy_undeformed(unit, QuantumNumbers(0, 0)) == doctest::Approx(-2 * (1 - 2.5 / std::sqrt(2.0))).epsilon(1e-15));
  CHECK(pho_energy_undeformed(unit, QuantumNumbers(0, 0)) == doctest::Approx(1.5355339).epsilon(1e-7));
  const Molecule m = Molecule::with_gamma(250.0);
  for (int l = 0; l <= 3; ++l)
    for (int n = 0; n < 6; ++n) {
      const double spacing =
          pho_energy_undeformed(m, QuantumNumbers(n + 1, l)) - pho_energy_undeformed(m, QuantumNumbers(n, l));
      CHECK(spacing == doctest::Approx(4 * m.dissociation_energy() / 250.0).epsilon(1e-12));
    }
}

TEST_CASE("PHO pole guard") {
  CHECK_THROWS_AS(pho_energy_deformed(Molecule::with_gamma(0.5), Deformation(1e-3), QuantumNumbers(0, 0)),
                  DomainError);
  CHECK_NOTHROW(pho_energy_deformed(Molecule::with_gamma(0.5), Deformation(1e-3), QuantumNumbers(0, 1)));
}

TEST_CASE("PHO expansion") {
  const Molecule m = Molecule::with_gamma(1e4);
  const double g = 1e4;
  CHECK(pho_energy_expansion(m, Deformation(0.0), QuantumNumbers(0, 0)) ==
        doctest::Approx(1.0 / (4 * g * g) + 2.0 / g).epsilon(1e-14));
  CHECK(pho_energy_expansion(m, Deformation(0.0), QuantumNumbers(0, 0)) ==
        doctest::Approx(pho_energy_undeformed(m, QuantumNumbers(0, 0))).epsilon(1e-14));

  const QuantumNumbers qn(3, 2);
  const double w = 2.5;
  const double g2 = 300.0;
  const Molecule mg = Molecule::with_gamma(g2);
  const Deformation d(1e-3);
  const SeriesParts parts = pho_expansion_parts(mg, d, qn);
  const EnergyLevel exact = pho_energy_deformed(mg, d, qn);
  const double g4 = std::pow(g2, 4);
  CHECK((exact.e0 - parts.undeformed) * g4 == doctest::Approx(-std::pow(w, 4) / 4).epsilon(2e-2));
  CHECK((exact.de - parts.correction) / (d.beta() * mg.reduced_mass()) * g4 ==
        doctest::Approx(4 * std::pow(w * w - 1, 2)).epsilon(2e-2));
}

TEST_CASE("PHO constants") {
  const auto zero = pho_spectroscopic_constants(unit, Deformation(0.0));
  CHECK(zero.wexe == 0.0);
  CHECK(zero.alphae == 0.0);
  CHECK(zero.weye == 0.0);
  CHECK_FALSE(std::signbit(zero.wexe));
  CHECK_FALSE(std::signbit(zero.alphae));

  const Molecule m("m", 1.0, 10.0 / std::sqrt(2.0), 1.0);  // gamma = 10
  const auto c = pho_spectroscopic_constants(m, Deformation(1e-3));
  CHECK(c.wexe == doctest::Approx(-2.4e-4).epsilon(1e-13));
  CHECK(c.alphae < 0.0);
  CHECK(c.wexe < 0.0);

  for (double g : {3.0, 200.0}) {
    const Molecule mg = Molecule::with_gamma(g);
    CHECK(pho_spectroscopic_constants(mg, Deformation(1e-4)).Be ==
          kratzer_spectroscopic_constants(mg, Deformation(1e-4)).Be);
  }
}

TEST_CASE("PHO frequency matches the level spacing") {
  // De = 2 separates mu beta De from mu beta De^2 in the frequency correction.
  const Molecule m("m", 2.0, 1.0, 2500.0);  // gamma = 100
  const Deformation d(1e-4);
  const auto c = pho_spectroscopic_constants(m, d);
  const double spacing = pho_energy_deformed(m, d, QuantumNumbers(1, 0)).total -
                         pho_energy_deformed(m, d, QuantumNumbers(0, 0)).total;
  CHECK(std::abs(spacing - (c.we - 2 * c.wexe)) < 1e-8);
}
