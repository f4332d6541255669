#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mlspec/errors.hpp"
#include "mlspec/kratzer.hpp"
#include "mlspec/oracle.hpp"
#include "mlspec/pho.hpp"
#include "mlspec/tridiagonal.hpp"

using namespace mlspec;

namespace {

RadialPotential coulomb(double g2) {
  return [g2](double r) { return -g2 / r; };
}

int sign_changes(const std::vector<double>& u) {
  double peak = 0.0;
  for (double x : u) peak = std::max(peak, std::abs(x));
  int changes = 0;
  double last = 0.0;
  for (double x : u) {
    if (std::abs(x) < 1e-8 * peak) continue;
    if (last != 0.0 && (x > 0) != (last > 0)) ++changes;
    last = x;
  }
  return changes;
}

}  // namespace

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
  const std::size_t size = 50;
  SymmetricTridiagonal t(std::vector<double>(size, 2.0), std::vector<double>(size - 1, -1.0));
  const auto values = t.lowest_eigenvalues(5);
  for (std::size_t k = 0; k < 5; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(M_PI * double(k + 1) / double(size + 1));
    CHECK(values[k] == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(t.count_below(values[2] + 1e-9) == 3);

  const auto vec = t.eigenvector(values[1]);
  double dot = 0.0;
  for (std::size_t i = 0; i < size; ++i) dot += vec[i] * std::sin(2 * M_PI * double(i + 1) / double(size + 1));
  double norm = 0.0;
  for (std::size_t i = 0; i < size; ++i) norm += std::pow(std::sin(2 * M_PI * double(i + 1) / double(size + 1)), 2);
  CHECK(std::abs(dot) / std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("shifted solve with pivoting") {
  SymmetricTridiagonal t({1.0, 0.0, 3.0}, {2.0, -1.0});
  std::vector<double> x{1.0, 2.0, 3.0};
  t.solve_shifted(0.5, x);
  // (T - 0.5) x = b
  CHECK(0.5 * x[0] + 2.0 * x[1] == doctest::Approx(1.0));
  CHECK(2.0 * x[0] - 0.5 * x[1] - x[2] == doctest::Approx(2.0));
  CHECK(-x[1] + 2.5 * x[2] == doctest::Approx(3.0));
}

TEST_CASE("Coulomb levels, nodes and normalization") {
  const RadialGrid grid(1e-9, 80.0, 8001);
  const auto states = solve_radial(coulomb(1.0), 0, 1.0, grid, 3);
  REQUIRE(states.size() == 3);
  CHECK(states[0].energy == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(states[1].energy == doctest::Approx(-0.125).epsilon(1e-4));
  for (int k = 0; k < 3; ++k) {
    CHECK(states[k].qn.n == k);
    CHECK(sign_changes(states[k].u) == k);
    CHECK(states[k].norm_check == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(states[k].u.front() == 0.0);
    CHECK(states[k].u.back() == 0.0);
  }
}

TEST_CASE("Coulomb refinement converges at second order") {
  RadialProblem problem{coulomb(1.0), 0, 1.0, RadialGrid(1e-9, 60.0, 2001), 2};
  const RefinementResult result = refine_to_tolerance(problem, RefineOptions{1e-6, std::nullopt, 6});
  CHECK(result.history.size() <= 4);
  CHECK(result.levels[0].energy == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(result.levels[1].energy == doctest::Approx(-0.125).epsilon(1e-6));

  // order from three nested grids: log2((E0 - E1) / (E1 - E2))
  const RadialGrid g0(1e-9, 60.0, 4001);
  const double e0 = solve_radial(coulomb(1.0), 0, 1.0, g0, 1)[0].energy;
  const double e1 = solve_radial(coulomb(1.0), 0, 1.0, g0.refined(), 1)[0].energy;
  const double e2 = solve_radial(coulomb(1.0), 0, 1.0, g0.refined().refined(), 1)[0].energy;
  const double order = std::log2((e0 - e1) / (e1 - e2));
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
}

TEST_CASE("Coulomb with angular momentum") {
  RadialProblem problem{coulomb(2.0), 1, 1.5, RadialGrid(1e-9, 40.0, 2001), 2};
  const auto result = refine_to_tolerance(problem, RefineOptions{1e-7, std::nullopt, 6});
  for (int n = 0; n < 2; ++n)
    CHECK(result.levels[n].energy == doctest::Approx(-1.5 * 4.0 / (2.0 * (n + 2) * (n + 2))).epsilon(1e-7));
}

TEST_CASE("refinement contract") {
  RadialProblem problem{coulomb(1.0), 0, 1.0, RadialGrid(1e-9, 60.0, 2001), 1};
  CHECK_THROWS_AS(refine_to_tolerance(problem, RefineOptions{1e-9, std::nullopt, 6}), DomainError);
  CHECK_THROWS_AS(refine_to_tolerance(problem, RefineOptions{1e-6, std::nullopt, 1}), DomainError);

  // a ladder too short for the target fails loudly and keeps its history
  try {
    refine_to_tolerance(problem, RefineOptions{1e-8, std::nullopt, 2});
    FAIL("expected a refinement error");
  } catch (const RefinementError& e) {
    CHECK(e.history().size() == 2);
    CHECK(std::string(e.what()).find("points=") != std::string::npos);
  }

  // an easy target is met after one confirmation grid
  const auto loose = refine_to_tolerance(problem, RefineOptions{1e-2, std::nullopt, 6});
  CHECK(loose.history.size() == 2);
}

TEST_CASE("boxes that are too small are rejected") {
  CHECK_THROWS_AS(solve_radial(coulomb(1.0), 0, 1.0, RadialGrid(1e-4, 6.0, 2001), 3), ConvergenceError);
  CHECK_THROWS_AS(RadialGrid(0.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(RadialGrid(1.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(RadialGrid(0.1, 1.0, 2), DomainError);
}

TEST_CASE("synthetic Kratzer point from the oracle") {
  const Molecule m("unit", 1.0, 1.0, 1.0);
  const auto v = KratzerPotential::from_molecule(m);
  const RadialGrid grid = suggest_grid(v, 0, 1.0, 1.0, 1, 2001);
  const auto result = refine_to_tolerance(RadialProblem{v, 0, 1.0, grid, 1}, RefineOptions{1e-8, 1e-6, 8});
  CHECK(result.levels[0].energy == doctest::Approx(-0.5).epsilon(1e-4));
  const double beta = 1e-3;
  CHECK(beta / m.reduced_mass() * result.levels[0].p4 == doctest::Approx(beta).epsilon(1e-4));
}

TEST_CASE("eigenstate properties for both molecular potentials") {
  const Molecule m = Molecule::with_gamma(40.0);
  const double mu = m.reduced_mass();
  const std::vector<RadialPotential> potentials{KratzerPotential::from_molecule(m), PhoPotential::from_molecule(m)};
  for (const auto& v : potentials) {
    std::vector<std::vector<double>> energies;
    for (int l = 0; l <= 2; ++l) {
      const RadialGrid grid = suggest_grid(v, l, mu, 1.0, 4, 4001);
      const auto states = solve_radial(v, l, mu, grid, 4);
      std::vector<double> row;
      for (const auto& s : states) {
        row.push_back(s.energy);
        CHECK(sign_changes(s.u) == s.qn.n);
        CHECK(p4_expectation(s, v, mu) > 0.0);
        // <p^2>/2mu = E - <V>
        const double kinetic = kinetic_expectation(s, mu);
        CHECK(kinetic == doctest::Approx(s.energy - potential_expectation(s, v)).epsilon(1e-6));
        // the direct fourth-derivative route agrees to discretization error
        CHECK(p4_expectation_direct(s) == doctest::Approx(p4_expectation(s, v, mu)).epsilon(1e-3));
        CHECK(perturbative_correction(s, v, mu, Deformation(0.0)) == 0.0);
        CHECK(perturbative_correction(s, v, mu, Deformation(2e-6)) ==
              doctest::Approx(2 * perturbative_correction(s, v, mu, Deformation(1e-6))).epsilon(1e-14));
      }
      for (std::size_t n = 1; n < row.size(); ++n) CHECK(row[n] > row[n - 1]);
      energies.push_back(row);
    }
    for (std::size_t l = 1; l < energies.size(); ++l)
      for (std::size_t n = 0; n < energies[l].size(); ++n) CHECK(energies[l][n] > energies[l - 1][n]);
  }
}

TEST_CASE("halving r_min leaves Kratzer levels unchanged") {
  const Molecule m = Molecule::with_gamma(20.0);
  const auto v = KratzerPotential::from_molecule(m);
  const RadialGrid base = suggest_grid(v, 0, m.reduced_mass(), 1.0, 4, 2001);
  const RadialGrid inner(base.r_min() / 2, base.r_max(), base.point_count());
  const RefineOptions options{1e-10 * 100, std::nullopt, 8};
  const auto a = refine_to_tolerance(RadialProblem{v, 0, m.reduced_mass(), base, 4}, options);
  const auto b = refine_to_tolerance(RadialProblem{v, 0, m.reduced_mass(), inner, 4}, options);
  for (int n = 0; n < 4; ++n)
    CHECK(std::abs(a.levels[n].energy - b.levels[n].energy) <= 1e-8 * std::abs(a.levels[n].energy));
}

TEST_CASE("closed forms agree with the oracle at gamma = 100") {
  const Molecule m = Molecule::with_gamma(100.0);
  const double mu = m.reduced_mass();
  const Deformation d(1e-6);
  const auto k = KratzerPotential::from_molecule(m);
  const auto p = PhoPotential::from_molecule(m);
  for (int l : {0, 2}) {
    const auto kr = refine_to_tolerance(RadialProblem{k, l, mu, suggest_grid(k, l, mu, 1.0, 4, 2001), 4},
                                        RefineOptions{1e-8, 1e-6, 6});
    const auto pr = refine_to_tolerance(RadialProblem{p, l, mu, suggest_grid(p, l, mu, 1.0, 4, 2001), 4},
                                        RefineOptions{1e-8, 1e-6, 6});
    for (int n = 0; n < 4; ++n) {
      const QuantumNumbers qn(n, l);
      const EnergyLevel kc = kratzer_energy_deformed(m, d, qn);
      CHECK(kr.levels[n].energy == doctest::Approx(kc.e0).epsilon(1e-6));
      CHECK(d.beta() / mu * kr.levels[n].p4 == doctest::Approx(kc.de).epsilon(1e-4));
      const EnergyLevel pc = pho_energy_deformed(m, d, qn);
      CHECK(pr.levels[n].energy == doctest::Approx(pc.e0).epsilon(1e-6));
      CHECK(d.beta() / mu * pr.levels[n].p4 == doctest::Approx(pc.de).epsilon(1e-4));
    }
  }
}

TEST_CASE("eigenstate dump format") {
  const auto states = solve_radial(coulomb(1.0), 0, 1.0, RadialGrid(1e-4, 40.0, 101), 1);
  std::ostringstream out;
  write_eigenstate(out, states[0]);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("# n=0 l=0", 0) == 0);
  int rows = 0;
  double r = 0.0;
  double u = 0.0;
  while (in >> r >> u) ++rows;
  CHECK(rows == 101);
}
