#include "mlspec/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mlspec/kratzer.hpp"
#include "mlspec/oracle.hpp"
#include "mlspec/pho.hpp"
#include "mlspec/spectroscopy.hpp"

namespace mlspec {

double relative_error(double a, double b) {
  if (a == b) return 0.0;
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::abs(b);
}

namespace {

struct Group {
  PotentialKind kind;
  double gamma;
  int l;
};

RadialPotential make_potential(PotentialKind kind, const Molecule& m) {
  if (kind == PotentialKind::Kratzer) return KratzerPotential::from_molecule(m);
  return PhoPotential::from_molecule(m);
}

void run_group(const SweepConfig& config, const Group& group, std::vector<SweepCell>& out) {
  const Molecule m = Molecule::with_gamma(group.gamma);
  const double mu = m.reduced_mass();
  const int count = config.n_max + 1;

  for (int n = 0; n < count; ++n) {
    SweepCell& cell = out[static_cast<std::size_t>(n)];
    cell.kind = group.kind;
    cell.gamma = group.gamma;
    cell.qn = QuantumNumbers(n, group.l);
  }

  std::vector<RefinementStep> history;
  std::vector<RefinedLevel> levels;
  try {
    for (int n = 0; n < count; ++n) {
      const EnergyLevel closed = deformed_level(group.kind, m, config.deformation, QuantumNumbers(n, group.l));
      out[static_cast<std::size_t>(n)].e0_closed = closed.e0;
      out[static_cast<std::size_t>(n)].de_closed = closed.de;
    }

    const RadialPotential potential = make_potential(group.kind, m);
    RadialGrid grid = suggest_grid(potential, group.l, mu, m.equilibrium_distance(), count,
                                   config.grid_points);
    if (config.r_max) grid = RadialGrid(grid.r_min(), *config.r_max, config.grid_points);

    RefineOptions options;
    options.tolerance = std::max(1e-8, 1e-2 * config.energy_tolerance);
    options.p4_tolerance = std::max(1e-8, 1e-2 * config.correction_tolerance);
    options.max_levels = config.max_levels;
    try {
      const RefinementResult result =
          refine_to_tolerance(RadialProblem{potential, group.l, mu, grid, count}, options);
      levels = result.levels;
      for (auto& cell : out) cell.converged = true;
    } catch (const RefinementError& e) {
      history = e.history();
      for (auto& cell : out) cell.diagnostic = e.what();
    }
  } catch (const std::exception& e) {
    for (auto& cell : out) cell.diagnostic = e.what();
    return;
  }

  // Without convergence, report the best rung of the ladder that exists.
  if (levels.empty() && !history.empty()) {
    const RefinementStep& last = history.back();
    for (int n = 0; n < count; ++n) {
      const auto k = static_cast<std::size_t>(n);
      RefinedLevel level;
      level.qn = QuantumNumbers(n, group.l);
      if (last.extrapolated_energies.empty()) {
        level.energy = last.energies[k];
        level.p4 = last.p4[k];
        level.energy_error = level.p4_error = std::numeric_limits<double>::infinity();
      } else {
        level.energy = last.extrapolated_energies[k];
        level.p4 = last.extrapolated_p4[k];
        level.energy_error = last.energy_errors[k];
        level.p4_error = last.p4_errors[k];
      }
      levels.push_back(level);
    }
  }

  const double beta = config.deformation.beta();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    SweepCell& cell = out[k];
    cell.e0_oracle = levels[k].energy;
    cell.e0_error_estimate = levels[k].energy_error;
    cell.de_oracle = beta == 0.0 ? 0.0 : beta / mu * levels[k].p4;
    cell.de_error_estimate = beta / mu * levels[k].p4_error;
    cell.e0_rel_error = relative_error(cell.e0_oracle, cell.e0_closed);
    cell.de_rel_error = relative_error(cell.de_oracle, cell.de_closed);
    cell.e0_pass = cell.e0_rel_error <= config.energy_tolerance;
    cell.de_pass = cell.de_rel_error <= config.correction_tolerance;
  }
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepConfig& config) {
  std::vector<Group> groups;
  for (PotentialKind kind : config.potentials)
    for (double g : config.gammas)
      for (int l = 0; l <= config.l_max; ++l) groups.push_back({kind, g, l});

  const auto per_group = static_cast<std::size_t>(config.n_max + 1);
  std::vector<std::vector<SweepCell>> results(groups.size(), std::vector<SweepCell>(per_group));

  unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, groups.size())));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < groups.size(); i = next++)
          run_group(config, groups[i], results[i]);
      });
    }
  }

  // n-major within each (potential, gamma)
  std::vector<SweepCell> cells;
  std::size_t index = 0;
  for (std::size_t p = 0; p < config.potentials.size(); ++p)
    for (std::size_t g = 0; g < config.gammas.size(); ++g) {
      const std::size_t base = index;
      index += static_cast<std::size_t>(config.l_max + 1);
      for (std::size_t n = 0; n < per_group; ++n)
        for (std::size_t l = 0; l <= static_cast<std::size_t>(config.l_max); ++l)
          cells.push_back(results[base + l][n]);
    }
  return cells;
}

}  // namespace mlspec
