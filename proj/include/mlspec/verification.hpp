#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mlspec/core.hpp"

namespace mlspec {

/// Closed-form vs oracle sweep over synthetic molecules (De = re = 1, mu = gamma^2/2).
struct SweepConfig {
  std::vector<PotentialKind> potentials{PotentialKind::Kratzer, PotentialKind::Pho};
  std::vector<double> gammas{20.0, 100.0};
  int n_max = 3;
  int l_max = 2;
  Deformation deformation{1e-6};
  std::size_t grid_points = 2001;
  std::optional<double> r_max;  ///< overrides the suggested box
  int max_levels = 6;
  double energy_tolerance = 1e-6;
  double correction_tolerance = 1e-4;
  unsigned workers = 0;  ///< 0: hardware concurrency
};

struct SweepCell {
  PotentialKind kind = PotentialKind::Kratzer;
  double gamma = 0.0;
  QuantumNumbers qn;

  double e0_closed = 0.0;
  double e0_oracle = 0.0;
  double e0_error_estimate = 0.0;
  double e0_rel_error = 0.0;

  double de_closed = 0.0;
  double de_oracle = 0.0;
  double de_error_estimate = 0.0;
  double de_rel_error = 0.0;

  bool converged = false;
  bool e0_pass = false;
  bool de_pass = false;
  std::string diagnostic;

  bool pass() const { return converged && e0_pass && de_pass; }
};

/// |a - b| / |b|, with 0 when both vanish and +inf when only b does.
double relative_error(double a, double b);

/// Cells ordered by potential, gamma, n, l regardless of worker scheduling.
std::vector<SweepCell> run_sweep(const SweepConfig& config);

}  // namespace mlspec
