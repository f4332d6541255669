#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mlspec/core.hpp"
#include "mlspec/errors.hpp"

/**
 * Numerical reference for the closed-form spectra.
 *
 * The reduced radial equation
 *
 *   -(hbar^2 / 2mu) u'' + [V(r) + hbar^2 l(l+1) / (2 mu r^2)] u = E u
 *
 * is discretized with three-point central differences on a uniform grid
 * with Dirichlet ends, giving a symmetric tridiagonal eigenproblem. The
 * minimal-length shift of a level is the first-order expectation of
 * (beta/mu) p^4, evaluated through p^2 psi = 2 mu (E - V) psi.
 */
namespace mlspec {

using RadialPotential = std::function<double(double)>;

class RadialGrid {
 public:
  /// Throws DomainError unless 0 < r_min < r_max and point_count >= 3.
  RadialGrid(double r_min, double r_max, std::size_t point_count);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  std::size_t point_count() const { return points_; }
  double spacing() const { return (r_max_ - r_min_) / static_cast<double>(points_ - 1); }
  double radius(std::size_t i) const { return r_min_ + static_cast<double>(i) * spacing(); }

  /// Same interval with half the spacing; every old node is a node of the refined grid.
  RadialGrid refined() const { return RadialGrid(r_min_, r_max_, 2 * points_ - 1); }

 private:
  double r_min_;
  double r_max_;
  std::size_t points_;
};

struct RadialEigenstate {
  QuantumNumbers qn;
  double energy = 0.0;
  RadialGrid grid{1.0, 2.0, 3};
  /// u(r_i) on every grid node, including the two zero boundary values.
  std::vector<double> u;
  /// Simpson-rule integral of u^2; the state is normalized with the trapezoid rule.
  double norm_check = 0.0;
};

/// Lowest `count` bound states for angular momentum l, labelled by node count.
/// Throws ConvergenceError when a state is not bound inside the box or its
/// amplitude at r_max exceeds 1e-6 of the peak (grid too small).
std::vector<RadialEigenstate> solve_radial(const RadialPotential& potential, int l, double mu,
                                           const RadialGrid& grid, int count);

/// <p^4> = 4 mu^2 \int u^2 (E - V)^2 dr.
double p4_expectation(const RadialEigenstate& state, const RadialPotential& potential, double mu);

/// <p^4> from the squared discrete radial Laplacian, || -u'' + l(l+1) u / r^2 ||^2.
/// Independent of the potential; agrees with p4_expectation to O(h^2).
double p4_expectation_direct(const RadialEigenstate& state);

/// First-order energy shift (beta/mu) <p^4> = 4 mu beta <(E - V)^2>.
double perturbative_correction(const RadialEigenstate& state, const RadialPotential& potential,
                               double mu, const Deformation& d);

/// <p^2>/(2 mu) from the discrete kinetic operator, centrifugal term included.
double kinetic_expectation(const RadialEigenstate& state, double mu);

/// <V> by trapezoid quadrature.
double potential_expectation(const RadialEigenstate& state, const RadialPotential& potential);

/// Picks a box for the lowest `count` states. r_max is where the WKB decay
/// action beyond the outer turning point of the highest requested level
/// reaches 40; r_min is 1e-3 * length_scale, or closer to the origin (down to
/// 1e-9 * length_scale) when the same action is not reached inside the core.
RadialGrid suggest_grid(const RadialPotential& potential, int l, double mu, double length_scale,
                        int count, std::size_t point_count);

struct RadialProblem {
  RadialPotential potential;
  int l = 0;
  double mu = 1.0;
  RadialGrid grid{1.0, 2.0, 3};
  int count = 1;  ///< levels n = 0 .. count-1
};

struct RefineOptions {
  double tolerance = 1e-8;                 ///< relative target for energies
  std::optional<double> p4_tolerance;      ///< relative target for <p^4>; defaults to tolerance
  int max_levels = 6;                      ///< grids solved, including the starting one
};

/// One grid of the refinement ladder.
struct RefinementStep {
  std::size_t points = 0;
  std::vector<double> energies;
  std::vector<double> p4;
  std::vector<double> extrapolated_energies;  ///< empty on the first step
  std::vector<double> extrapolated_p4;
  std::vector<double> energy_errors;
  std::vector<double> p4_errors;
};

struct RefinedLevel {
  QuantumNumbers qn;
  double energy = 0.0;
  double energy_error = 0.0;
  double p4 = 0.0;
  double p4_error = 0.0;
};

struct RefinementResult {
  std::vector<RefinedLevel> levels;
  std::vector<RefinementStep> history;
};

/// Non-convergence of refine_to_tolerance; keeps the ladder for diagnostics.
class RefinementError : public ConvergenceError {
 public:
  RefinementError(const std::string& what, std::vector<RefinementStep> history)
      : ConvergenceError(what), history_(std::move(history)) {}
  const std::vector<RefinementStep>& history() const { return history_; }

 private:
  std::vector<RefinementStep> history_;
};

/**
 * Solves on successively halved spacings and Richardson-extrapolates each
 * pair (E_fine + (E_fine - E_coarse)/3). The error estimate of step k is
 * |R_k - R_{k-1}| (|E_1 - E_0|/3 on the first pair). Stops once every level
 * meets its tolerance. Throws ConvergenceError, with the step history in the
 * message, if an unconverged estimate fails to shrink or max_levels runs out.
 * Throws DomainError for tolerance < 1e-8. Non-convergence throws RefinementError.
 */
RefinementResult refine_to_tolerance(const RadialProblem& problem, const RefineOptions& options);

void write_history(std::ostream& out, const std::vector<RefinementStep>& history);

/// Two-column (r, u) dump preceded by a '#' metadata line.
void write_eigenstate(std::ostream& out, const RadialEigenstate& state, int precision = 10);

}  // namespace mlspec
