#include "mlspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "mlspec/errors.hpp"
#include "mlspec/tridiagonal.hpp"

namespace mlspec {

namespace {

constexpr double kBoundaryAmplitude = 1e-6;
constexpr double kNodeThreshold = 1e-8;
constexpr double kDecayAction = 40.0;

double centrifugal(int l, double mu, double r) {
  return static_cast<double>(l) * (l + 1) / (2.0 * mu * r * r);
}

int count_nodes(const std::vector<double>& u) {
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  int nodes = 0;
  int last_sign = 0;
  for (double v : u) {
    if (std::abs(v) <= kNodeThreshold * peak) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) return 0.0;
  // Simpson needs an even number of intervals; the last interval of an odd
  // count falls back to the trapezoid rule.
  const std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;
  double sum = f[0] + f[last];
  for (std::size_t i = 1; i < last; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  double result = sum * h / 3.0;
  if (last != n - 1) result += 0.5 * h * (f[n - 2] + f[n - 1]);
  return result;
}

}  // namespace

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t point_count)
    : r_min_(r_min), r_max_(r_max), points_(point_count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw DomainError("radial grid requires 0 < r_min < r_max");
  if (point_count < 3) throw DomainError("radial grid needs at least 3 points");
}

std::vector<RadialEigenstate> solve_radial(const RadialPotential& potential, int l, double mu,
                                           const RadialGrid& grid, int count) {
  if (count < 1) throw DomainError("solve_radial: count must be >= 1");
  if (l < 0) throw DomainError("solve_radial: l must be >= 0");
  if (!(mu > 0.0)) throw DomainError("solve_radial: mass must be positive");
  const std::size_t points = grid.point_count();
  const std::size_t interior = points - 2;
  if (static_cast<std::size_t>(count) > interior)
    throw ConvergenceError("solve_radial: grid has fewer interior points than requested states");

  const double h = grid.spacing();
  const double kinetic = 1.0 / (mu * h * h);
  std::vector<double> diag(interior);
  std::vector<double> off(interior - 1, -0.5 * kinetic);
  for (std::size_t j = 0; j < interior; ++j) {
    const double r = grid.radius(j + 1);
    diag[j] = kinetic + potential(r) + centrifugal(l, mu, r);
    if (!std::isfinite(diag[j]))
      throw DomainError("solve_radial: potential is not finite at r = " + std::to_string(r));
  }
  const SymmetricTridiagonal matrix(std::move(diag), std::move(off));

  const double r_edge = grid.r_max();
  const double v_edge = potential(r_edge) + centrifugal(l, mu, r_edge);

  std::vector<RadialEigenstate> states;
  states.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double energy = matrix.eigenvalue(static_cast<std::size_t>(k));
    if (!(energy < v_edge)) {
      std::ostringstream msg;
      msg << "solve_radial: only " << k << " of " << count << " states (l = " << l
          << ") are bound inside r_max = " << r_edge << " (E = " << energy
          << " >= V_eff(r_max) = " << v_edge << ")";
      throw ConvergenceError(msg.str());
    }
    const std::vector<double> vec = matrix.eigenvector(energy);

    RadialEigenstate state{QuantumNumbers(0, l), energy, grid, std::vector<double>(points, 0.0), 0.0};
    std::copy(vec.begin(), vec.end(), state.u.begin() + 1);

    double peak = 0.0;
    for (double v : state.u) peak = std::max(peak, std::abs(v));
    const auto first = std::find_if(state.u.begin(), state.u.end(),
                                    [&](double v) { return std::abs(v) > kNodeThreshold * peak; });
    const double sign = (first != state.u.end() && *first < 0.0) ? -1.0 : 1.0;

    double norm2 = 0.0;
    for (double v : state.u) norm2 += v * v;
    const double scale = sign / std::sqrt(norm2 * h);
    for (double& v : state.u) v *= scale;
    peak *= std::abs(scale);

    if (std::abs(state.u[points - 2]) > kBoundaryAmplitude * peak) {
      std::ostringstream msg;
      msg << "solve_radial: state " << k << " (l = " << l << ") has relative amplitude "
          << std::abs(state.u[points - 2]) / peak << " at r_max = " << r_edge
          << "; enlarge the grid";
      throw ConvergenceError(msg.str());
    }
    double mean_r = 0.0;
    for (std::size_t i = 0; i < points; ++i) mean_r += state.u[i] * state.u[i] * grid.radius(i);
    mean_r *= h;
    if (std::abs(state.u[1]) > kBoundaryAmplitude * peak && grid.r_min() > 1e-2 * mean_r) {
      std::ostringstream msg;
      msg << "solve_radial: state " << k << " (l = " << l << ") does not vanish at r_min = "
          << grid.r_min() << "; move r_min closer to the origin";
      throw ConvergenceError(msg.str());
    }

    std::vector<double> density(points);
    for (std::size_t i = 0; i < points; ++i) density[i] = state.u[i] * state.u[i];
    state.norm_check = simpson(density, h);
    state.qn = QuantumNumbers(count_nodes(state.u), l);
    states.push_back(std::move(state));
  }

  std::sort(states.begin(), states.end(),
            [](const RadialEigenstate& a, const RadialEigenstate& b) { return a.qn.n < b.qn.n; });
  for (int k = 0; k < count; ++k) {
    if (states[k].qn.n != k) {
      std::ostringstream msg;
      msg << "solve_radial: node counts of the lowest " << count << " states (l = " << l
          << ") are not 0.." << count - 1 << "; the grid does not resolve the states";
      throw ConvergenceError(msg.str());
    }
  }
  return states;
}

namespace {

/// Trapezoid rule for an integrand known at interior nodes only. At a
/// Dirichlet wall u vanishes but (E - V) u need not (u ~ r near a Coulomb
/// origin), so the wall values are extrapolated quadratically from the
/// three nearest interior nodes instead of being taken as zero.
double integrate_interior(std::vector<double> f, double h) {
  const std::size_t n = f.size();
  if (n >= 5) {
    f[0] = std::max(0.0, 3.0 * f[1] - 3.0 * f[2] + f[3]);
    f[n - 1] = std::max(0.0, 3.0 * f[n - 2] - 3.0 * f[n - 3] + f[n - 4]);
  }
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f[i];
  return sum * h;
}

}  // namespace

double p4_expectation(const RadialEigenstate& state, const RadialPotential& potential, double mu) {
  const RadialGrid& grid = state.grid;
  std::vector<double> f(grid.point_count(), 0.0);
  for (std::size_t i = 1; i + 1 < grid.point_count(); ++i) {
    const double p2u = 2.0 * mu * (state.energy - potential(grid.radius(i))) * state.u[i];
    f[i] = p2u * p2u;
  }
  return integrate_interior(std::move(f), grid.spacing());
}

double p4_expectation_direct(const RadialEigenstate& state) {
  const RadialGrid& grid = state.grid;
  const std::size_t n = grid.point_count();
  const double h = grid.spacing();
  const double l_term = static_cast<double>(state.qn.l) * (state.qn.l + 1);
  const auto& u = state.u;
  std::vector<double> f(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    // five-point stencil where it fits inside the box, three-point next to the walls
    const double d2 = (i >= 2 && i + 2 < n)
                          ? (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] + 16.0 * u[i - 1] - u[i - 2]) / (12.0 * h * h)
                          : (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    const double r = grid.radius(i);
    const double w = -d2 + l_term * u[i] / (r * r);
    f[i] = w * w;
  }
  return integrate_interior(std::move(f), h);
}

double perturbative_correction(const RadialEigenstate& state, const RadialPotential& potential,
                               double mu, const Deformation& d) {
  if (d.beta() == 0.0) return 0.0;
  return d.beta() / mu * p4_expectation(state, potential, mu);
}

double kinetic_expectation(const RadialEigenstate& state, double mu) {
  const RadialGrid& grid = state.grid;
  const double h = grid.spacing();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < grid.point_count(); ++i) {
    const double u = state.u[i];
    const double lap = (2.0 * u - state.u[i - 1] - state.u[i + 1]) / (h * h);
    sum += u * (lap / (2.0 * mu) + centrifugal(state.qn.l, mu, grid.radius(i)) * u);
  }
  return sum * h;
}

double potential_expectation(const RadialEigenstate& state, const RadialPotential& potential) {
  const RadialGrid& grid = state.grid;
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < grid.point_count(); ++i)
    sum += state.u[i] * state.u[i] * potential(grid.radius(i));
  return sum * grid.spacing();
}

RadialGrid suggest_grid(const RadialPotential& potential, int l, double mu, double length_scale,
                        int count, std::size_t point_count) {
  if (!(length_scale > 0.0)) throw DomainError("suggest_grid: length scale must be positive");
  const double coarse_min = 1e-3 * length_scale;

  // Coarse solve on a generous box to locate the highest requested level.
  std::vector<RadialEigenstate> coarse;
  double box = 50.0 * length_scale;
  for (int attempt = 0;; ++attempt) {
    try {
      coarse = solve_radial(potential, l, mu, RadialGrid(coarse_min, box, 4001), count);
      break;
    } catch (const ConvergenceError&) {
      if (attempt == 3) throw;
      box *= 4.0;
    }
  }
  const RadialEigenstate& top = coarse.back();
  const double energy = top.energy;

  std::size_t peak = 0;
  for (std::size_t i = 0; i < top.u.size(); ++i)
    if (std::abs(top.u[i]) > std::abs(top.u[peak])) peak = i;

  const double step = 1e-3 * length_scale;
  const double limit = 1e4 * length_scale;
  auto v_eff = [&](double r) { return potential(r) + centrifugal(l, mu, r); };
  double r = top.grid.radius(peak);
  while (v_eff(r) <= energy) {
    r += step;
    if (r > limit) throw ConvergenceError("suggest_grid: no outer turning point found");
  }
  double action = 0.0;
  while (action < kDecayAction) {
    const double gap = v_eff(r + 0.5 * step) - energy;
    if (gap > 0.0) action += std::sqrt(2.0 * mu * gap) * step;
    r += step;
    if (r > limit) throw ConvergenceError("suggest_grid: wavefunction does not decay inside 1e4 length scales");
  }

  // Inner wall: same decay criterion on a geometric walk towards the origin.
  // Weakly repulsive cores (u ~ r or r^2) never reach it and get the floor.
  const double floor = 1e-9 * length_scale;
  double inner = top.grid.radius(peak);
  while (inner > floor && v_eff(inner) <= energy) inner *= 0.999;
  double inner_action = 0.0;
  while (inner > floor && inner_action < kDecayAction) {
    const double next = inner * 0.999;
    const double gap = v_eff(0.5 * (inner + next)) - energy;
    if (gap > 0.0) inner_action += std::sqrt(2.0 * mu * gap) * (inner - next);
    inner = next;
  }
  const double r_min = std::min(coarse_min, std::max(inner, floor));
  return RadialGrid(r_min, r, point_count);
}

RefinementResult refine_to_tolerance(const RadialProblem& problem, const RefineOptions& options) {
  if (!(options.tolerance >= 1e-8))
    throw DomainError("refine_to_tolerance: tolerance must be >= 1e-8");
  const double p4_tol = options.p4_tolerance.value_or(options.tolerance);
  if (!(p4_tol >= 1e-8)) throw DomainError("refine_to_tolerance: p4 tolerance must be >= 1e-8");
  if (options.max_levels < 2) throw DomainError("refine_to_tolerance: needs at least 2 levels");

  const auto count = static_cast<std::size_t>(problem.count);
  RefinementResult result;
  RadialGrid grid = problem.grid;
  std::vector<bool> energy_done(count, false), p4_done(count, false);

  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "refine_to_tolerance: " << why << "\n";
    write_history(msg, result.history);
    throw RefinementError(msg.str(), result.history);
  };

  for (int level = 0; level < options.max_levels; ++level) {
    const auto states = solve_radial(problem.potential, problem.l, problem.mu, grid, problem.count);
    RefinementStep step;
    step.points = grid.point_count();
    for (const auto& s : states) {
      step.energies.push_back(s.energy);
      step.p4.push_back(p4_expectation(s, problem.potential, problem.mu));
    }

    if (level > 0) {
      const RefinementStep& prev = result.history.back();
      for (std::size_t k = 0; k < count; ++k) {
        const double re = step.energies[k] + (step.energies[k] - prev.energies[k]) / 3.0;
        const double rp = step.p4[k] + (step.p4[k] - prev.p4[k]) / 3.0;
        step.extrapolated_energies.push_back(re);
        step.extrapolated_p4.push_back(rp);
        if (level == 1) {
          step.energy_errors.push_back(std::abs(step.energies[k] - prev.energies[k]) / 3.0);
          step.p4_errors.push_back(std::abs(step.p4[k] - prev.p4[k]) / 3.0);
        } else {
          step.energy_errors.push_back(std::abs(re - prev.extrapolated_energies[k]));
          step.p4_errors.push_back(std::abs(rp - prev.extrapolated_p4[k]));
        }
      }
    }
    result.history.push_back(step);
    if (level == 0) {
      grid = grid.refined();
      continue;
    }

    const RefinementStep& cur = result.history.back();
    bool all_done = true;
    for (std::size_t k = 0; k < count; ++k) {
      const bool e_ok = cur.energy_errors[k] <= options.tolerance * std::abs(cur.extrapolated_energies[k]);
      const bool p_ok = cur.p4_errors[k] <= p4_tol * std::abs(cur.extrapolated_p4[k]);
      if (level >= 2) {
        const RefinementStep& prev = result.history[result.history.size() - 2];
        if (!e_ok && !energy_done[k] && cur.energy_errors[k] >= prev.energy_errors[k])
          fail("energy error estimate of level n = " + std::to_string(k) + " stopped shrinking");
        if (!p_ok && !p4_done[k] && cur.p4_errors[k] >= prev.p4_errors[k])
          fail("<p^4> error estimate of level n = " + std::to_string(k) + " stopped shrinking");
      }
      energy_done[k] = e_ok;
      p4_done[k] = p_ok;
      all_done = all_done && e_ok && p_ok;
    }
    if (all_done) {
      for (std::size_t k = 0; k < count; ++k) {
        result.levels.push_back(RefinedLevel{QuantumNumbers(static_cast<int>(k), problem.l),
                                             cur.extrapolated_energies[k], cur.energy_errors[k],
                                             cur.extrapolated_p4[k], cur.p4_errors[k]});
      }
      return result;
    }
    grid = grid.refined();
  }
  fail("tolerance not reached within " + std::to_string(options.max_levels) + " grid levels");
  return result;  // unreachable
}

void write_history(std::ostream& out, const std::vector<RefinementStep>& history) {
  const auto flags = out.flags();
  out << std::setprecision(10);
  for (const auto& step : history) {
    out << "  points=" << step.points;
    for (std::size_t k = 0; k < step.energies.size(); ++k) {
      out << " | n=" << k << " E=" << step.energies[k];
      if (!step.energy_errors.empty())
        out << " R=" << step.extrapolated_energies[k] << " err=" << step.energy_errors[k]
            << " p4err=" << step.p4_errors[k];
    }
    out << "\n";
  }
  out.flags(flags);
}

void write_eigenstate(std::ostream& out, const RadialEigenstate& state, int precision) {
  const auto flags = out.flags();
  out << "# n=" << state.qn.n << " l=" << state.qn.l << std::setprecision(17)
      << " energy=" << state.energy << " points=" << state.grid.point_count()
      << " r_min=" << state.grid.r_min() << " r_max=" << state.grid.r_max() << "\n";
  out << std::scientific << std::setprecision(precision);
  for (std::size_t i = 0; i < state.u.size(); ++i)
    out << state.grid.radius(i) << ' ' << state.u[i] << '\n';
  out.flags(flags);
}

}  // namespace mlspec
