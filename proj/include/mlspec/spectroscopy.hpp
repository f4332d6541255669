#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlspec/core.hpp"

namespace mlspec {

enum class LevelSource { ComputedKratzer, ComputedPho, Experimental };

struct LevelEntry {
  QuantumNumbers qn;
  double energy = 0.0;
};

/// Vibration-rotation levels of one molecule; (n, l) pairs are unique.
class LevelTable {
 public:
  LevelTable(std::string molecule, LevelSource source);

  /// Throws DataError if (n, l) is already present or energy is not finite.
  void add(QuantumNumbers qn, double energy);

  const std::string& molecule() const { return molecule_; }
  LevelSource source() const { return source_; }
  const std::vector<LevelEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::string molecule_;
  LevelSource source_;
  std::vector<LevelEntry> entries_;
};

/// Closed-form deformed levels for n <= n_max, l <= l_max, ordered n-major.
/// Energies are measured from the bottom of the well (Kratzer levels are shifted by +De).
LevelTable closed_form_level_table(PotentialKind kind, const Molecule& m, const Deformation& d,
                                   int n_max, int l_max);

enum class DunhamModel {
  Standard,  ///< {1, v, v^2, v^3, L, vL} with v = n + 1/2, L = l(l+1)
  Extended,  ///< adds v^4, v^2 L and L^2, which absorb the next order of the large-gamma series
};

struct DunhamFit {
  SpectroscopicConstants constants;
  /// One-sigma uncertainties from the residual variance; zero without spare degrees of freedom.
  SpectroscopicConstants standard_errors;
  /// Coefficients of v^4, v^2 L and L^2 (Extended model only).
  std::optional<std::vector<double>> higher_order;
  double max_residual = 0.0;
  double rms_residual = 0.0;
  std::size_t entries = 0;
};

/// Unweighted linear least squares of the master formula through a
/// column-pivoted Householder QR. Throws DataError naming the missing
/// quantum-number coverage when the design matrix is rank deficient.
DunhamFit fit_dunham(const LevelTable& table, DunhamModel model = DunhamModel::Standard);

struct BetaBound {
  double beta_upper = 0.0;
  double minimal_length_upper = 0.0;
  std::string basis;
};

/**
 * Upper bound on beta from one measured level. The entire gap between the
 * measured energy and the beta = 0 closed form is attributed to the
 * minimal-length shift, which is linear in beta.
 *
 * `experimental_energy` is in internal units and uses the potential's own
 * zero: the dissociation limit for Kratzer, the well bottom for PHO.
 */
BetaBound fit_beta_bound(const Molecule& m, double experimental_energy, QuantumNumbers level,
                         PotentialKind kind);

/// Deformed level of either potential.
EnergyLevel deformed_level(PotentialKind kind, const Molecule& m, const Deformation& d,
                           QuantumNumbers qn);

/// Closed-form constants of either potential.
SpectroscopicConstants spectroscopic_constants(PotentialKind kind, const Molecule& m,
                                               const Deformation& d);

}  // namespace mlspec
