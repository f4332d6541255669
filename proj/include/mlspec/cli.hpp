#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mlspec/core.hpp"
#include "mlspec/units.hpp"

namespace mlspec::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kConfigError = 2,        ///< bad flags or flag combinations
  kDataError = 3,          ///< unknown molecule, unreadable or malformed data, missing record
  kVerificationFailed = 4,
  kNumericalError = 5,     ///< formula domain errors, oracle non-convergence outside verify
};

inline constexpr int kMaxQuantumNumber = 200;

/// Environment variable naming the default data directory.
inline constexpr const char* kDataDirEnv = "MLSPEC_DATA_DIR";

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::optional<PotentialKind> potential;
  std::optional<std::string> molecule;  ///< default: "unit" (fit-beta: "H2")
  std::optional<std::filesystem::path> molecules_file;
  std::optional<int> n_max;  ///< default 3 (constants: 4)
  std::optional<int> l_max;  ///< default 2 (constants: 4)
  std::optional<double> beta;
  std::optional<double> min_length_angstrom;
  EnergyUnit units = EnergyUnit::Wavenumber;
  OutputFormat format = OutputFormat::Csv;
  bool fit = false;
  std::optional<std::size_t> grid_points;
  std::optional<double> r_max;
  std::optional<int> max_levels;
  std::vector<double> gammas;
  std::optional<std::filesystem::path> levels_file;
  int level_n = 0;
  int level_l = 0;
  std::optional<std::filesystem::path> dump_dir;

  /// beta from whichever of --beta / --min-length-angstrom was given (0 if neither).
  Deformation deformation() const;
};

/// Directory holding molecules.csv and levels.csv: $MLSPEC_DATA_DIR, else the source tree's data/.
std::filesystem::path default_data_dir();

/// "unit" (De = re = mu = 1), "gamma:<g>" (De = re = 1, mu = g^2/2), or a
/// name from the molecules file. Throws DataError for unknown names.
Molecule resolve_molecule(const RunConfig& config, const std::string& fallback = "unit");

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_constants(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fit_beta(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlspec::cli
