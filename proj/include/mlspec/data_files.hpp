#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "mlspec/core.hpp"

/**
 * Line-oriented CSV data files.
 *
 * Blank lines and lines starting with '#' are ignored. The first remaining
 * line is a header naming the columns (any order); further columns are
 * ignored. A field may be double-quoted to contain commas, with "" as an
 * escaped quote.
 *
 * Molecules:           name,De_eV,re_angstrom,mu_amu[,source]
 * Experimental levels: molecule,n,l,energy,unit,zero[,source]
 *   unit: cm-1 | eV
 *   zero: dissociation (energy measured from the dissociation limit) |
 *         minimum (measured from the bottom of the potential well)
 */
namespace mlspec {

struct MoleculeRecord {
  Molecule molecule;
  std::string source;
};

struct MoleculeCatalog {
  std::vector<MoleculeRecord> records;
  std::vector<std::string> warnings;

  /// nullptr when absent.
  const MoleculeRecord* find(std::string_view name) const;
};

/// Throws DataError with "<origin>:<line>: field '<name>': ..." on malformed
/// input, unphysical values or duplicate names. An empty file yields an empty
/// catalog with a warning.
MoleculeCatalog parse_molecules(std::istream& in, const std::string& origin);
MoleculeCatalog load_molecules(const std::filesystem::path& path);

enum class EnergyZero { Dissociation, Minimum };

struct ExperimentalLevel {
  std::string molecule;
  QuantumNumbers qn;
  double energy = 0.0;  ///< internal units, relative to `zero`
  EnergyZero zero = EnergyZero::Dissociation;
  std::string source;
};

std::vector<ExperimentalLevel> parse_levels(std::istream& in, const std::string& origin);
std::vector<ExperimentalLevel> load_levels(const std::filesystem::path& path);

/// Re-references a measured energy to the potential's own zero
/// (dissociation limit for Kratzer, well bottom for PHO).
double energy_for_potential(const ExperimentalLevel& level, const Molecule& m, PotentialKind kind);

}  // namespace mlspec
