#include "mlspec/data_files.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "mlspec/errors.hpp"
#include "mlspec/units.hpp"

namespace mlspec {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

class LineError {
 public:
  LineError(const std::string& origin, std::size_t line) : origin_(origin), line_(line) {}

  [[noreturn]] void raise(const std::string& what) const {
    throw DataError(origin_ + ":" + std::to_string(line_) + ": " + what);
  }
  [[noreturn]] void field(const std::string& name, const std::string& what) const {
    raise("field '" + name + "': " + what);
  }

 private:
  const std::string& origin_;
  std::size_t line_;
};

std::vector<std::string> split_csv(const std::string& line, const LineError& err) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      if (!trim(current).empty()) err.raise("unexpected quote inside unquoted field");
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : trim(current));
      current.clear();
      was_quoted = false;
    } else {
      current += c;
    }
  }
  if (quoted) err.raise("unterminated quoted field");
  fields.push_back(was_quoted ? current : trim(current));
  return fields;
}

/// Header-driven row access shared by both file kinds.
class Table {
 public:
  Table(std::istream& in, std::string origin, const std::vector<std::string>& required)
      : in_(in), origin_(std::move(origin)) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const LineError err(origin_, line_no_);
      const auto names = split_csv(t, err);
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (!columns_.emplace(names[i], i).second) err.raise("duplicate column '" + names[i] + "'");
      }
      for (const auto& name : required)
        if (!columns_.count(name)) err.raise("header is missing column '" + name + "'");
      has_header_ = true;
      return;
    }
  }

  bool has_header() const { return has_header_; }

  /// Advances to the next data row; false at end of input.
  bool next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      fields_ = split_csv(t, error());
      if (fields_.size() < columns_.size())
        error().raise("expected " + std::to_string(columns_.size()) + " fields, found " +
                      std::to_string(fields_.size()));
      return true;
    }
    return false;
  }

  LineError error() const { return LineError(origin_, line_no_); }

  std::optional<std::string> optional_text(const std::string& name) const {
    const auto it = columns_.find(name);
    if (it == columns_.end()) return std::nullopt;
    return fields_[it->second];
  }

  std::string text(const std::string& name) const {
    auto value = optional_text(name);
    if (!value || value->empty()) error().field(name, "missing value");
    return *value;
  }

  double number(const std::string& name) const {
    const std::string s = text(name);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
      error().field(name, "expected a number, got '" + s + "'");
    return value;
  }

  int integer(const std::string& name) const {
    const std::string s = text(name);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      error().field(name, "expected an integer, got '" + s + "'");
    return value;
  }

  double positive(const std::string& name) const {
    const double value = number(name);
    if (!(value > 0.0)) error().field(name, "must be positive, got " + text(name));
    return value;
  }

 private:
  std::istream& in_;
  std::string origin_;
  std::size_t line_no_ = 0;
  bool has_header_ = false;
  std::map<std::string, std::size_t> columns_;
  std::vector<std::string> fields_;
};

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file " + path.string());
  return in;
}

}  // namespace

const MoleculeRecord* MoleculeCatalog::find(std::string_view name) const {
  for (const auto& r : records)
    if (r.molecule.name() == name) return &r;
  return nullptr;
}

MoleculeCatalog parse_molecules(std::istream& in, const std::string& origin) {
  Table table(in, origin, {"name", "De_eV", "re_angstrom", "mu_amu"});
  MoleculeCatalog catalog;
  if (!table.has_header()) {
    catalog.warnings.push_back(origin + ": no molecule records");
    return catalog;
  }
  std::set<std::string> seen;
  while (table.next()) {
    const std::string name = table.text("name");
    if (!seen.insert(name).second) table.error().field("name", "duplicate molecule '" + name + "'");
    const double de = table.positive("De_eV");
    const double re = table.positive("re_angstrom");
    const double mu = table.positive("mu_amu");
    catalog.records.push_back(MoleculeRecord{Molecule::from_spectroscopic(name, de, re, mu),
                                             table.optional_text("source").value_or("")});
  }
  if (catalog.records.empty()) catalog.warnings.push_back(origin + ": no molecule records");
  return catalog;
}

MoleculeCatalog load_molecules(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_molecules(in, path.string());
}

std::vector<ExperimentalLevel> parse_levels(std::istream& in, const std::string& origin) {
  Table table(in, origin, {"molecule", "n", "l", "energy", "unit", "zero"});
  std::vector<ExperimentalLevel> levels;
  if (!table.has_header()) return levels;
  while (table.next()) {
    ExperimentalLevel level;
    level.molecule = table.text("molecule");
    const int n = table.integer("n");
    const int l = table.integer("l");
    if (n < 0) table.error().field("n", "must be >= 0");
    if (l < 0) table.error().field("l", "must be >= 0");
    level.qn = QuantumNumbers(n, l);

    const std::string unit_text = table.text("unit");
    const auto unit = parse_energy_unit(unit_text);
    if (!unit || *unit == EnergyUnit::Internal)
      table.error().field("unit", "expected cm-1 or eV, got '" + unit_text + "'");
    level.energy = UnitSystem::energy_to_internal(table.number("energy"), *unit);

    const std::string zero = table.text("zero");
    if (zero == "dissociation")
      level.zero = EnergyZero::Dissociation;
    else if (zero == "minimum")
      level.zero = EnergyZero::Minimum;
    else
      table.error().field("zero", "expected dissociation or minimum, got '" + zero + "'");
    level.source = table.optional_text("source").value_or("");

    for (const auto& other : levels)
      if (other.molecule == level.molecule && other.qn == level.qn)
        table.error().raise("duplicate level for " + level.molecule);
    levels.push_back(std::move(level));
  }
  return levels;
}

std::vector<ExperimentalLevel> load_levels(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_levels(in, path.string());
}

double energy_for_potential(const ExperimentalLevel& level, const Molecule& m, PotentialKind kind) {
  const double de = m.dissociation_energy();
  if (kind == PotentialKind::Kratzer)
    return level.zero == EnergyZero::Dissociation ? level.energy : level.energy - de;
  return level.zero == EnergyZero::Minimum ? level.energy : level.energy + de;
}

}  // namespace mlspec
