#include "mlspec/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "mlspec/data_files.hpp"
#include "mlspec/errors.hpp"
#include "mlspec/kratzer.hpp"
#include "mlspec/oracle.hpp"
#include "mlspec/pho.hpp"
#include "mlspec/spectroscopy.hpp"
#include "mlspec/verification.hpp"

#ifndef MLSPEC_DEFAULT_DATA_DIR
#define MLSPEC_DEFAULT_DATA_DIR "data"
#endif

namespace mlspec::cli {

namespace {

using nlohmann::ordered_json;

std::string number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return buffer;
}

/// JSON mirror of number(): same digits, as a JSON number.
ordered_json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::stod(number(value));
}

void check_caps(int n_max, int l_max) {
  if (n_max < 0 || l_max < 0 || n_max > kMaxQuantumNumber || l_max > kMaxQuantumNumber)
    throw CLI::ValidationError("--nmax/--lmax must lie in [0, " + std::to_string(kMaxQuantumNumber) + "]");
}

double to_units(double internal, EnergyUnit unit) {
  return UnitSystem::energy_from_internal(internal, unit);
}

}  // namespace

Deformation RunConfig::deformation() const {
  if (beta) return Deformation(*beta);
  if (min_length_angstrom) return beta_from_minimal_length(UnitSystem::length_from_angstrom(*min_length_angstrom));
  return Deformation(0.0);
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env && *env) return env;
  return MLSPEC_DEFAULT_DATA_DIR;
}

Molecule resolve_molecule(const RunConfig& config, const std::string& fallback) {
  const std::string name = config.molecule.value_or(fallback);
  if (name == "unit") return Molecule("unit", 1.0, 1.0, 1.0);
  if (name.rfind("gamma:", 0) == 0) {
    const std::string text = name.substr(6);
    std::size_t used = 0;
    double g = 0.0;
    try {
      g = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || !(g > 0.0))
      throw DataError("molecule '" + name + "': expected gamma:<positive number>");
    return Molecule::with_gamma(g, name);
  }
  const auto path = config.molecules_file.value_or(default_data_dir() / "molecules.csv");
  const MoleculeCatalog catalog = load_molecules(path);
  const MoleculeRecord* record = catalog.find(name);
  if (!record) throw DataError("unknown molecule '" + name + "' (not in " + path.string() + ")");
  return record->molecule;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const PotentialKind kind = config.potential.value_or(PotentialKind::Kratzer);
  const int n_max = config.n_max.value_or(3);
  const int l_max = config.l_max.value_or(2);
  check_caps(n_max, l_max);
  const Molecule m = resolve_molecule(config);
  const Deformation d = config.deformation();

  std::vector<EnergyLevel> rows;
  for (int n = 0; n <= n_max; ++n)
    for (int l = 0; l <= l_max; ++l) {
      try {
        rows.push_back(deformed_level(kind, m, d, QuantumNumbers(n, l)));
      } catch (const DomainError& e) {
        throw DomainError("spectrum of " + m.name() + " (" + std::string(to_string(kind)) +
                          ", n=" + std::to_string(n) + ", l=" + std::to_string(l) + "): " + e.what());
      }
      if (rows.back().first_order_warning)
        err << "warning: |dE| > 0.1 |E0| at n=" << n << ", l=" << l
            << "; first-order treatment is doubtful\n";
    }

  const EnergyUnit u = config.units;
  if (config.format == OutputFormat::Csv) {
    out << "n,l,E0,dE,E\n";
    for (const auto& r : rows)
      out << r.qn.n << ',' << r.qn.l << ',' << number(to_units(r.e0, u)) << ','
          << number(to_units(r.de, u)) << ',' << number(to_units(r.total, u)) << '\n';
  } else {
    ordered_json doc;
    doc["potential"] = to_string(kind);
    doc["molecule"] = m.name();
    doc["units"] = to_string(u);
    doc["beta"] = json_number(d.beta());
    ordered_json list = ordered_json::array();
    for (const auto& r : rows)
      list.push_back({{"n", r.qn.n},
                      {"l", r.qn.l},
                      {"E0", json_number(to_units(r.e0, u))},
                      {"dE", json_number(to_units(r.de, u))},
                      {"E", json_number(to_units(r.total, u))}});
    doc["rows"] = std::move(list);
    out << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_constants(const RunConfig& config, std::ostream& out, std::ostream&) {
  const PotentialKind kind = config.potential.value_or(PotentialKind::Kratzer);
  const int n_max = config.n_max.value_or(4);
  const int l_max = config.l_max.value_or(4);
  check_caps(n_max, l_max);
  const Molecule m = resolve_molecule(config);
  const Deformation d = config.deformation();
  const SpectroscopicConstants closed = spectroscopic_constants(kind, m, d);

  std::optional<DunhamFit> fit;
  if (config.fit) fit = fit_dunham(closed_form_level_table(kind, m, d, n_max, l_max), DunhamModel::Extended);

  struct Row {
    const char* name;
    double SpectroscopicConstants::*field;
  };
  const Row rows[] = {{"Y00", &SpectroscopicConstants::Y00},   {"we", &SpectroscopicConstants::we},
                      {"wexe", &SpectroscopicConstants::wexe}, {"weye", &SpectroscopicConstants::weye},
                      {"Be", &SpectroscopicConstants::Be},     {"alphae", &SpectroscopicConstants::alphae}};
  const EnergyUnit u = config.units;

  if (config.format == OutputFormat::Csv) {
    out << "constant,closed_form";
    if (fit) out << ",fitted,abs_diff,rel_diff,fit_sigma";
    out << '\n';
    for (const auto& row : rows) {
      const double c = closed.*row.field;
      out << row.name << ',' << number(to_units(c, u));
      if (fit) {
        const double f = fit->constants.*row.field;
        out << ',' << number(to_units(f, u)) << ',' << number(to_units(std::abs(f - c), u)) << ','
            << (c == 0.0 ? std::string() : number(relative_error(f, c))) << ','
            << number(to_units(fit->standard_errors.*row.field, u));
      }
      out << '\n';
    }
  } else {
    ordered_json doc;
    doc["potential"] = to_string(kind);
    doc["molecule"] = m.name();
    doc["units"] = to_string(u);
    doc["beta"] = json_number(d.beta());
    ordered_json list = ordered_json::array();
    for (const auto& row : rows) {
      const double c = closed.*row.field;
      ordered_json item{{"constant", row.name}, {"closed_form", json_number(to_units(c, u))}};
      if (fit) {
        const double f = fit->constants.*row.field;
        item["fitted"] = json_number(to_units(f, u));
        item["abs_diff"] = json_number(to_units(std::abs(f - c), u));
        item["rel_diff"] = c == 0.0 ? ordered_json(nullptr) : json_number(relative_error(f, c));
        item["fit_sigma"] = json_number(to_units(fit->standard_errors.*row.field, u));
      }
      list.push_back(std::move(item));
    }
    doc["constants"] = std::move(list);
    if (fit) {
      doc["fit"] = {{"levels", fit->entries},
                    {"max_residual", json_number(to_units(fit->max_residual, u))},
                    {"rms_residual", json_number(to_units(fit->rms_residual, u))}};
    }
    out << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  SweepConfig sweep;
  if (config.potential) sweep.potentials = {*config.potential};
  if (!config.gammas.empty()) sweep.gammas = config.gammas;
  sweep.n_max = config.n_max.value_or(3);
  sweep.l_max = config.l_max.value_or(2);
  check_caps(sweep.n_max, sweep.l_max);
  if (config.beta || config.min_length_angstrom) sweep.deformation = config.deformation();
  if (config.grid_points) sweep.grid_points = *config.grid_points;
  sweep.r_max = config.r_max;
  if (config.max_levels) sweep.max_levels = *config.max_levels;
  for (double g : sweep.gammas)
    if (!(g > 0.0)) throw CLI::ValidationError("--gamma values must be positive");

  const std::vector<SweepCell> cells = run_sweep(sweep);

  std::size_t failures = 0;
  double worst_e0 = 0.0;
  double worst_de = 0.0;
  for (const auto& c : cells) {
    if (!c.pass()) ++failures;
    worst_e0 = std::max(worst_e0, c.e0_rel_error);
    worst_de = std::max(worst_de, c.de_rel_error);
  }
  std::vector<std::string> diagnostics;
  for (const auto& c : cells)
    if (!c.diagnostic.empty() && std::find(diagnostics.begin(), diagnostics.end(), c.diagnostic) == diagnostics.end())
      diagnostics.push_back(c.diagnostic);
  for (const auto& d : diagnostics) err << d << '\n';

  auto status = [](const SweepCell& c, bool ok) {
    if (!c.converged) return "FAIL(unconverged)";
    return ok ? "PASS" : "FAIL";
  };

  if (config.format == OutputFormat::Csv) {
    out << "potential,gamma,n,l,E0_closed,E0_oracle,E0_err_est,E0_rel_err,E0_status,"
           "dE_closed,dE_oracle,dE_err_est,dE_rel_err,dE_status\n";
    for (const auto& c : cells) {
      out << to_string(c.kind) << ',' << number(c.gamma) << ',' << c.qn.n << ',' << c.qn.l << ','
          << number(c.e0_closed) << ',' << number(c.e0_oracle) << ',' << number(c.e0_error_estimate)
          << ',' << number(c.e0_rel_error) << ',' << status(c, c.e0_pass) << ','
          << number(c.de_closed) << ',' << number(c.de_oracle) << ',' << number(c.de_error_estimate)
          << ',' << number(c.de_rel_error) << ',' << status(c, c.de_pass) << '\n';
    }
    out << "# cells=" << cells.size() << " failures=" << failures
        << " max_E0_rel_err=" << number(worst_e0) << " (tol " << number(sweep.energy_tolerance)
        << ") max_dE_rel_err=" << number(worst_de) << " (tol " << number(sweep.correction_tolerance)
        << ") beta=" << number(sweep.deformation.beta()) << '\n';
  } else {
    ordered_json doc;
    ordered_json list = ordered_json::array();
    for (const auto& c : cells) {
      list.push_back({{"potential", to_string(c.kind)},
                      {"gamma", json_number(c.gamma)},
                      {"n", c.qn.n},
                      {"l", c.qn.l},
                      {"E0_closed", json_number(c.e0_closed)},
                      {"E0_oracle", json_number(c.e0_oracle)},
                      {"E0_err_est", json_number(c.e0_error_estimate)},
                      {"E0_rel_err", json_number(c.e0_rel_error)},
                      {"E0_status", status(c, c.e0_pass)},
                      {"dE_closed", json_number(c.de_closed)},
                      {"dE_oracle", json_number(c.de_oracle)},
                      {"dE_err_est", json_number(c.de_error_estimate)},
                      {"dE_rel_err", json_number(c.de_rel_error)},
                      {"dE_status", status(c, c.de_pass)}});
    }
    doc["cells"] = std::move(list);
    doc["summary"] = {{"cells", cells.size()},
                      {"failures", failures},
                      {"max_E0_rel_err", json_number(worst_e0)},
                      {"E0_tolerance", json_number(sweep.energy_tolerance)},
                      {"max_dE_rel_err", json_number(worst_de)},
                      {"dE_tolerance", json_number(sweep.correction_tolerance)},
                      {"beta", json_number(sweep.deformation.beta())}};
    out << doc.dump(2) << '\n';
  }

  if (config.dump_dir) {
    std::filesystem::create_directories(*config.dump_dir);
    for (PotentialKind kind : sweep.potentials)
      for (double g : sweep.gammas)
        for (int l = 0; l <= sweep.l_max; ++l) {
          const Molecule m = Molecule::with_gamma(g);
          const RadialPotential v = kind == PotentialKind::Kratzer
                                        ? RadialPotential(KratzerPotential::from_molecule(m))
                                        : RadialPotential(PhoPotential::from_molecule(m));
          const RadialGrid grid = suggest_grid(v, l, m.reduced_mass(), 1.0, sweep.n_max + 1, sweep.grid_points);
          for (const auto& state : solve_radial(v, l, m.reduced_mass(), grid, sweep.n_max + 1)) {
            const auto file = *config.dump_dir / (std::string(to_string(kind)) + "_g" + number(g) + "_n" +
                                                  std::to_string(state.qn.n) + "_l" + std::to_string(l) + ".dat");
            std::ofstream dump(file);
            write_eigenstate(dump, state);
          }
        }
  }
  return failures == 0 ? kOk : kVerificationFailed;
}

int cmd_fit_beta(const RunConfig& config, std::ostream& out, std::ostream&) {
  const PotentialKind kind = config.potential.value_or(PotentialKind::Kratzer);
  const Molecule m = resolve_molecule(config, "H2");
  const QuantumNumbers qn(config.level_n, config.level_l);
  const auto path = config.levels_file.value_or(default_data_dir() / "levels.csv");
  const auto levels = load_levels(path);

  const ExperimentalLevel* record = nullptr;
  for (const auto& level : levels)
    if (level.molecule == m.name() && level.qn == qn) record = &level;
  if (!record) {
    throw DataError("no experimental record for " + m.name() + " (n=" + std::to_string(qn.n) +
                    ", l=" + std::to_string(qn.l) + ") in " + path.string());
  }

  const BetaBound bound = fit_beta_bound(m, energy_for_potential(*record, m, kind), qn, kind);
  const double length = UnitSystem::length_to_angstrom(bound.minimal_length_upper);

  if (config.format == OutputFormat::Csv) {
    out << "molecule,potential,n,l,beta_upper,min_length_angstrom,basis,source\n";
    auto quoted = [](const std::string& s) {
      std::string q = "\"";
      for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    out << m.name() << ',' << to_string(kind) << ',' << qn.n << ',' << qn.l << ','
        << number(bound.beta_upper) << ',' << number(length) << ',' << quoted(bound.basis) << ','
        << quoted(record->source) << '\n';
  } else {
    ordered_json doc{{"molecule", m.name()},
                     {"potential", to_string(kind)},
                     {"n", qn.n},
                     {"l", qn.l},
                     {"beta_upper", json_number(bound.beta_upper)},
                     {"min_length_angstrom", json_number(length)},
                     {"basis", bound.basis},
                     {"source", record->source}};
    out << doc.dump(2) << '\n';
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vibration-rotation spectra of diatomic molecules with a minimal length", "mlspec"};
  app.require_subcommand(1);

  RunConfig config;
  std::string potential_text;
  std::string units_text = "cm-1";
  std::string format_text = "csv";
  std::string molecule;
  std::string molecules_file;

  const std::map<std::string, PotentialKind> potentials{{"kratzer", PotentialKind::Kratzer},
                                                         {"pho", PotentialKind::Pho}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--potential", potential_text, "kratzer or pho")->check(CLI::IsMember({"kratzer", "pho"}));
    sub->add_option("--molecule", molecule, "name in the molecules file, 'unit', or 'gamma:<g>'");
    sub->add_option("--molecules-file", molecules_file, "molecule data file");
    sub->add_option("--nmax", config.n_max, "highest vibrational quantum number");
    sub->add_option("--lmax", config.l_max, "highest rotational quantum number");
    auto* beta = sub->add_option("--beta", config.beta, "deformation parameter in internal units")
                     ->check(CLI::NonNegativeNumber);
    auto* length = sub->add_option("--min-length-angstrom", config.min_length_angstrom,
                                   "minimal length hbar sqrt(5 beta) in angstrom")
                       ->check(CLI::NonNegativeNumber);
    beta->excludes(length);
    sub->add_option("--units", units_text, "output energy unit")->check(CLI::IsMember({"cm-1", "eV", "internal"}));
    sub->add_option("--format", format_text, "output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* spectrum = app.add_subcommand("spectrum", "deformed level table (n, l, E0, dE, E)");
  common(spectrum);
  auto* constants = app.add_subcommand("constants", "deformed spectroscopic constants");
  common(constants);
  constants->add_flag("--fit", config.fit, "also fit a generated level table and compare");
  auto* verify = app.add_subcommand("verify", "closed forms vs numerical oracle");
  common(verify);
  verify->add_option("--gamma", config.gammas, "gamma values of the synthetic molecules (default 20 100)");
  verify->add_option("--grid-points", config.grid_points, "initial grid points")->check(CLI::Range(3, 100000000));
  verify->add_option("--rmax", config.r_max, "outer box radius (internal units)")->check(CLI::PositiveNumber);
  verify->add_option("--levels", config.max_levels, "maximum number of grids in the refinement ladder")
      ->check(CLI::Range(2, 12));
  verify->add_option("--dump-dir", config.dump_dir, "write (r, u) eigenstate files here");
  auto* fit_beta = app.add_subcommand("fit-beta", "upper bound on the minimal length from a measured level");
  common(fit_beta);
  fit_beta->add_option("--levels-file", config.levels_file, "experimental levels file");
  fit_beta->add_option("--n", config.level_n, "vibrational quantum number of the level")->check(CLI::NonNegativeNumber);
  fit_beta->add_option("--l", config.level_l, "rotational quantum number of the level")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  if (!potential_text.empty()) config.potential = potentials.at(potential_text);
  config.units = *parse_energy_unit(units_text);
  config.format = format_text == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!molecule.empty()) config.molecule = molecule;
  if (!molecules_file.empty()) config.molecules_file = molecules_file;

  try {
    if (spectrum->parsed()) return cmd_spectrum(config, out, err);
    if (constants->parsed()) return cmd_constants(config, out, err);
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (fit_beta->parsed()) return cmd_fit_beta(config, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const ConvergenceError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kConfigError;
}

}  // namespace mlspec::cli
