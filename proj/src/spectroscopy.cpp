#include "mlspec/spectroscopy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mlspec/errors.hpp"
#include "mlspec/kratzer.hpp"
#include "mlspec/pho.hpp"

namespace mlspec {

LevelTable::LevelTable(std::string molecule, LevelSource source)
    : molecule_(std::move(molecule)), source_(source) {}

void LevelTable::add(QuantumNumbers qn, double energy) {
  if (!std::isfinite(energy)) throw DataError("level energy must be finite");
  const bool duplicate = std::any_of(entries_.begin(), entries_.end(),
                                     [&](const LevelEntry& e) { return e.qn == qn; });
  if (duplicate) {
    throw DataError("duplicate level (n = " + std::to_string(qn.n) + ", l = " +
                    std::to_string(qn.l) + ") in table for " + molecule_);
  }
  entries_.push_back({qn, energy});
}

EnergyLevel deformed_level(PotentialKind kind, const Molecule& m, const Deformation& d,
                           QuantumNumbers qn) {
  return kind == PotentialKind::Kratzer ? kratzer_energy_deformed(m, d, qn)
                                        : pho_energy_deformed(m, d, qn);
}

SpectroscopicConstants spectroscopic_constants(PotentialKind kind, const Molecule& m,
                                               const Deformation& d) {
  return kind == PotentialKind::Kratzer ? kratzer_spectroscopic_constants(m, d)
                                        : pho_spectroscopic_constants(m, d);
}

LevelTable closed_form_level_table(PotentialKind kind, const Molecule& m, const Deformation& d,
                                   int n_max, int l_max) {
  LevelTable table(m.name(), kind == PotentialKind::Kratzer ? LevelSource::ComputedKratzer
                                                             : LevelSource::ComputedPho);
  const double floor = kind == PotentialKind::Kratzer ? -m.dissociation_energy() : 0.0;
  for (int n = 0; n <= n_max; ++n)
    for (int l = 0; l <= l_max; ++l) {
      const QuantumNumbers qn(n, l);
      table.add(qn, deformed_level(kind, m, d, qn).total - floor);
    }
  return table;
}

namespace {

std::string coverage(const LevelTable& table) {
  std::set<int> ns, ls;
  for (const auto& e : table.entries()) {
    ns.insert(e.qn.n);
    ls.insert(e.qn.l);
  }
  std::ostringstream out;
  out << table.size() << " levels, n in {";
  for (auto it = ns.begin(); it != ns.end(); ++it) out << (it == ns.begin() ? "" : ",") << *it;
  out << "}, l in {";
  for (auto it = ls.begin(); it != ls.end(); ++it) out << (it == ls.begin() ? "" : ",") << *it;
  out << "}";
  return out.str();
}

}  // namespace

DunhamFit fit_dunham(const LevelTable& table, DunhamModel model) {
  const bool extended = model == DunhamModel::Extended;
  const Eigen::Index columns = extended ? 9 : 6;
  const std::size_t need_n = extended ? 5 : 4;
  const std::size_t need_l = extended ? 3 : 2;

  std::set<int> ns, ls;
  for (const auto& e : table.entries()) {
    ns.insert(e.qn.n);
    ls.insert(e.qn.l);
  }
  if (ns.size() < need_n || ls.size() < need_l || table.size() < static_cast<std::size_t>(columns)) {
    std::ostringstream msg;
    msg << "fit_dunham: " << (extended ? "extended" : "standard") << " model needs at least "
        << need_n << " distinct n, " << need_l << " distinct l and " << columns
        << " levels; table has " << coverage(table);
    throw DataError(msg.str());
  }

  const auto rows = static_cast<Eigen::Index>(table.size());
  Eigen::MatrixXd design(rows, columns);
  Eigen::VectorXd energies(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& e = table.entries()[static_cast<std::size_t>(i)];
    const double v = e.qn.n + 0.5;
    const double rot = static_cast<double>(e.qn.l) * (e.qn.l + 1);
    design(i, 0) = 1.0;
    design(i, 1) = v;
    design(i, 2) = -v * v;
    design(i, 3) = v * v * v;
    design(i, 4) = rot;
    design(i, 5) = -v * rot;
    if (extended) {
      design(i, 6) = v * v * v * v;
      design(i, 7) = v * v * rot;
      design(i, 8) = rot * rot;
    }
    energies(i) = e.energy;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < columns) {
    throw DataError("fit_dunham: rank-deficient design matrix (rank " +
                    std::to_string(qr.rank()) + " of " + std::to_string(columns) +
                    "); quantum-number coverage is insufficient: " + coverage(table));
  }
  const Eigen::VectorXd coef = qr.solve(energies);
  const Eigen::VectorXd residual = design * coef - energies;

  DunhamFit fit;
  fit.entries = table.size();
  fit.max_residual = residual.cwiseAbs().maxCoeff();
  fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(rows));
  fit.constants = {coef(0), coef(1), coef(2), coef(3), coef(4), coef(5)};
  if (extended) fit.higher_order = std::vector<double>{coef(6), coef(7), coef(8)};

  if (rows > columns) {
    // cov = s^2 (A^T A)^-1 = s^2 P R^-1 R^-T P^T
    const double s2 = residual.squaredNorm() / static_cast<double>(rows - columns);
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(columns, columns).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(columns, columns));
    const Eigen::MatrixXd cov_perm = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation();
    const Eigen::MatrixXd cov = perm * cov_perm * perm.transpose();
    auto sigma = [&](Eigen::Index k) { return std::sqrt(s2 * cov(k, k)); };
    fit.standard_errors = {sigma(0), sigma(1), sigma(2), sigma(3), sigma(4), sigma(5)};
  }
  return fit;
}

BetaBound fit_beta_bound(const Molecule& m, double experimental_energy, QuantumNumbers level,
                         PotentialKind kind) {
  if (!std::isfinite(experimental_energy)) throw DomainError("experimental energy must be finite");
  const EnergyLevel unit = deformed_level(kind, m, Deformation(1.0), level);
  const double theory = unit.e0;
  const double slope = unit.de;  // dE/dbeta; the shift is linear in beta
  const double gap = experimental_energy - theory;

  std::ostringstream basis;
  basis.precision(10);
  basis << to_string(kind) << " level (n=" << level.n << ", l=" << level.l
        << "): theory(beta=0) = " << theory << ", experiment = " << experimental_energy
        << ", |gap| = " << std::abs(gap) << " attributed entirely to the minimal-length shift"
        << " dE/dbeta = " << slope;

  BetaBound bound;
  if (gap == 0.0) {
    bound.basis = basis.str();
    return bound;
  }
  if (slope == 0.0 || !std::isfinite(slope))
    throw DomainError("fit_beta_bound: minimal-length shift vanishes for this level; cannot bound beta");
  if ((gap > 0.0) != (slope > 0.0)) basis << " (gap has the opposite sign to the shift)";

  bound.beta_upper = std::abs(gap / slope);
  bound.minimal_length_upper = minimal_length(Deformation(bound.beta_upper));
  bound.basis = basis.str();
  return bound;
}

}  // namespace mlspec
