#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mlspec {

/// Diatomic molecule in internal units (hbar = 1, eV, angstrom).
class Molecule {
 public:
  /// Throws DomainError unless all three physical parameters are finite and > 0.
  Molecule(std::string name, double dissociation_energy, double equilibrium_distance,
           double reduced_mass);

  /// Converts from spectroscopic units (eV, angstrom, amu).
  static Molecule from_spectroscopic(std::string name, double de_ev, double re_angstrom,
                                     double mu_amu);

  /// Dimensionless test molecule with De = re = 1 and mu chosen so that gamma(m) == g.
  static Molecule with_gamma(double g, std::string name = "synthetic");

  const std::string& name() const { return name_; }
  double dissociation_energy() const { return de_; }
  double equilibrium_distance() const { return re_; }
  double reduced_mass() const { return mu_; }

 private:
  std::string name_;
  double de_;
  double re_;
  double mu_;
};

/// Deformation of the Heisenberg algebra, [X, P] = i hbar (1 + beta P^2).
/// beta is in internal units (angstrom^2 for real molecules).
class Deformation {
 public:
  Deformation() = default;
  explicit Deformation(double beta);

  double beta() const { return beta_; }

 private:
  double beta_ = 0.0;
};

struct QuantumNumbers {
  int n = 0;  ///< radial (vibrational)
  int l = 0;  ///< orbital (rotational)

  QuantumNumbers() = default;
  QuantumNumbers(int n_, int l_);

  friend auto operator<=>(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// A level split into the ordinary energy and the minimal-length shift.
struct EnergyLevel {
  QuantumNumbers qn;
  double e0 = 0.0;
  double de = 0.0;
  double total = 0.0;
  /// Set when |de| > 0.1 |e0|, where first-order perturbation theory is suspect.
  bool first_order_warning = false;
};

/// Coefficients of
///   E = Y00 + we v - wexe v^2 + weye v^3 + Be l(l+1) - alphae v l(l+1),  v = n + 1/2.
struct SpectroscopicConstants {
  double Y00 = 0.0;
  double we = 0.0;
  double wexe = 0.0;
  double weye = 0.0;
  double Be = 0.0;
  double alphae = 0.0;
};

/// Evaluates the master formula for a level.
double spectroscopic_energy(const SpectroscopicConstants& c, QuantumNumbers qn);

enum class PotentialKind { Kratzer, Pho };

std::string_view to_string(PotentialKind kind);
PotentialKind parse_potential_kind(std::string_view text);

/// gamma = re sqrt(2 mu De) / hbar; shared by both potentials.
double gamma(const Molecule& m);

/// 1/2 + sqrt((l + 1/2)^2 + g^2).
double lambda_kratzer(double g, int l);

/// sqrt(g^2 + (l + 1/2)^2).
double lambda_pho(double g, int l);

/// hbar sqrt(5 beta), the minimal position uncertainty in three dimensions.
double minimal_length(const Deformation& d);

/// Inverse of minimal_length. Throws DomainError for negative or non-finite input.
Deformation beta_from_minimal_length(double length);

}  // namespace mlspec
