#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mlspec {

/// Real symmetric tridiagonal matrix with selective eigensolves:
/// Sturm-sequence bisection for eigenvalues, inverse iteration for vectors.
class SymmetricTridiagonal {
 public:
  SymmetricTridiagonal(std::vector<double> diagonal, std::vector<double> off_diagonal);

  std::size_t size() const { return diag_.size(); }
  std::span<const double> diagonal() const { return diag_; }
  std::span<const double> off_diagonal() const { return off_; }

  /// Number of eigenvalues strictly below x.
  std::size_t count_below(double x) const;

  /// k-th smallest eigenvalue (0-based), to roughly machine precision of the matrix norm.
  double eigenvalue(std::size_t k) const;

  std::vector<double> lowest_eigenvalues(std::size_t count) const;

  /// Unit-norm eigenvector for an accurately known eigenvalue.
  std::vector<double> eigenvector(double eigenvalue) const;

  /// Solves (T - shift I) x = rhs with partial pivoting; rhs is overwritten with x.
  void solve_shifted(double shift, std::span<double> rhs) const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  double pivmin_ = 0.0;
};

}  // namespace mlspec
