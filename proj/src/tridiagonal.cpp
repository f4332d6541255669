#include "mlspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlspec {

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> diagonal,
                                           std::vector<double> off_diagonal)
    : diag_(std::move(diagonal)), off_(std::move(off_diagonal)) {
  if (diag_.empty()) throw std::invalid_argument("empty tridiagonal matrix");
  if (off_.size() + 1 != diag_.size())
    throw std::invalid_argument("off-diagonal must have size n - 1");

  // Gershgorin bounds
  const std::size_t n = diag_.size();
  lower_ = std::numeric_limits<double>::max();
  upper_ = std::numeric_limits<double>::lowest();
  double max_off2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_[i - 1]);
    if (i + 1 < n) radius += std::abs(off_[i]);
    lower_ = std::min(lower_, diag_[i] - radius);
    upper_ = std::max(upper_, diag_[i] + radius);
    if (i + 1 < n) max_off2 = std::max(max_off2, off_[i] * off_[i]);
  }
  const double span = std::max(std::abs(lower_), std::abs(upper_));
  lower_ -= 2.0 * std::numeric_limits<double>::epsilon() * span;
  upper_ += 2.0 * std::numeric_limits<double>::epsilon() * span;
  pivmin_ = std::numeric_limits<double>::min() * std::max(1.0, max_off2);
}

std::size_t SymmetricTridiagonal::count_below(double x) const {
  std::size_t count = 0;
  double q = diag_[0] - x;
  if (std::abs(q) < pivmin_) q = -pivmin_;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < diag_.size(); ++i) {
    q = diag_[i] - x - off_[i - 1] * off_[i - 1] / q;
    if (std::abs(q) < pivmin_) q = -pivmin_;
    if (q < 0.0) ++count;
  }
  return count;
}

double SymmetricTridiagonal::eigenvalue(std::size_t k) const {
  if (k >= size()) throw std::out_of_range("eigenvalue index out of range");
  double lo = lower_;
  double hi = upper_;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 256; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + pivmin_) break;
    if (count_below(mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymmetricTridiagonal::lowest_eigenvalues(std::size_t count) const {
  if (count > size()) throw std::out_of_range("requested more eigenvalues than matrix size");
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) values[k] = eigenvalue(k);
  return values;
}

void SymmetricTridiagonal::solve_shifted(double shift, std::span<double> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch");

  std::vector<double> d(n), dl(off_.begin(), off_.end()), du(off_.begin(), off_.end());
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<unsigned char> swapped(n > 1 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag_[i] - shift;

  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(std::abs(lower_ - shift), std::abs(upper_ - shift));

  // LU with partial pivoting; U gets a second superdiagonal when rows swap.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped[i]) {
      rhs[i + 1] -= dl[i] * rhs[i];
    } else {
      const double temp = rhs[i];
      rhs[i] = rhs[i + 1];
      rhs[i + 1] = temp - dl[i] * rhs[i];
    }
  }

  rhs[n - 1] /= d[n - 1];
  if (n > 1) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
  for (std::size_t k = n > 2 ? n - 2 : 0; k-- > 0;)
    rhs[k] = (rhs[k] - du[k] * rhs[k + 1] - du2[k] * rhs[k + 2]) / d[k];
}

std::vector<double> SymmetricTridiagonal::eigenvector(double eigenvalue) const {
  const std::size_t n = size();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> previous;

  auto normalize = [](std::vector<double>& v) {
    double norm2 = 0.0;
    for (double value : v) norm2 += value * value;
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& value : v) value *= inv;
  };

  for (int iter = 0; iter < 8; ++iter) {
    previous = x;
    solve_shifted(eigenvalue, x);
    normalize(x);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * previous[i];
    if (iter > 0 && std::abs(std::abs(dot) - 1.0) < 1e-14) break;
  }
  return x;
}

}  // namespace mlspec
