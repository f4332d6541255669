#pragma once

#include <stdexcept>
#include <string>

namespace mlspec {

/// Input outside the domain where a formula or model is defined
/// (negative lengths, poles of the closed-form corrections, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent external data (data files, level tables).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mlspec
