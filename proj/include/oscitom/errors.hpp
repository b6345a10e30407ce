#pragma once

#include <stdexcept>

namespace oscitom {

/// Argument outside the mathematical domain of an operation (η ≤ 0, |s| ≥ 1, k > n, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested order or size exceeds a configured maximum.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Quadrature grid cannot resolve the requested state (normalization deficit, truncated tails).
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity violates an invariant beyond roundoff tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscitom
