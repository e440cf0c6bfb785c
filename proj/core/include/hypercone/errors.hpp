#pragma once

#include <stdexcept>
#include <string>

namespace hypercone {

/// Shapes of operands do not match (non-square matrix, wrong vector length).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A runtime self-check failed. Indicates a bug or a corrupted input file.
class SelfCheckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hypercone
