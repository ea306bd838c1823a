#ifndef GBDP_ERRORS_HPP
#define GBDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gbdp {

/// Grid shape violates one of its invariants.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of an operation (bad direction, non-adjacent
/// pair, negative entry, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation is not defined for this configuration, e.g. spectral
/// methods with l1 != l2.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A transition that must be positive is zero.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recovered quantities disagree beyond tolerance (non-commuting model).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reducible non-negative matrix where irreducibility is required.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model / parametrization file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gbdp

#endif  // GBDP_ERRORS_HPP
