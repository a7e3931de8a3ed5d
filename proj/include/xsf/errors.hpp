#pragma once

#include <stdexcept>
#include <string>

namespace xsf {

// Argument outside the documented parameter range of a function.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain (z <= 0 for K, |z| >= 1 for the
// Gauss series, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The numerical engine could not produce a trustworthy value.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xsf
