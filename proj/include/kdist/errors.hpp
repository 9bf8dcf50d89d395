#pragma once

#include <stdexcept>
#include <string>

namespace kdist {

// Bad arguments, malformed specs, contract violations. CLI exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Factorization failures, quadrature blow-ups and the like. CLI exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kdist
