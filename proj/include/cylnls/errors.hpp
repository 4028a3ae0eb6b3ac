#pragma once

#include <stdexcept>
#include <string>

namespace cylnls {

/// Invalid static configuration: bad grid sizes, out-of-range exponents,
/// malformed config files.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Valid configuration applied outside its domain of validity: light cone
/// leaving the box, unresolvable chirp, degenerate inputs.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cylnls
