#pragma once

#include <stdexcept>
#include <string>

namespace heli {

// Bad or missing user input: config files, schema violations, invalid values.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: non-convergence, divergence, loss of closed-loop stability.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace heli
