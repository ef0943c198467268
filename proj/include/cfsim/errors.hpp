#pragma once

#include <stdexcept>
#include <string>

namespace cfsim {

/// Invalid or inconsistent configuration (bad key, non-dividing grid, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure that should be impossible on sane inputs
/// (e.g. a non-positive-definite MMSE system matrix).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Every precoder direction in a normalization batch had zero norm.
class DegenerateChannelError : public NumericalError {
 public:
  explicit DegenerateChannelError(const std::string& what) : NumericalError(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cfsim
