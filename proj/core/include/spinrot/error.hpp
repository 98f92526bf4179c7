#pragma once

#include <stdexcept>
#include <string>

namespace spinrot {

/// Invalid experiment description. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computation could not produce a trustworthy number (level crossing,
/// fit failure, vanishing response). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinrot
