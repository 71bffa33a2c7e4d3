#pragma once

#include <stdexcept>
#include <string>

namespace relax {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed inputs: non-increasing abscissae, non-finite samples, bad sizes.
struct InvalidInputError : Error {
  using Error::Error;
};

/// A query point fell outside the domain an object is defined on.
struct DomainError : Error {
  using Error::Error;
};

/// An ODE right-hand side denominator vanished; carries the x location.
struct SingularityError : Error {
  SingularityError(const std::string& what, double where)
      : Error(what), x(where) {}
  double x;
};

/// Shooting/event search failed to bracket or locate its target.
struct ShootingError : Error {
  using Error::Error;
};

/// Bad experiment configuration (unknown keys, invalid values, missing files).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace relax
