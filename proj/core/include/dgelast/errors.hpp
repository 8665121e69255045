#ifndef DGELAST_ERRORS_HPP
#define DGELAST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dgelast {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke a documented precondition.
struct ContractError : Error {
  using Error::Error;
};

/// Degenerate or inverted geometry.
struct GeometryError : Error {
  using Error::Error;
};

/// Requested something outside the supported range (degree, quadrature order).
struct CapabilityError : Error {
  using Error::Error;
};

/// A size limit would be exceeded (mesh too fine for the configured maximum).
struct ResourceLimitError : Error {
  using Error::Error;
};

/// Malformed configuration text or invalid parameter combination.
struct ConfigError : Error {
  using Error::Error;
};

/// Krylov iteration hit a division by a vanishing inner product.
struct SolverBreakdownError : Error {
  using Error::Error;
};

/// Convergence rate undefined (zero or negative error entry).
struct RateError : Error {
  using Error::Error;
};

} // namespace dgelast

#endif
