#pragma once

#include <stdexcept>
#include <string>

namespace cycles {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Boost velocity with |beta| >= 1.
struct InvalidVelocityError : Error {
  using Error::Error;
};

/// Four-momentum off the mass shell beyond the input tolerance.
struct DispersionError : Error {
  DispersionError(const std::string& what, double residual_)
      : Error(what), residual(residual_) {}
  double residual;
};

/// Period four-vector that is spacelike or null.
struct InvalidPeriodError : Error {
  using Error::Error;
};

/// Massless state at rest: the recurrence is infinite.
struct InfinitePeriodError : Error {
  using Error::Error;
};

/// Sampling grid does not cover an integer number of periods.
struct CommensurabilityError : Error {
  using Error::Error;
};

/// Evaluation at a field singularity (|x| = 0).
struct SingularityError : Error {
  using Error::Error;
};

/// Modulation strength outside the linearized regime.
struct LinearizationDomainError : Error {
  using Error::Error;
};

/// Point outside a sampled field's grid domain.
struct GridDomainError : Error {
  using Error::Error;
};

/// No classically allowed region at the requested energy.
struct NoTurningPointError : Error {
  using Error::Error;
};

/// Level search failed to bracket the requested action.
struct UnresolvedLevelError : Error {
  using Error::Error;
};

/// Series truncation too short for the requested certification.
struct TruncationError : Error {
  TruncationError(const std::string& what, double tail_winding_, double tail_spectral_)
      : Error(what), tail_winding(tail_winding_), tail_spectral(tail_spectral_) {}
  double tail_winding;
  double tail_spectral;
};

/// Loop sampled too coarsely to extract a topological integer.
struct UndersampledLoopError : Error {
  using Error::Error;
};

/// Unwrapped winding and line-integral quadrature disagree.
struct StokesInconsistencyError : Error {
  using Error::Error;
};

/// Generic domain violation (non-positive mass, bad range, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Scenario configuration failed validation.
struct ConfigError : Error {
  using Error::Error;
};

/// File could not be read, parsed, or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace cycles
