#pragma once

#include <stdexcept>
#include <string>

namespace cdsarb {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's stated domain (ordering, ranges, empty schedules).
struct DomainError : Error {
    using Error::Error;
};

/// Query beyond a curve's last pillar; no silent flat extrapolation.
struct ExtrapolationError : Error {
    using Error::Error;
};

/// A curve degenerated to the point where the requested quantity is undefined
/// (vanishing defaultable annuity, identically-zero swap rate, F(T) <= 0).
struct DegenerateCurveError : Error {
    using Error::Error;
};

/// Hazard bootstrapping could not bracket a root for some tenor.
struct BootstrapError : Error {
    using Error::Error;
};

/// CSV header/schema problems on ingestion.
struct SchemaError : Error {
    using Error::Error;
};

/// Bad command-line or API usage (unknown group key, missing option).
struct UsageError : Error {
    using Error::Error;
};

} // namespace cdsarb
