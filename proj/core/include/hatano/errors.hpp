#pragma once

#include <stdexcept>
#include <string>

namespace hatano {

/// Root of the library's exception hierarchy. Every failure mode named in
/// the public API has its own subclass so callers (and the CLI exit-code
/// mapping) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// numerics
class BracketInvalid : public Error { using Error::Error; };
class ToleranceUnreachable : public Error { using Error::Error; };
class NoConvergence : public Error { using Error::Error; };

// potential
class InvalidSpec : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };
class SchemaError : public Error { using Error::Error; };

// transfer / verify
class DegenerateSpec : public Error { using Error::Error; };
class InvalidArgument : public Error { using Error::Error; };

// capability limits (coefficient path, dense oracle, precision)
class CapabilityExceeded : public Error { using Error::Error; };
class PrecisionExceeded : public CapabilityExceeded { using CapabilityExceeded::CapabilityExceeded; };

// band combinatorics and spectra
class StructureViolation : public Error { using Error::Error; };
class CountMismatch : public StructureViolation { using StructureViolation::StructureViolation; };
class ContinuityBreak : public StructureViolation { using StructureViolation::StructureViolation; };

}  // namespace hatano
