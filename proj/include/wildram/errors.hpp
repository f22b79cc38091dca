#pragma once

#include <stdexcept>
#include <string>

namespace wildram {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ring / arithmetic errors.
struct ZeroInverse : Error { using Error::Error; };
struct ModulusMismatch : Error { using Error::Error; };
struct RingMismatch : Error { using Error::Error; };
struct BadPartition : Error { using Error::Error; };
struct ZeroValuation : Error { using Error::Error; };
struct EvenCharacteristic : Error { using Error::Error; };

// Series errors.
struct NonzeroConstant : Error { using Error::Error; };
struct NonUnitConstant : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct InsufficientPrecision : Error { using Error::Error; };
struct InvariantViolation : Error { using Error::Error; };

// Dynamics / index errors.
struct InfiniteMultiplicity : Error { using Error::Error; };
struct NotRemovable : Error { using Error::Error; };
struct PrecedingIndexNonzero : Error { using Error::Error; };
struct PreconditionViolation : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };

// Newton-polygon errors.
struct ShapeViolation : Error { using Error::Error; };
struct IndexVanishes : Error { using Error::Error; };
struct DivisionFailure : Error { using Error::Error; };

// Harness errors.
struct ParseError : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

} // namespace wildram
