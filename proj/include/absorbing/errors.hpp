#pragma once

#include <stdexcept>
#include <string>

namespace absorbing {

// Base for everything this library throws on bad input or failed numerics.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };

struct NotAState : Error { using Error::Error; };

struct ScalarInput : Error { using Error::Error; };
struct NotOrthonormal : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };

struct NotCompletelyPositive : Error { using Error::Error; };
struct DegenerateState : Error { using Error::Error; };
struct UnbalancedKraus : Error { using Error::Error; };
struct TracialState : Error { using Error::Error; };
struct EpsilonTooLarge : Error { using Error::Error; };

struct NoInvariantState : Error { using Error::Error; };
struct NotADensity : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };

struct IndexOutOfRange : Error { using Error::Error; };
struct ConstructionFailed : Error { using Error::Error; };

struct SchemaViolation : Error { using Error::Error; };

} // namespace absorbing
