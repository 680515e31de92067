#pragma once

#include <stdexcept>
#include <string>

namespace lppcond {

// Error taxonomy shared by all modules. Everything derives from Error so
// callers (in particular the CLI) can map failures onto exit codes:
// validation-type errors -> 2, numeric-tolerance errors -> 3, budget -> 4.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validation-type errors (exit code 2).
struct DomainError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct RuleError : Error { using Error::Error; };
struct HypothesisError : Error { using Error::Error; };
struct MethodError : Error { using Error::Error; };
struct ContourNestingError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct AllocationError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// Numeric-tolerance errors (exit code 3).
struct NumericError : Error { using Error::Error; };
struct NonRealResult : NumericError { using NumericError::NumericError; };
struct DivisionError : NumericError { using NumericError::NumericError; };

// Budget errors (exit code 4).
struct BudgetExceeded : Error { using Error::Error; };

} // namespace lppcond
