#pragma once

#include <stdexcept>
#include <string>

namespace graphonlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// coords
struct LevelTooLarge : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };

// graphons
struct OutOfRange : Error { using Error::Error; };
struct MTooLarge : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct TailNotConvergent : Error { using Error::Error; };

// sampling / regularity
struct BudgetExceeded : Error { using Error::Error; };
struct TooManyBlocks : Error { using Error::Error; };
struct NullPart : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };

// constraints
struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};
struct DegreeUnassignable : Error { using Error::Error; };
struct MeasureMismatch : Error { using Error::Error; };
struct IncompatibleGraphs : Error { using Error::Error; };

}  // namespace graphonlab
