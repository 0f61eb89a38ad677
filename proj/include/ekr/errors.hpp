#pragma once

#include <stdexcept>
#include <string>

namespace ekr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrimePower : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct UnsupportedDegree : Error { using Error::Error; };
struct EqualPoints : Error { using Error::Error; };
struct EqualLines : Error { using Error::Error; };
struct GeometryViolation : Error { using Error::Error; };
struct TooSmallField : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct ResourceExceeded : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct UnknownSuite : Error { using Error::Error; };

} // namespace ekr
