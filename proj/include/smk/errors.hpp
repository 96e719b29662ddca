#pragma once

#include <stdexcept>
#include <string>

namespace smk {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDirection : Error { using Error::Error; };
struct DimMismatch : Error { using Error::Error; };
struct EmptyMeasure : Error { using Error::Error; };
struct InvalidExponent : Error { using Error::Error; };
struct InvalidWeights : Error { using Error::Error; };
struct InvalidQuantile : Error { using Error::Error; };
struct InvalidParam : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct InvalidGrid : Error { using Error::Error; };
struct InvalidValue : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct UnsupportedOracle : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace smk
