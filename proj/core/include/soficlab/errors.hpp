#pragma once

#include <stdexcept>
#include <string>

namespace soficlab {

/// Base class for all soficlab domain errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two values belong to incompatible groups, modes, or dimensions.
struct MismatchError : Error {
  using Error::Error;
};

/// No Neumann split c(I - B) with ||B||_1 < 1 was found; the element may not
/// be invertible in l^1 (e.g. f = 1 - t).
struct NeumannConditionFailed : Error {
  using Error::Error;
};

/// A window-approximated point was asked for coordinates outside its window.
struct WindowExhausted : Error {
  using Error::Error;
};

/// An exhaustive search exceeded its configured size cap or work budget.
struct BudgetExhausted : Error {
  using Error::Error;
};

/// A sofic approximation was too coarse for the requested construction
/// (measured defect or locus size reported in the message).
struct SigmaQualityError : Error {
  using Error::Error;
};

}  // namespace soficlab
