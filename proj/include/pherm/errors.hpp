#ifndef PHERM_ERRORS_HPP
#define PHERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pherm {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input / contract violations.
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonFiniteEntry : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct FamilyParseError : Error {
  using Error::Error;
};

// Numerical failures.
struct SingularMatrix : Error {
  using Error::Error;
};
struct ConvergenceFailure : Error {
  using Error::Error;
};
struct ClusterAmbiguity : Error {
  using Error::Error;
};
struct IllConditioned : Error {
  using Error::Error;
};
struct AmbiguousRealness : Error {
  using Error::Error;
};
struct NearSingular : Error {
  using Error::Error;
};

// Structural preconditions of the theorem machinery.
struct ConditionViolated : Error {
  using Error::Error;
};
struct PairingMismatch : Error {
  using Error::Error;
};
struct NotASymmetry : Error {
  using Error::Error;
};
struct NotInvolutory : Error {
  using Error::Error;
};
struct NoInvertibleM : Error {
  using Error::Error;
};
struct PairingUnavailable : Error {
  using Error::Error;
};
struct NotTSymmetric : Error {
  using Error::Error;
};

}  // namespace pherm

#endif
