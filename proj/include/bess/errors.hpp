#pragma once

#include <stdexcept>
#include <string>

namespace bess {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands belong to different field specs (no implicit coercion exists).
struct MixedFields : Error {
  using Error::Error;
};

/// Division by the zero element of a field.
struct DivisionByZero : Error {
  using Error::Error;
};

/// A rational function was constructed with denominator zero.
struct ZeroDenominator : Error {
  using Error::Error;
};

/// Operands disagree on the number of variables.
struct VariableCountMismatch : Error {
  using Error::Error;
};

/// Variable index outside 1..n.
struct BadVariableIndex : Error {
  using Error::Error;
};

/// Operation requires a specific field characteristic.
struct WrongCharacteristic : Error {
  using Error::Error;
};

/// No canonical embedding between the two field specs.
struct NonEmbeddableField : Error {
  using Error::Error;
};

/// gcd(0, 0) requested.
struct BothZero : Error {
  using Error::Error;
};

/// Two independent procedures for the same question returned different
/// answers.  Always indicates an internal bug, never bad input.
struct ProcedureDisagreement : Error {
  using Error::Error;
};

/// A symmetric matrix was required.
struct NotSymmetric : Error {
  using Error::Error;
};

/// The lower-right block of a pencil is singular as a matrix over F(z).
struct SingularBlock : Error {
  using Error::Error;
};

/// The full pencil A(z) is singular over F(z).
struct SingularPencil : Error {
  using Error::Error;
};

/// Operation is defined for scalar targets (top block 1x1) only.
struct NotScalarTarget : Error {
  using Error::Error;
};

/// Matrix block shapes do not compose.
struct ShapeMismatch : Error {
  using Error::Error;
};

/// The middle pencil of a two-sided product is singular over F(z).
struct SingularMiddle : Error {
  using Error::Error;
};

/// Inversion requested for a target that is singular over F(z).
struct SingularTarget : Error {
  using Error::Error;
};

/// A square matrix was required.
struct NotSquare : Error {
  using Error::Error;
};

/// A builder was asked for a realization that the decision procedure rejects.
struct NotRealizable : Error {
  using Error::Error;
};

/// The claimed field extension does not extend the base field.
struct NotAnExtension : Error {
  using Error::Error;
};

/// Input must be homogeneous of degree one.
struct NotHomogeneousDegreeOne : Error {
  using Error::Error;
};

/// The sampling budget ran out before enough usable points were found.
struct InsufficientNonSingularPoints : Error {
  using Error::Error;
};

/// Variable count exceeds the limit of an exponential-size computation.
struct TooManyVariables : Error {
  using Error::Error;
};

/// Malformed field spec string.
struct FieldParseError : Error {
  using Error::Error;
};

/// Malformed expression text; message carries line and column.
struct SyntaxError : Error {
  using Error::Error;
};

/// Expression references a variable outside z1..zn.
struct UnknownVariable : Error {
  using Error::Error;
};

/// Malformed field element literal.
struct FieldLiteralError : Error {
  using Error::Error;
};

}  // namespace bess
