#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bess/matrix.hpp"
#include "bess/poly.hpp"

namespace bess {

/// Rational function in canonical form: gcd(num, den) == 1, den monic under
/// graded-lex, and zero stored as 0/1. Equality is structural equality of the
/// canonical parts.
class RatFunc {
 public:
  /// The zero function 0/1.
  RatFunc(const FieldSpec& spec, int nvars);
  /// num/den, normalized. Throws ZeroDenominator.
  RatFunc(MultiPoly num, MultiPoly den);
  explicit RatFunc(MultiPoly num);
  static RatFunc constant(const FieldSpec& spec, int nvars, const FieldElem& c);
  static RatFunc constant(const FieldSpec& spec, int nvars, uint64_t c);
  static RatFunc variable(const FieldSpec& spec, int nvars, int index);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const FieldSpec& spec() const { return num_.spec(); }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator*(const FieldElem& c) const;
  RatFunc operator-() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// Reciprocal; throws DivisionByZero on the zero function.
  RatFunc inverse() const;
  /// Integer power; negative exponents go through inverse().
  RatFunc pow(int e) const;

  /// Quotient-rule partial derivative with respect to z_index (1-based).
  RatFunc derivative(int index) const;

  /// num(pt)/den(pt); nullopt at poles (den(pt) == 0). The point may live in
  /// an extension of the coefficient field.
  std::optional<FieldElem> eval(std::span<const FieldElem> point) const;

  /// Degree as a homogeneous rational function: deg(num) - deg(den) when both
  /// reduced parts are homogeneous, AnyDegree for zero, none otherwise.
  Homogeneity homogeneity() const;

  /// Exact square root within the subfield of rational functions in the
  /// squared variables (characteristic 2). Membership is tested on the parity
  /// of num*den, i.e. of the numerator after clearing the denominator into a
  /// square. nullopt when the function is not in that subfield.
  std::optional<RatFunc> frobenius_sqrt() const;

  /// True iff num and den of the reduced form have every exponent divisible
  /// by the field characteristic p (the exponent-divisibility membership test
  /// for rational functions in the p-th-power variables).
  bool in_pth_powers() const;

  /// Substitute z_index := 1 and renumber later variables down by one.
  /// Throws ZeroDenominator when the denominator vanishes under substitution.
  RatFunc substitute_one(int index) const;

  /// Transport into an extension field and/or a wider variable list.
  RatFunc extended(const FieldSpec& target, int new_nvars) const;

  std::string to_string() const;

 private:
  struct ReducedTag {};
  RatFunc(MultiPoly num, MultiPoly den, ReducedTag);  // skips gcd, scales monic
  void scale_monic();

  MultiPoly num_, den_;
};

/// Dense matrix of rational functions sharing one field and variable list.
class RatMatrix {
 public:
  RatMatrix(const FieldSpec& spec, int nvars, int rows, int cols);  // zero matrix
  static RatMatrix identity(const FieldSpec& spec, int nvars, int size);
  /// Builds from a rectangular grid; validates uniform spec/nvars.
  static RatMatrix from_rows(const std::vector<std::vector<RatFunc>>& entries);

  const FieldSpec& spec() const { return *spec_; }
  int nvars() const { return nvars_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const RatFunc& at(int r, int c) const;
  void set(int r, int c, RatFunc v);

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator*(const RatFunc& c) const;
  RatMatrix operator-() const;
  bool operator==(const RatMatrix& o) const;
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  RatMatrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;

  /// Determinant by fraction-field elimination. Throws NotSquare.
  RatFunc det() const;
  /// Gauss-Jordan inverse; nullopt when singular. Throws NotSquare.
  std::optional<RatMatrix> inverse() const;

  /// Entry-wise evaluation; nullopt if any entry has a pole at the point.
  std::optional<FieldMatrix> eval(std::span<const FieldElem> point) const;

  RatMatrix extended(const FieldSpec& target, int new_nvars) const;

  /// [[e, e, ...],[...]] with entries from RatFunc::to_string.
  std::string to_string() const;

 private:
  RatFunc& mut(int r, int c) { return data_[size_t(r) * cols_ + c]; }
  void check_same_shape(const RatMatrix& o) const;

  const FieldSpec* spec_;
  int nvars_, rows_, cols_;
  std::vector<RatFunc> data_;
};

}  // namespace bess
