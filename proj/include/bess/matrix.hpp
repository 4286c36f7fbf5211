#pragma once

#include <optional>
#include <vector>

#include "bess/errors.hpp"
#include "bess/field.hpp"

namespace bess {

/// Dense matrix over a single finite field. Zero-sized matrices are legal so
/// that block decompositions with empty blocks need no special cases; the
/// determinant of a 0x0 matrix is 1 and its inverse is itself.
class FieldMatrix {
 public:
  FieldMatrix(const FieldSpec& spec, int rows, int cols);
  static FieldMatrix identity(const FieldSpec& spec, int size);

  const FieldSpec& spec() const { return *spec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const FieldElem& at(int r, int c) const;
  void set(int r, int c, const FieldElem& v);

  FieldMatrix operator+(const FieldMatrix& o) const;
  FieldMatrix operator-(const FieldMatrix& o) const;
  FieldMatrix operator*(const FieldMatrix& o) const;
  FieldMatrix operator*(const FieldElem& c) const;
  FieldMatrix operator-() const;
  bool operator==(const FieldMatrix& o) const;
  bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

  FieldMatrix transpose() const;
  bool is_zero() const;
  bool is_symmetric() const;
  /// Symmetric with an all-zero diagonal.
  bool is_alternate() const;

  /// Determinant by Gaussian elimination. Throws NotSquare.
  FieldElem det() const;
  /// Inverse by Gauss-Jordan elimination; nullopt when singular. Throws NotSquare.
  std::optional<FieldMatrix> inverse() const;

  /// Entry-wise transport into an extension of the coefficient field.
  FieldMatrix embedded(const FieldSpec& target) const;

 private:
  void check_same_shape(const FieldMatrix& o) const;
  FieldElem& mut(int r, int c) { return data_[size_t(r) * cols_ + c]; }

  const FieldSpec* spec_;
  int rows_, cols_;
  std::vector<FieldElem> data_;
};

}  // namespace bess
