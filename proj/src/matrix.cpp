#include "bess/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace bess {

FieldMatrix::FieldMatrix(const FieldSpec& spec, int rows, int cols)
    : spec_(&spec), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ShapeMismatch("matrix dimensions must be non-negative");
  data_.assign(size_t(rows) * size_t(cols), FieldElem::zero(spec));
}

FieldMatrix FieldMatrix::identity(const FieldSpec& spec, int size) {
  FieldMatrix m(spec, size, size);
  for (int i = 0; i < size; ++i) m.set(i, i, FieldElem::one(spec));
  return m;
}

const FieldElem& FieldMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  return data_[size_t(r) * cols_ + c];
}

void FieldMatrix::set(int r, int c, const FieldElem& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  if (&v.spec() != spec_) throw MixedFields("matrix entry from a different field");
  data_[size_t(r) * cols_ + c] = v;
}

void FieldMatrix::check_same_shape(const FieldMatrix& o) const {
  if (spec_ != o.spec_) throw MixedFields("matrices over different fields");
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ShapeMismatch("matrix shapes do not match");
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
  check_same_shape(o);
  FieldMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const {
  check_same_shape(o);
  FieldMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (spec_ != o.spec_) throw MixedFields("matrices over different fields");
  if (cols_ != o.rows_) throw ShapeMismatch("inner matrix dimensions do not match");
  FieldMatrix r(*spec_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const FieldElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.mut(i, j) = r.at(i, j) + a * o.at(k, j);
    }
  return r;
}

FieldMatrix FieldMatrix::operator*(const FieldElem& c) const {
  if (&c.spec() != spec_) throw MixedFields("scalar from a different field");
  FieldMatrix r = *this;
  for (auto& v : r.data_) v = v * c;
  return r;
}

FieldMatrix FieldMatrix::operator-() const {
  FieldMatrix r = *this;
  for (auto& v : r.data_) v = -v;
  return r;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
  return spec_ == o.spec_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix r(*spec_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.mut(j, i) = at(i, j);
  return r;
}

bool FieldMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

bool FieldMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool FieldMatrix::is_alternate() const {
  if (!is_symmetric()) return false;
  for (int i = 0; i < rows_; ++i)
    if (!at(i, i).is_zero()) return false;
  return true;
}

FieldElem FieldMatrix::det() const {
  if (!is_square()) throw NotSquare("determinant of a non-square matrix");
  FieldMatrix a = *this;
  FieldElem result = FieldElem::one(*spec_);
  bool negate = false;
  for (int col = 0; col < rows_; ++col) {
    int pivot = -1;
    for (int r = col; r < rows_; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return FieldElem::zero(*spec_);
    if (pivot != col) {
      for (int c = 0; c < cols_; ++c)
        std::swap(a.mut(pivot, c), a.mut(col, c));
      negate = !negate;
    }
    const FieldElem p = a.at(col, col);
    result = result * p;
    const FieldElem ip = p.inverse();
    for (int r = col + 1; r < rows_; ++r) {
      const FieldElem f = a.at(r, col) * ip;
      if (f.is_zero()) continue;
      for (int c = col; c < cols_; ++c)
        a.mut(r, c) = a.at(r, c) - f * a.at(col, c);
    }
  }
  return negate ? -result : result;
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
  if (!is_square()) throw NotSquare("inverse of a non-square matrix");
  FieldMatrix a = *this;
  FieldMatrix inv = identity(*spec_, rows_);
  for (int col = 0; col < rows_; ++col) {
    int pivot = -1;
    for (int r = col; r < rows_; ++r)
      if (!a.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int c = 0; c < cols_; ++c) {
        std::swap(a.mut(pivot, c), a.mut(col, c));
        std::swap(inv.mut(pivot, c), inv.mut(col, c));
      }
    const FieldElem ip = a.at(col, col).inverse();
    for (int c = 0; c < cols_; ++c) {
      a.mut(col, c) = a.at(col, c) * ip;
      inv.mut(col, c) = inv.at(col, c) * ip;
    }
    for (int r = 0; r < rows_; ++r) {
      if (r == col) continue;
      const FieldElem f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < cols_; ++c) {
        a.mut(r, c) = a.at(r, c) - f * a.at(col, c);
        inv.mut(r, c) = inv.at(r, c) - f * inv.at(col, c);
      }
    }
  }
  return inv;
}

FieldMatrix FieldMatrix::embedded(const FieldSpec& target) const {
  FieldMatrix r(target, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.mut(i, j) = embed(at(i, j), target);
  return r;
}

}  // namespace bess
