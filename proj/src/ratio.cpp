#include "bess/ratio.hpp"

#include <stdexcept>
#include <utility>

namespace bess {

namespace {

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_one()) return a;
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("exact division failed during rational normalization");
  return std::move(*q);
}

void check_same(const RatFunc& a, const RatFunc& b) {
  if (&a.spec() != &b.spec()) throw MixedFields("rational functions over different fields");
  if (a.nvars() != b.nvars())
    throw VariableCountMismatch("rational functions with different variable counts");
}

/// Cost proxy for picking elimination pivots: sparser entries first.
size_t complexity(const RatFunc& r) {
  return r.num().terms().size() * r.den().terms().size();
}

}  // namespace

RatFunc::RatFunc(const FieldSpec& spec, int nvars)
    : num_(spec, nvars), den_(MultiPoly::constant(spec, nvars, 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (&num_.spec() != &den_.spec())
    throw MixedFields("numerator and denominator over different fields");
  if (num_.nvars() != den_.nvars())
    throw VariableCountMismatch("numerator and denominator variable counts differ");
  if (den_.is_zero()) throw ZeroDenominator("denominator is the zero polynomial");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.spec(), num_.nvars(), 1);
    return;
  }
  MultiPoly g = MultiPoly::gcd(num_, den_);
  if (!g.is_one()) {
    num_ = exact_div(num_, g);
    den_ = exact_div(den_, g);
  }
  scale_monic();
}

RatFunc::RatFunc(MultiPoly num)
    : num_(std::move(num)),
      den_(MultiPoly::constant(num_.spec(), num_.nvars(), 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den, ReducedTag)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.spec(), num_.nvars(), 1);
    return;
  }
  scale_monic();
}

void RatFunc::scale_monic() {
  const FieldElem lc = den_.leading_term().second;
  if (!lc.is_one()) {
    const FieldElem ilc = lc.inverse();
    num_ = num_ * ilc;
    den_ = den_ * ilc;
  }
}

RatFunc RatFunc::constant(const FieldSpec& spec, int nvars, const FieldElem& c) {
  return RatFunc(MultiPoly::constant(spec, nvars, c));
}

RatFunc RatFunc::constant(const FieldSpec& spec, int nvars, uint64_t c) {
  return RatFunc(MultiPoly::constant(spec, nvars, c));
}

RatFunc RatFunc::variable(const FieldSpec& spec, int nvars, int index) {
  return RatFunc(MultiPoly::variable(spec, nvars, index));
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  check_same(*this, o);
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  // Common denominator through the gcd of the two denominators.
  MultiPoly g = MultiPoly::gcd(den_, o.den_);
  MultiPoly da = exact_div(den_, g);
  MultiPoly db = exact_div(o.den_, g);
  return RatFunc(num_ * db + o.num_ * da, da * g * db);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  check_same(*this, o);
  if (is_zero() || o.is_zero()) return RatFunc(spec(), nvars());
  // Cross-cancel first; the remaining parts are pairwise coprime, so only
  // monic rescaling is needed afterwards.
  MultiPoly g1 = MultiPoly::gcd(num_, o.den_);
  MultiPoly g2 = MultiPoly::gcd(o.num_, den_);
  MultiPoly n = exact_div(num_, g1) * exact_div(o.num_, g2);
  MultiPoly d = exact_div(den_, g2) * exact_div(o.den_, g1);
  return RatFunc(std::move(n), std::move(d), ReducedTag{});
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::operator*(const FieldElem& c) const {
  if (&c.spec() != &spec()) throw MixedFields("scalar from a different field");
  if (c.is_zero()) return RatFunc(spec(), nvars());
  return RatFunc(num_ * c, den_, ReducedTag{});
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
  return RatFunc(den_, num_, ReducedTag{});
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc acc = constant(spec(), nvars(), 1);
  RatFunc base = *this;
  unsigned k = unsigned(e);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

RatFunc RatFunc::derivative(int index) const {
  MultiPoly n = num_.derivative(index) * den_ - num_ * den_.derivative(index);
  return RatFunc(std::move(n), den_ * den_);
}

std::optional<FieldElem> RatFunc::eval(std::span<const FieldElem> point) const {
  const FieldElem d = den_.eval(point);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(point) / d;
}

Homogeneity RatFunc::homogeneity() const {
  if (is_zero()) return Homogeneity::any();
  if (!num_.homogeneity().homogeneous() || !den_.homogeneity().homogeneous())
    return Homogeneity::none();
  return Homogeneity::of(num_.total_degree() - den_.total_degree());
}

std::optional<RatFunc> RatFunc::frobenius_sqrt() const {
  if (spec().characteristic() != 2)
    throw WrongCharacteristic("square roots in the squared-variable subfield need characteristic 2");
  if (is_zero()) return RatFunc(spec(), nvars());
  // r = (num*den)/den^2, so r is a square iff num*den is a square polynomial.
  auto root = (num_ * den_).pth_power_root();
  if (!root) return std::nullopt;
  return RatFunc(std::move(*root), den_);
}

bool RatFunc::in_pth_powers() const {
  const uint32_t p = spec().characteristic();
  return num_.exponents_divisible_by(p) && den_.exponents_divisible_by(p);
}

RatFunc RatFunc::substitute_one(int index) const {
  MultiPoly d = den_.substitute_one(index);
  if (d.is_zero())
    throw ZeroDenominator("denominator vanishes under substitution");
  return RatFunc(num_.substitute_one(index), std::move(d));
}

RatFunc RatFunc::extended(const FieldSpec& target, int new_nvars) const {
  // gcd-reduced and monic forms survive coefficient embedding and variable
  // padding, so the canonical invariants are preserved without re-reduction.
  return RatFunc(num_.extended(target, new_nvars), den_.extended(target, new_nvars),
                 ReducedTag{});
}

namespace {

/// A denominator can be printed without parentheses only when no precedence
/// ambiguity is possible: a power of a single variable (the denominator is
/// monic, so a lone term has unit coefficient).
bool den_needs_parens(const MultiPoly& den) {
  if (den.terms().size() != 1) return true;
  int active = 0;
  for (uint32_t e : den.terms().begin()->first)
    if (e > 0) ++active;
  return active > 1;
}

}  // namespace

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  std::string d = den_needs_parens(den_) ? "(" + den_.to_string() + ")" : den_.to_string();
  return n + "/" + d;
}

RatMatrix::RatMatrix(const FieldSpec& spec, int nvars, int rows, int cols)
    : spec_(&spec), nvars_(nvars), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw ShapeMismatch("matrix dimensions must be positive");
  data_.assign(size_t(rows) * size_t(cols), RatFunc(spec, nvars));
}

RatMatrix RatMatrix::identity(const FieldSpec& spec, int nvars, int size) {
  RatMatrix m(spec, nvars, size, size);
  for (int i = 0; i < size; ++i) m.mut(i, i) = RatFunc::constant(spec, nvars, 1);
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<RatFunc>>& entries) {
  if (entries.empty() || entries[0].empty())
    throw ShapeMismatch("matrix dimensions must be positive");
  const int rows = int(entries.size());
  const int cols = int(entries[0].size());
  RatMatrix m(entries[0][0].spec(), entries[0][0].nvars(), rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (int(entries[i].size()) != cols) throw ShapeMismatch("ragged matrix rows");
    for (int j = 0; j < cols; ++j) m.set(i, j, entries[i][j]);
  }
  return m;
}

const RatFunc& RatMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  return data_[size_t(r) * cols_ + c];
}

void RatMatrix::set(int r, int c, RatFunc v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  if (&v.spec() != spec_) throw MixedFields("matrix entry from a different field");
  if (v.nvars() != nvars_)
    throw VariableCountMismatch("matrix entry with a different variable count");
  data_[size_t(r) * cols_ + c] = std::move(v);
}

void RatMatrix::check_same_shape(const RatMatrix& o) const {
  if (spec_ != o.spec_) throw MixedFields("matrices over different fields");
  if (nvars_ != o.nvars_)
    throw VariableCountMismatch("matrices with different variable counts");
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw ShapeMismatch("matrix shapes do not match");
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  check_same_shape(o);
  RatMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  check_same_shape(o);
  RatMatrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (spec_ != o.spec_) throw MixedFields("matrices over different fields");
  if (nvars_ != o.nvars_)
    throw VariableCountMismatch("matrices with different variable counts");
  if (cols_ != o.rows_) throw ShapeMismatch("inner matrix dimensions do not match");
  RatMatrix r(*spec_, nvars_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const RatFunc& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.mut(i, j) = r.at(i, j) + a * o.at(k, j);
    }
  return r;
}

RatMatrix RatMatrix::operator*(const RatFunc& c) const {
  RatMatrix r = *this;
  for (auto& v : r.data_) v = v * c;
  return r;
}

RatMatrix RatMatrix::operator-() const {
  RatMatrix r = *this;
  for (auto& v : r.data_) v = -v;
  return r;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
  return spec_ == o.spec_ && nvars_ == o.nvars_ && rows_ == o.rows_ &&
         cols_ == o.cols_ && data_ == o.data_;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix r(*spec_, nvars_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.mut(j, i) = at(i, j);
  return r;
}

bool RatMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

bool RatMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

RatFunc RatMatrix::det() const {
  if (!is_square()) throw NotSquare("determinant of a non-square matrix");
  RatMatrix a = *this;
  RatFunc result = RatFunc::constant(*spec_, nvars_, 1);
  bool negate = false;
  for (int col = 0; col < rows_; ++col) {
    int pivot = -1;
    size_t best = 0;
    for (int r = col; r < rows_; ++r) {
      const RatFunc& v = a.at(r, col);
      if (v.is_zero()) continue;
      const size_t c = complexity(v);
      if (pivot < 0 || c < best) {
        pivot = r;
        best = c;
      }
    }
    if (pivot < 0) return RatFunc(*spec_, nvars_);
    if (pivot != col) {
      for (int c = 0; c < cols_; ++c) std::swap(a.mut(pivot, c), a.mut(col, c));
      negate = !negate;
    }
    const RatFunc p = a.at(col, col);
    result = result * p;
    for (int r = col + 1; r < rows_; ++r) {
      if (a.at(r, col).is_zero()) continue;
      const RatFunc f = a.at(r, col) / p;
      for (int c = col; c < cols_; ++c)
        a.mut(r, c) = a.at(r, c) - f * a.at(col, c);
    }
  }
  return negate ? -result : result;
}

std::optional<RatMatrix> RatMatrix::inverse() const {
  if (!is_square()) throw NotSquare("inverse of a non-square matrix");
  RatMatrix a = *this;
  RatMatrix inv = identity(*spec_, nvars_, rows_);
  for (int col = 0; col < rows_; ++col) {
    int pivot = -1;
    size_t best = 0;
    for (int r = col; r < rows_; ++r) {
      const RatFunc& v = a.at(r, col);
      if (v.is_zero()) continue;
      const size_t c = complexity(v);
      if (pivot < 0 || c < best) {
        pivot = r;
        best = c;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int c = 0; c < cols_; ++c) {
        std::swap(a.mut(pivot, c), a.mut(col, c));
        std::swap(inv.mut(pivot, c), inv.mut(col, c));
      }
    const RatFunc ip = a.at(col, col).inverse();
    for (int c = 0; c < cols_; ++c) {
      a.mut(col, c) = a.at(col, c) * ip;
      inv.mut(col, c) = inv.at(col, c) * ip;
    }
    for (int r = 0; r < rows_; ++r) {
      if (r == col) continue;
      const RatFunc f = a.at(r, col);
      if (f.is_zero()) continue;
      for (int c = 0; c < cols_; ++c) {
        a.mut(r, c) = a.at(r, c) - f * a.at(col, c);
        inv.mut(r, c) = inv.at(r, c) - f * inv.at(col, c);
      }
    }
  }
  return inv;
}

std::optional<FieldMatrix> RatMatrix::eval(std::span<const FieldElem> point) const {
  const FieldSpec& target = point.empty() ? *spec_ : point[0].spec();
  FieldMatrix m(target, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      auto v = at(i, j).eval(point);
      if (!v) return std::nullopt;
      m.set(i, j, *v);
    }
  return m;
}

RatMatrix RatMatrix::extended(const FieldSpec& target, int new_nvars) const {
  RatMatrix r(target, new_nvars, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.mut(i, j) = at(i, j).extended(target, new_nvars);
  return r;
}

std::string RatMatrix::to_string() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += at(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace bess
