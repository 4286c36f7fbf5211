#include "bess/pencil.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bess/rng.hpp"

namespace bess {

Pencil::Pencil(std::vector<FieldMatrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2)
    throw VariableCountMismatch("a pencil needs a constant and at least one variable coefficient");
  spec_ = &coeffs_[0].spec();
  nvars_ = int(coeffs_.size()) - 1;
  size_ = coeffs_[0].rows();
  if (size_ < 1) throw ShapeMismatch("pencil coefficients must have size at least 1");
  for (const FieldMatrix& c : coeffs_) {
    if (&c.spec() != spec_) throw MixedFields("pencil coefficients mix fields");
    if (!c.is_square() || c.rows() != size_)
      throw ShapeMismatch("pencil coefficients must be square matrices of one size");
  }
}

Pencil Pencil::zero(const FieldSpec& spec, int nvars, int size) {
  if (nvars < 1) throw VariableCountMismatch("a pencil needs at least one variable");
  if (size < 1) throw ShapeMismatch("pencil size must be at least 1");
  return Pencil(std::vector<FieldMatrix>(size_t(nvars) + 1, FieldMatrix(spec, size, size)));
}

const FieldMatrix& Pencil::coeff(int j) const {
  if (j < 0 || j > nvars_)
    throw BadVariableIndex("pencil coefficient index " + std::to_string(j) +
                           " outside 0.." + std::to_string(nvars_));
  return coeffs_[size_t(j)];
}

RatMatrix Pencil::symbolic() const {
  RatMatrix M(*spec_, nvars_, size_, size_);
  for (int r = 0; r < size_; ++r) {
    for (int c = 0; c < size_; ++c) {
      std::vector<std::pair<ExpVec, FieldElem>> ts;
      ts.emplace_back(ExpVec(nvars_, 0), coeffs_[0].at(r, c));
      for (int j = 1; j <= nvars_; ++j) {
        ExpVec e(nvars_, 0);
        e[j - 1] = 1;
        ts.emplace_back(std::move(e), coeffs_[size_t(j)].at(r, c));
      }
      M.set(r, c, RatFunc(MultiPoly::from_terms(*spec_, nvars_, ts)));
    }
  }
  return M;
}

FieldMatrix Pencil::eval(std::span<const FieldElem> point) const {
  if (int(point.size()) != nvars_)
    throw VariableCountMismatch("pencil evaluated at a point of the wrong arity");
  const FieldSpec& target = point[0].spec();
  for (const FieldElem& t : point)
    if (&t.spec() != &target) throw MixedFields("evaluation point mixes fields");
  FieldMatrix acc = coeffs_[0].embedded(target);
  for (int j = 1; j <= nvars_; ++j)
    acc = acc + coeffs_[size_t(j)].embedded(target) * point[j - 1];
  return acc;
}

bool Pencil::operator==(const Pencil& o) const {
  return spec_ == o.spec_ && nvars_ == o.nvars_ && size_ == o.size_ && coeffs_ == o.coeffs_;
}

PencilPredicates pencil_predicates(const Pencil& p) {
  PencilPredicates out;
  out.symmetric = true;
  out.homogeneous = p.coeff(0).is_zero();
  out.alternate.resize(size_t(p.nvars()) + 1);
  for (int j = 0; j <= p.nvars(); ++j) {
    const FieldMatrix& A = p.coeff(j);
    if (!A.is_symmetric()) out.symmetric = false;
    out.alternate[size_t(j)] = A.is_alternate();
  }
  return out;
}

namespace {

RatMatrix rat_block(const RatMatrix& M, int r0, int c0, int rows, int cols) {
  RatMatrix B(M.spec(), M.nvars(), rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) B.set(r, c, M.at(r0 + r, c0 + c));
  return B;
}

FieldMatrix num_block(const FieldMatrix& M, int r0, int c0, int rows, int cols) {
  FieldMatrix B(M.spec(), rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) B.set(r, c, M.at(r0 + r, c0 + c));
  return B;
}

}  // namespace

Realization::Realization(Pencil pencil, int top) : pencil_(std::move(pencil)), top_(top) {
  if (top_ < 1 || top_ > pencil_.size())
    throw ShapeMismatch("realization top block outside 1..size");
}

bool Realization::well_posed() const {
  int s = a22_state_.load();
  if (s == 0) {
    if (top_ == pencil_.size()) {
      s = 1;  // empty A22 block, trivially invertible
    } else {
      // One nonzero numeric determinant already proves det A22(z) != 0; the
      // exact symbolic determinant only decides when sampling keeps hitting
      // zeros (the singular case, or an unluckily small field).
      const int m = pencil_.size(), k = top_, n = pencil_.nvars();
      const FieldSpec& base = pencil_.spec();
      const FieldSpec* L = &base;
      if (base.characteristic() == 2 && base.degree() < 16) {
        const unsigned j = base.degree();
        L = &FieldSpec::default_binary_extension(j * ((16 + j - 1) / j));
      }
      Rng rng(0xB355);
      for (int t = 0; t < 12 && s == 0; ++t) {
        std::vector<FieldElem> pt;
        pt.reserve(size_t(n));
        for (int i = 0; i < n; ++i) pt.emplace_back(*L, L->sample(rng));
        FieldMatrix apt = pencil_.eval(pt);
        if (!num_block(apt, k, k, m - k, m - k).det().is_zero()) s = 1;
      }
      if (s == 0)
        s = rat_block(pencil_.symbolic(), k, k, m - k, m - k).det().is_zero() ? 2 : 1;
    }
    a22_state_.store(s);
  }
  return s == 1;
}

RatMatrix schur_symbolic(const Realization& r) {
  const Pencil& p = r.pencil();
  const int m = p.size(), k = r.top();
  RatMatrix A = p.symbolic();
  if (k == m) {
    r.a22_state_.store(1);
    return A;
  }
  if (r.a22_state_.load() == 2)
    throw SingularBlock("the A22 block is singular over the function field");
  auto inv = rat_block(A, k, k, m - k, m - k).inverse();
  if (!inv) {
    r.a22_state_.store(2);
    throw SingularBlock("the A22 block is singular over the function field");
  }
  r.a22_state_.store(1);
  return rat_block(A, 0, 0, k, k) -
         rat_block(A, 0, k, k, m - k) * *inv * rat_block(A, k, 0, m - k, k);
}

std::optional<FieldMatrix> schur_eval(const Realization& r, std::span<const FieldElem> point) {
  const Pencil& p = r.pencil();
  const int m = p.size(), k = r.top();
  FieldMatrix A = p.eval(point);
  if (k == m) return A;
  auto inv = num_block(A, k, k, m - k, m - k).inverse();
  if (!inv) return std::nullopt;
  return num_block(A, 0, 0, k, k) -
         num_block(A, 0, k, k, m - k) * *inv * num_block(A, k, 0, m - k, k);
}

std::variant<Diagonalization, Alternate> congruence_diagonalize(const FieldMatrix& S) {
  if (S.spec().characteristic() != 2)
    throw WrongCharacteristic("congruence diagonalization is defined over characteristic 2");
  if (!S.is_symmetric())
    throw NotSymmetric("congruence diagonalization needs a symmetric matrix");
  if (S.is_alternate()) return Alternate{};

  const FieldSpec& F = S.spec();
  const int m = S.rows();
  FieldMatrix M = S;
  FieldMatrix B = FieldMatrix::identity(F, m);
  std::vector<bool> done(m, false);

  // One congruence step E^T M E for E = I + lam * e_src e_dst^T: row dst of M
  // gains lam * row src, column dst gains lam * column src.  The invariant
  // S == B^T M B is kept by the inverse update on B, which in characteristic
  // 2 adds lam * row dst into row src.
  auto mix = [&](int dst, int src, const FieldElem& lam) {
    for (int c = 0; c < m; ++c) M.set(dst, c, M.at(dst, c) + lam * M.at(src, c));
    for (int r = 0; r < m; ++r) M.set(r, dst, M.at(r, dst) + lam * M.at(r, src));
    for (int c = 0; c < m; ++c) B.set(src, c, B.at(src, c) + lam * B.at(dst, c));
  };
  // Clear row/col i against the nonzero diagonal entry M[i][i]; completed
  // indices stay decoupled from everything afterwards.
  auto eliminate = [&](int i) {
    const FieldElem d = M.at(i, i);
    for (int j = 0; j < m; ++j) {
      if (j == i || M.at(j, i).is_zero()) continue;
      const FieldElem lam = M.at(j, i) / d;
      mix(j, i, lam);
    }
    done[i] = true;
  };

  for (;;) {
    int piv = -1;
    for (int i = 0; i < m && piv < 0; ++i)
      if (!done[i] && !M.at(i, i).is_zero()) piv = i;
    if (piv >= 0) {
      eliminate(piv);
      continue;
    }
    // The working block has an all-zero diagonal.  Finished if it is zero
    // outright; otherwise recreate a diagonal entry by mixing a completed
    // pivot into the least coupled working index, then pivot there.  That
    // hands the donor's diagonal to the new pivot, re-opens the donor with a
    // zero diagonal, and leaves some third index with a nonzero diagonal, so
    // the next round pivots ordinarily and the block strictly shrinks.
    int row = -1;
    for (int i = 0; i < m && row < 0; ++i) {
      if (done[i]) continue;
      for (int j = 0; j < m && row < 0; ++j)
        if (!done[j] && !M.at(i, j).is_zero()) row = i;
    }
    if (row < 0) break;  // the working block is zero; M is diagonal
    int donor = -1;
    for (int j = 0; j < m && donor < 0; ++j)
      if (done[j]) donor = j;
    if (donor < 0) throw std::logic_error("alternate residual block without a completed pivot");
    done[donor] = false;
    mix(row, donor, FieldElem::one(F));
    eliminate(row);
  }
  return Diagonalization{B, M};
}

bool derivative_identity_check(const Realization& r, int index, int trials,
                               unsigned extension_degree, uint64_t seed) {
  const Pencil& p = r.pencil();
  if (p.spec().characteristic() != 2)
    throw WrongCharacteristic("the derivative identity check runs over characteristic 2");
  if (r.top() != 1) throw NotScalarTarget("the derivative identity needs a scalar target");
  if (index < 1 || index > p.nvars())
    throw BadVariableIndex("variable index " + std::to_string(index) + " outside 1.." +
                           std::to_string(p.nvars()));
  const unsigned j = p.spec().degree();
  const FieldSpec& L =
      FieldSpec::default_binary_extension(j * ((std::max(extension_degree, j) + j - 1) / j));
  const int n = p.nvars(), m = p.size();
  {
    // det A(z) != 0 is proven by one nonzero numeric determinant; the
    // symbolic determinant only decides when sampling keeps hitting zeros.
    Rng det_rng(seed ^ 0x9E3779B97F4A7C15ull);
    bool invertible = false;
    for (int t = 0; t < 12 && !invertible; ++t) {
      std::vector<FieldElem> pt;
      pt.reserve(size_t(n));
      for (int i = 0; i < n; ++i) pt.emplace_back(L, L.sample(det_rng));
      invertible = !p.eval(pt).det().is_zero();
    }
    if (!invertible && p.symbolic().det().is_zero())
      throw SingularPencil("the full pencil is singular over the function field");
  }
  const RatFunc f = schur_symbolic(r).at(0, 0);
  const RatFunc df = f.derivative(index);
  const FieldMatrix Ai = p.coeff(index).embedded(L);
  Rng rng(seed);
  int found = 0;
  for (int attempts = 0; found < trials; ++attempts) {
    if (attempts >= 10 * trials)
      throw InsufficientNonSingularPoints(
          "could not sample enough non-singular points for the derivative identity");
    std::vector<FieldElem> pt;
    pt.reserve(size_t(n));
    for (int i = 0; i < n; ++i) pt.emplace_back(L, L.sample(rng));
    auto inv = p.eval(pt).inverse();
    if (!inv) continue;
    auto fv = f.eval(pt);
    auto dv = df.eval(pt);
    if (!fv || !dv) continue;  // pole of a reduced form at this point
    // X = A(pt)^-1 e1 is the first column of the inverse.
    FieldElem quad = FieldElem::zero(L);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        quad = quad + inv->at(a, 0) * Ai.at(a, b) * inv->at(b, 0);
    ++found;
    if (*dv != *fv * *fv * quad) return false;
  }
  return true;
}

}  // namespace bess
