#include "bess/realize.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "bess/rng.hpp"

namespace bess {

bool mode_symmetric(Mode m) { return m == Mode::kSBR || m == Mode::khSBR; }

bool mode_homogeneous(Mode m) { return m == Mode::khBR || m == Mode::khSBR; }

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::kBR: return "br";
    case Mode::kSBR: return "sbr";
    case Mode::khBR: return "hbr";
    case Mode::khSBR: return "hsbr";
  }
  return "br";
}

std::optional<Mode> mode_from_name(const std::string& name) {
  if (name == "br") return Mode::kBR;
  if (name == "sbr") return Mode::kSBR;
  if (name == "hbr") return Mode::khBR;
  if (name == "hsbr") return Mode::khSBR;
  return std::nullopt;
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << "entry (" << row + 1 << "," << col + 1 << "): ";
  switch (reason) {
    case Reason::kAsymmetric:
      os << "differs from its transposed partner";
      break;
    case Reason::kNotDegreeOne:
      os << "not homogeneous of degree 1";
      break;
    case Reason::kSubspace:
      os << (subspace ? subspace->describe() : std::string("outside the witness subspace"));
      break;
  }
  return os.str();
}

namespace {

/// Writes src (optionally transposed / negated) into dst at (r0, c0).
void put_block(FieldMatrix& dst, int r0, int c0, const FieldMatrix& src,
               bool transposed = false, bool negated = false) {
  const int rows = transposed ? src.cols() : src.rows();
  const int cols = transposed ? src.rows() : src.cols();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      FieldElem v = transposed ? src.at(c, r) : src.at(r, c);
      dst.set(r0 + r, c0 + c, negated ? -v : v);
    }
  }
}

FieldMatrix block_of(const FieldMatrix& m, int r0, int c0, int rows, int cols) {
  FieldMatrix b(m.spec(), rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) b.set(r, c, m.at(r0 + r, c0 + c));
  return b;
}

Realization zero_realization(const FieldSpec& f, int nvars, int size) {
  return Realization(Pencil::zero(f, nvars, size), size);
}

/// X = I as a pencil (constant coefficient only).
Pencil constant_identity_pencil(const FieldSpec& f, int nvars, int size) {
  std::vector<FieldMatrix> cs;
  cs.push_back(FieldMatrix::identity(f, size));
  for (int j = 1; j <= nvars; ++j) cs.emplace_back(f, size, size);
  return Pencil(std::move(cs));
}

/// X = z_index * I as a pencil.
Pencil variable_identity_pencil(const FieldSpec& f, int nvars, int index, int size) {
  std::vector<FieldMatrix> cs;
  cs.emplace_back(f, size, size);
  for (int j = 1; j <= nvars; ++j) {
    if (j == index)
      cs.push_back(FieldMatrix::identity(f, size));
    else
      cs.emplace_back(f, size, size);
  }
  return Pencil(std::move(cs));
}

/// Field the verification points are drawn from: GF(2^d) with d the least
/// multiple of the base degree >= extension_degree, or the prime field
/// itself for characteristic != 2.
const FieldSpec& verification_field(const FieldSpec& base, unsigned extension_degree) {
  if (base.characteristic() != 2) return base;
  const unsigned j = base.degree();
  const unsigned want = std::max(extension_degree, 1u);
  const unsigned d = j * ((want + j - 1) / j);
  if (d <= j) return base;
  return FieldSpec::default_binary_extension(d);
}

std::vector<FieldElem> sample_point(Rng& rng, const FieldSpec& f, int n) {
  std::vector<FieldElem> pt;
  pt.reserve(size_t(n));
  for (int i = 0; i < n; ++i) pt.emplace_back(f, f.sample(rng));
  return pt;
}

/// det F != 0 over F(z), F the Schur complement of a well-posed realization.
/// One nonzero numeric determinant settles it; the symbolic Schur complement
/// is only consulted when sampling keeps returning singular values.
bool schur_invertible(const Realization& a) {
  const FieldSpec& f = a.pencil().spec();
  const FieldSpec& L = verification_field(f, 16);
  Rng rng(0xB355);
  for (int t = 0; t < 16; ++t) {
    auto s = schur_eval(a, sample_point(rng, L, a.pencil().nvars()));
    if (s && !s->det().is_zero()) return true;
  }
  return !schur_symbolic(a).det().is_zero();
}

void require_same_frame(const Realization& a, const Realization& b) {
  if (&a.pencil().spec() != &b.pencil().spec())
    throw MixedFields("realizations over different fields");
  if (a.pencil().nvars() != b.pencil().nvars())
    throw VariableCountMismatch("realizations with different variable counts");
}

Realization comb_product(const Realization& a, const Realization& b) {
  return comb_sandwich(
      a, constant_identity_pencil(a.pencil().spec(), a.pencil().nvars(), a.top()), b);
}

/// c * z^alpha as a chain of variable atoms glued by products.
Realization monomial_br(const FieldSpec& f, int nvars, const FieldElem& c,
                        const ExpVec& alpha) {
  std::optional<Realization> acc;
  for (int i = 1; i <= nvars; ++i) {
    for (uint32_t t = 0; t < alpha[size_t(i) - 1]; ++t) {
      Realization v = atom_variable(f, nvars, i);
      acc = acc ? comb_product(*acc, v) : std::move(v);
    }
  }
  if (!acc) {
    FieldMatrix m(f, 1, 1);
    m.set(0, 0, c);
    return atom_constant(m, nvars);
  }
  return comb_scale(*acc, c);
}

Realization poly_br(const MultiPoly& p) {
  const FieldSpec& f = p.spec();
  std::optional<Realization> acc;
  for (const auto& [alpha, c] : p.terms()) {
    Realization term = monomial_br(f, p.nvars(), c, alpha);
    acc = acc ? comb_sum(*acc, term) : std::move(term);
  }
  if (!acc) return zero_realization(f, p.nvars(), 1);
  return *acc;
}

Realization scalar_br(const RatFunc& r) {
  if (r.is_zero()) return zero_realization(r.spec(), r.nvars(), 1);
  Realization num = poly_br(r.num());
  if (r.den().is_one()) return num;
  return comb_product(num, comb_inverse(poly_br(r.den())));
}

/// Entry-wise realization of an arbitrary rational matrix: each nonzero
/// entry is built as a scalar, moved into place by e_r * F_rc * e_c^T, and
/// the placements are summed.
Realization build_br(const RatMatrix& F) {
  const FieldSpec& f = F.spec();
  const int k = F.rows(), n = F.nvars();
  if (k == 1) return scalar_br(F.at(0, 0));
  std::optional<Realization> acc;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      if (F.at(r, c).is_zero()) continue;
      FieldMatrix U(f, k, 1);
      U.set(r, 0, FieldElem::one(f));
      FieldMatrix V(f, 1, k);
      V.set(0, c, FieldElem::one(f));
      Realization placed = comb_congruence(scalar_br(F.at(r, c)), U, V);
      acc = acc ? comb_sum(*acc, placed) : std::move(placed);
    }
  }
  if (!acc) return zero_realization(f, n, k);
  return *acc;
}

/// Homogeneous degree-1 matrices: in one variable every reduced degree-1
/// entry is c * z1, giving the pencil {0, C} outright; otherwise the target
/// is dehomogenized at the last variable, built, and homogenized back.
Realization build_hbr(const RatMatrix& F) {
  const FieldSpec& f = F.spec();
  const int k = F.rows(), n = F.nvars();
  if (F.is_zero()) return zero_realization(f, n, k);
  if (n == 1) {
    FieldMatrix C(f, k, k);
    const std::vector<FieldElem> at_one{FieldElem::one(f)};
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) C.set(r, c, *F.at(r, c).eval(at_one));
    std::vector<FieldMatrix> cs{FieldMatrix(f, k, k), C};
    return Realization(Pencil(std::move(cs)), k);
  }
  RatMatrix G(f, n - 1, k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) G.set(r, c, F.at(r, c).substitute_one(n));
  return comb_homogenize(build_br(G));
}

/// One diagonal generator z_i * q^2 (or q0^2 for index 0): the two-sided
/// product (q z_i) * (z_i)^-1 * (q z_i) against the transposed copy keeps the
/// pencil symmetric, and homogeneous when q has degree 0.
Realization diagonal_generator(const RatFunc& q, int index, bool homogeneous) {
  const FieldSpec& f = q.spec();
  const int n = q.nvars();
  if (index == 0) {
    Realization qr = scalar_br(q);
    return comb_sandwich(qr, constant_identity_pencil(f, n, 1), comb_transpose(qr));
  }
  RatFunc qz = q * RatFunc::variable(f, n, index);
  Realization qzr = homogeneous ? build_hbr(RatMatrix::from_rows({{qz}})) : scalar_br(qz);
  return comb_sandwich(qzr, variable_identity_pencil(f, n, index, 1), comb_transpose(qzr));
}

/// Symmetric builds over characteristic 2: off-diagonal part as the
/// symmetrization of the strict lower triangle, diagonal part from the
/// square witnesses.  `homogeneous` selects the hSBR variant.
Realization build_symmetric_char2(const RatMatrix& F, const WitnessCertificate& wc,
                                  bool homogeneous) {
  const FieldSpec& f = F.spec();
  const int k = F.rows(), n = F.nvars();
  std::optional<Realization> acc;
  auto add = [&](Realization r) {
    acc = acc ? comb_sum(*acc, std::move(r)) : std::move(r);
  };

  RatMatrix L(f, n, k, k);
  bool lower_nonzero = false;
  for (int r = 1; r < k; ++r) {
    for (int c = 0; c < r; ++c) {
      if (F.at(r, c).is_zero()) continue;
      L.set(r, c, F.at(r, c));
      lower_nonzero = true;
    }
  }
  if (lower_nonzero) add(comb_symmetrize(homogeneous ? build_hbr(L) : build_br(L)));

  for (int l = 0; l < k; ++l) {
    const SquareWitnesses& w = wc.diagonals[size_t(l)];
    FieldMatrix el(f, k, 1);
    el.set(l, 0, FieldElem::one(f));
    std::vector<std::pair<const RatFunc*, int>> parts;
    if (w.q0 && !w.q0->is_zero()) parts.emplace_back(&*w.q0, 0);
    for (int i = 1; i <= n; ++i)
      if (!w.qs[size_t(i) - 1].is_zero()) parts.emplace_back(&w.qs[size_t(i) - 1], i);
    for (const auto& [q, index] : parts) {
      Realization g = diagonal_generator(*q, index, homogeneous);
      add(k == 1 ? std::move(g) : comb_congruence(g, el));
    }
  }

  if (!acc) return zero_realization(f, n, k);
  return *acc;
}

/// Symmetric builds over characteristic != 2: F = G + G^T for G = F/2.
Realization build_symmetric_odd(const RatMatrix& F, bool homogeneous) {
  const FieldSpec& f = F.spec();
  const FieldElem half = FieldElem(f, 2).inverse();
  RatMatrix G = F * RatFunc::constant(f, F.nvars(), half);
  return comb_symmetrize(homogeneous ? build_hbr(G) : build_br(G));
}

}  // namespace

Realization atom_constant(const FieldMatrix& M, int nvars) {
  if (!M.is_square() || M.rows() < 1)
    throw ShapeMismatch("constant atom needs a nonempty square matrix");
  if (nvars < 1) throw VariableCountMismatch("a realization needs at least one variable");
  const FieldSpec& f = M.spec();
  const int k = M.rows();
  std::vector<FieldMatrix> cs;
  FieldMatrix a0(f, k + 1, k + 1);
  put_block(a0, 0, 0, M);
  a0.set(k, k, FieldElem::one(f));
  cs.push_back(std::move(a0));
  for (int j = 1; j <= nvars; ++j) cs.emplace_back(f, k + 1, k + 1);
  return Realization(Pencil(std::move(cs)), k);
}

Realization atom_variable(const FieldSpec& spec, int nvars, int index) {
  if (nvars < 1) throw VariableCountMismatch("a realization needs at least one variable");
  if (index < 1 || index > nvars)
    throw BadVariableIndex("variable index " + std::to_string(index) + " outside 1.." +
                           std::to_string(nvars));
  std::vector<FieldMatrix> cs;
  FieldMatrix a0(spec, 2, 2);
  a0.set(1, 1, FieldElem::one(spec));
  cs.push_back(std::move(a0));
  for (int j = 1; j <= nvars; ++j) {
    FieldMatrix aj(spec, 2, 2);
    if (j == index) aj.set(0, 0, FieldElem::one(spec));
    cs.push_back(std::move(aj));
  }
  return Realization(Pencil(std::move(cs)), 1);
}

Realization comb_scale(const Realization& a, const FieldElem& c) {
  const Pencil& p = a.pencil();
  if (&c.spec() != &p.spec()) throw MixedFields("scale factor from a different field");
  if (c.is_zero()) return zero_realization(p.spec(), p.nvars(), a.top());
  std::vector<FieldMatrix> cs;
  cs.reserve(p.coeffs().size());
  for (const FieldMatrix& m : p.coeffs()) cs.push_back(m * c);
  return Realization(Pencil(std::move(cs)), a.top());
}

Realization comb_sum(const Realization& a, const Realization& b) {
  require_same_frame(a, b);
  if (a.top() != b.top()) throw ShapeMismatch("summands realize different target sizes");
  const Pencil& pa = a.pencil();
  const Pencil& pb = b.pencil();
  const int k = a.top(), ba = a.bottom(), bb = b.bottom();
  const int size = k + ba + bb;
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(pa.nvars()) + 1);
  for (int j = 0; j <= pa.nvars(); ++j) {
    const FieldMatrix& A = pa.coeff(j);
    const FieldMatrix& B = pb.coeff(j);
    FieldMatrix C(pa.spec(), size, size);
    put_block(C, 0, 0, block_of(A, 0, 0, k, k) + block_of(B, 0, 0, k, k));
    put_block(C, 0, k, block_of(A, 0, k, k, ba));
    put_block(C, 0, k + ba, block_of(B, 0, k, k, bb));
    put_block(C, k, 0, block_of(A, k, 0, ba, k));
    put_block(C, k, k, block_of(A, k, k, ba, ba));
    put_block(C, k + ba, 0, block_of(B, k, 0, bb, k));
    put_block(C, k + ba, k + ba, block_of(B, k, k, bb, bb));
    cs.push_back(std::move(C));
  }
  return Realization(Pencil(std::move(cs)), k);
}

Realization comb_symmetrize(const Realization& a) {
  const Pencil& p = a.pencil();
  const int k = a.top(), bt = a.bottom();
  const int size = k + 2 * bt;
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(p.nvars()) + 1);
  for (int j = 0; j <= p.nvars(); ++j) {
    const FieldMatrix& A = p.coeff(j);
    FieldMatrix a11 = block_of(A, 0, 0, k, k);
    FieldMatrix a12 = block_of(A, 0, k, k, bt);
    FieldMatrix a21 = block_of(A, k, 0, bt, k);
    FieldMatrix a22 = block_of(A, k, k, bt, bt);
    FieldMatrix C(p.spec(), size, size);
    put_block(C, 0, 0, a11 + a11.transpose());
    put_block(C, 0, k, a12);
    put_block(C, 0, k + bt, a21, /*transposed=*/true);
    put_block(C, k, 0, a12, /*transposed=*/true);
    put_block(C, k, k + bt, a22, /*transposed=*/true);
    put_block(C, k + bt, 0, a21);
    put_block(C, k + bt, k, a22);
    cs.push_back(std::move(C));
  }
  return Realization(Pencil(std::move(cs)), k);
}

Realization comb_transpose(const Realization& a) {
  std::vector<FieldMatrix> cs;
  cs.reserve(a.pencil().coeffs().size());
  for (const FieldMatrix& m : a.pencil().coeffs()) cs.push_back(m.transpose());
  return Realization(Pencil(std::move(cs)), a.top());
}

Realization comb_congruence(const Realization& a, const FieldMatrix& U) {
  return comb_congruence(a, U, U.transpose());
}

Realization comb_congruence(const Realization& a, const FieldMatrix& U, const FieldMatrix& V) {
  const Pencil& p = a.pencil();
  if (&U.spec() != &p.spec() || &V.spec() != &p.spec())
    throw MixedFields("congruence factors from a different field");
  const int k = a.top(), bt = a.bottom(), l = U.rows();
  if (U.cols() != k || V.rows() != k || V.cols() != l)
    throw ShapeMismatch("congruence factors do not compose with the target");
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(p.nvars()) + 1);
  for (int j = 0; j <= p.nvars(); ++j) {
    const FieldMatrix& A = p.coeff(j);
    FieldMatrix C(p.spec(), l + bt, l + bt);
    put_block(C, 0, 0, U * block_of(A, 0, 0, k, k) * V);
    put_block(C, 0, l, U * block_of(A, 0, k, k, bt));
    put_block(C, l, 0, block_of(A, k, 0, bt, k) * V);
    put_block(C, l, l, block_of(A, k, k, bt, bt));
    cs.push_back(std::move(C));
  }
  return Realization(Pencil(std::move(cs)), l);
}

Realization comb_sandwich(const Realization& a, const Pencil& X, const Realization& b) {
  require_same_frame(a, b);
  const Pencil& pa = a.pencil();
  const Pencil& pb = b.pencil();
  if (&X.spec() != &pa.spec()) throw MixedFields("middle pencil over a different field");
  if (X.nvars() != pa.nvars())
    throw VariableCountMismatch("middle pencil with a different variable count");
  const int k = a.top();
  if (b.top() != k || X.size() != k)
    throw ShapeMismatch("two-sided product blocks do not compose");
  if (!a.well_posed() || !b.well_posed())
    throw SingularBlock("two-sided product of an ill-posed realization");
  if (X.symbolic().det().is_zero())
    throw SingularMiddle("middle pencil singular over the function field");
  const int ba = a.bottom(), bb = b.bottom();
  const int size = 2 * k + ba + bb;
  // Row blocks k, k, ba, bb; column blocks k, k, bb, ba.  Eliminating the
  // coupled pair {A22, B22} leaves [[0, F],[G, -X]], and eliminating -X
  // leaves F X^-1 G.
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(pa.nvars()) + 1);
  for (int j = 0; j <= pa.nvars(); ++j) {
    const FieldMatrix& A = pa.coeff(j);
    const FieldMatrix& B = pb.coeff(j);
    FieldMatrix C(pa.spec(), size, size);
    put_block(C, 0, k, block_of(A, 0, 0, k, k));
    put_block(C, 0, 2 * k + bb, block_of(A, 0, k, k, ba));
    put_block(C, k, 0, block_of(B, 0, 0, k, k));
    put_block(C, k, k, X.coeff(j), /*transposed=*/false, /*negated=*/true);
    put_block(C, k, 2 * k, block_of(B, 0, k, k, bb));
    put_block(C, 2 * k, k, block_of(A, k, 0, ba, k));
    put_block(C, 2 * k, 2 * k + bb, block_of(A, k, k, ba, ba));
    put_block(C, 2 * k + ba, 0, block_of(B, k, 0, bb, k));
    put_block(C, 2 * k + ba, 2 * k, block_of(B, k, k, bb, bb));
    cs.push_back(std::move(C));
  }
  return Realization(Pencil(std::move(cs)), k);
}

Realization comb_inverse(const Realization& a) {
  if (!a.well_posed()) throw SingularBlock("inverse of an ill-posed realization");
  if (!schur_invertible(a))
    throw SingularTarget("inverse of a target that is singular over the function field");
  const Pencil& p = a.pencil();
  const int k = a.top(), m = p.size();
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(p.nvars()) + 1);
  for (int j = 0; j <= p.nvars(); ++j) {
    const FieldMatrix& A = p.coeff(j);
    FieldMatrix C(p.spec(), k + m, k + m);
    if (j == 0) {
      put_block(C, 0, k, FieldMatrix::identity(p.spec(), k));
      put_block(C, k, 0, FieldMatrix::identity(p.spec(), k));
    }
    put_block(C, k, k, A, /*transposed=*/false, /*negated=*/true);
    cs.push_back(std::move(C));
  }
  return Realization(Pencil(std::move(cs)), k);
}

Realization comb_kron(const Realization& a, int s) {
  if (s < 1) throw ShapeMismatch("Kronecker identity size must be at least 1");
  const Pencil& p = a.pencil();
  const int m = p.size();
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(p.nvars()) + 1);
  for (int j = 0; j <= p.nvars(); ++j) {
    const FieldMatrix& A = p.coeff(j);
    FieldMatrix C(p.spec(), m * s, m * s);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        for (int t = 0; t < s; ++t) C.set(r * s + t, c * s + t, A.at(r, c));
    cs.push_back(std::move(C));
  }
  return Realization(Pencil(std::move(cs)), a.top() * s);
}

Realization comb_homogenize(const Realization& a) {
  const Pencil& p = a.pencil();
  std::vector<FieldMatrix> cs;
  cs.reserve(size_t(p.nvars()) + 2);
  cs.emplace_back(p.spec(), p.size(), p.size());
  for (int j = 1; j <= p.nvars(); ++j) cs.push_back(p.coeff(j));
  cs.push_back(p.coeff(0));
  return Realization(Pencil(std::move(cs)), a.top());
}

namespace {

// The bare decision, without the realization attached to positive verdicts.
Verdict decide_core(const RatMatrix& F, Mode mode) {
  if (!F.is_square()) throw NotSquare("realizability is defined for square targets");
  Verdict v;
  v.mode = mode;
  const int k = F.rows();

  if (mode_symmetric(mode)) {
    for (int r = 0; r < k; ++r) {
      for (int c = r + 1; c < k; ++c) {
        if (F.at(r, c) != F.at(c, r)) {
          v.certificate = Violation{Violation::Reason::kAsymmetric, r, c, std::nullopt};
          return v;
        }
      }
    }
  }
  if (mode_homogeneous(mode)) {
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        if (!F.at(r, c).homogeneity().is(1)) {
          v.certificate = Violation{Violation::Reason::kNotDegreeOne, r, c, std::nullopt};
          return v;
        }
      }
    }
  }

  if (mode == Mode::kBR) {
    v.realizable = true;
    v.certificate = TrivialCertificate{"every rational matrix has a realization"};
    return v;
  }
  if (mode == Mode::khBR) {
    v.realizable = true;
    v.certificate = TrivialCertificate{"all entries homogeneous of degree 1"};
    return v;
  }
  if (F.spec().characteristic() != 2) {
    v.realizable = true;
    v.certificate = TrivialCertificate{"characteristic is not 2"};
    return v;
  }

  const bool affine = mode == Mode::kSBR;
  WitnessCertificate wc;
  for (int l = 0; l < k; ++l) {
    auto res = square_witnesses(F.at(l, l),
                                affine ? WitnessMode::kAffine : WitnessMode::kHomogeneous);
    if (auto* bad = std::get_if<SubspaceViolation>(&res)) {
      // The criterion is vacuous for affine n == 1 and homogeneous n <= 2;
      // a failure there means the two procedures disagree, not a negative.
      if ((affine && F.nvars() == 1) || (!affine && F.nvars() <= 2))
        throw ProcedureDisagreement(
            "witness extraction failed where the subspace criterion is vacuous: " +
            bad->describe());
      v.certificate = Violation{Violation::Reason::kSubspace, l, l, std::move(*bad)};
      return v;
    }
    wc.diagonals.push_back(std::move(std::get<SquareWitnesses>(res)));
  }
  v.realizable = true;
  v.certificate = std::move(wc);
  return v;
}

Realization build_from_verdict(const RatMatrix& F, Mode mode, const Verdict& v) {
  switch (mode) {
    case Mode::kBR:
      return build_br(F);
    case Mode::khBR:
      return build_hbr(F);
    case Mode::kSBR:
      if (F.spec().characteristic() != 2) return build_symmetric_odd(F, false);
      return build_symmetric_char2(F, std::get<WitnessCertificate>(v.certificate), false);
    default:
      if (F.spec().characteristic() != 2) return build_symmetric_odd(F, true);
      return build_symmetric_char2(F, std::get<WitnessCertificate>(v.certificate), true);
  }
}

}  // namespace

Verdict decide_realizable(const RatMatrix& F, Mode mode) {
  Verdict v = decide_core(F, mode);
  // Positive symmetric verdicts carry a constructed realization and its
  // point-by-point verification, so the certificate is self-checking.
  if (v.realizable && mode_symmetric(mode)) {
    Realization r = build_from_verdict(F, mode, v);
    VerifyTranscript t = verify_realization(r, F);
    if (!t.passed)
      throw ProcedureDisagreement(
          "a freshly built realization failed oracle verification");
    v.realization = std::move(r);
    v.transcript = std::move(t);
  }
  return v;
}

Realization build_realization(const RatMatrix& F, Mode mode) {
  Verdict v = decide_core(F, mode);
  if (!v.realizable)
    throw NotRealizable("target has no " + mode_name(mode) + ": " +
                        std::get<Violation>(v.certificate).describe());
  return build_from_verdict(F, mode, v);
}

VerifyTranscript verify_realization(const Realization& r, const RatMatrix& target,
                                    int points, unsigned extension_degree, uint64_t seed) {
  const Pencil& p = r.pencil();
  if (target.rows() != r.top() || target.cols() != r.top())
    throw ShapeMismatch("target shape differs from the realized block");
  if (&target.spec() != &p.spec()) throw MixedFields("target over a different field");
  if (target.nvars() != p.nvars())
    throw VariableCountMismatch("target with a different variable count");
  if (points < 1) points = 1;

  VerifyTranscript t;
  t.sample_field = &verification_field(p.spec(), extension_degree);
  t.seed = seed;
  t.requested = points;
  Rng rng(seed);
  const int budget = 10 * points;
  int good = 0;
  while (good < points && t.attempts < budget) {
    ++t.attempts;
    std::vector<FieldElem> pt = sample_point(rng, *t.sample_field, p.nvars());
    auto via_schur = schur_eval(r, pt);
    if (!via_schur) continue;  // representation singular here: unusable sample
    auto via_target = target.eval(pt);
    // A correct realization cannot produce a value at a pole of the target
    // (the reduced denominators divide det A22), so a one-sided evaluation
    // is itself a mismatch.
    const bool match = via_target && *via_schur == *via_target;
    t.entries.push_back(TranscriptEntry{std::move(pt), std::move(via_schur),
                                        std::move(via_target), match});
    if (!match) {
      t.passed = false;
      return t;
    }
    ++good;
  }
  if (good < points)
    throw InsufficientNonSingularPoints("only " + std::to_string(good) + " of " +
                                        std::to_string(points) +
                                        " usable verification points found in " +
                                        std::to_string(t.attempts) + " draws");
  t.passed = true;
  return t;
}

TransferRecord transfer_check(const RatMatrix& F, const FieldSpec& ext, int ext_vars,
                              Mode mode) {
  if (!embeddable(F.spec(), ext))
    throw NotAnExtension("no canonical embedding of the base field into the target");
  if (ext_vars < F.nvars())
    throw VariableCountMismatch("extension must keep at least the base variables");
  TransferRecord rec;
  rec.base = decide_realizable(F, mode);
  rec.ext = decide_realizable(F.extended(ext, ext_vars), mode);
  rec.agree = rec.base.realizable == rec.ext.realizable;
  return rec;
}

}  // namespace bess
