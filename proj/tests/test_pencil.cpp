#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "bess/pencil.hpp"
#include "bess/rng.hpp"

using namespace bess;

namespace {

FieldMatrix mat(const FieldSpec& f, const std::vector<std::vector<uint64_t>>& rows) {
  FieldMatrix m(f, int(rows.size()), int(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m.set(int(r), int(c), FieldElem(f, rows[r][c]));
  return m;
}

FieldMatrix rand_mat(Rng& rng, const FieldSpec& f, int rows, int cols) {
  FieldMatrix m(f, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, FieldElem(f, f.sample(rng)));
  return m;
}

FieldMatrix rand_invertible(Rng& rng, const FieldSpec& f, int size) {
  for (;;) {
    FieldMatrix m = rand_mat(rng, f, size, size);
    if (!m.det().is_zero()) return m;
  }
}

FieldMatrix rand_symmetric(Rng& rng, const FieldSpec& f, int size) {
  FieldMatrix m(f, size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = r; c < size; ++c) {
      FieldElem v(f, f.sample(rng));
      m.set(r, c, v);
      m.set(c, r, v);
    }
  }
  return m;
}

Pencil rand_pencil(Rng& rng, const FieldSpec& f, int nvars, int size) {
  std::vector<FieldMatrix> cs;
  for (int j = 0; j <= nvars; ++j) cs.push_back(rand_mat(rng, f, size, size));
  return Pencil(std::move(cs));
}

std::vector<FieldElem> rand_point(Rng& rng, const FieldSpec& f, int n) {
  std::vector<FieldElem> pt;
  pt.reserve(size_t(n));
  for (int i = 0; i < n; ++i) pt.emplace_back(f, f.sample(rng));
  return pt;
}

FieldMatrix slice(const FieldMatrix& m, int r0, int c0, int rows, int cols) {
  FieldMatrix b(m.spec(), rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) b.set(r, c, m.at(r0 + r, c0 + c));
  return b;
}

}  // namespace

TEST_CASE("pencil construction and validation") {
  const FieldSpec& f2 = FieldSpec::gf2();
  const FieldSpec& f4 = FieldSpec::gf4();

  Pencil p({mat(f2, {{0, 0}, {0, 1}}), mat(f2, {{1, 0}, {0, 0}})});
  CHECK(p.nvars() == 1);
  CHECK(p.size() == 2);
  CHECK(&p.spec() == &f2);
  CHECK(p.coeff(0) == mat(f2, {{0, 0}, {0, 1}}));
  CHECK(p.coeff(1) == mat(f2, {{1, 0}, {0, 0}}));
  CHECK_THROWS_AS(p.coeff(2), BadVariableIndex);
  CHECK_THROWS_AS(p.coeff(-1), BadVariableIndex);
  CHECK(p == p);
  CHECK(p != Pencil::zero(f2, 1, 2));

  CHECK(Pencil::zero(f4, 3, 2).coeff(3).is_zero());
  CHECK_THROWS_AS(Pencil::zero(f4, 0, 2), VariableCountMismatch);
  CHECK_THROWS_AS(Pencil::zero(f4, 1, 0), ShapeMismatch);
  CHECK_THROWS_AS(Pencil({mat(f2, {{1}})}), VariableCountMismatch);
  CHECK_THROWS_AS(Pencil({mat(f2, {{1}}), mat(f2, {{1, 0}, {0, 1}})}), ShapeMismatch);
  CHECK_THROWS_AS(Pencil({mat(f2, {{1, 0}})}), VariableCountMismatch);
  CHECK_THROWS_AS(Pencil({mat(f2, {{1}}), mat(f4, {{1}})}), MixedFields);

  CHECK_THROWS_AS(Realization(p, 0), ShapeMismatch);
  CHECK_THROWS_AS(Realization(p, 3), ShapeMismatch);
}

TEST_CASE("pencil predicates") {
  const FieldSpec& f2 = FieldSpec::gf2();

  // A0 = 0, A1 = [1]: homogeneous and symmetric.
  PencilPredicates a = pencil_predicates(Pencil({mat(f2, {{0}}), mat(f2, {{1}})}));
  CHECK(a.symmetric);
  CHECK(a.homogeneous);

  // A1 = [[0,1],[1,0]]: symmetric and alternate.
  PencilPredicates b = pencil_predicates(
      Pencil({FieldMatrix(f2, 2, 2), mat(f2, {{0, 1}, {1, 0}})}));
  CHECK(b.symmetric);
  CHECK(b.homogeneous);
  REQUIRE(b.alternate.size() == 2);
  CHECK(b.alternate[0]);  // the zero matrix is alternate
  CHECK(b.alternate[1]);

  // A1 = [[0,1],[0,0]]: not symmetric.
  PencilPredicates c = pencil_predicates(
      Pencil({FieldMatrix(f2, 2, 2), mat(f2, {{0, 1}, {0, 0}})}));
  CHECK(!c.symmetric);
  CHECK(!c.alternate[1]);

  PencilPredicates d = pencil_predicates(
      Pencil({mat(f2, {{1}}), mat(f2, {{1}})}));
  CHECK(!d.homogeneous);
  CHECK(d.symmetric);
  CHECK(!d.alternate[0]);
}

TEST_CASE("symbolic form matches numeric evaluation") {
  const FieldSpec& f4 = FieldSpec::gf4();
  const FieldSpec& big = FieldSpec::gf65536();
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + int(rng.below(3));
    const int m = 1 + int(rng.below(4));
    Pencil p = rand_pencil(rng, f4, n, m);
    RatMatrix sym = p.symbolic();
    CHECK(sym.rows() == m);
    // Points in the field itself and in an extension through the embedding.
    for (const FieldSpec* pf : {&f4, &big}) {
      std::vector<FieldElem> pt = rand_point(rng, *pf, n);
      auto via_sym = sym.eval(pt);
      REQUIRE(via_sym.has_value());
      CHECK(*via_sym == p.eval(pt));
    }
  }
  CHECK_THROWS_AS(Pencil::zero(f4, 2, 1).eval(rand_point(rng, f4, 3)),
                  VariableCountMismatch);
}

TEST_CASE("symbolic Schur complements of the base shapes") {
  const FieldSpec& f2 = FieldSpec::gf2();
  const FieldSpec& f4 = FieldSpec::gf4();

  // [[z1,0],[0,1]] with top 1 realizes z1.
  Realization var_atom(
      Pencil({mat(f2, {{0, 0}, {0, 1}}), mat(f2, {{1, 0}, {0, 0}})}), 1);
  CHECK(var_atom.well_posed());
  RatMatrix s = schur_symbolic(var_atom);
  CHECK(s.rows() == 1);
  CHECK(s.at(0, 0) == RatFunc::variable(f2, 1, 1));

  // [[M,0],[0,1]] with top 2 realizes the constant matrix M.
  const FieldMatrix M = mat(f4, {{1, 2}, {3, 0}});
  Pencil pm({mat(f4, {{1, 2, 0}, {3, 0, 0}, {0, 0, 1}}), FieldMatrix(f4, 3, 3)});
  RatMatrix sm = schur_symbolic(Realization(pm, 2));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      CHECK(sm.at(r, c) == RatFunc::constant(f4, 1, M.at(r, c)));

  // top == size returns the whole pencil.
  RatMatrix whole = schur_symbolic(Realization(pm, 3));
  CHECK(whole == pm.symbolic());

  // [[0,1],[1,z1]] with top 1 realizes 1/z1 over GF(2).
  Realization inv_atom(
      Pencil({mat(f2, {{0, 1}, {1, 0}}), mat(f2, {{0, 0}, {0, 1}})}), 1);
  RatFunc one_over_z1 = RatFunc::variable(f2, 1, 1).inverse();
  CHECK(schur_symbolic(inv_atom).at(0, 0) == one_over_z1);

  // Singular A22 block: [[z1,1],[1,0]] with top 1.
  Realization bad(Pencil({mat(f2, {{0, 1}, {1, 0}}), mat(f2, {{1, 0}, {0, 0}})}), 1);
  CHECK(!bad.well_posed());
  CHECK_THROWS_AS(schur_symbolic(bad), SingularBlock);
}

TEST_CASE("numeric Schur evaluation") {
  const FieldSpec& f2 = FieldSpec::gf2();
  const FieldSpec& f4 = FieldSpec::gf4();
  const FieldSpec& big = FieldSpec::gf65536();

  // z1 atom at z1 = g evaluates to [g].
  Realization var_atom(
      Pencil({mat(f2, {{0, 0}, {0, 1}}), mat(f2, {{1, 0}, {0, 0}})}), 1);
  const FieldElem g(f4, 2);
  auto at_g = schur_eval(var_atom, std::vector<FieldElem>{g});
  REQUIRE(at_g.has_value());
  CHECK(at_g->at(0, 0) == g);

  // 1/z1 realization is singular at z1 = 0 and fine elsewhere.
  Realization inv_atom(
      Pencil({mat(f2, {{0, 1}, {1, 0}}), mat(f2, {{0, 0}, {0, 1}})}), 1);
  CHECK(!schur_eval(inv_atom, std::vector<FieldElem>{FieldElem::zero(f4)}).has_value());
  auto inv_at_g = schur_eval(inv_atom, std::vector<FieldElem>{g});
  REQUIRE(inv_at_g.has_value());
  CHECK(inv_at_g->at(0, 0) == g.inverse());

  // Cross-validation: numeric Schur equals the evaluated symbolic Schur at
  // sampled points, and the determinantal identity det A = det S * det A22
  // holds wherever A22 is invertible.
  Rng rng(77);
  int checked = 0;
  while (checked < 5) {
    const int n = 1 + int(rng.below(2));
    const int m = 2 + int(rng.below(3));
    const int k = 1 + int(rng.below(uint64_t(m)));
    Pencil p = rand_pencil(rng, f4, n, m);
    Realization r(p, k);
    if (!r.well_posed()) continue;
    ++checked;
    RatMatrix sym = schur_symbolic(r);
    for (int t = 0; t < 20; ++t) {
      std::vector<FieldElem> pt = rand_point(rng, big, n);
      auto numeric = schur_eval(r, pt);
      auto symbolic = sym.eval(pt);
      if (!numeric) continue;
      REQUIRE(symbolic.has_value());
      CHECK(*numeric == *symbolic);
      FieldMatrix apt = p.eval(pt);
      if (k < m) {
        FieldMatrix a22 = slice(apt, k, k, m - k, m - k);
        CHECK(apt.det() == numeric->det() * a22.det());
      }
    }
  }
}

TEST_CASE("congruence diagonalization fixed cases") {
  const FieldSpec& f2 = FieldSpec::gf2();
  const FieldSpec& f4 = FieldSpec::gf4();

  // [[1,1],[1,0]]: diagonalizable with all-ones diagonal.
  const FieldMatrix s = mat(f2, {{1, 1}, {1, 0}});
  auto res = congruence_diagonalize(s);
  REQUIRE(res.index() == 0);
  const auto& [P, D] = std::get<0>(res);
  CHECK(D == FieldMatrix::identity(f2, 2));
  CHECK(!P.det().is_zero());
  CHECK(P.transpose() * D * P == s);

  // [[0,1],[1,0]] has a zero diagonal: alternate.
  CHECK(congruence_diagonalize(mat(f2, {{0, 1}, {1, 0}})).index() == 1);
  CHECK(congruence_diagonalize(FieldMatrix(f2, 2, 2)).index() == 1);

  // Already diagonal: P is the identity.
  auto diag = congruence_diagonalize(mat(f4, {{2, 0}, {0, 3}}));
  REQUIRE(diag.index() == 0);
  CHECK(std::get<0>(diag).P == FieldMatrix::identity(f4, 2));
  CHECK(std::get<0>(diag).D == mat(f4, {{2, 0}, {0, 3}}));

  CHECK_THROWS_AS(congruence_diagonalize(mat(f2, {{0, 1}, {0, 0}})), NotSymmetric);
  CHECK_THROWS_AS(congruence_diagonalize(mat(FieldSpec::gf3(), {{1, 2}, {2, 1}})),
                  WrongCharacteristic);
}

TEST_CASE("congruence diagonalization, exhaustive and random") {
  const FieldSpec& f2 = FieldSpec::gf2();

  // Every symmetric matrix over GF(2) up to 4x4, by upper-triangle mask.
  for (int m = 1; m <= 4; ++m) {
    const int bits = m * (m + 1) / 2;
    for (uint64_t mask = 0; mask < (uint64_t(1) << bits); ++mask) {
      FieldMatrix s(f2, m, m);
      int bit = 0;
      for (int r = 0; r < m; ++r) {
        for (int c = r; c < m; ++c, ++bit) {
          FieldElem v(f2, (mask >> bit) & 1);
          s.set(r, c, v);
          s.set(c, r, v);
        }
      }
      bool zero_diag = true;
      for (int i = 0; i < m; ++i)
        if (!s.at(i, i).is_zero()) zero_diag = false;
      auto res = congruence_diagonalize(s);
      if (zero_diag) {
        CHECK(res.index() == 1);
        continue;
      }
      REQUIRE(res.index() == 0);
      const auto& [P, D] = std::get<0>(res);
      CHECK(!P.det().is_zero());
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          if (r != c) CHECK(D.at(r, c).is_zero());
      CHECK(P.transpose() * D * P == s);
    }
  }

  // Random GF(4) matrices up to 6x6.
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const FieldSpec& f4 = FieldSpec::gf4();
    const int m = 1 + int(rng.below(6));
    FieldMatrix s = rand_symmetric(rng, f4, m);
    auto res = congruence_diagonalize(s);
    if (res.index() == 1) {
      CHECK(s.is_alternate());
      continue;
    }
    const auto& [P, D] = std::get<0>(res);
    CHECK(!P.det().is_zero());
    CHECK(P.transpose() * D * P == s);
  }
}

TEST_CASE("congruence preserves alternateness") {
  const FieldSpec& f4 = FieldSpec::gf4();
  Rng rng(123);
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + int(rng.below(5));
    FieldMatrix s(f4, m, m);
    for (int r = 0; r < m; ++r) {
      for (int c = r + 1; c < m; ++c) {
        FieldElem v(f4, f4.sample(rng));
        s.set(r, c, v);
        s.set(c, r, v);
      }
    }
    REQUIRE(s.is_alternate());
    FieldMatrix x = rand_invertible(rng, f4, m);
    CHECK((x.transpose() * s * x).is_alternate());
  }
}

TEST_CASE("derivative identity spot check") {
  const FieldSpec& f2 = FieldSpec::gf2();

  // z1 atom: dF/dz1 = 1, and the quadratic form reproduces it.
  Realization var_atom(
      Pencil({mat(f2, {{0, 0}, {0, 1}}), mat(f2, {{1, 0}, {0, 0}})}), 1);
  CHECK(derivative_identity_check(var_atom, 1));

  // Alternate A1 forces both sides to zero: F == 1 identically here.
  Pencil alt({mat(f2, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}),
              mat(f2, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}})});
  CHECK(derivative_identity_check(Realization(alt, 1), 1));

  // Symmetric realization of 1/z1 passes; corrupting one entry of A1 breaks
  // the symmetry the quadratic form relies on, and the check reports it.
  Realization good(
      Pencil({mat(f2, {{0, 1}, {1, 0}}), mat(f2, {{0, 0}, {0, 1}})}), 1);
  CHECK(derivative_identity_check(good, 1));
  Realization corrupted(
      Pencil({mat(f2, {{0, 1}, {1, 0}}), mat(f2, {{0, 0}, {1, 1}})}), 1);
  CHECK(!derivative_identity_check(corrupted, 1));

  // Guard rails.
  Pencil rank1({FieldMatrix(f2, 2, 2), mat(f2, {{1, 1}, {1, 1}})});
  CHECK_THROWS_AS(derivative_identity_check(Realization(rank1, 1), 1), SingularPencil);
  Pencil ok({mat(f2, {{0, 0}, {0, 1}}), mat(f2, {{1, 0}, {0, 0}})});
  CHECK_THROWS_AS(derivative_identity_check(Realization(ok, 2), 1), NotScalarTarget);
  CHECK_THROWS_AS(derivative_identity_check(var_atom, 2), BadVariableIndex);
  const FieldSpec& f3 = FieldSpec::gf3();
  Pencil odd({mat(f3, {{0, 0}, {0, 1}}), mat(f3, {{1, 0}, {0, 0}})});
  CHECK_THROWS_AS(derivative_identity_check(Realization(odd, 1), 1), WrongCharacteristic);
}
