#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <variant>
#include <vector>

#include "bess/constants.hpp"
#include "bess/rng.hpp"

using namespace bess;

namespace {

MultiPoly rand_poly(Rng& rng, const FieldSpec& f, int nvars, int max_deg, int max_terms) {
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  const int nterms = 1 + int(rng.below(uint64_t(max_terms)));
  for (int t = 0; t < nterms; ++t) {
    ExpVec e(nvars);
    int budget = max_deg;
    for (int i = 0; i < nvars; ++i) {
      e[i] = uint32_t(rng.below(uint64_t(budget + 1)));
      budget -= int(e[i]);
    }
    ts.emplace_back(e, FieldElem(f, f.sample(rng)));
  }
  return MultiPoly::from_terms(f, nvars, ts);
}

RatFunc rand_rat(Rng& rng, const FieldSpec& f, int nvars, int max_deg, int max_terms) {
  MultiPoly num = rand_poly(rng, f, nvars, max_deg, max_terms);
  for (;;) {
    MultiPoly den = rand_poly(rng, f, nvars, max_deg, max_terms);
    if (!den.is_zero()) return RatFunc(num, den);
  }
}

RatFunc reconstruct(const Coordinates& cs, const FieldSpec& f) {
  RatFunc sum(f, cs.n);
  for (const auto& [beta, value] : cs.coords)
    sum = sum + value * RatFunc(MultiPoly::monomial(f, cs.n, beta, FieldElem::one(f)));
  return sum;
}

}  // namespace

TEST_CASE("constants membership") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatFunc z1 = RatFunc::variable(f2, 2, 1);
  RatFunc z2 = RatFunc::variable(f2, 2, 2);
  RatFunc one = RatFunc::constant(f2, 2, 1);

  CHECK(constants_member(z1 * z1 / (z2 * z2 + one), 2));
  CHECK(!constants_member(z1, 2));
  // (z1^3 + z1)/z1 normalizes to z1^2 + 1 before the exponent test
  CHECK(constants_member((z1.pow(3) + z1) / z1, 2));
  CHECK(constants_member(RatFunc(f2, 2), 2));

  const FieldSpec& f3 = FieldSpec::gf3();
  RatFunc w = RatFunc::variable(f3, 2, 1);
  RatFunc u = RatFunc::variable(f3, 2, 2);
  CHECK(constants_member(w.pow(3) / (u.pow(3) + RatFunc::constant(f3, 2, 2)), 3));
  CHECK(!constants_member(w, 3));
  CHECK_THROWS_AS(constants_member(w, 2), WrongCharacteristic);

  // the two procedures agree on a random corpus (they throw if not)
  Rng rng(11);
  for (const FieldSpec* f : {&FieldSpec::gf2(), &FieldSpec::gf4(), &FieldSpec::gf3()}) {
    int members = 0;
    for (int t = 0; t < 120; ++t) {
      RatFunc a = rand_rat(rng, *f, 2, 4, 4);
      if (constants_member(a, f->characteristic())) ++members;
      RatFunc sq = a.pow(int(f->characteristic()));
      CHECK(constants_member(sq, f->characteristic()));
    }
    CHECK(members < 120);  // random corpus is not all constants
  }
}

TEST_CASE("homogeneous constants membership") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatFunc z1 = RatFunc::variable(f2, 2, 1);
  RatFunc z2 = RatFunc::variable(f2, 2, 2);
  CHECK(homogeneous_constants_member(z1 * z1 / (z1 * z1 + z2 * z2)));
  CHECK(!homogeneous_constants_member(z1 * z1));
  CHECK(homogeneous_constants_member(RatFunc(f2, 2)));
  CHECK(!homogeneous_constants_member(z1 / z2));  // degree 0 but odd exponents
  CHECK_THROWS_AS(homogeneous_constants_member(RatFunc::variable(FieldSpec::gf3(), 1, 1)),
                  WrongCharacteristic);
}

TEST_CASE("affine decomposition") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatFunc z1 = RatFunc::variable(f2, 2, 1);
  RatFunc z2 = RatFunc::variable(f2, 2, 2);

  auto bad = affine_decompose(z1 * z2);
  REQUIRE(std::holds_alternative<SubspaceViolation>(bad));
  const auto& v = std::get<SubspaceViolation>(bad);
  CHECK(v.reason == SubspaceViolation::Reason::kPartialNotConstant);
  CHECK(v.index == 1);
  CHECK(v.value == z2);

  auto lin = affine_decompose(z1);
  REQUIRE(std::holds_alternative<AffineDecomposition>(lin));
  const auto& d = std::get<AffineDecomposition>(lin);
  CHECK(d.r0.is_zero());
  CHECK(d.gradient[0].is_one());
  CHECK(d.gradient[1].is_zero());

  auto frac = affine_decompose(z1.pow(3) / (z1 * z1 + z2 * z2));
  REQUIRE(std::holds_alternative<AffineDecomposition>(frac));
  const auto& e = std::get<AffineDecomposition>(frac);
  CHECK(e.r0.is_zero());
  CHECK(e.gradient[0] == z1 * z1 / (z1 * z1 + z2 * z2));
  CHECK(e.gradient[1].is_zero());

  CHECK_THROWS_AS(affine_decompose(RatFunc::variable(FieldSpec::gf3(), 1, 1)),
                  WrongCharacteristic);
}

TEST_CASE("basis coordinates") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatFunc z1 = RatFunc::variable(f2, 2, 1);
  RatFunc z2 = RatFunc::variable(f2, 2, 2);

  Coordinates cs = basis_coordinates(z1 * z2);
  CHECK(cs.coords.size() == 4);
  CHECK(cs.coords.at(ExpVec{1, 1}).is_one());
  CHECK(cs.coords.at(ExpVec{0, 0}).is_zero());
  CHECK(cs.coords.at(ExpVec{1, 0}).is_zero());
  CHECK(cs.coords.at(ExpVec{0, 1}).is_zero());

  Coordinates inv = basis_coordinates((z1 + z2).inverse());
  RatFunc expect = (z1 * z1 + z2 * z2).inverse();
  CHECK(inv.coords.at(ExpVec{1, 0}) == expect);
  CHECK(inv.coords.at(ExpVec{0, 1}) == expect);
  CHECK(inv.coords.at(ExpVec{0, 0}).is_zero());
  CHECK(inv.coords.at(ExpVec{1, 1}).is_zero());

  Coordinates sq = basis_coordinates(z1 * z1);
  CHECK(sq.coords.at(ExpVec{0, 0}) == z1 * z1);

  CHECK_THROWS_AS(basis_coordinates(RatFunc(f2, 17)), TooManyVariables);
  CHECK_THROWS_AS(basis_coordinates(RatFunc::variable(FieldSpec::gf3(), 1, 1)),
                  WrongCharacteristic);
}

TEST_CASE("coordinates of basis monomials are indicators") {
  const FieldSpec& f2 = FieldSpec::gf2();
  for (int n = 1; n <= 4; ++n) {
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      ExpVec beta(n, 0);
      for (int i = 0; i < n; ++i) beta[i] = uint32_t((mask >> i) & 1);
      RatFunc m(MultiPoly::monomial(f2, n, beta, FieldElem::one(f2)));
      Coordinates cs = basis_coordinates(m);
      for (const auto& [b, value] : cs.coords) {
        if (b == beta)
          CHECK(value.is_one());
        else
          CHECK(value.is_zero());
      }
    }
  }
}

TEST_CASE("coordinate reconstruction and dual-procedure agreement") {
  Rng rng(404);
  for (const FieldSpec* f : {&FieldSpec::gf2(), &FieldSpec::gf4()}) {
    int positives = 0;
    for (int t = 0; t < 80; ++t) {
      const int n = 1 + int(rng.below(3));
      RatFunc r = rand_rat(rng, *f, n, 5, 5);
      Coordinates cs = basis_coordinates(r);
      for (const auto& [beta, value] : cs.coords) CHECK(constants_member(value, 2));
      CHECK(reconstruct(cs, *f) == r);

      // derivative-based and coordinate-based subspace verdicts coincide
      auto dec = affine_decompose(r);
      auto wit = square_witnesses(r, WitnessMode::kAffine);
      CHECK(std::holds_alternative<AffineDecomposition>(dec) ==
            std::holds_alternative<SquareWitnesses>(wit));
      if (std::holds_alternative<AffineDecomposition>(dec)) {
        ++positives;
        const auto& d = std::get<AffineDecomposition>(dec);
        RatFunc back = d.r0;
        for (int i = 1; i <= n; ++i)
          back = back + RatFunc::variable(*f, n, i) * d.gradient[i - 1];
        CHECK(back == r);
        CHECK(cs.coords.at(ExpVec(n, 0)) == d.r0);
        for (int i = 0; i < n; ++i) {
          ExpVec ei(n, 0);
          ei[i] = 1;
          CHECK(cs.coords.at(ei) == d.gradient[i]);
          CHECK(d.gradient[i] == r.derivative(i + 1));
        }
      }
    }
    CHECK(positives > 0);  // n = 1 draws land in the subspace
  }
}

TEST_CASE("square witnesses") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatFunc z1 = RatFunc::variable(f2, 2, 1);
  RatFunc z2 = RatFunc::variable(f2, 2, 2);

  auto bad = square_witnesses(z1 * z2, WitnessMode::kAffine);
  REQUIRE(std::holds_alternative<SubspaceViolation>(bad));
  const auto& v = std::get<SubspaceViolation>(bad);
  CHECK(v.reason == SubspaceViolation::Reason::kCoordinate);
  CHECK(v.beta == ExpVec{1, 1});
  CHECK(v.value.is_one());
  CHECK(beta_string(v.beta) == "11");

  auto good = square_witnesses((z1 + z2).inverse(), WitnessMode::kAffine);
  REQUIRE(std::holds_alternative<SquareWitnesses>(good));
  const auto& w = std::get<SquareWitnesses>(good);
  REQUIRE(w.q0.has_value());
  CHECK(w.q0->is_zero());
  CHECK(w.qs[0] == (z1 + z2).inverse());
  CHECK(w.qs[1] == (z1 + z2).inverse());

  auto hom = square_witnesses(z1.pow(3) / (z1 * z1 + z2 * z2), WitnessMode::kHomogeneous);
  REQUIRE(std::holds_alternative<SquareWitnesses>(hom));
  const auto& h = std::get<SquareWitnesses>(hom);
  CHECK(!h.q0.has_value());
  CHECK(h.qs[0] == z1 / (z1 + z2));
  CHECK(h.qs[1].is_zero());

  // homogeneous degree-1 target outside the subspace
  RatFunc z3 = RatFunc::variable(f2, 3, 3);
  auto far = square_witnesses(RatFunc::variable(f2, 3, 1) * RatFunc::variable(f2, 3, 2) / z3,
                              WitnessMode::kHomogeneous);
  REQUIRE(std::holds_alternative<SubspaceViolation>(far));
  CHECK(std::get<SubspaceViolation>(far).beta == ExpVec{1, 1, 1});

  CHECK_THROWS_AS(square_witnesses(z1 * z1, WitnessMode::kHomogeneous),
                  NotHomogeneousDegreeOne);
  CHECK_THROWS_AS(
      square_witnesses(z1 + RatFunc::constant(f2, 2, 1), WitnessMode::kHomogeneous),
      NotHomogeneousDegreeOne);
  CHECK(std::holds_alternative<SquareWitnesses>(
      square_witnesses(RatFunc(f2, 2), WitnessMode::kHomogeneous)));
}

TEST_CASE("square witness validity on random cases") {
  Rng rng(2121);
  const FieldSpec& f4 = FieldSpec::gf4();
  int positive = 0;
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + int(rng.below(3));
    RatFunc r = rand_rat(rng, f4, n, 4, 4);
    auto res = square_witnesses(r, WitnessMode::kAffine);
    if (!std::holds_alternative<SquareWitnesses>(res)) continue;
    ++positive;
    const auto& w = std::get<SquareWitnesses>(res);
    RatFunc sum = *w.q0 * *w.q0;
    for (int i = 1; i <= n; ++i)
      sum = sum + RatFunc::variable(f4, n, i) * w.qs[i - 1] * w.qs[i - 1];
    CHECK(sum == r);
  }
  CHECK(positive > 0);

  // constructed members of the subspace always succeed and round-trip
  for (int t = 0; t < 25; ++t) {
    const int n = 2 + int(rng.below(2));
    RatFunc target = rand_rat(rng, f4, n, 3, 3);
    target = target * target;  // q0^2
    std::vector<RatFunc> qs;
    for (int i = 1; i <= n; ++i) {
      RatFunc q = rand_rat(rng, f4, n, 3, 3);
      qs.push_back(q);
      target = target + RatFunc::variable(f4, n, i) * q * q;
    }
    auto res = square_witnesses(target, WitnessMode::kAffine);
    REQUIRE(std::holds_alternative<SquareWitnesses>(res));
    const auto& w = std::get<SquareWitnesses>(res);
    RatFunc sum = *w.q0 * *w.q0;
    for (int i = 1; i <= n; ++i)
      sum = sum + RatFunc::variable(f4, n, i) * w.qs[i - 1] * w.qs[i - 1];
    CHECK(sum == target);
  }

  // one variable: only |beta| <= 1 coordinates exist, so membership is automatic
  for (int t = 0; t < 40; ++t) {
    RatFunc r = rand_rat(rng, FieldSpec::gf2(), 1, 6, 5);
    CHECK(std::holds_alternative<SquareWitnesses>(
        square_witnesses(r, WitnessMode::kAffine)));
  }
}

TEST_CASE("density report") {
  DensityReport d1 = density_report(1);
  CHECK(d1.dim_total == 2);
  CHECK(d1.dim_sbr == 2);
  CHECK(d1.dim_total_h == 1);
  CHECK(d1.dim_hsbr == 1);
  CHECK(d1.sbr_ratio_num == 1);
  CHECK(d1.sbr_ratio_den == 1);  // the whole space: n = 1 is never obstructed
  CHECK(d1.hsbr_ratio_num == 1);
  CHECK(d1.hsbr_ratio_den == 1);

  DensityReport d2 = density_report(2);
  CHECK(d2.dim_total == 4);
  CHECK(d2.dim_sbr == 3);
  CHECK(d2.dim_total_h == 2);
  CHECK(d2.dim_hsbr == 2);
  CHECK(d2.sbr_ratio_num == 3);
  CHECK(d2.sbr_ratio_den == 4);
  CHECK(d2.hsbr_ratio_num == 1);
  CHECK(d2.hsbr_ratio_den == 1);  // degree-1 slice fully covered at n = 2

  DensityReport d3 = density_report(3);
  CHECK(d3.dim_total == 8);
  CHECK(d3.dim_sbr == 4);
  CHECK(d3.dim_total_h == 4);
  CHECK(d3.dim_hsbr == 3);
  CHECK(d3.sbr_ratio_num == 1);
  CHECK(d3.sbr_ratio_den == 2);
  CHECK(d3.hsbr_ratio_num == 3);
  CHECK(d3.hsbr_ratio_den == 4);

  CHECK_THROWS_AS(density_report(0), BadVariableIndex);
  CHECK_THROWS_AS(density_report(63), TooManyVariables);
}

TEST_CASE("violation descriptions are informative") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatFunc z1 = RatFunc::variable(f2, 2, 1);
  RatFunc z2 = RatFunc::variable(f2, 2, 2);
  auto bad = square_witnesses(z1 * z2, WitnessMode::kAffine);
  const auto& v = std::get<SubspaceViolation>(bad);
  CHECK(v.describe().find("beta=11") != std::string::npos);
  auto bad2 = affine_decompose(z1 * z2);
  const auto& v2 = std::get<SubspaceViolation>(bad2);
  CHECK(v2.describe().find("z1") != std::string::npos);
}
