#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "bess/json_io.hpp"
#include "bess/parse.hpp"
#include "bess/rng.hpp"

using namespace bess;

namespace {

Pencil rand_pencil(Rng& rng, const FieldSpec& f, int nvars, int size) {
  std::vector<FieldMatrix> cs;
  for (int j = 0; j <= nvars; ++j) {
    FieldMatrix m(f, size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) m.set(r, c, FieldElem(f, f.sample(rng)));
    cs.push_back(std::move(m));
  }
  return Pencil(std::move(cs));
}

}  // namespace

TEST_CASE("pencil JSON round trip is bit-exact") {
  Rng rng(42);
  const FieldSpec* fields[] = {&FieldSpec::gf2(), &FieldSpec::gf3(), &FieldSpec::gf4(),
                               &FieldSpec::gf65536(), &FieldSpec::prime(101)};
  for (int t = 0; t < 40; ++t) {
    const FieldSpec& f = *fields[t % 5];
    const int nvars = 1 + int(rng.below(3));
    const int size = 1 + int(rng.below(4));
    Pencil p = rand_pencil(rng, f, nvars, size);
    Json j = pencil_to_json(p);
    Pencil back = pencil_from_json(j);
    CHECK(back == p);
    CHECK(pencil_to_json(back).dump(2) == j.dump(2));

    Realization r(p, 1 + int(rng.below(uint64_t(size))));
    Json jr = realization_to_json(r);
    Realization rback = realization_from_json(jr);
    CHECK(rback.pencil() == r.pencil());
    CHECK(rback.top() == r.top());
  }
}

TEST_CASE("verdict JSON carries the certificate") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatMatrix bad = parse_matrix("z1*z2", f2, 2);
  Json jv = verdict_to_json(decide_realizable(bad, Mode::kSBR));
  CHECK(jv["schema"] == 1);
  CHECK(jv["mode"] == "sbr");
  CHECK(jv["realizable"] == false);
  CHECK(jv["certificate"]["kind"] == "violation");
  CHECK(jv["certificate"]["reason"] == "subspace");
  CHECK(jv["certificate"]["subspace"]["beta"] == Json::array({1, 1}));
  CHECK(jv["certificate"]["subspace"]["value"] == "1");

  RatMatrix good = parse_matrix("[[z1, 1],[1, 1/(z1+z2)]]", f2, 2);
  Json jg = verdict_to_json(decide_realizable(good, Mode::kSBR));
  CHECK(jg["realizable"] == true);
  CHECK(jg["certificate"]["kind"] == "witnesses");
  CHECK(jg["certificate"]["diagonals"].size() == 2);
  CHECK(jg["certificate"]["diagonals"][1]["qs"][0] == "1/(z1 + z2)");
  CHECK(jg.contains("realization"));
  CHECK(jg.contains("transcript"));
  CHECK(jg["transcript"]["passed"] == true);

  // The embedded realization re-verifies after a JSON round trip.
  Realization r = realization_from_json(jg["realization"]);
  VerifyTranscript t = verify_realization(r, good);
  CHECK(t.passed);
}

TEST_CASE("transcript JSON records every point") {
  const FieldSpec& f2 = FieldSpec::gf2();
  RatMatrix target = parse_matrix("z1", f2, 1);
  Realization r = build_realization(target, Mode::kBR);
  VerifyTranscript t = verify_realization(r, target, 7, 16, 99);
  Json jt = transcript_to_json(t);
  CHECK(jt["passed"] == true);
  CHECK(jt["requested"] == 7);
  CHECK(jt["seed"] == 99);
  CHECK(jt["entries"].size() == 7);
  for (const Json& e : jt["entries"]) {
    CHECK(e["match"] == true);
    CHECK(e["point"].size() == 1);
    CHECK(e.contains("via_pencil"));
    CHECK(e.contains("via_target"));
  }

  // Identical inputs serialize byte-identically.
  VerifyTranscript t2 = verify_realization(r, target, 7, 16, 99);
  CHECK(transcript_to_json(t2).dump(2) == jt.dump(2));
}

TEST_CASE("malformed pencil JSON is rejected") {
  const FieldSpec& f2 = FieldSpec::gf2();
  Rng rng(1);
  Json good = realization_to_json(Realization(rand_pencil(rng, f2, 1, 2), 1));

  Json j = good;
  j.erase("field");
  CHECK_THROWS_AS(pencil_from_json(j), SyntaxError);

  j = good;
  j.erase("top");
  CHECK_THROWS_AS(realization_from_json(j), SyntaxError);

  j = good;
  j["top"] = 5;
  CHECK_THROWS_AS(realization_from_json(j), SyntaxError);

  j = good;
  j["coeffs"].erase(1);
  CHECK_THROWS_AS(pencil_from_json(j), SyntaxError);

  j = good;
  j["coeffs"][0][0].erase(0);
  CHECK_THROWS_AS(pencil_from_json(j), SyntaxError);

  j = good;
  j["coeffs"][0][0][0] = 7;
  CHECK_THROWS_AS(pencil_from_json(j), SyntaxError);

  j = good;
  j["coeffs"][0][0][0] = "banana";
  CHECK_THROWS_AS(pencil_from_json(j), Error);

  j = good;
  j["field"] = "gf-nope";
  CHECK_THROWS_AS(pencil_from_json(j), FieldParseError);

  j = good;
  j["size"] = 0;
  CHECK_THROWS_AS(pencil_from_json(j), SyntaxError);
}
