#include "bess/json_io.hpp"

#include <string>
#include <utility>
#include <vector>

#include "bess/errors.hpp"

namespace bess {

namespace {

Json matrix_to_json(const FieldMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SyntaxError(std::string("pencil JSON: missing \"") + key + "\"");
  return j.at(key);
}

int require_int(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer())
    throw SyntaxError(std::string("pencil JSON: \"") + key + "\" must be an integer");
  return v.get<int>();
}

FieldMatrix matrix_from_json(const Json& j, const FieldSpec& f, int size) {
  if (!j.is_array() || int(j.size()) != size)
    throw SyntaxError("pencil JSON: coefficient must be a " + std::to_string(size) + "x" +
                      std::to_string(size) + " array");
  FieldMatrix m(f, size, size);
  for (int r = 0; r < size; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || int(row.size()) != size)
      throw SyntaxError("pencil JSON: ragged coefficient row");
    for (int c = 0; c < size; ++c) {
      const Json& cell = row.at(c);
      if (!cell.is_string())
        throw SyntaxError("pencil JSON: entries must be element strings");
      m.set(r, c, FieldElem(f, f.parse_element(cell.get<std::string>())));
    }
  }
  return m;
}

Json witnesses_to_json(const SquareWitnesses& w) {
  Json out = Json::object();
  if (w.q0.has_value()) out["q0"] = w.q0->to_string();
  Json qs = Json::array();
  for (const RatFunc& q : w.qs) qs.push_back(q.to_string());
  out["qs"] = std::move(qs);
  return out;
}

const char* subspace_reason_name(SubspaceViolation::Reason r) {
  switch (r) {
    case SubspaceViolation::Reason::kPartialNotConstant:
      return "partial-not-constant";
    case SubspaceViolation::Reason::kCoordinate:
      return "coordinate";
    case SubspaceViolation::Reason::kConstantTerm:
      return "constant-term";
    default:
      return "inhomogeneous-witness";
  }
}

Json subspace_to_json(const SubspaceViolation& s) {
  Json out = Json::object();
  out["reason"] = subspace_reason_name(s.reason);
  out["index"] = s.index;
  Json beta = Json::array();
  for (uint32_t b : s.beta) beta.push_back(b);
  out["beta"] = std::move(beta);
  out["value"] = s.value.to_string();
  out["detail"] = s.describe();
  return out;
}

Json certificate_to_json(const Verdict& v) {
  Json out = Json::object();
  if (const auto* t = std::get_if<TrivialCertificate>(&v.certificate)) {
    out["kind"] = "trivial";
    out["note"] = t->note;
  } else if (const auto* w = std::get_if<WitnessCertificate>(&v.certificate)) {
    out["kind"] = "witnesses";
    Json diags = Json::array();
    for (const SquareWitnesses& d : w->diagonals) diags.push_back(witnesses_to_json(d));
    out["diagonals"] = std::move(diags);
  } else {
    const Violation& viol = std::get<Violation>(v.certificate);
    out["kind"] = "violation";
    switch (viol.reason) {
      case Violation::Reason::kAsymmetric:
        out["reason"] = "asymmetric";
        break;
      case Violation::Reason::kNotDegreeOne:
        out["reason"] = "not-homogeneous-degree-1";
        break;
      default:
        out["reason"] = "subspace";
    }
    out["row"] = viol.row + 1;
    out["col"] = viol.col + 1;
    if (viol.subspace.has_value()) out["subspace"] = subspace_to_json(*viol.subspace);
    out["detail"] = viol.describe();
  }
  return out;
}

}  // namespace

Json pencil_to_json(const Pencil& p) {
  Json out = Json::object();
  out["schema"] = 1;
  out["field"] = p.spec().to_string();
  out["nvars"] = p.nvars();
  out["size"] = p.size();
  Json coeffs = Json::array();
  for (const FieldMatrix& m : p.coeffs()) coeffs.push_back(matrix_to_json(m));
  out["coeffs"] = std::move(coeffs);
  return out;
}

Json realization_to_json(const Realization& r) {
  Json out = pencil_to_json(r.pencil());
  out["top"] = r.top();
  return out;
}

Pencil pencil_from_json(const Json& j) {
  const Json& field = require(j, "field");
  if (!field.is_string()) throw SyntaxError("pencil JSON: \"field\" must be a string");
  const FieldSpec& f = FieldSpec::parse(field.get<std::string>());
  const int nvars = require_int(j, "nvars");
  const int size = require_int(j, "size");
  if (nvars < 0 || size < 1) throw SyntaxError("pencil JSON: bad dimensions");
  const Json& coeffs = require(j, "coeffs");
  if (!coeffs.is_array() || int(coeffs.size()) != nvars + 1)
    throw SyntaxError("pencil JSON: expected " + std::to_string(nvars + 1) +
                      " coefficient matrices");
  std::vector<FieldMatrix> ms;
  ms.reserve(coeffs.size());
  for (const Json& m : coeffs) ms.push_back(matrix_from_json(m, f, size));
  return Pencil(std::move(ms));
}

Realization realization_from_json(const Json& j) {
  Pencil p = pencil_from_json(j);
  const int top = require_int(j, "top");
  if (top < 1 || top > p.size()) throw SyntaxError("pencil JSON: \"top\" out of range");
  return Realization(std::move(p), top);
}

Json verdict_to_json(const Verdict& v) {
  Json out = Json::object();
  out["schema"] = 1;
  out["mode"] = mode_name(v.mode);
  out["realizable"] = v.realizable;
  out["certificate"] = certificate_to_json(v);
  if (v.realization.has_value()) out["realization"] = realization_to_json(*v.realization);
  if (v.transcript.has_value()) out["transcript"] = transcript_to_json(*v.transcript);
  return out;
}

Json transcript_to_json(const VerifyTranscript& t) {
  Json out = Json::object();
  out["schema"] = 1;
  out["sample_field"] = t.sample_field->to_string();
  out["seed"] = t.seed;
  out["requested"] = t.requested;
  out["attempts"] = t.attempts;
  out["passed"] = t.passed;
  Json entries = Json::array();
  for (const TranscriptEntry& e : t.entries) {
    Json je = Json::object();
    Json pt = Json::array();
    for (const FieldElem& x : e.point) pt.push_back(x.to_string());
    je["point"] = std::move(pt);
    if (e.via_schur.has_value()) je["via_pencil"] = matrix_to_json(*e.via_schur);
    if (e.via_target.has_value()) je["via_target"] = matrix_to_json(*e.via_target);
    je["match"] = e.match;
    entries.push_back(std::move(je));
  }
  out["entries"] = std::move(entries);
  return out;
}

}  // namespace bess
