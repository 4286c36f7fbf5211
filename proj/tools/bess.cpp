#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bess/constants.hpp"
#include "bess/errors.hpp"
#include "bess/json_io.hpp"
#include "bess/parse.hpp"
#include "bess/realize.hpp"

using namespace bess;

namespace {

// Exit codes: 0 positive verdict / success, 1 negative verdict (with a
// certificate), 2 usage or parse error, 3 internal consistency failure.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Config {
  std::string command;
  std::string field = "gf2";
  int vars = 1;
  std::string mode = "br";
  uint64_t seed = 0xB355;
  int points = 20;
  unsigned ext_degree = 16;
  bool json = false;
  std::string pencil_path;
  std::string target;
  std::string expr;
  std::string ext_field;
  int ext_vars = 0;  // 0 means "same as --vars"
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json envelope(const Config& c) {
  Json out = Json::object();
  out["schema"] = 1;
  out["command"] = c.command;
  return out;
}

Mode parse_mode(const std::string& name) {
  std::optional<Mode> m = mode_from_name(name);
  if (!m) throw SyntaxError("unknown mode '" + name + "' (use br, sbr, hbr, hsbr)");
  return *m;
}

Json string_matrix(const RatMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json element_matrix(const FieldMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string element_matrix_text(const FieldMatrix& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += m.at(r, c).to_string();
    }
    out += "]";
  }
  return out + "]";
}

Realization load_realization(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SyntaxError("cannot open pencil file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError("pencil file '" + path + "': " + e.what());
  }
  return realization_from_json(j);
}

void describe_certificate_text(const Verdict& v) {
  if (const auto* t = std::get_if<TrivialCertificate>(&v.certificate)) {
    std::cout << "note: " << t->note << "\n";
  } else if (const auto* w = std::get_if<WitnessCertificate>(&v.certificate)) {
    for (size_t l = 0; l < w->diagonals.size(); ++l) {
      const SquareWitnesses& d = w->diagonals[l];
      std::cout << "diagonal " << l + 1 << ":";
      if (d.q0.has_value()) std::cout << " q0 = " << d.q0->to_string() << ";";
      for (size_t i = 0; i < d.qs.size(); ++i)
        std::cout << " q" << i + 1 << " = " << d.qs[i].to_string() << ";";
      std::cout << "\n";
    }
  } else {
    std::cout << "certificate: " << std::get<Violation>(v.certificate).describe() << "\n";
  }
  if (v.transcript.has_value())
    std::cout << "verified: " << v.transcript->requested << " points in "
              << v.transcript->sample_field->to_string() << "\n";
}

int cmd_check(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  RatMatrix F = parse_matrix(c.expr, f, c.vars);
  Verdict v = decide_realizable(F, parse_mode(c.mode));
  if (c.json) {
    Json out = envelope(c);
    out["field"] = f.to_string();
    out["nvars"] = c.vars;
    out["target"] = c.expr;
    out["verdict"] = verdict_to_json(v);
    emit(out);
  } else {
    std::cout << "mode: " << mode_name(v.mode) << "\n"
              << "realizable: " << (v.realizable ? "yes" : "no") << "\n";
    describe_certificate_text(v);
  }
  return v.realizable ? kOk : kNegative;
}

int cmd_realize(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  RatMatrix F = parse_matrix(c.expr, f, c.vars);
  const Mode mode = parse_mode(c.mode);
  Verdict v = decide_realizable(F, mode);
  if (!v.realizable) {
    if (c.json) {
      Json out = envelope(c);
      out["verdict"] = verdict_to_json(v);
      emit(out);
    } else {
      std::cout << "realizable: no\n";
      describe_certificate_text(v);
    }
    return kNegative;
  }
  Realization r = v.realization.has_value() ? *v.realization
                                            : build_realization(F, mode);
  VerifyTranscript t = v.transcript.has_value()
                           ? *v.transcript
                           : verify_realization(r, F, c.points, c.ext_degree, c.seed);
  Json rj = realization_to_json(r);
  if (!c.pencil_path.empty()) {
    std::ofstream out(c.pencil_path);
    if (!out) throw SyntaxError("cannot write pencil file '" + c.pencil_path + "'");
    out << rj.dump(2) << "\n";
  }
  if (c.json) {
    Json out = envelope(c);
    out["verdict"] = verdict_to_json(v);
    if (!v.realization.has_value()) {
      out["realization"] = rj;
      out["transcript"] = transcript_to_json(t);
    }
    emit(out);
  } else {
    std::cout << "mode: " << mode_name(mode) << "\n"
              << "size: " << r.pencil().size() << "\n"
              << "top: " << r.top() << "\n"
              << "verified: " << t.requested << " points in "
              << t.sample_field->to_string() << "\n";
    if (!c.pencil_path.empty())
      std::cout << "pencil written to " << c.pencil_path << "\n";
    else
      std::cout << rj.dump(2) << "\n";
  }
  return kOk;
}

int cmd_verify(const Config& c) {
  Realization r = load_realization(c.pencil_path);
  RatMatrix target = parse_matrix(c.target, r.pencil().spec(), r.pencil().nvars());
  VerifyTranscript t = verify_realization(r, target, c.points, c.ext_degree, c.seed);
  if (c.json) {
    Json out = envelope(c);
    out["pencil"] = c.pencil_path;
    out["target"] = c.target;
    out["transcript"] = transcript_to_json(t);
    emit(out);
  } else {
    std::cout << "passed: " << (t.passed ? "yes" : "no") << "\n"
              << "points: " << t.entries.size() << " of " << t.attempts
              << " attempts in " << t.sample_field->to_string() << "\n";
    if (!t.passed && !t.entries.empty()) {
      const TranscriptEntry& e = t.entries.back();
      std::cout << "mismatch at point (";
      for (size_t i = 0; i < e.point.size(); ++i)
        std::cout << (i ? ", " : "") << e.point[i].to_string();
      std::cout << "): pencil gives "
                << (e.via_schur ? element_matrix_text(*e.via_schur) : std::string("pole"))
                << ", target gives "
                << (e.via_target ? element_matrix_text(*e.via_target) : std::string("pole"))
                << "\n";
    }
  }
  return t.passed ? kOk : kNegative;
}

int cmd_derive(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  RatFunc r = parse_ratfunc(c.expr, f, c.vars);
  std::vector<RatFunc> parts;
  for (int i = 1; i <= c.vars; ++i) parts.push_back(r.derivative(i));
  if (c.json) {
    Json out = envelope(c);
    out["target"] = c.expr;
    Json ds = Json::array();
    for (const RatFunc& d : parts) ds.push_back(d.to_string());
    out["derivatives"] = std::move(ds);
    emit(out);
  } else {
    for (int i = 1; i <= c.vars; ++i)
      std::cout << "d/dz" << i << ": " << parts[i - 1].to_string() << "\n";
  }
  return kOk;
}

int cmd_decompose(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  RatFunc r = parse_ratfunc(c.expr, f, c.vars);
  auto res = affine_decompose(r);
  if (const auto* bad = std::get_if<SubspaceViolation>(&res)) {
    if (c.json) {
      Json out = envelope(c);
      out["target"] = c.expr;
      out["decomposable"] = false;
      out["violation"] = bad->describe();
      emit(out);
    } else {
      std::cout << "decomposable: no\ncertificate: " << bad->describe() << "\n";
    }
    return kNegative;
  }
  const AffineDecomposition& d = std::get<AffineDecomposition>(res);
  if (c.json) {
    Json out = envelope(c);
    out["target"] = c.expr;
    out["decomposable"] = true;
    out["r0"] = d.r0.to_string();
    Json g = Json::array();
    for (const RatFunc& gi : d.gradient) g.push_back(gi.to_string());
    out["gradient"] = std::move(g);
    emit(out);
  } else {
    std::cout << "r0: " << d.r0.to_string() << "\n";
    for (size_t i = 0; i < d.gradient.size(); ++i)
      std::cout << "d" << i + 1 << ": " << d.gradient[i].to_string() << "\n";
  }
  return kOk;
}

int cmd_coords(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  RatFunc r = parse_ratfunc(c.expr, f, c.vars);
  Coordinates co = basis_coordinates(r);
  if (c.json) {
    Json out = envelope(c);
    out["target"] = c.expr;
    Json table = Json::object();
    for (const auto& [beta, value] : co.coords) table[beta_string(beta)] = value.to_string();
    out["coordinates"] = std::move(table);
    emit(out);
  } else {
    for (const auto& [beta, value] : co.coords)
      std::cout << "beta=" << beta_string(beta) << ": " << value.to_string() << "\n";
  }
  return kOk;
}

int cmd_schur(const Config& c) {
  Realization r = load_realization(c.pencil_path);
  RatMatrix s = schur_symbolic(r);
  if (c.json) {
    Json out = envelope(c);
    out["pencil"] = c.pencil_path;
    out["schur"] = string_matrix(s);
    emit(out);
  } else {
    std::cout << s.to_string() << "\n";
  }
  return kOk;
}

int cmd_diagonalize(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  RatMatrix entries = parse_matrix(c.expr, f, c.vars);
  if (entries.rows() != entries.cols()) throw NotSquare("matrix must be square");
  FieldMatrix S(f, entries.rows(), entries.cols());
  const ExpVec zero_exp(size_t(c.vars), 0);
  for (int r = 0; r < entries.rows(); ++r) {
    for (int col = 0; col < entries.cols(); ++col) {
      const RatFunc& e = entries.at(r, col);
      if (!e.is_polynomial() || e.num().total_degree() > 0)
        throw SyntaxError("diagonalize expects a constant matrix");
      S.set(r, col, e.num().coefficient(zero_exp));
    }
  }
  auto res = congruence_diagonalize(S);
  if (std::holds_alternative<Alternate>(res)) {
    if (c.json) {
      Json out = envelope(c);
      out["alternate"] = true;
      emit(out);
    } else {
      std::cout << "alternate: yes (zero diagonal is congruence-invariant)\n";
    }
    return kNegative;
  }
  const Diagonalization& d = std::get<Diagonalization>(res);
  if (c.json) {
    Json out = envelope(c);
    out["alternate"] = false;
    out["P"] = element_matrix(d.P);
    out["D"] = element_matrix(d.D);
    emit(out);
  } else {
    std::cout << "P: " << element_matrix_text(d.P) << "\n"
              << "D: " << element_matrix_text(d.D) << "\n";
  }
  return kOk;
}

int cmd_density(const Config& c) {
  DensityReport rep = density_report(c.vars);
  if (c.json) {
    Json out = envelope(c);
    out["nvars"] = rep.n;
    out["dim_total"] = rep.dim_total;
    out["dim_affine_witness"] = rep.dim_sbr;
    out["dim_homogeneous_slice"] = rep.dim_total_h;
    out["dim_homogeneous_witness"] = rep.dim_hsbr;
    out["affine_ratio"] =
        std::to_string(rep.sbr_ratio_num) + "/" + std::to_string(rep.sbr_ratio_den);
    out["homogeneous_ratio"] =
        std::to_string(rep.hsbr_ratio_num) + "/" + std::to_string(rep.hsbr_ratio_den);
    emit(out);
  } else {
    std::cout << "n  total  affine  hom-slice  hom\n"
              << rep.n << "  " << rep.dim_total << "  " << rep.dim_sbr << "  "
              << rep.dim_total_h << "  " << rep.dim_hsbr << "\n"
              << "affine density: " << rep.sbr_ratio_num << "/" << rep.sbr_ratio_den
              << "\nhomogeneous density: " << rep.hsbr_ratio_num << "/"
              << rep.hsbr_ratio_den << "\n";
  }
  return kOk;
}

int cmd_transfer(const Config& c) {
  const FieldSpec& f = FieldSpec::parse(c.field);
  // Default to the quadratic extension where one exists; only binary
  // extension fields are supported, so odd characteristic keeps the base.
  const FieldSpec& ext = !c.ext_field.empty() ? FieldSpec::parse(c.ext_field)
                         : f.characteristic() == 2
                             ? FieldSpec::default_binary_extension(2 * f.degree())
                             : f;
  const int ext_vars = c.ext_vars > 0 ? c.ext_vars : c.vars;
  RatMatrix F = parse_matrix(c.expr, f, c.vars);
  TransferRecord rec = transfer_check(F, ext, ext_vars, parse_mode(c.mode));
  if (c.json) {
    Json out = envelope(c);
    out["base_field"] = f.to_string();
    out["extension_field"] = ext.to_string();
    out["extension_vars"] = ext_vars;
    out["base"] = verdict_to_json(rec.base);
    out["extension"] = verdict_to_json(rec.ext);
    out["agree"] = rec.agree;
    emit(out);
  } else {
    std::cout << "base (" << f.to_string() << ", n=" << c.vars
              << "): " << (rec.base.realizable ? "realizable" : "not realizable") << "\n"
              << "extension (" << ext.to_string() << ", n=" << ext_vars
              << "): " << (rec.ext.realizable ? "realizable" : "not realizable") << "\n"
              << "agree: " << (rec.agree ? "yes" : "no") << "\n";
  }
  if (!rec.agree) return kInternal;
  return kOk;
}

int dispatch(const Config& c) {
  if (c.command == "check") return cmd_check(c);
  if (c.command == "realize") return cmd_realize(c);
  if (c.command == "verify") return cmd_verify(c);
  if (c.command == "derive") return cmd_derive(c);
  if (c.command == "decompose") return cmd_decompose(c);
  if (c.command == "coords") return cmd_coords(c);
  if (c.command == "schur") return cmd_schur(c);
  if (c.command == "diagonalize") return cmd_diagonalize(c);
  if (c.command == "density") return cmd_density(c);
  if (c.command == "transfer") return cmd_transfer(c);
  throw SyntaxError("unknown command '" + c.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{
      "Exact realizations of rational matrix functions as Schur complements of "
      "linear matrix pencils over finite fields"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("--field", cfg.field, "field spec (gf2, gf3, gf4, gf256, gf65536, "
                                          "gf<p>, gf2^<k>:<hex modulus>)");
    sub->add_option("--vars", cfg.vars, "number of variables")->check(CLI::Range(0, 64));
    if (with_mode) sub->add_option("--mode", cfg.mode, "realization class (br, sbr, hbr, hsbr)");
    sub->add_option("--seed", cfg.seed, "sampling seed");
    sub->add_option("--points", cfg.points, "verification point count")
        ->check(CLI::Range(1, 100000));
    sub->add_option("--ext-degree", cfg.ext_degree, "verification extension degree")
        ->check(CLI::Range(1, 32));
    sub->add_flag("--json", cfg.json, "emit a JSON report");
  };

  CLI::App* check = app.add_subcommand("check", "decide realizability of a target");
  add_common(check, true);
  check->add_option("expr", cfg.expr, "target expression or [[...],[...]] matrix")
      ->required();

  CLI::App* realize = app.add_subcommand("realize", "build and verify a realization");
  add_common(realize, true);
  realize->add_option("--pencil", cfg.pencil_path, "write the realization here");
  realize->add_option("expr", cfg.expr, "target expression")->required();

  CLI::App* verify = app.add_subcommand("verify", "verify a pencil file against a target");
  add_common(verify, false);
  verify->add_option("--pencil", cfg.pencil_path, "realization file")->required();
  verify->add_option("--target", cfg.target, "target expression")->required();

  CLI::App* derive = app.add_subcommand("derive", "formal partial derivatives");
  add_common(derive, false);
  derive->add_option("expr", cfg.expr, "expression")->required();

  CLI::App* decompose =
      app.add_subcommand("decompose", "affine decomposition over the squared variables");
  add_common(decompose, false);
  decompose->add_option("expr", cfg.expr, "expression")->required();

  CLI::App* coords =
      app.add_subcommand("coords", "coordinates in the binary-exponent basis");
  add_common(coords, false);
  coords->add_option("expr", cfg.expr, "expression")->required();

  CLI::App* schur = app.add_subcommand("schur", "symbolic Schur complement of a pencil");
  add_common(schur, false);
  schur->add_option("--pencil", cfg.pencil_path, "realization file")->required();

  CLI::App* diagonalize =
      app.add_subcommand("diagonalize", "congruence-diagonalize a symmetric matrix");
  add_common(diagonalize, false);
  diagonalize->add_option("expr", cfg.expr, "constant matrix [[...],[...]]")->required();

  CLI::App* density = app.add_subcommand("density", "witness-subspace dimension table");
  add_common(density, false);

  CLI::App* transfer =
      app.add_subcommand("transfer", "compare verdicts over a field extension");
  add_common(transfer, true);
  transfer->add_option("--ext-field", cfg.ext_field,
                       "extension field spec (default: quadratic extension "
                       "in characteristic 2, the base field otherwise)");
  transfer->add_option("--ext-vars", cfg.ext_vars,
                       "extension variable count (default: --vars)");
  transfer->add_option("expr", cfg.expr, "target expression")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cfg);
  } catch (const ProcedureDisagreement& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
