#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bess/constants.hpp"
#include "bess/pencil.hpp"

namespace bess {

/// The four realization classes: plain, symmetric pencil, homogeneous pencil
/// (A0 == 0), and both at once.
enum class Mode { kBR, kSBR, khBR, khSBR };

/// True when the mode demands a symmetric pencil.
bool mode_symmetric(Mode m);
/// True when the mode demands A0 == 0.
bool mode_homogeneous(Mode m);
/// Lowercase name: "br", "sbr", "hbr", "hsbr".
std::string mode_name(Mode m);
/// Inverse of mode_name; nullopt for unknown names.
std::optional<Mode> mode_from_name(const std::string& name);

/// Evidence that a target is outside the requested class: the offending
/// entry (0-based), the reason, and for witness-subspace failures the
/// obstruction reported by the coordinate test.
struct Violation {
  enum class Reason {
    kAsymmetric,   // F[row][col] != F[col][row]
    kNotDegreeOne, // entry is not homogeneous of degree 1
    kSubspace,     // diagonal entry fails the square-witness test
  };
  Reason reason;
  int row = 0;
  int col = 0;
  std::optional<SubspaceViolation> subspace;  // set for kSubspace
  std::string describe() const;
};

/// Marker for positive verdicts that need no witnesses: BR always, hBR once
/// every entry is homogeneous of degree 1, and the characteristic != 2
/// branches of SBR/hSBR.
struct TrivialCertificate {
  std::string note;
};

/// Positive SBR/hSBR evidence over characteristic 2: square witnesses for
/// each diagonal entry, in row order.
struct WitnessCertificate {
  std::vector<SquareWitnesses> diagonals;
};

/// One verification sample: a point, both evaluations, and whether they
/// agree.  `via_schur`/`via_target` are absent when the realization and the
/// target disagree about the point being singular (itself a mismatch).
struct TranscriptEntry {
  std::vector<FieldElem> point;
  std::optional<FieldMatrix> via_schur;
  std::optional<FieldMatrix> via_target;
  bool match = false;
};

/// Full record of a verification run: which field the points were drawn
/// from, the seed, how many draws were spent, and every usable sample.
struct VerifyTranscript {
  const FieldSpec* sample_field = nullptr;
  uint64_t seed = 0;
  int requested = 0;
  int attempts = 0;
  std::vector<TranscriptEntry> entries;
  bool passed = false;
};

/// Outcome of decide_realizable, optionally enriched by the builder: the
/// certificate explains the verdict, and a positive verdict that has been
/// built and checked carries the realization plus its transcript.
struct Verdict {
  Mode mode = Mode::kBR;
  bool realizable = false;
  std::variant<TrivialCertificate, WitnessCertificate, Violation> certificate;
  std::optional<Realization> realization;
  std::optional<VerifyTranscript> transcript;
};

/// Record of deciding the same target over a base field and an extension
/// (wider variable lists allowed); the verdicts must agree.
struct TransferRecord {
  Verdict base;
  Verdict ext;
  bool agree = false;
};

/// Realization of a constant matrix M (size k+1, top block k): Schur
/// complement == M for every point.
Realization atom_constant(const FieldMatrix& M, int nvars);
/// Realization of the single variable z_index (size 2, top block 1).
Realization atom_variable(const FieldSpec& spec, int nvars, int index);

/// Scales the Schur complement by c: every coefficient is multiplied by c
/// when c != 0; c == 0 yields a fresh zero realization of the same shape.
Realization comb_scale(const Realization& a, const FieldElem& c);

/// Schur complement == sum of the inputs' Schur complements.  Preserves
/// symmetry and homogeneity.  Throws ShapeMismatch on target-size mismatch.
Realization comb_sum(const Realization& a, const Realization& b);

/// Schur complement == F + F^T.  The output pencil is symmetric regardless
/// of the input; homogeneity is preserved.
Realization comb_symmetrize(const Realization& a);

/// Schur complement == F^T: transposes every coefficient.
Realization comb_transpose(const Realization& a);

/// Schur complement == U * F * V for constant matrices U (l x k) and
/// V (k x l); V defaults to U^T.  Symmetry is preserved when V == U^T;
/// homogeneity is always preserved.  Throws ShapeMismatch.
Realization comb_congruence(const Realization& a, const FieldMatrix& U);
Realization comb_congruence(const Realization& a, const FieldMatrix& U, const FieldMatrix& V);

/// Schur complement == F * X^-1 * G for a pencil X invertible over F(z).
/// When b realizes F^T with the transposed pencil of a and X is symmetric,
/// the output pencil is symmetric; homogeneity of a, b, X is preserved.
/// Throws SingularMiddle (det X == 0), ShapeMismatch, SingularBlock (an
/// input is not well posed).
Realization comb_sandwich(const Realization& a, const Pencil& X, const Realization& b);

/// Schur complement == F^-1.  Requires det F != 0 over F(z); symmetry is
/// preserved.  Throws SingularTarget, SingularBlock.
Realization comb_inverse(const Realization& a);

/// Schur complement == F tensor I_s (each entry spread along a diagonal
/// block).  Preserves symmetry and homogeneity.
Realization comb_kron(const Realization& a, int s);

/// Adds one variable and moves A0 to its coefficient: the output is
/// homogeneous in n+1 variables and realizes z_{n+1} * F(z1/z_{n+1}, ...,
/// z_n/z_{n+1}); for F homogeneous of degree 1 this is F itself.  Preserves
/// symmetry.
Realization comb_homogenize(const Realization& a);

/// Decides membership of a square rational matrix in the chosen class:
/// BR always holds; hBR holds iff every entry is homogeneous of degree 1;
/// SBR needs symmetry plus (characteristic != 2, or per-diagonal affine
/// square witnesses); hSBR needs symmetry and degree 1 plus (characteristic
/// != 2, or per-diagonal homogeneous witnesses).  Throws NotSquare.
Verdict decide_realizable(const RatMatrix& F, Mode mode);

/// Builds a realization in the requested class.  Throws NotRealizable when
/// decide_realizable rejects the target; the output satisfies the mode's
/// structural promises (symmetric coefficients, zero A0) by construction.
Realization build_realization(const RatMatrix& F, Mode mode);

/// Samples `points` non-singular points and compares schur_eval against the
/// target entry-wise, recording every usable sample.  Points live in
/// GF(2^d), d the smallest multiple of the coefficient field's degree that
/// is >= extension_degree (characteristic 2), or in GF(p) itself otherwise;
/// tiny prime fields may revisit points.  Stops at the first mismatch.
/// Throws InsufficientNonSingularPoints when 10*points draws cannot supply
/// enough usable samples, ShapeMismatch.
VerifyTranscript verify_realization(const Realization& r, const RatMatrix& target,
                                    int points = 20, unsigned extension_degree = 16,
                                    uint64_t seed = 0xB355);

/// Decides the same target over its base field and over an extension with
/// N >= n variables; the two verdicts must agree (realizability transfers
/// both ways).  Throws NotAnExtension, VariableCountMismatch, NotSquare.
TransferRecord transfer_check(const RatMatrix& F, const FieldSpec& ext, int ext_vars,
                              Mode mode);

}  // namespace bess
