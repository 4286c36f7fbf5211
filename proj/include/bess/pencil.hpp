#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bess/ratio.hpp"

namespace bess {

/// Affine matrix pencil A(z) = A0 + z1*A1 + ... + zn*An: n+1 square
/// coefficient matrices of one size over one field.  Immutable.
class Pencil {
 public:
  /// coeffs = {A0, A1, ..., An}; the variable count is coeffs.size() - 1.
  explicit Pencil(std::vector<FieldMatrix> coeffs);

  /// All-zero coefficients.
  static Pencil zero(const FieldSpec& spec, int nvars, int size);

  const FieldSpec& spec() const { return *spec_; }
  int nvars() const { return nvars_; }
  int size() const { return size_; }
  /// Coefficient of z_j (A0 for j == 0), j in 0..nvars.
  const FieldMatrix& coeff(int j) const;
  const std::vector<FieldMatrix>& coeffs() const { return coeffs_; }

  /// A(z) as a matrix of rational functions.
  RatMatrix symbolic() const;
  /// A(pt) numerically; the point may live in an extension of the field.
  FieldMatrix eval(std::span<const FieldElem> point) const;

  bool operator==(const Pencil& o) const;
  bool operator!=(const Pencil& o) const { return !(*this == o); }

 private:
  const FieldSpec* spec_;
  int nvars_;
  int size_;
  std::vector<FieldMatrix> coeffs_;
};

/// Structural facts about a pencil's coefficients.
struct PencilPredicates {
  bool symmetric = false;    // every coefficient equals its transpose
  bool homogeneous = false;  // A0 == 0
  /// alternate[j]: coefficient A_j is symmetric with an all-zero diagonal
  /// (meaningful over characteristic 2, where congruence preserves it).
  std::vector<bool> alternate;
};

PencilPredicates pencil_predicates(const Pencil& p);

/// A pencil with a designated top-left block size `top`: rows and columns
/// beyond it form the A22 block, and the Schur complement
/// A11 - A12 A22^-1 A21 realizes a top x top rational matrix.
class Realization {
 public:
  Realization(Pencil pencil, int top);

  Realization(const Realization& o)
      : pencil_(o.pencil_), top_(o.top_), a22_state_(o.a22_state_.load()) {}
  Realization& operator=(const Realization& o) {
    pencil_ = o.pencil_;
    top_ = o.top_;
    a22_state_.store(o.a22_state_.load());
    return *this;
  }

  const Pencil& pencil() const { return pencil_; }
  int top() const { return top_; }
  int bottom() const { return pencil_.size() - top_; }

  /// True when det A22(z) is nonzero as a rational function.  Computed on
  /// first use and cached; concurrent first computations agree.
  bool well_posed() const;

 private:
  friend RatMatrix schur_symbolic(const Realization& r);

  Pencil pencil_;
  int top_;
  mutable std::atomic<int> a22_state_{0};  // 0 unknown, 1 invertible, 2 singular
};

/// The Schur complement of the pencil with respect to A22, computed by exact
/// elimination over the rational function field.  Throws SingularBlock when
/// det A22(z) == 0 identically.
RatMatrix schur_symbolic(const Realization& r);

/// Numeric Schur complement at a point; nullopt when A22 at the point is not
/// invertible.  The point may live in an extension of the pencil's field.
std::optional<FieldMatrix> schur_eval(const Realization& r, std::span<const FieldElem> point);

/// Result of congruence_diagonalize: S == P.transpose() * D * P with P
/// invertible and D diagonal.
struct Diagonalization {
  FieldMatrix P;
  FieldMatrix D;
};

/// Tag for symmetric matrices with an all-zero diagonal; every congruence
/// preserves that shape, so no diagonalization is attempted.
struct Alternate {};

/// Diagonalize a symmetric matrix over a characteristic-2 field by
/// congruence.  Throws NotSymmetric and WrongCharacteristic.
std::variant<Diagonalization, Alternate> congruence_diagonalize(const FieldMatrix& S);

/// Numeric spot check of the derivative identity
///   dF/dz_i == F^2 * (X^T A_i X)  with  X = A(z)^-1 e1
/// for a scalar target F over characteristic 2, sampled at `trials`
/// non-singular points with coordinates in GF(2^extension_degree).  Throws
/// NotScalarTarget (top != 1), SingularPencil (det A(z) == 0 identically),
/// WrongCharacteristic, and InsufficientNonSingularPoints when sampling
/// cannot find enough usable points.
bool derivative_identity_check(const Realization& r, int index, int trials = 20,
                               unsigned extension_degree = 16, uint64_t seed = 0xB355);

}  // namespace bess
