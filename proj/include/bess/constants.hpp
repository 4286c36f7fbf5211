#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bess/ratio.hpp"

namespace bess {

/// Coordinates of a rational function in the basis {z^beta : beta in {0,1}^n}
/// of F(z) as a vector space over the squared-variable subfield (char 2).
/// All 2^n binary exponent vectors are present, zeros included.
struct Coordinates {
  int n = 0;
  std::map<ExpVec, RatFunc, GrlexLess> coords;
};

/// r == r0 + sum_i z_i * gradient[i], with r0 and every gradient entry lying
/// in the squared-variable subfield; gradient[i] == d(r)/dz_i.
struct AffineDecomposition {
  RatFunc r0;
  std::vector<RatFunc> gradient;
};

/// Witnesses for r == q0^2 + sum_i z_i q_i^2 (affine mode, q0 present) or
/// r == sum_i z_i q_i^2 with degree-0 q_i (homogeneous mode, q0 absent).
struct SquareWitnesses {
  std::optional<RatFunc> q0;
  std::vector<RatFunc> qs;
};

/// Certificate that a function lies outside the witness subspace.
struct SubspaceViolation {
  enum class Reason {
    kPartialNotConstant,  // d(r)/dz_index has a partial that does not vanish
    kCoordinate,          // coords[beta] != 0 for some |beta| >= 2
    kConstantTerm,        // homogeneous mode: coords[0...0] != 0
    kInhomogeneous,       // homogeneous mode: witness q_index not degree 0
  };
  Reason reason;
  int index = 0;   // 1-based variable index for the partial/witness reasons
  ExpVec beta;     // graded-lex-least violating coordinate, when applicable
  RatFunc value;   // the offending partial / coordinate / witness
  std::string describe() const;
};

/// "101"-style key for a binary exponent vector, beta_1 first.
std::string beta_string(const ExpVec& beta);

/// True iff r lies in the subfield of rational functions in the p-th powers
/// of the variables. Decided by two independent procedures (all partials
/// vanish; reduced numerator and denominator exponents divisible by p) whose
/// answers must agree. Throws WrongCharacteristic if p is not the field
/// characteristic, ProcedureDisagreement on internal inconsistency.
bool constants_member(const RatFunc& r, uint32_t p);

/// Membership in the homogeneous-degree-0 part of the squared-variable
/// subfield (char 2): constants_member(r, 2) and degree 0 (or r == 0).
bool homogeneous_constants_member(const RatFunc& r);

/// Decomposes r as r0 + sum z_i d_i with all parts over the squared-variable
/// subfield, iff every partial derivative lies in that subfield (char 2).
std::variant<AffineDecomposition, SubspaceViolation> affine_decompose(const RatFunc& r);

/// Coordinates of r in the basis {z^beta} over the squared-variable subfield
/// via the parity split of num*den (char 2, n <= 16).
Coordinates basis_coordinates(const RatFunc& r);

enum class WitnessMode { kAffine, kHomogeneous };

/// Extracts square witnesses from the basis coordinates: succeeds iff all
/// coordinates with |beta| >= 2 vanish (plus, in homogeneous mode, a zero
/// constant coordinate and degree-0 witnesses). Homogeneous mode requires r
/// homogeneous of degree 1 or zero (NotHomogeneousDegreeOne otherwise).
std::variant<SquareWitnesses, SubspaceViolation> square_witnesses(const RatFunc& r,
                                                                  WitnessMode mode);

/// Dimension counts over the squared-variable subfield for n variables, with
/// the witness-subspace density ratios as exact reduced fractions.
struct DensityReport {
  int n = 0;
  uint64_t dim_total = 0;    // 2^n: all of F(z) as a vector space basis count
  uint64_t dim_sbr = 0;      // n+1: the affine witness subspace
  uint64_t dim_total_h = 0;  // 2^(n-1): the homogeneous degree-1 slice
  uint64_t dim_hsbr = 0;     // n: the homogeneous witness subspace
  uint64_t sbr_ratio_num = 0, sbr_ratio_den = 0;    // (n+1)/2^n reduced
  uint64_t hsbr_ratio_num = 0, hsbr_ratio_den = 0;  // n/2^(n-1) reduced
};

DensityReport density_report(int n);

}  // namespace bess
