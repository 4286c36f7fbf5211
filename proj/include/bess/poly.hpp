#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bess/field.hpp"

namespace bess {

/// Exponent vector; entry i is the exponent of z_{i+1}.
using ExpVec = std::vector<uint32_t>;

uint32_t exp_total_degree(const ExpVec& e);

/// Graded lexicographic order: total degree first, then lexicographic with
/// z1 > z2 > ... as the tie-break.  Term maps iterate in ascending order.
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

/// Result of a homogeneity query.  The zero polynomial is homogeneous of
/// every degree at once, which gets its own tag.
struct Homogeneity {
  enum Kind { kNo, kDegree, kAny };
  Kind kind = kNo;
  int degree = 0;

  static Homogeneity none() { return {kNo, 0}; }
  static Homogeneity of(int d) { return {kDegree, d}; }
  static Homogeneity any() { return {kAny, 0}; }

  bool homogeneous() const { return kind != kNo; }
  /// Homogeneous of degree d (the zero element passes for every d).
  bool is(int d) const { return kind == kAny || (kind == kDegree && degree == d); }
  bool operator==(const Homogeneity&) const = default;
};

/// Sparse multivariate polynomial over a finite field.  The term map only
/// holds nonzero coefficients; this canonical form makes equality structural.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, FieldElem, GrlexLess>;

  /// The zero polynomial in nvars variables.
  MultiPoly(const FieldSpec& spec, int nvars);

  static MultiPoly constant(const FieldSpec& spec, int nvars, const FieldElem& c);
  static MultiPoly constant(const FieldSpec& spec, int nvars, uint64_t repr);
  /// z_index, 1-based.
  static MultiPoly variable(const FieldSpec& spec, int nvars, int index);
  static MultiPoly monomial(const FieldSpec& spec, int nvars, ExpVec exps,
                            const FieldElem& c);
  /// Accumulating builder; duplicate exponent vectors add up, zeros drop out.
  static MultiPoly from_terms(const FieldSpec& spec, int nvars,
                              const std::vector<std::pair<ExpVec, FieldElem>>& ts);

  const FieldSpec& spec() const { return *spec_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  /// Coefficient of the constant monomial (zero element if absent).
  FieldElem constant_value() const;
  FieldElem coefficient(const ExpVec& e) const;
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  /// Graded-lex maximal term; requires a nonzero polynomial.
  std::pair<ExpVec, FieldElem> leading_term() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const FieldElem& c) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  /// Formal partial derivative in z_index (1-based): term coefficients are
  /// multiplied by the exponent reduced mod p, so p-th powers die.
  MultiPoly derivative(int index) const;

  /// Evaluation at a point whose entries live in this field or an extension
  /// of its prime subfield; coefficients are embedded before use.
  FieldElem eval(std::span<const FieldElem> point) const;

  Homogeneity homogeneity() const;
  MultiPoly pow(uint64_t e) const;
  /// Scaled so the graded-lex leading coefficient is 1.
  MultiPoly monic() const;
  /// Substitute z_index := 1 and drop that variable (nvars shrinks by one).
  MultiPoly substitute_one(int index) const;
  /// Reinterpret over an extension field and/or a larger variable count.
  MultiPoly extended(const FieldSpec& target, int new_nvars) const;

  /// Division with remainder by a single divisor under graded-lex.  The
  /// remainder has no term divisible by the divisor's leading monomial, so
  /// divisibility is equivalent to a zero remainder.
  std::pair<MultiPoly, MultiPoly> divrem(const MultiPoly& divisor) const;
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

  /// Monic gcd.  gcd(a, 0) = monic(a); gcd(0, 0) throws BothZero.
  static MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

  bool exponents_divisible_by(uint32_t m) const;
  /// For characteristic p and m == p: the unique q with q^p equal to this
  /// polynomial, when all exponents divide by p; nullopt otherwise.
  std::optional<MultiPoly> pth_power_root() const;

  /// Characteristic 2: split as sum over parity patterns b of m_b^2 * z^b.
  /// Only nonzero classes appear in the result.
  std::map<ExpVec, MultiPoly, GrlexLess> parity_split() const;

  std::string to_string() const;

 private:
  void add_term(const ExpVec& e, const FieldElem& c);
  const FieldSpec& same(const MultiPoly& o) const;

  const FieldSpec* spec_;
  int nvars_;
  TermMap terms_;
};

}  // namespace bess
