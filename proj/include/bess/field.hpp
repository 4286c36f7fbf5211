#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bess/errors.hpp"
#include "bess/rng.hpp"

namespace bess {

/// Description of a finite field: GF(p) for prime p < 2^31, or GF(2^k) for
/// 1 < k <= 32 with an explicit irreducible modulus over GF(2).
///
/// Specs are interned: equal parameters always yield the same object, so
/// interoperability checks reduce to pointer identity.  Construction
/// validates primality of p resp. irreducibility of the modulus eagerly.
class FieldSpec {
 public:
  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

  static const FieldSpec& prime(uint64_t p);
  /// GF(2^degree); modulus is the coefficient mask of the degree-k
  /// irreducible polynomial, bit i = coefficient of x^i (bit k must be set).
  static const FieldSpec& binary_extension(unsigned degree, uint64_t modulus);

  /// Accepts "gf<p>", "gf2^<k>:<hex modulus>", and the preset aliases
  /// gf4, gf256, gf65536.
  static const FieldSpec& parse(std::string_view text);

  static const FieldSpec& gf2() { return prime(2); }
  static const FieldSpec& gf3() { return prime(3); }
  static const FieldSpec& gf4() { return binary_extension(2, 0x7); }
  static const FieldSpec& gf256() { return binary_extension(8, 0x11b); }
  static const FieldSpec& gf65536() { return binary_extension(16, 0x1100b); }

  /// GF(2^degree) with a canonical modulus: the preset one where a preset
  /// exists, otherwise the numerically smallest irreducible of that degree.
  static const FieldSpec& default_binary_extension(unsigned degree);

  uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  uint64_t modulus() const { return modulus_; }
  uint64_t order() const { return order_; }
  bool prime_field() const { return k_ == 1; }
  /// Canonical spec string; parse(to_string()) returns the same object.
  std::string to_string() const;

  // Arithmetic on raw representations (residues resp. coefficient masks).
  // Inputs must be reduced; outputs are reduced.
  uint64_t add(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    return a >= b ? a - b : a + p_ - b;
  }
  uint64_t neg(uint64_t a) const {
    if (p_ == 2) return a;
    return a == 0 ? 0 : p_ - a;
  }
  uint64_t mul(uint64_t a, uint64_t b) const {
    if (k_ == 1) return (a * b) % p_;
    if (!log_.empty()) {
      if (a == 0 || b == 0) return 0;
      uint64_t s = log_[a] + log_[b];
      const uint64_t span = order_ - 1;
      if (s >= span) s -= span;
      return exp_[s];
    }
    return reduce(clmul(a, b));
  }
  uint64_t inv(uint64_t a) const;
  uint64_t div(uint64_t a, uint64_t b) const {
    if (b == 0) throw DivisionByZero("division by zero in " + to_string());
    return mul(a, inv(b));
  }
  uint64_t pow(uint64_t a, uint64_t e) const;
  /// Unique p-th root (Frobenius inverse); identity on prime fields,
  /// a^(2^(k-1)) on GF(2^k).
  uint64_t pth_root(uint64_t a) const;

  /// Uniform element.
  uint64_t sample(Rng& rng) const {
    if (k_ == 1) return rng.below(p_);
    return rng.next() & (order_ - 1);
  }

  /// Element text: decimal residue (prime field) or 0x-prefixed coefficient
  /// mask (extension field).
  std::string format(uint64_t a) const;
  /// Inverse of format(); also accepts decimal literals in extension fields
  /// (reduced mod 2 and embedded as a constant).
  uint64_t parse_element(std::string_view text) const;

  /// The adjoined root x of the modulus (extension fields only), written
  /// "g" in expressions.
  uint64_t adjoined_root() const;

  /// A fixed primitive element (generator of the multiplicative group).
  uint64_t generator() const { return generator_; }

 private:
  FieldSpec(uint64_t p, unsigned k, uint64_t modulus);

  static uint64_t clmul(uint64_t a, uint64_t b) {
    uint64_t acc = 0;
    while (b) {
      if (b & 1) acc ^= a;
      a <<= 1;
      b >>= 1;
    }
    return acc;
  }
  uint64_t reduce(uint64_t v) const;
  void build_tables();
  uint64_t find_generator() const;

  uint64_t p_;
  unsigned k_;
  uint64_t modulus_;  // 0 for prime fields
  uint64_t order_;
  uint64_t generator_ = 0;
  std::vector<uint32_t> log_;  // k <= 16 only; log_[a] for a != 0
  std::vector<uint32_t> exp_;  // exp_[i] = g^i, i in [0, order-1)
};

/// Value of one field element.  Carries a pointer to its interned spec, so
/// values are self-describing and cheap to copy.
class FieldElem {
 public:
  FieldElem(const FieldSpec& spec, uint64_t repr) : spec_(&spec), repr_(repr) {
    if (spec.prime_field()) {
      repr_ %= spec.characteristic();
    } else if (repr_ >= spec.order()) {
      throw FieldLiteralError("element mask out of range for " + spec.to_string());
    }
  }

  static FieldElem zero(const FieldSpec& spec) { return FieldElem(spec, 0); }
  static FieldElem one(const FieldSpec& spec) { return FieldElem(spec, 1); }

  const FieldSpec& spec() const { return *spec_; }
  uint64_t repr() const { return repr_; }
  bool is_zero() const { return repr_ == 0; }
  bool is_one() const { return repr_ == 1; }

  FieldElem operator+(const FieldElem& o) const {
    return FieldElem(same(o), spec_->add(repr_, o.repr_));
  }
  FieldElem operator-(const FieldElem& o) const {
    return FieldElem(same(o), spec_->sub(repr_, o.repr_));
  }
  FieldElem operator*(const FieldElem& o) const {
    return FieldElem(same(o), spec_->mul(repr_, o.repr_));
  }
  FieldElem operator/(const FieldElem& o) const {
    return FieldElem(same(o), spec_->div(repr_, o.repr_));
  }
  FieldElem operator-() const { return FieldElem(*spec_, spec_->neg(repr_)); }

  FieldElem inverse() const {
    if (repr_ == 0) throw DivisionByZero("inverse of zero in " + spec_->to_string());
    return FieldElem(*spec_, spec_->inv(repr_));
  }
  FieldElem pow(uint64_t e) const { return FieldElem(*spec_, spec_->pow(repr_, e)); }
  FieldElem pth_root() const { return FieldElem(*spec_, spec_->pth_root(repr_)); }

  bool operator==(const FieldElem& o) const {
    return spec_ == o.spec_ && repr_ == o.repr_;
  }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  std::string to_string() const { return spec_->format(repr_); }

 private:
  const FieldSpec& same(const FieldElem& o) const {
    if (spec_ != o.spec_)
      throw MixedFields(spec_->to_string() + " vs " + o.spec_->to_string());
    return *spec_;
  }

  const FieldSpec* spec_;
  uint64_t repr_;
};

/// Canonical embedding into an extension: identity on the same spec, GF(p)
/// into GF(p^k) as constants, and GF(2^j) into GF(2^k) whenever j divides k
/// (a fixed field homomorphism, cached per spec pair).  Anything else is
/// rejected.
FieldElem embed(const FieldElem& a, const FieldSpec& target);

/// True if embed(., target) accepts elements of source.
bool embeddable(const FieldSpec& source, const FieldSpec& target);

/// Partial inverse of embed(): the preimage in base if a lies in the image
/// of the canonical embedding, nullopt otherwise.  Requires
/// embeddable(base, a.spec()).
std::optional<FieldElem> project(const FieldElem& a, const FieldSpec& base);

/// One uniform element from a bare 64-bit seed (deterministic).
FieldElem sample_element(const FieldSpec& spec, uint64_t seed);

}  // namespace bess
