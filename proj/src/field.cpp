#include "bess/field.hpp"

#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace bess {
namespace {

bool is_prime(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

unsigned poly_degree(uint64_t mask) {
  unsigned d = 0;
  while (mask >> (d + 1)) ++d;
  return d;
}

// Remainder of a by b in GF(2)[x], both as coefficient masks, b != 0.
uint64_t poly2_mod(uint64_t a, uint64_t b) {
  const unsigned db = poly_degree(b);
  while (a && poly_degree(a) >= db) {
    a ^= b << (poly_degree(a) - db);
  }
  return a;
}

// Exhaustive trial division: no divisor of degree 1..k/2 exists.
bool is_irreducible(uint64_t mask, unsigned k) {
  for (unsigned d = 1; 2 * d <= k; ++d) {
    for (uint64_t g = uint64_t{1} << d; g < (uint64_t{2} << d); ++g) {
      if (poly2_mod(mask, g) == 0) return false;
    }
  }
  return true;
}

uint64_t parse_u64(std::string_view s, int base, const char* what) {
  if (s.empty()) throw FieldParseError(std::string("missing ") + what);
  uint64_t v = 0;
  for (char c : s) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (base == 16 && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (base == 16 && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else throw FieldParseError(std::string("bad digit in ") + what);
    if (digit >= base) throw FieldParseError(std::string("bad digit in ") + what);
    if (v > (~uint64_t{0} - digit) / base)
      throw FieldParseError(std::string("overflow in ") + what);
    v = v * base + digit;
  }
  return v;
}

}  // namespace

FieldSpec::FieldSpec(uint64_t p, unsigned k, uint64_t modulus)
    : p_(p), k_(k), modulus_(modulus) {
  if (k_ == 1) {
    if (p_ > 0x7fffffffull)
      throw FieldParseError("prime characteristic must be below 2^31");
    if (!is_prime(p_)) throw FieldParseError(std::to_string(p_) + " is not prime");
    order_ = p_;
    modulus_ = 0;
  } else {
    if (p_ != 2) throw FieldParseError("extension fields are supported for characteristic 2 only");
    if (k_ > 32) throw FieldParseError("extension degree must be at most 32");
    if (poly_degree(modulus_) != k_ || (modulus_ & 1) == 0 || !is_irreducible(modulus_, k_))
      throw FieldParseError("modulus is not a degree-" + std::to_string(k_) +
                            " irreducible polynomial over GF(2)");
    order_ = uint64_t{1} << k_;
  }
  generator_ = find_generator();
  if (k_ > 1 && k_ <= 16) build_tables();
}

uint64_t FieldSpec::reduce(uint64_t v) const {
  // v has degree at most 2k-2; fold down by the modulus.
  for (int bit = 2 * int(k_) - 2; bit >= int(k_); --bit) {
    if (v >> bit & 1) v ^= modulus_ << (bit - k_);
  }
  return v;
}

uint64_t FieldSpec::find_generator() const {
  // Smallest element of full multiplicative order: g qualifies iff
  // g^(span/q) != 1 for every prime q dividing span = order - 1.
  const uint64_t span = order_ - 1;
  if (span == 1) return 1;
  std::vector<uint64_t> prime_factors;
  uint64_t rest = span;
  for (uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d == 0) {
      prime_factors.push_back(d);
      while (rest % d == 0) rest /= d;
    }
  }
  if (rest > 1) prime_factors.push_back(rest);

  // Table-free power: the discrete-log tables may not exist yet.
  auto raw_pow = [&](uint64_t a, uint64_t e) {
    uint64_t acc = 1;
    while (e) {
      if (e & 1) acc = k_ == 1 ? (acc * a) % p_ : reduce(clmul(acc, a));
      a = k_ == 1 ? (a * a) % p_ : reduce(clmul(a, a));
      e >>= 1;
    }
    return acc;
  };

  for (uint64_t g = 2;; ++g) {
    bool full_order = true;
    for (uint64_t q : prime_factors) {
      if (raw_pow(g, span / q) == 1) {
        full_order = false;
        break;
      }
    }
    if (full_order) return g;
  }
}

void FieldSpec::build_tables() {
  // Discrete-log tables over the fixed generator.
  const uint64_t span = order_ - 1;
  exp_.assign(span, 0);
  log_.assign(order_, 0);
  uint64_t v = 1;
  for (uint64_t i = 0; i < span; ++i) {
    exp_[i] = uint32_t(v);
    log_[v] = uint32_t(i);
    v = reduce(clmul(v, generator_));
  }
}

uint64_t FieldSpec::inv(uint64_t a) const {
  if (a == 0) throw DivisionByZero("inverse of zero in " + to_string());
  if (k_ == 1) return pow(a, p_ - 2);
  if (!log_.empty()) {
    const uint64_t span = order_ - 1;
    return exp_[(span - log_[a]) % span];
  }
  return pow(a, order_ - 2);
}

uint64_t FieldSpec::pow(uint64_t a, uint64_t e) const {
  uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

uint64_t FieldSpec::pth_root(uint64_t a) const {
  if (k_ == 1) return a;  // Frobenius is the identity on GF(p)
  uint64_t r = a;
  for (unsigned i = 0; i + 1 < k_; ++i) r = mul(r, r);
  return r;
}

std::string FieldSpec::to_string() const {
  if (k_ == 1) return "gf" + std::to_string(p_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "gf2^%u:%llx", k_, (unsigned long long)modulus_);
  return buf;
}

std::string FieldSpec::format(uint64_t a) const {
  if (k_ == 1) return std::to_string(a);
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)a);
  return buf;
}

uint64_t FieldSpec::parse_element(std::string_view text) const {
  if (text.empty()) throw FieldLiteralError("empty field element");
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    if (k_ == 1)
      throw FieldLiteralError("hex masks denote extension-field elements only");
    uint64_t v = parse_u64(text.substr(2), 16, "element mask");
    if (v >= order_) throw FieldLiteralError("element mask out of range for " + to_string());
    return v;
  }
  uint64_t v = parse_u64(text, 10, "element value");
  return v % p_;  // decimal literals embed through the prime subfield
}

uint64_t FieldSpec::adjoined_root() const {
  if (k_ == 1)
    throw FieldLiteralError("prime field " + to_string() + " has no adjoined root g");
  return 2;
}

namespace {

// One intern table for both kinds: prime fields keyed (p, 1, 0), binary
// extensions (2, k, modulus).  Entries live for the program lifetime so
// elements can hold bare spec pointers.
const FieldSpec& intern(uint64_t p, unsigned k, uint64_t modulus,
                        const FieldSpec* (*make)(uint64_t, unsigned, uint64_t)) {
  static std::mutex mu;
  static std::map<std::tuple<uint64_t, unsigned, uint64_t>, const FieldSpec*> table;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, k, modulus);
  auto it = table.find(key);
  if (it != table.end()) return *it->second;
  const FieldSpec* spec = make(p, k, modulus);
  table.emplace(key, spec);
  return *spec;
}

}  // namespace

const FieldSpec& FieldSpec::prime(uint64_t p) {
  return intern(p, 1, 0, [](uint64_t pp, unsigned kk, uint64_t mm) {
    return (const FieldSpec*)new FieldSpec(pp, kk, mm);
  });
}

const FieldSpec& FieldSpec::binary_extension(unsigned degree, uint64_t modulus) {
  if (degree < 2) throw FieldParseError("extension degree must be at least 2");
  return intern(2, degree, modulus, [](uint64_t pp, unsigned kk, uint64_t mm) {
    return (const FieldSpec*)new FieldSpec(pp, kk, mm);
  });
}

const FieldSpec& FieldSpec::default_binary_extension(unsigned degree) {
  switch (degree) {
    case 1: return gf2();
    case 2: return gf4();
    case 8: return gf256();
    case 16: return gf65536();
    default: break;
  }
  if (degree == 0 || degree > 32)
    throw FieldParseError("extension degree must be in 1..32");
  for (uint64_t mask = (uint64_t{1} << degree) | 1;; mask += 2) {
    if (is_irreducible(mask, degree)) return binary_extension(degree, mask);
  }
}

const FieldSpec& FieldSpec::parse(std::string_view text) {
  if (text == "gf4") return gf4();
  if (text == "gf256") return gf256();
  if (text == "gf65536") return gf65536();
  if (text.substr(0, 2) != "gf") throw FieldParseError("field spec must start with 'gf'");
  std::string_view body = text.substr(2);
  auto caret = body.find('^');
  if (caret == std::string_view::npos) {
    return prime(parse_u64(body, 10, "characteristic"));
  }
  if (body.substr(0, caret) != "2")
    throw FieldParseError("extension fields are supported for characteristic 2 only");
  std::string_view rest = body.substr(caret + 1);
  auto colon = rest.find(':');
  if (colon == std::string_view::npos)
    throw FieldParseError("extension spec needs an explicit modulus: gf2^<k>:<hex>");
  uint64_t k = parse_u64(rest.substr(0, colon), 10, "extension degree");
  uint64_t modulus = parse_u64(rest.substr(colon + 1), 16, "modulus");
  if (k == 0 || k > 32) throw FieldParseError("extension degree must be in 1..32");
  if (k == 1) throw FieldParseError("degree-1 extensions are written gf2");
  return binary_extension(unsigned(k), modulus);
}

namespace {

// A subfield embedding GF(2^j) -> GF(2^k), j | k, determined by sending the
// source's adjoined root to a root of the source modulus inside the target.
// Additivity makes the image of any element an XOR of root powers.
struct SubfieldEmbedding {
  std::vector<uint64_t> root_powers;   // root^i in the target, i < j
  std::map<uint64_t, uint64_t> back;   // target repr -> source repr
  bool back_built = false;
};

std::mutex embed_mu;  // guards embed_cache and the entries' back maps
std::map<std::pair<const FieldSpec*, const FieldSpec*>, SubfieldEmbedding> embed_cache;

// Caller holds embed_mu.
SubfieldEmbedding& subfield_embedding(const FieldSpec& source, const FieldSpec& target) {
  const auto key = std::make_pair(&source, &target);
  auto it = embed_cache.find(key);
  if (it != embed_cache.end()) return it->second;

  // The target's multiplicative group is cyclic, so h = g^((2^k-1)/(2^j-1))
  // generates its unique subgroup of order 2^j - 1, the nonzero part of the
  // subfield GF(2^j).  The source modulus splits there; scan for a root.
  const uint64_t span_s = source.order() - 1;
  const uint64_t span_t = target.order() - 1;
  const uint64_t h = target.pow(target.generator(), span_t / span_s);
  uint64_t root = 0;
  uint64_t c = 1;
  for (uint64_t t = 0; t < span_s; ++t, c = target.mul(c, h)) {
    uint64_t acc = 0;  // Horner evaluation of the source modulus at c
    for (int i = int(source.degree()); i >= 0; --i) {
      acc = target.mul(acc, c);
      if (source.modulus() >> i & 1) acc ^= 1;
    }
    if (acc == 0) {
      root = c;
      break;
    }
  }
  if (root == 0) throw std::logic_error("subfield embedding found no modulus root");

  SubfieldEmbedding e;
  e.root_powers.resize(source.degree());
  uint64_t pw = 1;
  for (unsigned i = 0; i < source.degree(); ++i) {
    e.root_powers[i] = pw;
    pw = target.mul(pw, root);
  }
  return embed_cache.emplace(key, std::move(e)).first->second;
}

uint64_t embed_repr(const SubfieldEmbedding& e, uint64_t repr) {
  uint64_t v = 0;
  for (unsigned i = 0; i < e.root_powers.size(); ++i)
    if (repr >> i & 1) v ^= e.root_powers[i];
  return v;
}

}  // namespace

FieldElem embed(const FieldElem& a, const FieldSpec& target) {
  const FieldSpec& source = a.spec();
  if (&source == &target) return a;
  if (!embeddable(source, target))
    throw NonEmbeddableField("no canonical embedding of " + source.to_string() +
                             " into " + target.to_string());
  // Prime residues 0..p-1 map to the constants of the extension; for
  // characteristic 2 the coefficient mask of a constant equals the residue.
  if (source.prime_field()) return FieldElem(target, a.repr());
  std::lock_guard<std::mutex> lock(embed_mu);
  return FieldElem(target, embed_repr(subfield_embedding(source, target), a.repr()));
}

bool embeddable(const FieldSpec& source, const FieldSpec& target) {
  if (&source == &target) return true;
  if (source.characteristic() != target.characteristic()) return false;
  if (source.prime_field()) return true;
  return !target.prime_field() && target.degree() % source.degree() == 0;
}

std::optional<FieldElem> project(const FieldElem& a, const FieldSpec& base) {
  const FieldSpec& target = a.spec();
  if (&base == &target) return a;
  if (!embeddable(base, target))
    throw NonEmbeddableField("cannot project " + target.to_string() +
                             " onto " + base.to_string());
  if (base.prime_field()) {
    // Constants of a characteristic-2 extension are the masks 0 and 1.
    if (a.repr() < base.characteristic()) return FieldElem(base, a.repr());
    return std::nullopt;
  }
  std::lock_guard<std::mutex> lock(embed_mu);
  SubfieldEmbedding& e = subfield_embedding(base, target);
  if (!e.back_built) {
    for (uint64_t s = 0; s < base.order(); ++s) e.back.emplace(embed_repr(e, s), s);
    e.back_built = true;
  }
  auto it = e.back.find(a.repr());
  if (it == e.back.end()) return std::nullopt;
  return FieldElem(base, it->second);
}

FieldElem sample_element(const FieldSpec& spec, uint64_t seed) {
  Rng rng(seed);
  return FieldElem(spec, spec.sample(rng));
}

}  // namespace bess
