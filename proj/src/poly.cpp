#include "bess/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bess {

uint32_t exp_total_degree(const ExpVec& e) {
  uint32_t d = 0;
  for (uint32_t x : e) d += x;
  return d;
}

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
  const uint32_t da = exp_total_degree(a), db = exp_total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(const FieldSpec& spec, int nvars) : spec_(&spec), nvars_(nvars) {
  if (nvars < 0) throw VariableCountMismatch("negative variable count");
}

MultiPoly MultiPoly::constant(const FieldSpec& spec, int nvars, const FieldElem& c) {
  if (&c.spec() != &spec) throw MixedFields("constant from a different field");
  MultiPoly p(spec, nvars);
  p.add_term(ExpVec(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::constant(const FieldSpec& spec, int nvars, uint64_t repr) {
  return constant(spec, nvars, FieldElem(spec, repr));
}

MultiPoly MultiPoly::variable(const FieldSpec& spec, int nvars, int index) {
  if (index < 1 || index > nvars)
    throw BadVariableIndex("variable index " + std::to_string(index) +
                           " outside 1.." + std::to_string(nvars));
  ExpVec e(nvars, 0);
  e[index - 1] = 1;
  MultiPoly p(spec, nvars);
  p.add_term(e, FieldElem::one(spec));
  return p;
}

MultiPoly MultiPoly::monomial(const FieldSpec& spec, int nvars, ExpVec exps,
                              const FieldElem& c) {
  if (int(exps.size()) != nvars)
    throw VariableCountMismatch("exponent vector length does not match variable count");
  if (&c.spec() != &spec) throw MixedFields("coefficient from a different field");
  MultiPoly p(spec, nvars);
  p.add_term(exps, c);
  return p;
}

MultiPoly MultiPoly::from_terms(const FieldSpec& spec, int nvars,
                                const std::vector<std::pair<ExpVec, FieldElem>>& ts) {
  MultiPoly p(spec, nvars);
  for (const auto& [e, c] : ts) {
    if (int(e.size()) != nvars)
      throw VariableCountMismatch("exponent vector length does not match variable count");
    if (&c.spec() != &spec) throw MixedFields("coefficient from a different field");
    p.add_term(e, c);
  }
  return p;
}

void MultiPoly::add_term(const ExpVec& e, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    FieldElem s = it->second + c;
    if (s.is_zero()) terms_.erase(it);
    else it->second = s;
  }
}

const FieldSpec& MultiPoly::same(const MultiPoly& o) const {
  if (spec_ != o.spec_)
    throw MixedFields(spec_->to_string() + " vs " + o.spec_->to_string());
  if (nvars_ != o.nvars_)
    throw VariableCountMismatch(std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) +
                                " variables");
  return *spec_;
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->second.is_one() &&
         exp_total_degree(terms_.begin()->first) == 0;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && exp_total_degree(terms_.begin()->first) == 0);
}

FieldElem MultiPoly::constant_value() const {
  auto it = terms_.find(ExpVec(nvars_, 0));
  return it == terms_.end() ? FieldElem::zero(*spec_) : it->second;
}

FieldElem MultiPoly::coefficient(const ExpVec& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElem::zero(*spec_) : it->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return int(exp_total_degree(terms_.rbegin()->first));
}

std::pair<ExpVec, FieldElem> MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return *terms_.rbegin();
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  same(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  same(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*spec_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  same(o);
  MultiPoly r(*spec_, nvars_);
  ExpVec e(nvars_, 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const FieldElem& c) const {
  if (&c.spec() != spec_) throw MixedFields("scalar from a different field");
  MultiPoly r(*spec_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, tc] : terms_) r.terms_.emplace(e, tc * c);
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return spec_ == o.spec_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(int index) const {
  if (index < 1 || index > nvars_)
    throw BadVariableIndex("variable index " + std::to_string(index) +
                           " outside 1.." + std::to_string(nvars_));
  const uint64_t p = spec_->characteristic();
  MultiPoly r(*spec_, nvars_);
  for (const auto& [e, c] : terms_) {
    const uint64_t m = e[index - 1] % p;
    if (m == 0) continue;
    ExpVec d = e;
    d[index - 1] -= 1;
    r.add_term(d, c * FieldElem(*spec_, m));
  }
  return r;
}

FieldElem MultiPoly::eval(std::span<const FieldElem> point) const {
  if (int(point.size()) != nvars_)
    throw VariableCountMismatch("point length does not match variable count");
  const FieldSpec* target = spec_;
  if (nvars_ > 0) {
    target = &point[0].spec();
    for (const FieldElem& x : point)
      if (&x.spec() != target) throw MixedFields("evaluation point mixes fields");
    if (!embeddable(*spec_, *target))
      throw NonEmbeddableField("cannot evaluate " + spec_->to_string() +
                               " coefficients at a " + target->to_string() + " point");
  }
  FieldElem acc = FieldElem::zero(*target);
  for (const auto& [e, c] : terms_) {
    FieldElem t = embed(c, *target);
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t = t * point[i].pow(e[i]);
    acc = acc + t;
  }
  return acc;
}

Homogeneity MultiPoly::homogeneity() const {
  if (terms_.empty()) return Homogeneity::any();
  const uint32_t d0 = exp_total_degree(terms_.begin()->first);
  const uint32_t d1 = exp_total_degree(terms_.rbegin()->first);
  return d0 == d1 ? Homogeneity::of(int(d0)) : Homogeneity::none();
}

MultiPoly MultiPoly::pow(uint64_t e) const {
  MultiPoly acc = constant(*spec_, nvars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  return *this * terms_.rbegin()->second.inverse();
}

MultiPoly MultiPoly::substitute_one(int index) const {
  if (index < 1 || index > nvars_)
    throw BadVariableIndex("variable index " + std::to_string(index) +
                           " outside 1.." + std::to_string(nvars_));
  MultiPoly r(*spec_, nvars_ - 1);
  ExpVec e(nvars_ - 1);
  for (const auto& [ea, c] : terms_) {
    int j = 0;
    for (int i = 0; i < nvars_; ++i)
      if (i != index - 1) e[j++] = ea[i];
    r.add_term(e, c);
  }
  return r;
}

MultiPoly MultiPoly::extended(const FieldSpec& target, int new_nvars) const {
  if (new_nvars < nvars_)
    throw VariableCountMismatch("cannot shrink the variable count");
  if (!embeddable(*spec_, target))
    throw NonEmbeddableField("no canonical embedding of " + spec_->to_string() +
                             " into " + target.to_string());
  MultiPoly r(target, new_nvars);
  for (const auto& [e, c] : terms_) {
    ExpVec ne(new_nvars, 0);
    std::copy(e.begin(), e.end(), ne.begin());
    r.terms_.emplace(std::move(ne), embed(c, target));
  }
  return r;
}

std::pair<MultiPoly, MultiPoly> MultiPoly::divrem(const MultiPoly& divisor) const {
  same(divisor);
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  MultiPoly q(*spec_, nvars_), r(*spec_, nvars_), p = *this;
  const auto& [eb, cb] = divisor.leading_term();
  ExpVec diff(nvars_);
  while (!p.is_zero()) {
    const auto& [ep, cp] = *p.terms_.rbegin();
    bool divisible = true;
    for (int i = 0; i < nvars_; ++i) {
      if (ep[i] < eb[i]) {
        divisible = false;
        break;
      }
      diff[i] = ep[i] - eb[i];
    }
    if (divisible) {
      MultiPoly t = monomial(*spec_, nvars_, diff, cp / cb);
      q.add_term(diff, cp / cb);
      p = p - t * divisor;
    } else {
      r.add_term(ep, cp);
      p.terms_.erase(std::prev(p.terms_.end()));
    }
  }
  return {q, r};
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
  auto [q, r] = divrem(divisor);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

namespace {

// Degree of a in z_v (0-based); -1 when a is zero or free of z_v entirely
// would still report the max exponent, so zero polys must not reach here.
int degree_in(const MultiPoly& a, int v) {
  int d = 0;
  for (const auto& [e, c] : a.terms()) d = std::max(d, int(e[v]));
  return d;
}

// Coefficient of z_v^d in a, viewed as a polynomial in z_v (exponent zeroed).
MultiPoly coeff_in(const MultiPoly& a, int v, int d) {
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  for (const auto& [e, c] : a.terms()) {
    if (int(e[v]) != d) continue;
    ExpVec r = e;
    r[v] = 0;
    ts.emplace_back(std::move(r), c);
  }
  return MultiPoly::from_terms(a.spec(), a.nvars(), ts);
}

// gcd of all z_v-coefficients.
MultiPoly content_in(const MultiPoly& a, int v) {
  const int d = degree_in(a, v);
  MultiPoly g(a.spec(), a.nvars());
  for (int i = 0; i <= d; ++i) {
    MultiPoly c = coeff_in(a, v, i);
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : MultiPoly::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

MultiPoly primitive_in(const MultiPoly& a, int v) {
  MultiPoly c = content_in(a, v);
  if (c.is_one()) return a;
  auto q = a.divide_exact(c);
  if (!q) throw std::logic_error("content does not divide its polynomial");
  return *q;
}

// Pseudo-remainder of a by b with respect to z_v; deg_v(a) >= deg_v(b) >= 1.
MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, int v) {
  const int db = degree_in(b, v);
  const MultiPoly lb = coeff_in(b, v, db);
  while (!a.is_zero()) {
    const int da = degree_in(a, v);
    if (da < db) break;
    MultiPoly la = coeff_in(a, v, da);
    ExpVec shift(a.nvars(), 0);
    shift[v] = uint32_t(da - db);
    MultiPoly mono = MultiPoly::monomial(a.spec(), a.nvars(), shift, FieldElem::one(a.spec()));
    a = a * lb - b * (la * mono);
  }
  return a;
}

// Divide by the per-variable minimum exponents, returning the quotient.
MultiPoly strip_monomial(const MultiPoly& a, ExpVec& stripped) {
  stripped.assign(a.nvars(), 0);
  if (a.is_zero()) return a;
  ExpVec m = a.terms().begin()->first;
  for (const auto& [e, c] : a.terms())
    for (int i = 0; i < a.nvars(); ++i) m[i] = std::min(m[i], e[i]);
  stripped = m;
  if (exp_total_degree(m) == 0) return a;
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  for (const auto& [e, c] : a.terms()) {
    ExpVec r = e;
    for (int i = 0; i < a.nvars(); ++i) r[i] -= m[i];
    ts.emplace_back(std::move(r), c);
  }
  return MultiPoly::from_terms(a.spec(), a.nvars(), ts);
}

// Monic Euclidean gcd of two nonzero polynomials involving at most one
// variable (constants allowed); under graded-lex the division step is the
// classical univariate one.
MultiPoly euclid_single(MultiPoly a, MultiPoly b) {
  while (!b.is_zero()) {
    MultiPoly r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Value at z_v = t of a polynomial involving only z_v.
FieldElem uni_eval(const MultiPoly& a, int v, const FieldElem& t) {
  FieldElem acc = FieldElem::zero(a.spec());
  std::vector<FieldElem> tp{FieldElem::one(a.spec())};
  for (const auto& [e, c] : a.terms()) {
    while (tp.size() <= e[v]) tp.push_back(tp.back() * t);
    acc = acc + c * tp[e[v]];
  }
  return acc;
}

// Substitute z_v := t and drop the variable (arity shrinks by one).
MultiPoly eval_drop(const MultiPoly& a, int v, const FieldElem& t) {
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  std::vector<FieldElem> tp{FieldElem::one(a.spec())};
  for (const auto& [e, c] : a.terms()) {
    while (tp.size() <= e[v]) tp.push_back(tp.back() * t);
    ExpVec r;
    r.reserve(a.nvars() - 1);
    for (int i = 0; i < a.nvars(); ++i)
      if (i != v) r.push_back(e[i]);
    ts.emplace_back(std::move(r), c * tp[e[v]]);
  }
  return MultiPoly::from_terms(a.spec(), a.nvars() - 1, ts);
}

// Substitute z_v := t but keep the arity (the exponent becomes zero).
MultiPoly eval_keep(const MultiPoly& a, int v, const FieldElem& t) {
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  std::vector<FieldElem> tp{FieldElem::one(a.spec())};
  for (const auto& [e, c] : a.terms()) {
    while (tp.size() <= e[v]) tp.push_back(tp.back() * t);
    ExpVec r = e;
    r[v] = 0;
    ts.emplace_back(std::move(r), c * tp[e[v]]);
  }
  return MultiPoly::from_terms(a.spec(), a.nvars(), ts);
}

// Inverse of eval_drop's variable removal: re-embed an arity-(nvars-1)
// polynomial with a zero exponent at position v.
MultiPoly reinsert_var(const MultiPoly& a, int v, int nvars) {
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  for (const auto& [e, c] : a.terms()) {
    ExpVec r(nvars, 0);
    for (int i = 0, j = 0; i < nvars; ++i)
      if (i != v) r[i] = e[j++];
    ts.emplace_back(std::move(r), c);
  }
  return MultiPoly::from_terms(a.spec(), nvars, ts);
}

// View a inside (F[z_v])[rest]: monomial in the other variables (key, with
// the z_v slot zeroed) -> coefficient, a polynomial in z_v alone.
std::map<ExpVec, MultiPoly, GrlexLess> collect_by_prefix(const MultiPoly& a, int v) {
  std::map<ExpVec, std::vector<std::pair<ExpVec, FieldElem>>, GrlexLess> buckets;
  for (const auto& [e, c] : a.terms()) {
    ExpVec key = e;
    key[v] = 0;
    ExpVec mono(a.nvars(), 0);
    mono[v] = e[v];
    buckets[key].emplace_back(std::move(mono), c);
  }
  std::map<ExpVec, MultiPoly, GrlexLess> out;
  for (auto& [key, ts] : buckets)
    out.emplace(key, MultiPoly::from_terms(a.spec(), a.nvars(), ts));
  return out;
}

// Monic gcd of all coefficients of a prefix decomposition (its content as a
// polynomial over F[z_v]).
MultiPoly prefix_content(const std::map<ExpVec, MultiPoly, GrlexLess>& cols) {
  MultiPoly g = cols.begin()->second.monic();
  for (auto it = std::next(cols.begin()); it != cols.end() && !g.is_one(); ++it)
    g = euclid_single(g, it->second);
  return g;
}

// Newton interpolation in z_v through (t_i, sample_i); the samples have no
// z_v dependence and the result has z_v-degree below the point count.
MultiPoly interpolate(const std::vector<std::pair<FieldElem, MultiPoly>>& points, int v) {
  const FieldSpec& F = points.front().second.spec();
  const int n = points.front().second.nvars();
  MultiPoly h(F, n);
  MultiPoly basis = MultiPoly::constant(F, n, 1);
  const MultiPoly zv = MultiPoly::variable(F, n, v + 1);
  for (const auto& [t, sample] : points) {
    MultiPoly diff = sample - eval_keep(h, v, t);
    if (!diff.is_zero()) h = h + diff * basis * uni_eval(basis, v, t).inverse();
    basis = basis * (zv - MultiPoly::constant(F, n, t));
  }
  return h;
}

// Evaluation/interpolation gcd: sample the last shared variable at field
// points, recurse on the arity below, and rebuild by interpolation.  Samples
// are normalized by gamma, the gcd of the leading coefficients, which makes
// the interpolant a polynomial multiple of the true gcd; trial division then
// certifies the candidate, so any returned value is exact.  nullopt means
// the field could not supply enough usable points.
std::optional<MultiPoly> modular_gcd(const MultiPoly& a, const MultiPoly& b, Rng& rng) {
  const FieldSpec& F = a.spec();
  const int n = a.nvars();
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(F, n, 1);

  int v = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (degree_in(a, i) > 0 && degree_in(b, i) > 0) {
      v = i;
      break;
    }
  }
  // A common factor could only involve variables active in both inputs.
  if (v < 0) return MultiPoly::constant(F, n, 1);

  const auto cols_a = collect_by_prefix(a, v);
  const auto cols_b = collect_by_prefix(b, v);
  const MultiPoly cont_a = prefix_content(cols_a);
  const MultiPoly cont_b = prefix_content(cols_b);
  auto primitive = [](const MultiPoly& p, const MultiPoly& cont) {
    if (cont.is_one()) return p;
    auto q = p.divide_exact(cont);
    if (!q) throw std::logic_error("content does not divide its polynomial");
    return *q;
  };
  const MultiPoly ppa = primitive(a, cont_a);
  const MultiPoly ppb = primitive(b, cont_b);
  const MultiPoly cont_g = euclid_single(cont_a, cont_b);
  // Once contents are split off, a constant primitive part forces a trivial
  // primitive gcd (divisors of primitive polynomials are primitive).
  if (ppa.is_constant() || ppb.is_constant()) return cont_g;

  const MultiPoly lc_pa = primitive(cols_a.rbegin()->second, cont_a);
  const MultiPoly lc_pb = primitive(cols_b.rbegin()->second, cont_b);
  const MultiPoly gamma = euclid_single(lc_pa, lc_pb);
  const int bound = std::min(degree_in(ppa, v), degree_in(ppb, v)) + degree_in(gamma, v);
  const uint64_t cap = 16 * uint64_t(bound + 2) + 64;

  std::set<uint64_t> used;
  std::vector<std::pair<FieldElem, MultiPoly>> cohort;  // (t, recursive gcd image)
  std::optional<ExpVec> mu;  // least leading monomial seen across images
  for (uint64_t draws = 0; draws < cap; ++draws) {
    const FieldElem t(F, F.sample(rng));
    if (!used.insert(t.repr()).second) continue;
    // gamma(t) != 0 keeps the gcd's leading coefficient alive at t, so image
    // gcds can only overshoot the true leading monomial, never undershoot.
    if (uni_eval(gamma, v, t).is_zero()) continue;
    if (uni_eval(lc_pa, v, t).is_zero() || uni_eval(lc_pb, v, t).is_zero()) continue;
    auto g_t = modular_gcd(eval_drop(ppa, v, t), eval_drop(ppb, v, t), rng);
    if (!g_t) return std::nullopt;
    if (g_t->is_constant()) return cont_g;  // coprime at t, hence coprime
    const ExpVec m = g_t->leading_term().first;
    if (!mu || GrlexLess{}(m, *mu)) {
      mu = m;
      cohort.clear();
    } else if (GrlexLess{}(*mu, m)) {
      continue;  // unlucky point: strictly larger leading monomial
    }
    cohort.emplace_back(t, std::move(*g_t));
    if (int(cohort.size()) < bound + 1) continue;

    std::vector<std::pair<FieldElem, MultiPoly>> samples;
    samples.reserve(cohort.size());
    for (const auto& [ti, gi] : cohort)
      samples.emplace_back(ti, reinsert_var(gi, v, n) * uni_eval(gamma, v, ti));
    const MultiPoly h = interpolate(samples, v);
    const MultiPoly cand = primitive(h, prefix_content(collect_by_prefix(h, v)));
    if (ppa.divide_exact(cand) && ppb.divide_exact(cand))
      return (cont_g * cand).monic();
    cohort.clear();  // consistently unlucky cohort; resample from scratch
    mu.reset();
  }
  return std::nullopt;
}

// Map a polynomial whose coefficients lie in the image of base back down.
MultiPoly project_poly(const MultiPoly& a, const FieldSpec& base) {
  std::vector<std::pair<ExpVec, FieldElem>> ts;
  for (const auto& [e, c] : a.terms()) {
    auto pc = project(c, base);
    if (!pc) throw std::logic_error("gcd computed over an extension left the base field");
    ts.emplace_back(e, *pc);
  }
  return MultiPoly::from_terms(base, a.nvars(), ts);
}

// Both inputs nonzero and free of monomial content.
MultiPoly core_gcd(MultiPoly a, MultiPoly b) {
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(a.spec(), a.nvars(), 1);

  int pivot = -1;
  for (int v = 0; v < a.nvars(); ++v) {
    if (degree_in(a, v) > 0 && degree_in(b, v) > 0) {
      pivot = v;
      break;
    }
  }
  // No shared variable: any common divisor is free of every variable.
  if (pivot < 0) return MultiPoly::constant(a.spec(), a.nvars(), 1);

  if (degree_in(a, pivot) < degree_in(b, pivot)) std::swap(a, b);
  MultiPoly ca = content_in(a, pivot), cb = content_in(b, pivot);
  MultiPoly g_cont = MultiPoly::gcd(ca, cb);
  MultiPoly pa = ca.is_one() ? a : *a.divide_exact(ca);
  MultiPoly pb = cb.is_one() ? b : *b.divide_exact(cb);

  // Primitive remainder sequence in the pivot variable.
  for (;;) {
    MultiPoly r = pseudo_rem(pa, pb, pivot);
    if (r.is_zero()) return g_cont * primitive_in(pb, pivot);
    if (degree_in(r, pivot) == 0) return g_cont;
    pa = std::move(pb);
    pb = primitive_in(r, pivot);
  }
}

// Fields this large feed the sampling gcd directly; smaller binary fields
// borrow points from an extension, smaller odd fields keep the remainder
// sequence (their polynomials stay small in this codebase).
constexpr uint64_t kSamplingFieldOrder = 64;
constexpr uint64_t kGcdRngSeed = 0xB355;

MultiPoly engine_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(a.spec(), a.nvars(), 1);
  const FieldSpec& F = a.spec();
  if (F.order() >= kSamplingFieldOrder) {
    Rng rng(kGcdRngSeed);
    if (auto g = modular_gcd(a, b, rng)) return *g;
    return core_gcd(a, b);
  }
  if (F.characteristic() == 2) {
    // The monic gcd is unchanged under field extension, so compute it with a
    // healthy point supply and project back.
    const unsigned j = F.degree();
    const FieldSpec& L = FieldSpec::default_binary_extension(j * ((16 + j - 1) / j));
    Rng rng(kGcdRngSeed);
    if (auto g = modular_gcd(a.extended(L, a.nvars()), b.extended(L, b.nvars()), rng))
      return project_poly(*g, F);
    return core_gcd(a, b);
  }
  return core_gcd(a, b);
}

}  // namespace

MultiPoly MultiPoly::gcd(const MultiPoly& a, const MultiPoly& b) {
  a.same(b);
  if (a.is_zero() && b.is_zero()) throw BothZero("gcd(0, 0) is undefined");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();

  ExpVec ma, mb;
  MultiPoly sa = strip_monomial(a, ma);
  MultiPoly sb = strip_monomial(b, mb);
  ExpVec shared(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) shared[i] = std::min(ma[i], mb[i]);
  MultiPoly g = engine_gcd(sa, sb);
  if (exp_total_degree(shared) != 0)
    g = g * monomial(a.spec(), a.nvars(), shared, FieldElem::one(a.spec()));
  return g.monic();
}

bool MultiPoly::exponents_divisible_by(uint32_t m) const {
  for (const auto& [e, c] : terms_)
    for (uint32_t x : e)
      if (x % m) return false;
  return true;
}

std::optional<MultiPoly> MultiPoly::pth_power_root() const {
  const uint32_t p = uint32_t(spec_->characteristic());
  if (!exponents_divisible_by(p)) return std::nullopt;
  MultiPoly r(*spec_, nvars_);
  for (const auto& [e, c] : terms_) {
    ExpVec h = e;
    for (uint32_t& x : h) x /= p;
    r.terms_.emplace(std::move(h), c.pth_root());
  }
  return r;
}

std::map<ExpVec, MultiPoly, GrlexLess> MultiPoly::parity_split() const {
  if (spec_->characteristic() != 2)
    throw WrongCharacteristic("parity split requires characteristic 2");
  std::map<ExpVec, MultiPoly, GrlexLess> out;
  for (const auto& [e, c] : terms_) {
    ExpVec beta(nvars_), half(nvars_);
    for (int i = 0; i < nvars_; ++i) {
      beta[i] = e[i] & 1;
      half[i] = e[i] >> 1;
    }
    auto it = out.find(beta);
    if (it == out.end()) it = out.emplace(beta, MultiPoly(*spec_, nvars_)).first;
    it->second.add_term(half, c.pth_root());
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    const bool has_vars = exp_total_degree(e) != 0;
    if (!has_vars || !c.is_one()) {
      os << c.to_string();
      if (has_vars) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << "z" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace bess
