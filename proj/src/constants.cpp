#include "bess/constants.hpp"

#include <numeric>
#include <stdexcept>

namespace bess {

std::string beta_string(const ExpVec& beta) {
  std::string s;
  s.reserve(beta.size());
  for (uint32_t b : beta) s += b ? '1' : '0';
  return s;
}

std::string SubspaceViolation::describe() const {
  switch (reason) {
    case Reason::kPartialNotConstant:
      return "partial derivative with respect to z" + std::to_string(index) +
             " is not a constant of the derivations: " + value.to_string();
    case Reason::kCoordinate:
      return "coordinate at beta=" + beta_string(beta) +
             " is nonzero: " + value.to_string();
    case Reason::kConstantTerm:
      return "constant coordinate is nonzero in homogeneous mode: " + value.to_string();
    case Reason::kInhomogeneous:
      return "witness q" + std::to_string(index) +
             " is not homogeneous of degree 0: " + value.to_string();
  }
  return "unknown violation";
}

namespace {

// Zero test for a partial derivative via the quotient rule's numerator,
// which avoids normalizing the derivative itself.
bool partial_is_zero(const RatFunc& r, int i) {
  return (r.num().derivative(i) * r.den() - r.num() * r.den().derivative(i)).is_zero();
}

}  // namespace

bool constants_member(const RatFunc& r, uint32_t p) {
  if (r.spec().characteristic() != p)
    throw WrongCharacteristic("membership characteristic does not match the field");
  bool derivative_route = true;
  for (int i = 1; i <= r.nvars(); ++i)
    if (!partial_is_zero(r, i)) {
      derivative_route = false;
      break;
    }
  const bool exponent_route = r.in_pth_powers();
  if (derivative_route != exponent_route)
    throw ProcedureDisagreement(
        "constants membership: derivative and exponent procedures disagree on " +
        r.to_string());
  return derivative_route;
}

bool homogeneous_constants_member(const RatFunc& r) {
  if (r.spec().characteristic() != 2)
    throw WrongCharacteristic("homogeneous constants are defined for characteristic 2");
  return constants_member(r, 2) && r.homogeneity().is(0);
}

std::variant<AffineDecomposition, SubspaceViolation> affine_decompose(const RatFunc& r) {
  if (r.spec().characteristic() != 2)
    throw WrongCharacteristic("affine decomposition is defined for characteristic 2");
  const int n = r.nvars();
  std::vector<RatFunc> gradient;
  gradient.reserve(n);
  for (int i = 1; i <= n; ++i) {
    RatFunc d = r.derivative(i);
    if (!constants_member(d, 2))
      return SubspaceViolation{SubspaceViolation::Reason::kPartialNotConstant, i, {},
                               std::move(d)};
    gradient.push_back(std::move(d));
  }
  RatFunc r0 = r;
  for (int i = 1; i <= n; ++i)
    r0 = r0 + RatFunc::variable(r.spec(), n, i) * gradient[i - 1];
  if (!constants_member(r0, 2))
    throw std::logic_error("affine remainder escaped the constant subfield");
  return AffineDecomposition{std::move(r0), std::move(gradient)};
}

Coordinates basis_coordinates(const RatFunc& r) {
  if (r.spec().characteristic() != 2)
    throw WrongCharacteristic("basis coordinates are defined for characteristic 2");
  const int n = r.nvars();
  if (n > 16) throw TooManyVariables("coordinate reports support at most 16 variables");
  Coordinates out;
  out.n = n;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    ExpVec beta(n, 0);
    for (int i = 0; i < n; ++i) beta[i] = uint32_t((mask >> i) & 1);
    out.coords.emplace(std::move(beta), RatFunc(r.spec(), n));
  }
  if (r.is_zero()) return out;
  // r = (num*den)/den^2; splitting num*den into its exponent-parity classes
  // num*den = sum_beta m_beta^2 z^beta gives coords[beta] = (m_beta/den)^2.
  const MultiPoly c = r.num() * r.den();
  const MultiPoly den2 = r.den() * r.den();
  for (const auto& [beta, m] : c.parity_split())
    out.coords.at(beta) = RatFunc(m * m, den2);
  return out;
}

std::variant<SquareWitnesses, SubspaceViolation> square_witnesses(const RatFunc& r,
                                                                  WitnessMode mode) {
  if (r.spec().characteristic() != 2)
    throw WrongCharacteristic("square witnesses are defined for characteristic 2");
  if (mode == WitnessMode::kHomogeneous && !r.homogeneity().is(1))
    throw NotHomogeneousDegreeOne(
        "homogeneous witnesses require a target homogeneous of degree 1");
  const int n = r.nvars();
  if (n > 16) throw TooManyVariables("coordinate scans support at most 16 variables");

  // Work from the parity classes of num*den directly: the coordinate at beta
  // is (m_beta/den)^2, so the square root is m_beta/den, and absent classes
  // are zero coordinates that can never violate.  Only a reported violation
  // or a kept witness pays for a rational normalization.
  SquareWitnesses w;
  w.qs.assign(n, RatFunc(r.spec(), n));
  if (mode == WitnessMode::kAffine) w.q0 = RatFunc(r.spec(), n);
  if (r.is_zero()) return w;
  auto coordinate = [&](const MultiPoly& m) { return RatFunc(m * m, r.den() * r.den()); };
  // Ascending graded-lex scan makes the reported violation the least one.
  for (const auto& [beta, m] : (r.num() * r.den()).parity_split()) {
    const uint32_t weight = exp_total_degree(beta);
    if (weight == 0) {
      if (mode == WitnessMode::kHomogeneous)
        return SubspaceViolation{SubspaceViolation::Reason::kConstantTerm, 0, beta,
                                 coordinate(m)};
      w.q0 = RatFunc(m, r.den());
      continue;
    }
    if (weight == 1) {
      int index = 0;
      while (beta[index] == 0) ++index;
      RatFunc q(m, r.den());
      if (mode == WitnessMode::kHomogeneous && !q.homogeneity().is(0))
        return SubspaceViolation{SubspaceViolation::Reason::kInhomogeneous, index + 1,
                                 beta, q};
      w.qs[index] = std::move(q);
      continue;
    }
    return SubspaceViolation{SubspaceViolation::Reason::kCoordinate, 0, beta,
                             coordinate(m)};
  }
  return w;
}

DensityReport density_report(int n) {
  if (n < 1) throw BadVariableIndex("density report needs at least one variable");
  if (n > 62) throw TooManyVariables("density report supports at most 62 variables");
  DensityReport d;
  d.n = n;
  d.dim_total = uint64_t(1) << n;
  d.dim_sbr = uint64_t(n) + 1;
  d.dim_total_h = uint64_t(1) << (n - 1);
  d.dim_hsbr = uint64_t(n);
  const uint64_t g1 = std::gcd(d.dim_sbr, d.dim_total);
  d.sbr_ratio_num = d.dim_sbr / g1;
  d.sbr_ratio_den = d.dim_total / g1;
  const uint64_t g2 = std::gcd(d.dim_hsbr, d.dim_total_h);
  d.hsbr_ratio_num = d.dim_hsbr / g2;
  d.hsbr_ratio_den = d.dim_total_h / g2;
  return d;
}

}  // namespace bess
