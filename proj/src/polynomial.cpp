#include "kahler/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

#include "kahler/errors.hpp"

namespace kahler::algebra {
namespace {

constexpr std::array<std::string_view, kVarCount> kVarNames = {
    "m", "k", "q", "a", "b", "r", "p", "sigma"};

std::size_t index_of(Var v) { return static_cast<std::size_t>(v); }

Exponents add_exponents(const Exponents& x, const Exponents& y) {
  Exponents out{};
  for (std::size_t i = 0; i < kVarCount; ++i) {
    const unsigned sum = unsigned{x[i]} + unsigned{y[i]};
    if (sum > std::numeric_limits<std::uint16_t>::max()) {
      throw DomainError("polynomial exponent overflow");
    }
    out[i] = static_cast<std::uint16_t>(sum);
  }
  return out;
}

mpq_class pow_q(const mpq_class& base, unsigned exponent) {
  mpq_class result = 1;
  mpq_class b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

// P(v = N/D) * D^degree, where degree >= deg_v(P).
RationalPolynomial substitute_scaled(const RationalPolynomial& poly, Var v,
                                     const RationalPolynomial& num,
                                     const RationalPolynomial& den,
                                     int degree) {
  const std::size_t idx = index_of(v);
  std::vector<RationalPolynomial> num_powers{RationalPolynomial(1)};
  std::vector<RationalPolynomial> den_powers{RationalPolynomial(1)};
  for (int i = 1; i <= degree; ++i) {
    num_powers.push_back(num_powers.back() * num);
    den_powers.push_back(den_powers.back() * den);
  }
  RationalPolynomial result;
  for (const auto& [exps, coeff] : poly.terms()) {
    const int e = exps[idx];
    Exponents rest = exps;
    rest[idx] = 0;
    result += RationalPolynomial::monomial(coeff, rest) * num_powers[e] *
              den_powers[degree - e];
  }
  return result;
}

}  // namespace

std::string_view var_name(Var v) noexcept { return kVarNames[index_of(v)]; }

std::optional<Var> parse_var(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kVarCount; ++i) {
    if (kVarNames[i] == name) return static_cast<Var>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Point

Point::Point(std::initializer_list<std::pair<Var, mpq_class>> values) {
  for (const auto& [v, value] : values) set(v, value);
}

Point& Point::set(Var v, mpq_class value) {
  value.canonicalize();
  values_[index_of(v)] = std::move(value);
  return *this;
}

bool Point::has(Var v) const noexcept {
  return values_[index_of(v)].has_value();
}

const mpq_class& Point::at(Var v) const {
  const auto& slot = values_[index_of(v)];
  if (!slot) {
    throw DomainError("variable '" + std::string(var_name(v)) +
                      "' is not bound");
  }
  return *slot;
}

// ------------------------------------------------------ RationalPolynomial

RationalPolynomial::RationalPolynomial(long constant)
    : RationalPolynomial(mpq_class(constant)) {}

RationalPolynomial::RationalPolynomial(const mpq_class& constant) {
  add_term(Exponents{}, constant);
}

RationalPolynomial RationalPolynomial::variable(Var v) {
  Exponents exps{};
  exps[index_of(v)] = 1;
  return monomial(1, exps);
}

RationalPolynomial RationalPolynomial::monomial(const mpq_class& coeff,
                                                const Exponents& exps) {
  RationalPolynomial out;
  out.add_term(exps, coeff);
  return out;
}

void RationalPolynomial::add_term(const Exponents& exps,
                                  const mpq_class& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

bool RationalPolynomial::is_constant() const noexcept {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

mpq_class RationalPolynomial::constant_term() const {
  const auto it = terms_.find(Exponents{});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int RationalPolynomial::degree_in(Var v) const noexcept {
  int degree = 0;
  for (const auto& [exps, coeff] : terms_) {
    degree = std::max(degree, int{exps[index_of(v)]});
  }
  return degree;
}

int RationalPolynomial::total_degree() const noexcept {
  int degree = 0;
  for (const auto& [exps, coeff] : terms_) {
    int d = 0;
    for (auto e : exps) d += e;
    degree = std::max(degree, d);
  }
  return degree;
}

unsigned RationalPolynomial::variable_mask() const noexcept {
  unsigned mask = 0;
  for (const auto& [exps, coeff] : terms_) {
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (exps[i] != 0) mask |= 1U << i;
    }
  }
  return mask;
}

RationalPolynomial& RationalPolynomial::operator+=(
    const RationalPolynomial& rhs) {
  for (const auto& [exps, coeff] : rhs.terms_) add_term(exps, coeff);
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(
    const RationalPolynomial& rhs) {
  for (const auto& [exps, coeff] : rhs.terms_) add_term(exps, -coeff);
  return *this;
}

RationalPolynomial operator*(const RationalPolynomial& lhs,
                             const RationalPolynomial& rhs) {
  RationalPolynomial out;
  for (const auto& [ex, cx] : lhs.terms_) {
    for (const auto& [ey, cy] : rhs.terms_) {
      out.add_term(add_exponents(ex, ey), cx * cy);
    }
  }
  return out;
}

RationalPolynomial& RationalPolynomial::operator*=(
    const RationalPolynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const mpq_class& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [exps, coeff] : terms_) coeff *= scalar;
  return *this;
}

RationalPolynomial RationalPolynomial::operator-() const {
  RationalPolynomial out = *this;
  for (auto& [exps, coeff] : out.terms_) coeff = -coeff;
  return out;
}

RationalPolynomial RationalPolynomial::pow(unsigned exponent) const {
  RationalPolynomial result(1);
  RationalPolynomial base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

mpq_class RationalPolynomial::evaluate(const Point& at) const {
  mpq_class total = 0;
  for (const auto& [exps, coeff] : terms_) {
    mpq_class term = coeff;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (exps[i] != 0) term *= pow_q(at.at(static_cast<Var>(i)), exps[i]);
    }
    total += term;
  }
  return total;
}

RationalPolynomial RationalPolynomial::partial_evaluate(const Point& at) const {
  RationalPolynomial out;
  for (const auto& [exps, coeff] : terms_) {
    mpq_class c = coeff;
    Exponents rest = exps;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      const auto v = static_cast<Var>(i);
      if (exps[i] != 0 && at.has(v)) {
        c *= pow_q(at.at(v), exps[i]);
        rest[i] = 0;
      }
    }
    out.add_term(rest, c);
  }
  return out;
}

Exponents RationalPolynomial::common_monomial() const {
  if (terms_.empty()) return Exponents{};
  Exponents common = terms_.begin()->first;
  for (const auto& [exps, coeff] : terms_) {
    for (std::size_t i = 0; i < kVarCount; ++i) {
      common[i] = std::min(common[i], exps[i]);
    }
  }
  return common;
}

RationalPolynomial RationalPolynomial::divide_monomial(
    const Exponents& divisor) const {
  RationalPolynomial out;
  for (const auto& [exps, coeff] : terms_) {
    Exponents reduced{};
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (exps[i] < divisor[i]) {
        throw DomainError("monomial does not divide polynomial");
      }
      reduced[i] = static_cast<std::uint16_t>(exps[i] - divisor[i]);
    }
    out.add_term(reduced, coeff);
  }
  return out;
}

std::string RationalPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [exps, coeff] = *it;
    const bool constant = exps == Exponents{};
    mpq_class magnitude = abs(coeff);
    if (first) {
      if (coeff < 0) os << '-';
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (constant || magnitude != 1) {
      os << magnitude.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (exps[i] == 0) continue;
      if (wrote) os << '*';
      os << kVarNames[i];
      if (exps[i] > 1) os << '^' << exps[i];
      wrote = true;
    }
  }
  return os.str();
}

// -------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(long constant)
    : RationalFunction(RationalPolynomial(constant)) {}

RationalFunction::RationalFunction(const mpq_class& constant)
    : RationalFunction(RationalPolynomial(constant)) {}

RationalFunction::RationalFunction(RationalPolynomial numerator)
    : num_(std::move(numerator)), den_(1) {}

RationalFunction::RationalFunction(RationalPolynomial numerator,
                                   RationalPolynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

RationalFunction RationalFunction::variable(Var v) {
  return RationalFunction(RationalPolynomial::variable(v));
}

void RationalFunction::normalize() {
  if (den_.is_zero()) {
    throw DomainError("rational function with zero denominator");
  }
  if (num_.is_zero()) {
    den_ = RationalPolynomial(1);
    return;
  }
  const Exponents cn = num_.common_monomial();
  const Exponents cd = den_.common_monomial();
  Exponents shared{};
  bool any = false;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    shared[i] = std::min(cn[i], cd[i]);
    any = any || shared[i] != 0;
  }
  if (any) {
    num_ = num_.divide_monomial(shared);
    den_ = den_.divide_monomial(shared);
  }
  // Scale so the leading denominator coefficient is one.
  const mpq_class lead = den_.terms().rbegin()->second;
  if (lead != 1) {
    const mpq_class inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
  if (num_ == den_) {
    num_ = RationalPolynomial(1);
    den_ = RationalPolynomial(1);
  }
}

void RationalFunction::merge_assumptions(const std::vector<std::string>& other) {
  if (other.empty()) return;
  assumptions_.insert(assumptions_.end(), other.begin(), other.end());
  std::sort(assumptions_.begin(), assumptions_.end());
  assumptions_.erase(std::unique(assumptions_.begin(), assumptions_.end()),
                     assumptions_.end());
}

RationalFunction& RationalFunction::assume(std::string assumption) {
  merge_assumptions({std::move(assumption)});
  return *this;
}

RationalFunction& RationalFunction::assume_all(
    const std::vector<std::string>& assumptions) {
  merge_assumptions(assumptions);
  return *this;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  merge_assumptions(rhs.assumptions_);
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
  return *this += -rhs;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  merge_assumptions(rhs.assumptions_);
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.num_.is_zero()) {
    throw DomainError("division by the zero rational function");
  }
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  merge_assumptions(rhs.assumptions_);
  normalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction RationalFunction::pow(unsigned exponent) const {
  RationalFunction out(num_.pow(exponent), den_.pow(exponent));
  out.assumptions_ = assumptions_;
  return out;
}

RationalFunction RationalFunction::substitute(
    Var v, const RationalFunction& value) const {
  const int dn = num_.degree_in(v);
  const int dd = den_.degree_in(v);
  RationalPolynomial top =
      substitute_scaled(num_, v, value.num_, value.den_, dn);
  RationalPolynomial bottom =
      substitute_scaled(den_, v, value.num_, value.den_, dd);
  // num(N/D) / den(N/D) = top * D^dd / (bottom * D^dn).
  if (dd >= dn) {
    top *= value.den_.pow(static_cast<unsigned>(dd - dn));
  } else {
    bottom *= value.den_.pow(static_cast<unsigned>(dn - dd));
  }
  if (bottom.is_zero()) {
    throw DomainError("substitution makes the denominator vanish");
  }
  RationalFunction out(std::move(top), std::move(bottom));
  out.assumptions_ = assumptions_;
  out.merge_assumptions(value.assumptions_);
  return out;
}

mpq_class RationalFunction::evaluate(const Point& at) const {
  const mpq_class d = den_.evaluate(at);
  if (d == 0) throw DomainError("denominator vanishes at evaluation point");
  mpq_class out = num_.evaluate(at) / d;
  out.canonicalize();
  return out;
}

RationalPolynomial RationalFunction::cross_residual(
    const RationalFunction& other) const {
  if (den_ == other.den_) return num_ - other.num_;
  return num_ * other.den_ - other.num_ * den_;
}

std::string RationalFunction::to_string() const {
  if (den_ == RationalPolynomial(1)) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RationalFunction var(Var v) { return RationalFunction::variable(v); }

RationalFunction rational(long numerator, long denominator) {
  mpq_class value(numerator, denominator);
  value.canonicalize();
  return RationalFunction(value);
}

}  // namespace kahler::algebra
