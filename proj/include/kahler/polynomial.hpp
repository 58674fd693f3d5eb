#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kahler::algebra {

/// The fixed variable set of the coefficient catalog.
enum class Var : std::uint8_t { m, k, q, a, b, r, p, sigma };

inline constexpr std::size_t kVarCount = 8;

std::string_view var_name(Var v) noexcept;
std::optional<Var> parse_var(std::string_view name) noexcept;

using Exponents = std::array<std::uint16_t, kVarCount>;

/// Exact rational values for (a subset of) the variables.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<std::pair<Var, mpq_class>> values);

  Point& set(Var v, mpq_class value);
  bool has(Var v) const noexcept;
  const mpq_class& at(Var v) const;

 private:
  std::array<std::optional<mpq_class>, kVarCount> values_{};
};

/// Sparse multivariate polynomial with arbitrary-precision rational
/// coefficients. Terms are kept in lexicographic exponent order and zero
/// coefficients are never stored, so structural equality is mathematical
/// equality.
class RationalPolynomial {
 public:
  using Terms = std::map<Exponents, mpq_class>;

  RationalPolynomial() = default;
  RationalPolynomial(long constant);  // NOLINT(google-explicit-constructor)
  RationalPolynomial(const mpq_class& constant);  // NOLINT

  static RationalPolynomial variable(Var v);
  static RationalPolynomial monomial(const mpq_class& coeff,
                                     const Exponents& exps);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term (zero when absent).
  mpq_class constant_term() const;
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  int degree_in(Var v) const noexcept;
  int total_degree() const noexcept;
  /// Bitmask over Var of the variables that actually occur.
  unsigned variable_mask() const noexcept;

  RationalPolynomial& operator+=(const RationalPolynomial& rhs);
  RationalPolynomial& operator-=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const RationalPolynomial& rhs);
  RationalPolynomial& operator*=(const mpq_class& scalar);

  friend RationalPolynomial operator+(RationalPolynomial lhs,
                                      const RationalPolynomial& rhs) {
    return lhs += rhs;
  }
  friend RationalPolynomial operator-(RationalPolynomial lhs,
                                      const RationalPolynomial& rhs) {
    return lhs -= rhs;
  }
  friend RationalPolynomial operator*(const RationalPolynomial& lhs,
                                      const RationalPolynomial& rhs);
  RationalPolynomial operator-() const;

  friend bool operator==(const RationalPolynomial& lhs,
                         const RationalPolynomial& rhs) {
    return lhs.terms_ == rhs.terms_;
  }

  RationalPolynomial pow(unsigned exponent) const;

  /// Exact evaluation; every occurring variable must be bound in `at`.
  mpq_class evaluate(const Point& at) const;

  /// Binds the variables present in `at`, leaving the rest symbolic.
  RationalPolynomial partial_evaluate(const Point& at) const;

  /// Largest monomial dividing every term (exponent-wise minimum).
  Exponents common_monomial() const;
  /// Divides every term by the monomial `exps`, which must divide each.
  RationalPolynomial divide_monomial(const Exponents& exps) const;

  /// Human-readable form such as "2*m^2*k - 3/4*q + 1".
  std::string to_string() const;

 private:
  void add_term(const Exponents& exps, const mpq_class& coeff);

  Terms terms_;
};

/// Quotient of two polynomials, with the nonvanishing assumptions that make
/// the quotient meaningful. Denominator is never the zero polynomial.
class RationalFunction {
 public:
  RationalFunction() : RationalFunction(RationalPolynomial{}) {}
  RationalFunction(long constant);  // NOLINT(google-explicit-constructor)
  RationalFunction(const mpq_class& constant);  // NOLINT
  RationalFunction(RationalPolynomial numerator);  // NOLINT
  RationalFunction(RationalPolynomial numerator, RationalPolynomial denominator);

  static RationalFunction variable(Var v);

  const RationalPolynomial& numerator() const noexcept { return num_; }
  const RationalPolynomial& denominator() const noexcept { return den_; }
  const std::vector<std::string>& assumptions() const noexcept {
    return assumptions_;
  }

  RationalFunction& assume(std::string assumption);
  RationalFunction& assume_all(const std::vector<std::string>& assumptions);

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);

  friend RationalFunction operator+(RationalFunction lhs,
                                    const RationalFunction& rhs) {
    return lhs += rhs;
  }
  friend RationalFunction operator-(RationalFunction lhs,
                                    const RationalFunction& rhs) {
    return lhs -= rhs;
  }
  friend RationalFunction operator*(RationalFunction lhs,
                                    const RationalFunction& rhs) {
    return lhs *= rhs;
  }
  friend RationalFunction operator/(RationalFunction lhs,
                                    const RationalFunction& rhs) {
    return lhs /= rhs;
  }
  RationalFunction operator-() const;

  RationalFunction pow(unsigned exponent) const;

  /// Replaces `v` by `value` everywhere.
  RationalFunction substitute(Var v, const RationalFunction& value) const;

  /// Exact evaluation; throws DomainError if the denominator vanishes.
  mpq_class evaluate(const Point& at) const;

  /// Numerator of (this - other) after cross-multiplying denominators. The
  /// two functions agree wherever both denominators are nonzero iff this is
  /// the zero polynomial.
  RationalPolynomial cross_residual(const RationalFunction& other) const;

  std::string to_string() const;

 private:
  void normalize();
  void merge_assumptions(const std::vector<std::string>& other);

  RationalPolynomial num_;
  RationalPolynomial den_;
  std::vector<std::string> assumptions_;
};

/// Shorthand constructors used when transcribing catalog formulas.
RationalFunction var(Var v);
RationalFunction rational(long numerator, long denominator = 1);

}  // namespace kahler::algebra
