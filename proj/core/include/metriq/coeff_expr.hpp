#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "metriq/polynomial.hpp"

namespace metriq {

class CoeffExpr;
using Bindings = std::map<std::string, CoeffExpr>;

/// Element of the parametric coefficient field Q(i)(params), with fractional
/// exponents allowed on positive-declared parameters.
///
/// Canonical form: numerator and denominator are polynomials with
/// non-negative exponents, coprime, and the denominator is monic in the
/// lexicographic monomial order. Zero is 0/1. Two values are equal iff their
/// canonical forms are identical, so operator== is structural.
class CoeffExpr {
 public:
  CoeffExpr() : den_(GaussRational(1)) {}
  CoeffExpr(long v) : CoeffExpr(GaussRational(v)) {}  // NOLINT(google-explicit-constructor)
  CoeffExpr(GaussRational v) : num_(std::move(v)), den_(GaussRational(1)) {}  // NOLINT
  explicit CoeffExpr(Polynomial p) : num_(std::move(p)), den_(GaussRational(1)) {}

  /// num / den, brought to canonical form. Throws DivisionByZero.
  static CoeffExpr fraction(Polynomial num, Polynomial den);
  static CoeffExpr i() { return CoeffExpr(GaussRational::i()); }
  /// name^(units / kExponentUnits); negative exponents give a fraction.
  static CoeffExpr param(const std::string& name, int units = kExponentUnits);
  static CoeffExpr rational(long num, long den = 1) { return {GaussRational(mpq_class(num, den))}; }
  /// c * m where m may carry negative exponents.
  static CoeffExpr monomial(const GaussRational& c, const Monomial& m);

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Value when constant.
  std::optional<GaussRational> as_constant() const;
  /// Single scalar times a Laurent monomial.
  bool is_monomial() const noexcept { return num_.is_monomial() && den_.is_monomial(); }
  /// (scalar, Laurent monomial) when is_monomial().
  std::optional<std::pair<GaussRational, Monomial>> as_monomial() const;

  CoeffExpr& operator+=(const CoeffExpr& o);
  CoeffExpr& operator-=(const CoeffExpr& o);
  CoeffExpr& operator*=(const CoeffExpr& o);
  CoeffExpr& operator/=(const CoeffExpr& o);
  CoeffExpr operator-() const;
  friend CoeffExpr operator+(CoeffExpr a, const CoeffExpr& b) { return a += b; }
  friend CoeffExpr operator-(CoeffExpr a, const CoeffExpr& b) { return a -= b; }
  friend CoeffExpr operator*(CoeffExpr a, const CoeffExpr& b) { return a *= b; }
  friend CoeffExpr operator/(CoeffExpr a, const CoeffExpr& b) { return a /= b; }
  friend bool operator==(const CoeffExpr& a, const CoeffExpr& b) = default;

  CoeffExpr inverse() const;
  /// Integer power; negative powers invert (DivisionByZero on zero).
  CoeffExpr pow(long e) const;
  /// Rational power units/kExponentUnits; fractional powers go through sqrt().
  CoeffExpr pow_units(int units) const;

  /// Exact square root of a positive monomial. Throws UnsupportedRoot.
  CoeffExpr sqrt() const;

  /// Simultaneous substitution; unbound parameters are kept.
  /// Throws NonRootableSubstitution or DivisionByZero.
  CoeffExpr substitute(const Bindings& b) const;

  std::vector<std::string> variables() const;

  /// Text form accepted by the expression parser.
  std::string str() const;
  /// True when str() needs parentheses to be used as a product factor.
  bool needs_parens() const;

  /// Numerator split as scalar * monomial * product of squarefree factors.
  struct Factored {
    GaussRational scalar;
    Monomial monomial;
    std::vector<std::pair<Polynomial, int>> factors;
    std::string str() const;
  };
  Factored factor_numerator() const;

  /// Floating-point value with every parameter bound in `values`.
  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& values) const;

 private:
  CoeffExpr(Polynomial n, Polynomial d, int) : num_(std::move(n)), den_(std::move(d)) {}
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

/// Parses coefficient text (no generators allowed). Throws SyntaxError.
CoeffExpr parse_coeff(std::string_view text);
/// As parse_coeff, with integer values for symbolic exponents such as n in q^(n-1).
CoeffExpr parse_coeff(std::string_view text, const std::map<std::string, long>& exponent_env);

}  // namespace metriq
