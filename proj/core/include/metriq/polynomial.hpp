#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metriq/gauss_rational.hpp"

namespace metriq {

/// Exponents are stored as integers in units of 1/kExponentUnits, so q^(1/2)
/// has stored exponent 2 and q^(1/4) has stored exponent 1.
inline constexpr int kExponentUnits = 4;

/// Product of named parameters raised to (possibly negative) exponents.
/// Factors are sorted by name and never carry a zero exponent.
class Monomial {
 public:
  using Factor = std::pair<std::string, int>;

  Monomial() = default;
  static Monomial var(std::string name, int units = kExponentUnits);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  int exponent(std::string_view name) const;
  bool has_negative() const;
  int total_units() const;

  Monomial operator*(const Monomial& o) const;
  /// Exponent-wise difference; may produce negative exponents.
  Monomial operator/(const Monomial& o) const;
  Monomial pow(int k) const;
  /// True when every exponent of *this is <= the matching exponent of o.
  bool divides(const Monomial& o) const;

  /// Exponent-wise minimum / maximum.
  static Monomial min(const Monomial& a, const Monomial& b);
  static Monomial max(const Monomial& a, const Monomial& b);

  /// Lexicographic order on parameter names: the alphabetically first
  /// parameter is the most significant, then larger exponent is larger.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string str() const;

 private:
  explicit Monomial(std::vector<Factor> f) : factors_(std::move(f)) {}
  std::vector<Factor> factors_;
};

/// Sparse polynomial over Q(i) with non-negative exponents (in 1/4 units).
class Polynomial {
 public:
  using TermMap = std::map<Monomial, GaussRational>;

  Polynomial() = default;
  Polynomial(GaussRational c);  // NOLINT(google-explicit-constructor)
  Polynomial(GaussRational c, Monomial m);

  static Polynomial var(const std::string& name, int units = kExponentUnits) {
    return Polynomial(GaussRational(1), Monomial::var(name, units));
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Largest term in the monomial order. Requires nonzero.
  const std::pair<const Monomial, GaussRational>& leading() const { return *terms_.rbegin(); }
  const GaussRational& leading_coeff() const { return terms_.rbegin()->second; }
  GaussRational constant_term() const;

  /// Exponent-wise minimum over all terms.
  Monomial monomial_content() const;
  std::vector<std::string> variables() const;
  int degree(const std::string& var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const GaussRational& c) const;
  Polynomial shifted(const Monomial& m) const;
  Polynomial pow(unsigned k) const;

  /// Leading coefficient scaled to 1. Zero stays zero.
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Exact quotient a / b, or nullopt when b does not divide a.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);
  /// Monic greatest common divisor. gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  /// Derivative with respect to var^(1/kExponentUnits).
  Polynomial derivative_units(const std::string& var) const;
  /// Coefficients as a polynomial in var (keys are unit exponents of var).
  std::map<int, Polynomial> coefficients_in(const std::string& var) const;

  /// Squarefree decomposition of a monic polynomial with trivial monomial
  /// content: returns (factor, multiplicity) pairs whose product is *this.
  std::vector<std::pair<Polynomial, int>> squarefree() const;

  std::string str() const;

 private:
  void add_term(const Monomial& m, const GaussRational& c);
  TermMap terms_;
};

}  // namespace metriq
