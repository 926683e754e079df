#pragma once

#include <gmpxx.h>

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metriq/coeff_expr.hpp"
#include "metriq/errors.hpp"

namespace metriq {

/// Recursive-descent parser shared by every textual form in the library:
///
///   expr    := ['+' | '-'] term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ['^' exponent]
///   primary := integer | identifier | '(' expr ')'
///   exponent:= ['-'] (integer | identifier | '(' linear ')')
///
/// `linear` is a rational affine expression in exponent variables taken from
/// the exponent environment. Identifier "i" is the imaginary unit.
///
/// Traits supplies the value type and how identifiers map to values:
///   Value                                    with +, binary -, unary -
///   static Value from_coeff(CoeffExpr)
///   static std::optional<CoeffExpr> as_coeff(const Value&)
///   static std::optional<Value> atom(std::string_view)  // nullopt: parameter
///   static Value mul(const Value&, const Value&)
///   static Value pow(const Value&, unsigned)
template <class Traits>
class ExprParser {
 public:
  using Value = typename Traits::Value;

  ExprParser(std::string_view text, const std::map<std::string, long>& env) : text_(text), env_(env) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input", {"+", "-", "*", "/", "^", "end of input"});
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
    throw SyntaxError(msg, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string_view identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Value expr() {
    Value acc;
    if (accept('-')) {
      acc = -term();
    } else {
      accept('+');
      acc = term();
    }
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Value term() {
    Value acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = Traits::mul(acc, unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = unary();
        auto c = Traits::as_coeff(d);
        if (!c) {
          pos_ = at;
          fail("divisor must be a coefficient", {});
        }
        if (c->is_zero()) {
          pos_ = at;
          throw DivisionByZero("division by zero at byte " + std::to_string(at));
        }
        acc = Traits::mul(acc, Traits::from_coeff(c->inverse()));
      } else {
        return acc;
      }
    }
  }

  Value unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    mpq_class e = exponent();
    if (auto c = Traits::as_coeff(base)) {
      mpq_class units = e * kExponentUnits;
      units.canonicalize();
      if (units.get_den() != 1 || !units.get_num().fits_sint_p()) {
        pos_ = at;
        fail("exponent must be a multiple of 1/" + std::to_string(kExponentUnits), {});
      }
      return Traits::from_coeff(c->pow_units(static_cast<int>(units.get_num().get_si())));
    }
    if (e.get_den() != 1 || sgn(e) < 0 || !e.get_num().fits_uint_p()) {
      pos_ = at;
      fail("non-commuting factor needs a non-negative integer exponent", {});
    }
    return Traits::pow(base, static_cast<unsigned>(e.get_num().get_ui()));
  }

  Value primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("unbalanced parenthesis", {")"});
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Traits::from_coeff(CoeffExpr(GaussRational(mpq_class(integer()))));
    }
    if (ident_start(c)) {
      std::size_t at = pos_;
      std::string name(identifier());
      if (name == "i") return Traits::from_coeff(CoeffExpr::i());
      if (auto v = Traits::atom(name)) return *v;
      if (env_.count(name)) {
        pos_ = at;
        fail("exponent variable '" + name + "' used outside an exponent", {});
      }
      return Traits::from_coeff(CoeffExpr::param(name));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected character", {"integer", "identifier", "("});
  }

  mpq_class exponent() {
    bool neg = accept('-');
    mpq_class v;
    char c = peek();
    if (c == '(') {
      ++pos_;
      v = linear();
      if (!accept(')')) fail("unbalanced parenthesis in exponent", {")"});
    } else {
      v = linear_atom();
    }
    return neg ? mpq_class(-v) : v;
  }

  mpq_class linear() {
    mpq_class acc;
    if (accept('-')) {
      acc = -linear_term();
    } else {
      accept('+');
      acc = linear_term();
    }
    for (;;) {
      if (accept('+')) {
        acc += linear_term();
      } else if (accept('-')) {
        acc -= linear_term();
      } else {
        return acc;
      }
    }
  }

  mpq_class linear_term() {
    mpq_class acc = linear_unary();
    for (;;) {
      if (accept('*')) {
        acc *= linear_unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        mpq_class d = linear_unary();
        if (sgn(d) == 0) {
          pos_ = at;
          throw DivisionByZero("division by zero in exponent at byte " + std::to_string(at));
        }
        acc /= d;
      } else {
        acc.canonicalize();
        return acc;
      }
    }
  }

  mpq_class linear_unary() {
    if (accept('-')) return -linear_unary();
    if (accept('(')) {
      mpq_class v = linear();
      if (!accept(')')) fail("unbalanced parenthesis in exponent", {")"});
      return v;
    }
    return linear_atom();
  }

  mpq_class linear_atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return mpq_class(integer());
    if (ident_start(c)) {
      std::size_t at = pos_;
      std::string name(identifier());
      auto it = env_.find(name);
      if (it == env_.end()) {
        pos_ = at;
        fail("unbound exponent variable '" + name + "'", {});
      }
      return mpq_class(it->second);
    }
    fail("bad exponent", {"integer", "identifier", "("});
  }

  std::string_view text_;
  const std::map<std::string, long>& env_;
  std::size_t pos_ = 0;
};

}  // namespace metriq
