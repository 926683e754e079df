#include "metriq/coeff_expr.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "metriq/errors.hpp"
#include "metriq/expr_parser.hpp"
#include "metriq/params.hpp"

namespace metriq {

namespace {

Polynomial one() { return Polynomial(GaussRational(1)); }

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
  auto q = Polynomial::divide_exact(a, b);
  if (!q) throw std::logic_error("inexact division while normalizing a coefficient");
  return std::move(*q);
}

}  // namespace

CoeffExpr CoeffExpr::fraction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZero();
  CoeffExpr out(std::move(num), std::move(den), 0);
  out.normalize();
  return out;
}

CoeffExpr CoeffExpr::param(const std::string& name, int units) {
  if (units % kExponentUnits != 0 && !ParamRegistry::global().is_positive(name)) {
    throw UnsupportedRoot("fractional power of parameter '" + name + "' which is not declared positive");
  }
  return monomial(GaussRational(1), Monomial::var(name, units));
}

CoeffExpr CoeffExpr::monomial(const GaussRational& c, const Monomial& m) {
  if (c.is_zero()) return {};
  Monomial pos;
  Monomial neg;
  for (const auto& [n, e] : m.factors()) {
    if (e > 0) {
      pos = pos * Monomial::var(n, e);
    } else {
      neg = neg * Monomial::var(n, -e);
    }
  }
  return CoeffExpr(Polynomial(c, pos), Polynomial(GaussRational(1), neg), 0);
}

void CoeffExpr::normalize() {
  if (num_.is_zero()) {
    den_ = one();
    return;
  }
  if (!den_.is_one()) {
    Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  const GaussRational& lc = den_.leading_coeff();
  if (!lc.is_one()) {
    GaussRational inv = GaussRational(1) / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

std::optional<GaussRational> CoeffExpr::as_constant() const {
  if (!is_constant()) return std::nullopt;
  if (num_.is_zero()) return GaussRational(0);
  return num_.leading_coeff() / den_.leading_coeff();
}

std::optional<std::pair<GaussRational, Monomial>> CoeffExpr::as_monomial() const {
  if (is_zero()) return std::make_pair(GaussRational(0), Monomial());
  if (!is_monomial()) return std::nullopt;
  return std::make_pair(num_.leading_coeff() / den_.leading_coeff(),
                        num_.leading().first / den_.leading().first);
}

CoeffExpr& CoeffExpr::operator+=(const CoeffExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  if (den_.is_monomial() && o.den_.is_monomial()) {
    // Monic monomial denominators: combine over their lcm.
    const Monomial& d1 = den_.leading().first;
    const Monomial& d2 = o.den_.leading().first;
    Monomial l = Monomial::max(d1, d2);
    num_ = num_.shifted(l / d1) + o.num_.shifted(l / d2);
    den_ = Polynomial(GaussRational(1), l);
    normalize();
    return *this;
  }
  Polynomial g = Polynomial::gcd(den_, o.den_);
  Polynomial d1g = exact_div(den_, g);
  Polynomial d2g = exact_div(o.den_, g);
  num_ = num_ * d2g + o.num_ * d1g;
  den_ = den_ * d2g;
  normalize();
  return *this;
}

CoeffExpr& CoeffExpr::operator-=(const CoeffExpr& o) { return *this += -o; }

CoeffExpr CoeffExpr::operator-() const { return CoeffExpr(-num_, den_, 0); }

CoeffExpr& CoeffExpr::operator*=(const CoeffExpr& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = CoeffExpr();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  Polynomial g1 = Polynomial::gcd(num_, o.den_);
  Polynomial g2 = Polynomial::gcd(o.num_, den_);
  Polynomial n = (g1.is_one() ? num_ : exact_div(num_, g1)) * (g2.is_one() ? o.num_ : exact_div(o.num_, g2));
  Polynomial d = (g2.is_one() ? den_ : exact_div(den_, g2)) * (g1.is_one() ? o.den_ : exact_div(o.den_, g1));
  num_ = std::move(n);
  den_ = std::move(d);
  const GaussRational& lc = den_.leading_coeff();
  if (!lc.is_one()) {
    GaussRational inv = GaussRational(1) / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  return *this;
}

CoeffExpr& CoeffExpr::operator/=(const CoeffExpr& o) { return *this *= o.inverse(); }

CoeffExpr CoeffExpr::inverse() const {
  if (is_zero()) throw DivisionByZero();
  GaussRational inv = GaussRational(1) / num_.leading_coeff();
  return CoeffExpr(den_.scaled(inv), num_.scaled(inv), 0);
}

CoeffExpr CoeffExpr::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (e == 0) return CoeffExpr(1);
  if (den_.is_one()) return CoeffExpr(num_.pow(static_cast<unsigned>(e)));
  // Powers of coprime polynomials stay coprime.
  return CoeffExpr(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), 0);
}

CoeffExpr CoeffExpr::pow_units(int units) const {
  if (units % kExponentUnits == 0) return pow(units / kExponentUnits);
  if (units % (kExponentUnits / 2) == 0) return sqrt().pow(units / (kExponentUnits / 2));
  return sqrt().sqrt().pow(units);
}

CoeffExpr CoeffExpr::sqrt() const {
  if (is_zero()) return {};
  auto mono = as_monomial();
  if (!mono) throw UnsupportedRoot("square root of a non-monomial: " + str());
  const auto& [c, m] = *mono;
  if (!c.is_real() || sgn(c.re()) <= 0) {
    throw UnsupportedRoot("square root needs a positive rational scalar: " + str());
  }
  mpz_class n = c.re().get_num();
  mpz_class d = c.re().get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    throw UnsupportedRoot("scalar is not a rational square: " + str());
  }
  mpz_class rn = ::sqrt(n);
  mpz_class rd = ::sqrt(d);
  Monomial root;
  for (const auto& [name, e] : m.factors()) {
    if (e % 2 != 0) throw UnsupportedRoot("exponent of '" + name + "' is not halvable: " + str());
    int half = e / 2;
    if (half % kExponentUnits != 0 && !ParamRegistry::global().is_positive(name)) {
      throw UnsupportedRoot("'" + name + "' is not declared positive: " + str());
    }
    root = root * Monomial::var(name, half);
  }
  return monomial(GaussRational(mpq_class(rn, rd)), root);
}

CoeffExpr CoeffExpr::substitute(const Bindings& b) const {
  if (b.empty() || is_constant()) return *this;
  std::map<std::pair<std::string, int>, CoeffExpr> cache;
  auto power_of = [&](const std::string& name, int units) -> const CoeffExpr& {
    auto key = std::make_pair(name, units);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    try {
      return cache.emplace(key, b.at(name).pow_units(units)).first->second;
    } catch (const UnsupportedRoot& e) {
      throw NonRootableSubstitution("cannot resolve " + name + "^(" + std::to_string(units) + "/" +
                                    std::to_string(kExponentUnits) + "): " + e.what());
    }
  };
  auto sub_poly = [&](const Polynomial& p) {
    CoeffExpr acc;
    for (const auto& [m, c] : p.terms()) {
      Monomial kept;
      CoeffExpr term(c);
      for (const auto& [name, e] : m.factors()) {
        if (b.count(name)) {
          term *= power_of(name, e);
          if (term.is_zero()) break;
        } else {
          kept = kept * Monomial::var(name, e);
        }
      }
      if (term.is_zero()) continue;
      if (!kept.is_one()) term *= CoeffExpr(Polynomial(GaussRational(1), kept));
      acc += term;
    }
    return acc;
  };
  CoeffExpr n = sub_poly(num_);
  if (den_.is_one()) return n;
  CoeffExpr d = sub_poly(den_);
  if (d.is_zero()) throw DivisionByZero("substitution makes a denominator vanish: " + str());
  return n / d;
}

std::vector<std::string> CoeffExpr::variables() const {
  auto a = num_.variables();
  auto b = den_.variables();
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string CoeffExpr::str() const {
  if (den_.is_one()) return num_.str();
  if (den_.is_monomial()) {
    // Laurent form: shift every numerator term by the inverse denominator.
    return num_.shifted(Monomial().operator/(den_.leading().first)).str();
  }
  std::string n = num_.str();
  std::string d = den_.str();
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

bool CoeffExpr::needs_parens() const {
  return num_.size() > 1 || !den_.is_monomial();
}

CoeffExpr::Factored CoeffExpr::factor_numerator() const {
  Factored f;
  if (num_.is_zero()) {
    f.scalar = GaussRational(0);
    return f;
  }
  f.scalar = num_.leading_coeff();
  Polynomial p = num_.monic();
  f.monomial = p.monomial_content();
  if (!f.monomial.is_one()) p = exact_div(p, Polynomial(GaussRational(1), f.monomial));
  if (!p.is_constant()) f.factors = p.squarefree();
  return f;
}

std::string CoeffExpr::Factored::str() const {
  std::vector<std::string> parts;
  if (!monomial.is_one()) parts.push_back(monomial.str());
  for (const auto& [p, k] : factors) parts.push_back("(" + p.str() + ")" + (k != 1 ? "^" + std::to_string(k) : ""));
  if (parts.empty()) return scalar.str();
  std::string out;
  if (scalar == GaussRational(-1)) {
    out = "-";
  } else if (!scalar.is_one()) {
    out = scalar.str() + "*";
  }
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
  return out;
}

std::complex<double> CoeffExpr::evaluate(const std::map<std::string, std::complex<double>>& values) const {
  auto eval = [&](const Polynomial& p) {
    std::complex<double> acc = 0;
    for (const auto& [m, c] : p.terms()) {
      std::complex<double> t = c.to_complex();
      for (const auto& [n, e] : m.factors()) {
        auto it = values.find(n);
        if (it == values.end()) throw Error("no numeric value for parameter '" + n + "'");
        if (e % kExponentUnits == 0) {
          t *= std::pow(it->second, e / kExponentUnits);
        } else {
          t *= std::pow(it->second, static_cast<double>(e) / kExponentUnits);
        }
      }
      acc += t;
    }
    return acc;
  };
  return eval(num_) / eval(den_);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct CoeffTraits {
  using Value = CoeffExpr;
  static Value from_coeff(CoeffExpr c) { return c; }
  static std::optional<CoeffExpr> as_coeff(const Value& v) { return v; }
  static std::optional<Value> atom(std::string_view ident) {
    static constexpr std::string_view kGenerators[] = {"x", "y", "z", "p_x", "p_y", "p_z"};
    for (auto g : kGenerators) {
      if (g == ident) throw Error("generator '" + std::string(ident) + "' is not allowed in a coefficient");
    }
    return std::nullopt;
  }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value pow(const Value& a, unsigned k) { return a.pow(k); }
};

}  // namespace

CoeffExpr parse_coeff(std::string_view text) { return parse_coeff(text, {}); }

CoeffExpr parse_coeff(std::string_view text, const std::map<std::string, long>& exponent_env) {
  ExprParser<CoeffTraits> parser(text, exponent_env);
  return parser.parse();
}

}  // namespace metriq
