#include "metriq/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <numeric>
#include <stdexcept>

#include "metriq/errors.hpp"

namespace metriq {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(std::string name, int units) {
  if (units == 0) return {};
  return Monomial({{std::move(name), units}});
}

int Monomial::exponent(std::string_view name) const {
  for (const auto& [n, e] : factors_) {
    if (n == name) return e;
  }
  return 0;
}

bool Monomial::has_negative() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second < 0; });
}

int Monomial::total_units() const {
  int t = 0;
  for (const auto& f : factors_) t += f.second;
  return t;
}

namespace {

template <class Combine>
std::vector<Monomial::Factor> merge(const std::vector<Monomial::Factor>& a,
                                    const std::vector<Monomial::Factor>& b, Combine combine) {
  std::vector<Monomial::Factor> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    int e;
    const std::string* name;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      name = &ia->first;
      e = combine(ia->second, 0);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      name = &ib->first;
      e = combine(0, ib->second);
      ++ib;
    } else {
      name = &ia->first;
      e = combine(ia->second, ib->second);
      ++ia;
      ++ib;
    }
    if (e != 0) out.emplace_back(*name, e);
  }
  return out;
}

}  // namespace

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.factors_.empty()) return *this;
  if (factors_.empty()) return o;
  return Monomial(merge(factors_, o.factors_, [](int x, int y) { return x + y; }));
}

Monomial Monomial::operator/(const Monomial& o) const {
  if (o.factors_.empty()) return *this;
  return Monomial(merge(factors_, o.factors_, [](int x, int y) { return x - y; }));
}

Monomial Monomial::pow(int k) const {
  if (k == 0) return {};
  std::vector<Factor> f = factors_;
  for (auto& x : f) x.second *= k;
  return Monomial(std::move(f));
}

bool Monomial::divides(const Monomial& o) const {
  auto ib = o.factors_.begin();
  for (const auto& [n, e] : factors_) {
    while (ib != o.factors_.end() && ib->first < n) {
      if (ib->second < 0) return false;
      ++ib;
    }
    int other = (ib != o.factors_.end() && ib->first == n) ? ib->second : 0;
    if (e > other) return false;
    if (ib != o.factors_.end() && ib->first == n) ++ib;
  }
  for (; ib != o.factors_.end(); ++ib) {
    if (ib->second < 0) return false;
  }
  return true;
}

Monomial Monomial::min(const Monomial& a, const Monomial& b) {
  return Monomial(merge(a.factors_, b.factors_, [](int x, int y) { return std::min(x, y); }));
}

Monomial Monomial::max(const Monomial& a, const Monomial& b) {
  return Monomial(merge(a.factors_, b.factors_, [](int x, int y) { return std::max(x, y); }));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      return ia->second > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (ia == a.factors_.end() || ib->first < ia->first) {
      return ib->second > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
  return std::strong_ordering::equal;
}

namespace {

std::string exponent_str(int units) {
  int g = std::gcd(std::abs(units), kExponentUnits);
  int num = units / g;
  int den = kExponentUnits / g;
  if (den == 1) return std::to_string(num);
  return "(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

}  // namespace

std::string Monomial::str() const {
  std::string out;
  for (const auto& [n, e] : factors_) {
    if (!out.empty()) out += "*";
    out += n;
    if (e != kExponentUnits) out += "^" + exponent_str(e);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Polynomial basics

Polynomial::Polynomial(GaussRational c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), std::move(c));
}

Polynomial::Polynomial(GaussRational c, Monomial m) {
  if (!c.is_zero()) terms_.emplace(std::move(m), std::move(c));
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Polynomial::is_one() const noexcept {
  return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second.is_one();
}

GaussRational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? GaussRational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  auto it = terms_.begin();
  Monomial m = it->first;
  for (++it; it != terms_.end() && !m.is_one(); ++it) m = Monomial::min(m, it->first);
  return m;
}

std::vector<std::string> Polynomial::variables() const {
  std::vector<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.push_back(f.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Polynomial::degree(const std::string& var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial Polynomial::scaled(const GaussRational& c) const {
  if (c.is_zero()) return {};
  if (c.is_one()) return *this;
  Polynomial out;
  for (const auto& [m, x] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, x * c);
  return out;
}

Polynomial Polynomial::shifted(const Monomial& s) const {
  if (s.is_one()) return *this;
  Polynomial out;
  for (const auto& [m, x] : terms_) out.terms_.emplace(m * s, x);
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result(GaussRational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty() || leading_coeff().is_one()) return *this;
  return scaled(GaussRational(1) / leading_coeff());
}

std::map<int, Polynomial> Polynomial::coefficients_in(const std::string& var) const {
  std::map<int, Polynomial> out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    out[e].add_term(m / Monomial::var(var, e), c);
  }
  return out;
}

Polynomial Polynomial::derivative_units(const std::string& var) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    if (e == 0) continue;
    out.add_term(m / Monomial::var(var, 1), c * GaussRational(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Polynomial();
  if (b.is_constant()) return a.scaled(GaussRational(1) / b.leading_coeff());
  if (b.is_monomial()) {
    const auto& [bm, bc] = b.leading();
    GaussRational inv = GaussRational(1) / bc;
    Polynomial out;
    for (const auto& [m, c] : a.terms_) {
      if (!bm.divides(m)) return std::nullopt;
      out.terms_.emplace(m / bm, c * inv);
    }
    return out;
  }
  const auto& [lm, lc] = b.leading();
  GaussRational inv = GaussRational(1) / lc;
  Polynomial r = a;
  Polynomial q;
  while (!r.is_zero()) {
    const Monomial rm = r.leading().first;
    if (!lm.divides(rm)) return std::nullopt;
    Monomial qm = rm / lm;
    GaussRational qc = r.leading_coeff() * inv;
    for (const auto& [m, c] : b.terms_) r.add_term(m * qm, -(c * qc));
    q.add_term(qm, qc);
  }
  return q;
}

namespace {

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = Polynomial::divide_exact(a, b);
  if (!q) throw std::logic_error("inexact polynomial division in gcd");
  return std::move(*q);
}

bool only_var(const Polynomial& p, const std::string& v) {
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) {
      if (f.first != v) return false;
    }
  }
  return true;
}

int univariate_degree(const Polynomial& p) {
  return p.is_zero() ? -1 : p.leading().first.total_units();
}

/// Euclid over the field Q(i) for polynomials in the single variable v.
Polynomial field_euclid(Polynomial a, Polynomial b, const std::string& v) {
  if (univariate_degree(a) < univariate_degree(b)) std::swap(a, b);
  while (!b.is_zero()) {
    const int db = univariate_degree(b);
    const GaussRational inv = GaussRational(1) / b.leading_coeff();
    Polynomial r = std::move(a);
    while (!r.is_zero() && univariate_degree(r) >= db) {
      Monomial shift = Monomial::var(v, univariate_degree(r) - db);
      GaussRational c = r.leading_coeff() * inv;
      r -= b.shifted(shift).scaled(c);
    }
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Polynomial content_in(const Polynomial& p, const std::string& v) {
  Polynomial g;
  for (const auto& [e, c] : p.coefficients_in(v)) {
    g = Polynomial::gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const std::string& v) {
  auto bc = b.coefficients_in(v);
  const int db = bc.rbegin()->first;
  const Polynomial& lcb = bc.rbegin()->second;
  Polynomial r = a;
  while (!r.is_zero()) {
    auto rc = r.coefficients_in(v);
    const int dr = rc.rbegin()->first;
    if (dr < db) break;
    const Polynomial& lcr = rc.rbegin()->second;
    r = r * lcb - (b * lcr).shifted(Monomial::var(v, dr - db));
  }
  return r;
}

Polynomial primitive_part(const Polynomial& p, const std::string& v) {
  Polynomial c = content_in(p, v);
  return exact(p, c);
}

/// gcd of polynomials primitive in v and both of positive degree in v.
Polynomial primitive_prs(Polynomial a, Polynomial b, const std::string& v) {
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (true) {
    Polynomial r = pseudo_remainder(a, b, v);
    if (r.is_zero()) return b;
    if (r.degree(v) == 0) return Polynomial(GaussRational(1));
    a = std::move(b);
    b = primitive_part(r, v).monic();
  }
}

/// gcd of the exponents of each variable across both polynomials.
std::map<std::string, int> deflation(const Polynomial& a, const Polynomial& b) {
  std::map<std::string, int> g;
  for (const Polynomial* p : {&a, &b}) {
    for (const auto& [m, c] : p->terms()) {
      for (const auto& [n, e] : m.factors()) g[n] = std::gcd(g[n], e);
    }
  }
  return g;
}

Polynomial rescale_exponents(const Polynomial& p, const std::map<std::string, int>& g, bool deflate) {
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Monomial nm;
    for (const auto& [n, e] : m.factors()) {
      int f = g.at(n);
      nm = nm * Monomial::var(n, deflate ? e / f : e * f);
    }
    out += Polynomial(c, nm);
  }
  return out;
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b);

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(GaussRational(1));
  if (a.is_monomial() || b.is_monomial()) {
    return Polynomial(GaussRational(1), Monomial::min(a.monomial_content(), b.monomial_content()));
  }
  if (a == b) return a.monic();
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial m = Monomial::min(ma, mb);
  Polynomial a1 = ma.is_one() ? a : exact(a, Polynomial(GaussRational(1), ma));
  Polynomial b1 = mb.is_one() ? b : exact(b, Polynomial(GaussRational(1), mb));
  return gcd_core(a1, b1).shifted(m);
}

namespace {

// Images modulo a prime p = 1 (mod 4), so i maps to a square root of -1.
// They only ever prove that a gcd has degree 0 in some variable; when the
// evaluation point is unlucky the caller falls back to the exact algorithm.
constexpr std::uint64_t kPrime = 2013265921;
constexpr std::uint64_t kSqrtMinusOne = 1728404513;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) { return a * b % kPrime; }

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a)) {
    if (e & 1) r = mul_mod(r, a);
  }
  return r;
}

std::optional<std::uint64_t> rational_mod(const mpq_class& x) {
  mpz_class den = x.get_den() % kPrime;
  if (den == 0) return std::nullopt;
  mpz_class num = x.get_num() % kPrime;
  if (num < 0) num += kPrime;
  return mul_mod(num.get_ui(), pow_mod(den.get_ui(), kPrime - 2));
}

std::optional<std::uint64_t> gauss_mod(const GaussRational& c) {
  auto re = rational_mod(c.re());
  auto im = rational_mod(c.im());
  if (!re || !im) return std::nullopt;
  return (*re + mul_mod(*im, kSqrtMinusOne)) % kPrime;
}

using ModPoly = std::vector<std::uint64_t>;  // dense, indexed by exponent units of the main variable

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::optional<ModPoly> image(const Polynomial& p, const std::string& v, const std::map<std::string, std::uint64_t>& at) {
  ModPoly out;
  for (const auto& [m, c] : p.terms()) {
    auto cm = gauss_mod(c);
    if (!cm) return std::nullopt;
    std::uint64_t val = *cm;
    int ev = 0;
    for (const auto& [n, e] : m.factors()) {
      if (n == v) {
        ev = e;
      } else {
        val = mul_mod(val, pow_mod(at.at(n), static_cast<std::uint64_t>(e)));
      }
    }
    if (out.size() <= static_cast<std::size_t>(ev)) out.resize(static_cast<std::size_t>(ev) + 1, 0);
    out[static_cast<std::size_t>(ev)] = (out[static_cast<std::size_t>(ev)] + val) % kPrime;
  }
  return out;
}

int mod_gcd_degree(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    std::uint64_t inv = pow_mod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      std::uint64_t f = mul_mod(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] = (a[shift + k] + kPrime - mul_mod(f, b[k])) % kPrime;
      trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// Degree in v of the gcd of the images of a and b at a random point, when
/// the point keeps both leading coefficients in v; this bounds deg_v gcd(a, b).
std::optional<int> image_gcd_degree(const Polynomial& a, const Polynomial& b, const std::string& v) {
  std::vector<std::string> vars = a.variables();
  for (const auto& n : b.variables()) vars.push_back(n);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::uint64_t> pick(2, kPrime - 1);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::map<std::string, std::uint64_t> at;
    for (const auto& n : vars) at.emplace(n, pick(rng));
    auto ia = image(a, v, at);
    auto ib = image(b, v, at);
    if (!ia || !ib) return std::nullopt;
    if (ia->size() != static_cast<std::size_t>(a.degree(v)) + 1 || ia->back() == 0) continue;
    if (ib->size() != static_cast<std::size_t>(b.degree(v)) + 1 || ib->back() == 0) continue;
    return mod_gcd_degree(std::move(*ia), std::move(*ib));
  }
  return std::nullopt;
}

Polynomial gcd_core(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(GaussRational(1));
  if (a.is_monomial() || b.is_monomial()) return Polynomial::gcd(a, b);

  auto defl = deflation(a, b);
  bool needs = std::any_of(defl.begin(), defl.end(), [](const auto& kv) { return kv.second > 1; });
  if (needs) {
    Polynomial g = Polynomial::gcd(rescale_exponents(a, defl, true), rescale_exponents(b, defl, true));
    return rescale_exponents(g, defl, false).monic();
  }

  auto va = a.variables();
  auto vb = b.variables();
  std::map<std::string, bool> coprime_in;
  bool coprime = true;
  for (const auto& n : va) {
    if (!std::binary_search(vb.begin(), vb.end(), n)) continue;
    auto d = image_gcd_degree(a, b, n);
    coprime_in[n] = d == 0;
    coprime = coprime && d == 0;
  }
  if (coprime) return Polynomial(GaussRational(1));

  const std::string v = std::min(va.front(), vb.front());
  const bool in_a = std::binary_search(va.begin(), va.end(), v);
  const bool in_b = std::binary_search(vb.begin(), vb.end(), v);
  if (!in_a) return Polynomial::gcd(a, content_in(b, v));
  if (!in_b) return Polynomial::gcd(content_in(a, v), b);

  if (only_var(a, v) && only_var(b, v)) return field_euclid(a, b, v);

  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial pa = exact(a, ca);
  Polynomial pb = exact(b, cb);
  Polynomial c = Polynomial::gcd(ca, cb);
  if (coprime_in[v]) return c;
  Polynomial g = primitive_prs(pa, pb, v);
  return (c * g).monic();
}

}  // namespace

// ---------------------------------------------------------------------------
// Squarefree splitting

namespace {

void split_into(const Polynomial& p, int mult, std::vector<std::pair<Polynomial, int>>& out) {
  if (p.is_constant()) return;
  Monomial mc = p.monomial_content();
  Polynomial rest = p;
  if (!mc.is_one()) {
    for (const auto& [n, e] : mc.factors()) out.emplace_back(Polynomial::var(n, e), mult);
    rest = exact(p, Polynomial(GaussRational(1), mc));
  }
  if (rest.is_constant()) return;
  const std::string v = rest.variables().front();
  Polynomial c = content_in(rest, v);
  if (!c.is_constant()) {
    split_into(c, mult, out);
    rest = exact(rest, c);
  }
  // Yun's algorithm in v; rest is primitive in v with positive degree.
  Polynomial f = rest.monic();
  Polynomial df = f.derivative_units(v);
  Polynomial b = Polynomial::gcd(f, df);
  Polynomial cc = exact(f, b);
  Polynomial d = exact(df, b) - cc.derivative_units(v);
  int i = 1;
  while (!cc.is_constant()) {
    Polynomial a = Polynomial::gcd(cc, d);
    if (!a.is_constant()) out.emplace_back(a.monic(), mult * i);
    cc = exact(cc, a);
    d = exact(d, a) - cc.derivative_units(v);
    ++i;
  }
}

}  // namespace

std::vector<std::pair<Polynomial, int>> Polynomial::squarefree() const {
  std::vector<std::pair<Polynomial, int>> out;
  split_into(*this, 1, out);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second < y.second;
    return x.first.str() < y.first.str();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Printing

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    GaussRational coeff = c;
    bool negative = false;
    if (!coeff.is_compound()) {
      if ((coeff.is_real() && sgn(coeff.re()) < 0) || (!coeff.is_real() && sgn(coeff.im()) < 0)) {
        negative = true;
        coeff = -coeff;
      }
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += coeff.str();
    } else if (coeff.is_one()) {
      out += m.str();
    } else {
      out += coeff.str() + "*" + m.str();
    }
  }
  return out;
}

}  // namespace metriq
