#include "metriq/ncpoly.hpp"

#include "metriq/expr_parser.hpp"

namespace metriq {

namespace {
constexpr std::array<std::string_view, kNumGenerators> kSymbols = {"x", "y", "z", "p_x", "p_y", "p_z"};
}  // namespace

std::string_view symbol(Generator g) { return kSymbols[index(g)]; }

std::optional<Generator> generator_from_symbol(std::string_view s) {
  for (int i = 0; i < kNumGenerators; ++i) {
    if (kSymbols[i] == s) return static_cast<Generator>(i);
  }
  return std::nullopt;
}

bool WordLess::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return order(a[i]) < order(b[i]);
  }
  return false;
}

bool is_ordered(const Word& w, const GeneratorOrder& order) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (order(w[i - 1]) > order(w[i])) return false;
  }
  return true;
}

std::string word_str(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += symbol(w[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

NCPoly::NCPoly(CoeffExpr c) {
  if (!c.is_zero()) terms_.emplace(Word{}, std::move(c));
}

NCPoly NCPoly::gen(Generator g) { return word({g}); }

NCPoly NCPoly::word(Word w, CoeffExpr c) {
  NCPoly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
  return p;
}

CoeffExpr NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? CoeffExpr() : it->second;
}

int NCPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.size());
}

std::optional<CoeffExpr> NCPoly::as_coeff() const {
  if (terms_.empty()) return CoeffExpr();
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

void NCPoly::add_term(const Word& w, const CoeffExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

NCPoly NCPoly::scaled(const CoeffExpr& c) const {
  if (c.is_zero()) return {};
  NCPoly out = *this;
  for (auto& [w, v] : out.terms_) v *= c;
  return out;
}

NCPoly NCPoly::pow(unsigned k) const {
  NCPoly out(1);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

NCPoly NCPoly::substitute(const Bindings& b) const {
  if (b.empty()) return *this;
  NCPoly out;
  for (const auto& [w, c] : terms_) out.add_term(w, c.substitute(b));
  return out;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [w, c] = *it;
    std::string t;
    if (w.empty()) {
      t = c.needs_parens() ? "(" + c.str() + ")" : c.str();
    } else if (c.is_one()) {
      t = word_str(w);
    } else if ((-c).is_one()) {
      t = "-" + word_str(w);
    } else {
      t = (c.needs_parens() ? "(" + c.str() + ")" : c.str()) + "*" + word_str(w);
    }
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

namespace {

struct NCTraits {
  using Value = NCPoly;
  static Value from_coeff(CoeffExpr c) { return NCPoly(std::move(c)); }
  static std::optional<CoeffExpr> as_coeff(const Value& v) { return v.as_coeff(); }
  static std::optional<Value> atom(std::string_view ident) {
    if (auto g = generator_from_symbol(ident)) return NCPoly::gen(*g);
    return std::nullopt;
  }
  static Value mul(const Value& a, const Value& b) { return a * b; }
  static Value pow(const Value& a, unsigned k) { return a.pow(k); }
};

}  // namespace

NCPoly parse_nc(std::string_view text) { return parse_nc(text, {}); }

NCPoly parse_nc(std::string_view text, const std::map<std::string, long>& exponent_env) {
  ExprParser<NCTraits> parser(text, exponent_env);
  return parser.parse();
}

}  // namespace metriq
