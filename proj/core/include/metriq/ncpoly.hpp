#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metriq/coeff_expr.hpp"

namespace metriq {

enum class Generator : std::uint8_t { x = 0, y, z, p_x, p_y, p_z };
inline constexpr int kNumGenerators = 6;
inline constexpr std::array<Generator, kNumGenerators> kAllGenerators = {
    Generator::x, Generator::y, Generator::z, Generator::p_x, Generator::p_y, Generator::p_z};

std::string_view symbol(Generator g);
std::optional<Generator> generator_from_symbol(std::string_view s);
inline int index(Generator g) { return static_cast<int>(g); }
inline bool is_position(Generator g) { return index(g) < 3; }

/// Rank of each generator in the ordered alphabet. The default is the PBW
/// order x < y < z < p_x < p_y < p_z; momentum_first() puts p's before x's.
struct GeneratorOrder {
  std::array<int, kNumGenerators> rank{0, 1, 2, 3, 4, 5};

  static GeneratorOrder pbw() { return {}; }
  static GeneratorOrder momentum_first() { return {{3, 4, 5, 0, 1, 2}}; }
  int operator()(Generator g) const { return rank[index(g)]; }
  friend bool operator==(const GeneratorOrder&, const GeneratorOrder&) = default;
};

using Word = std::vector<Generator>;

/// Term order: total degree first, then at the first differing position the
/// word carrying the higher-ranked letter is larger. Sorted words are the
/// minima of their permutation class, and the order is compatible with
/// concatenation on both sides.
struct WordLess {
  GeneratorOrder order{};
  bool operator()(const Word& a, const Word& b) const;
};

bool is_ordered(const Word& w, const GeneratorOrder& order = {});
std::string word_str(const Word& w);

/// Element of the free associative algebra over the coefficient field.
/// Terms are kept in the default term order; zero coefficients are never stored.
class NCPoly {
 public:
  using TermMap = std::map<Word, CoeffExpr, WordLess>;

  NCPoly() = default;
  NCPoly(CoeffExpr c);  // NOLINT(google-explicit-constructor)
  NCPoly(long c) : NCPoly(CoeffExpr(c)) {}  // NOLINT(google-explicit-constructor)
  static NCPoly gen(Generator g);
  static NCPoly word(Word w, CoeffExpr c = CoeffExpr(1));

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Coefficient of w (zero when absent).
  CoeffExpr coeff(const Word& w) const;
  /// Largest word; requires nonzero.
  const Word& leading_word() const { return terms_.rbegin()->first; }
  /// Maximum word length; -1 for zero.
  int degree() const;
  /// Constant-coefficient view when the polynomial is a multiple of the unit word.
  std::optional<CoeffExpr> as_coeff() const;

  void add_term(const Word& w, const CoeffExpr& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly operator-() const;
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  NCPoly scaled(const CoeffExpr& c) const;
  NCPoly pow(unsigned k) const;

  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  NCPoly substitute(const Bindings& b) const;

  /// Text accepted by parse_nc; words print with runs compressed to powers.
  std::string str() const;

 private:
  TermMap terms_;
};

inline NCPoly nc_mul(const NCPoly& a, const NCPoly& b) { return a * b; }

/// Parses noncommutative expression text. Throws SyntaxError.
NCPoly parse_nc(std::string_view text);
NCPoly parse_nc(std::string_view text, const std::map<std::string, long>& exponent_env);

}  // namespace metriq
