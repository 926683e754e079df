#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "metriq/coeff_expr.hpp"
#include "metriq/ncpoly.hpp"

namespace metriq::testing {

/// Seeded random source for the property suites.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  /// Gaussian rational with small numerator and denominator.
  CoeffExpr scalar(bool allow_zero = true);
  /// Laurent monomial times a scalar over q, hbar, g11, g22 (q may carry half powers).
  CoeffExpr monomial();
  /// Sums of monomials, sometimes divided by a small sum.
  CoeffExpr coeff();
  /// Nonzero variant of coeff().
  CoeffExpr nonzero_coeff();

  Word word(int max_len, const std::vector<Generator>& alphabet);
  Word word(int max_len) { return word(max_len, all_); }
  NCPoly ncpoly(int max_terms, int max_len);
  NCPoly ncpoly_scalar(int max_terms, int max_len);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<Generator> all_{kAllGenerators.begin(), kAllGenerators.end()};
};

}  // namespace metriq::testing
