#include "generators.hpp"

namespace metriq::testing {

CoeffExpr Gen::scalar(bool allow_zero) {
  for (;;) {
    long re = uniform(-4, 4), im = coin(0.3) ? uniform(-3, 3) : 0;
    long den = uniform(1, 4);
    GaussRational v(mpq_class(re, den), mpq_class(im, den));
    if (allow_zero || !v.is_zero()) return CoeffExpr(v);
  }
}

CoeffExpr Gen::monomial() {
  CoeffExpr out = scalar(false);
  if (coin(0.7)) out *= CoeffExpr::param("q").pow_units(2 * uniform(-4, 4));
  if (coin(0.3)) out *= CoeffExpr::param("hbar").pow(uniform(-1, 2));
  if (coin(0.3)) out *= CoeffExpr::param("g11").pow(uniform(-1, 2));
  if (coin(0.2)) out *= CoeffExpr::param("g22").pow(uniform(1, 2));
  return out;
}

CoeffExpr Gen::coeff() {
  CoeffExpr out;
  int terms = uniform(1, 3);
  for (int i = 0; i < terms; ++i) out += monomial();
  if (coin(0.2)) {
    CoeffExpr den = monomial() + monomial();
    if (!den.is_zero()) out /= den;
  }
  return out;
}

CoeffExpr Gen::nonzero_coeff() {
  for (;;) {
    CoeffExpr c = coeff();
    if (!c.is_zero()) return c;
  }
}

Word Gen::word(int max_len, const std::vector<Generator>& alphabet) {
  Word w;
  int len = uniform(0, max_len);
  for (int i = 0; i < len; ++i) w.push_back(pick(alphabet));
  return w;
}

NCPoly Gen::ncpoly(int max_terms, int max_len) {
  NCPoly p;
  int terms = uniform(0, max_terms);
  for (int i = 0; i < terms; ++i) p.add_term(word(max_len), coeff());
  return p;
}

NCPoly Gen::ncpoly_scalar(int max_terms, int max_len) {
  NCPoly p;
  int terms = uniform(0, max_terms);
  for (int i = 0; i < terms; ++i) p.add_term(word(max_len), scalar(false));
  return p;
}

}  // namespace metriq::testing
