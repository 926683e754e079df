#pragma once

#include <map>
#include <string>
#include <vector>

#include "metriq/coeff_expr.hpp"
#include "metriq/status.hpp"

namespace metriq {

/// symmetric: [n] = (q^n - q^-n)/(q - q^-1); basic: [n] = (q^n - 1)/(q - 1).
enum class QConvention { symmetric, basic };
std::string_view to_string(QConvention c);

inline CoeffExpr q_param() { return CoeffExpr::param("q"); }

/// q-integer [n]_q for n >= 0, as a Laurent polynomial in q (or a value when q is bound).
CoeffExpr qnum(int n, QConvention conv, const CoeffExpr& q = q_param());
/// [n]_q [n-1]_q ... [1]_q, with qfact(0) = 1.
CoeffExpr qfact(int n, QConvention conv, const CoeffExpr& q = q_param());

/// Polynomial in X and the Jackson derivative Dq, subject to Dq X = 1 + q X Dq.
/// Words are strings over {'X', 'D'}.
class QWeylPoly {
 public:
  using TermMap = std::map<std::string, CoeffExpr>;

  QWeylPoly() = default;
  QWeylPoly(CoeffExpr c);  // NOLINT(google-explicit-constructor)
  static QWeylPoly X() { return word("X"); }
  static QWeylPoly D() { return word("D"); }
  static QWeylPoly word(std::string w, CoeffExpr c = CoeffExpr(1));

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  CoeffExpr coeff(const std::string& w) const;
  /// Coefficient of X^a Dq^b.
  CoeffExpr coeff(int a, int b) const { return coeff(std::string(a, 'X') + std::string(b, 'D')); }

  void add_term(const std::string& w, const CoeffExpr& c);
  QWeylPoly& operator+=(const QWeylPoly& o);
  QWeylPoly& operator-=(const QWeylPoly& o);
  friend QWeylPoly operator+(QWeylPoly a, const QWeylPoly& b) { return a += b; }
  friend QWeylPoly operator-(QWeylPoly a, const QWeylPoly& b) { return a -= b; }
  friend QWeylPoly operator*(const QWeylPoly& a, const QWeylPoly& b);
  QWeylPoly scaled(const CoeffExpr& c) const;
  QWeylPoly pow(unsigned k) const;
  QWeylPoly substitute(const Bindings& b) const;
  friend bool operator==(const QWeylPoly&, const QWeylPoly&) = default;

  std::string str() const;

 private:
  TermMap terms_;
};

/// Rewrites with Dq X -> 1 + q X Dq until every word is X^a Dq^b.
QWeylPoly qweyl_normal_form(const QWeylPoly& p, const CoeffExpr& q = q_param());

/// Truncated power series c_0 + c_1 z + ... + c_N z^N.
struct QSeries {
  int order = 0;
  std::vector<CoeffExpr> c;

  QSeries operator*(const QSeries& o) const;
  std::string str(std::string_view var = "z") const;
};

/// e_q(a z) = sum a^n z^n / [n]_q! through order N. Throws QFactorialZero when
/// some [n]_q with n <= N vanishes.
QSeries qexp_truncated(const CoeffExpr& a, int N, QConvention conv, const CoeffExpr& q = q_param());

struct EigenResidual {
  /// diff[k] = coefficient of z^k in Dq e_q(a z) - a e_q(a z), k = 0..N-1.
  std::vector<CoeffExpr> diff;
  bool zero() const;
};

/// Applies the Jackson derivative termwise (Dq z^n = [n]_basic z^(n-1)) to the
/// truncated q-exponential and compares with a times the series.
EigenResidual qexp_eigen_check(const CoeffExpr& a, int N, QConvention conv, const CoeffExpr& q = q_param());

struct Check {
  std::string name;
  Status status = Status::fail;
  std::string detail;
};

struct OscillatorReport {
  std::vector<Check> checks;
  bool all_pass() const;
};

/// [n+1]_q - q [n]_q = q^-n in the symmetric convention for 0 <= n <= n_max,
/// and a a+ - q a+ a = q^-N, [N, a+] = a+, [N, a] = -a on the Fock module
/// truncated at n_max (a+ leaves the window from the top state, which is skipped).
OscillatorReport oscillator_identity(int n_max);

}  // namespace metriq
