#include "metriq/diffop.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "metriq/errors.hpp"
#include "metriq/expr_parser.hpp"

namespace metriq {

namespace {
constexpr const char* kDerivName[8] = {"d_t", "d_x", "d_y", "d_z", "dq_t", "dq_x", "dq_y", "dq_z"};
constexpr const char* kGammaName[4] = {"gamma0", "gammax", "gammay", "gammaz"};

std::string join_term(std::string out, const std::string& t) {
  if (out.empty()) return t;
  if (t[0] == '-') return out + " - " + t.substr(1);
  return out + " + " + t;
}

std::string coeff_factor(const CoeffExpr& c) { return c.needs_parens() ? "(" + c.str() + ")" : c.str(); }

// "c*rest" with unit coefficients folded into the sign.
std::string scaled_term(const CoeffExpr& c, const std::string& rest) {
  if (rest.empty()) return coeff_factor(c);
  if (c.is_one()) return rest;
  if ((-c).is_one()) return "-" + rest;
  return coeff_factor(c) + "*" + rest;
}

}  // namespace

int DerivMono::degree() const {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

DerivMono DerivMono::operator*(const DerivMono& o) const {
  DerivMono m;
  for (int i = 0; i < 8; ++i) m.e[i] = static_cast<std::uint8_t>(e[i] + o.e[i]);
  return m;
}

std::string DerivMono::str() const {
  std::string out;
  for (int i = 0; i < 8; ++i) {
    if (!e[i]) continue;
    if (!out.empty()) out += "*";
    out += kDerivName[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

MatrixDiffOp op_mul(const MatrixDiffOp& a, const MatrixDiffOp& b) {
  return MatrixDiffOp::product(a, b, [](const GMatrix& x, const GMatrix& y) { return x * y; });
}

CliffDiffOp op_mul(const CliffDiffOp& a, const CliffDiffOp& b, const Cl03Signature& sig) {
  return CliffDiffOp::product(a, b, [&sig](const Cl03Element& x, const Cl03Element& y) { return cl03_mul(x, y, sig); });
}

namespace {

// Coefficients of c on the 16 products gamma^a1 gamma^a2 ... (a1 < a2 < ...),
// indexed by subset mask; tr(G_A G_B) vanishes unless A = B.
std::array<CoeffExpr, 16> gamma_components(const GMatrix& c, const GammaSet& gammas) {
  std::array<CoeffExpr, 16> out;
  for (int mask = 0; mask < 16; ++mask) {
    GMatrix prod = GMatrix::identity();
    for (int mu = 0; mu < 4; ++mu) {
      if (mask & (1 << mu)) prod = prod * gammas[mu];
    }
    CoeffExpr square = *(prod * prod).scalar();
    out[mask] = (prod * c).trace() / (square * CoeffExpr(4));
  }
  return out;
}

std::string gamma_product_name(int mask) {
  std::string out;
  for (int mu = 0; mu < 4; ++mu) {
    if (!(mask & (1 << mu))) continue;
    out += (out.empty() ? "" : "*") + std::string(kGammaName[mu]);
  }
  return out;
}

}  // namespace

std::string str(const MatrixDiffOp& op, GammaBasis basis) {
  if (op.is_zero()) return "0";
  const GammaSet gammas = gamma_set(basis);
  std::string out;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    const std::string mono = m.str();
    auto parts = gamma_components(c, gammas);
    int nonzero = 0, only = 0;
    for (int mask = 0; mask < 16; ++mask) {
      if (!parts[mask].is_zero()) {
        ++nonzero;
        only = mask;
      }
    }
    std::string t;
    if (nonzero == 1) {
      std::string rest = gamma_product_name(only);
      if (!mono.empty()) rest += (rest.empty() ? "" : "*") + mono;
      t = scaled_term(parts[only], rest);
    } else {
      std::string sum;
      for (int mask = 0; mask < 16; ++mask) {
        if (!parts[mask].is_zero()) sum = join_term(sum, scaled_term(parts[mask], gamma_product_name(mask)));
      }
      t = "(" + sum + ")" + (mono.empty() ? "" : "*" + mono);
    }
    out = join_term(out, t);
  }
  return out;
}

std::string str(const CliffDiffOp& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono = m.str();
    std::string t;
    if (const CoeffExpr s = c.component(Cl03Element::e0); c == Cl03Element(s)) {
      t = scaled_term(s, mono);
    } else {
      std::string cs = c.str();
      bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
      t = mono.empty() ? cs : (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
    out = join_term(out, t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct OperatorTraits {
  using Value = MatrixDiffOp;
  static thread_local GammaBasis basis;

  static Value from_coeff(CoeffExpr c) { return MatrixDiffOp(GMatrix::identity().scaled(c)); }
  static std::optional<CoeffExpr> as_coeff(const Value& v) {
    if (v.is_zero()) return CoeffExpr();
    if (v.terms().size() != 1 || v.terms().begin()->first.degree() != 0) return std::nullopt;
    return v.terms().begin()->second.scalar();
  }
  static std::optional<Value> atom(std::string_view ident) {
    for (int i = 0; i < 8; ++i) {
      if (ident == kDerivName[i]) return MatrixDiffOp::term(DerivMono::of(static_cast<Deriv>(i)), GMatrix::identity());
    }
    for (int mu = 0; mu < 4; ++mu) {
      if (ident == kGammaName[mu]) return MatrixDiffOp(gamma_set(basis)[mu]);
    }
    return std::nullopt;
  }
  static Value mul(const Value& a, const Value& b) { return op_mul(a, b); }
  static Value pow(const Value& a, unsigned k) {
    Value out(GMatrix::identity());
    for (unsigned i = 0; i < k; ++i) out = op_mul(out, a);
    return out;
  }
};

thread_local GammaBasis OperatorTraits::basis = GammaBasis::dirac;

}  // namespace

MatrixDiffOp parse_operator(std::string_view text, const std::map<std::string, long>& exponent_env,
                            GammaBasis basis) {
  OperatorTraits::basis = basis;
  ExprParser<OperatorTraits> parser(text, exponent_env);
  return parser.parse();
}

// ---------------------------------------------------------------------------
// Operators from a metric

namespace {

struct AxisTerm {
  int mu;
  int sign;
  CoeffExpr magnitude;
};

std::vector<AxisTerm> axis_terms(const MetricSpec& g, const OperatorOptions& opt) {
  std::vector<AxisTerm> out;
  for (int mu = 0; mu < 4; ++mu) {
    auto ax = g.axis(mu);
    const std::string name = component_name(mu, mu);
    if (!ax) {
      if (opt.allow_any_signature) throw UnsupportedRoot("|" + name + "| is not determined for " + g.g(mu, mu).str());
      throw NonLorentzianSignature("sign of " + name + " = " + g.g(mu, mu).str() + " is not determined");
    }
    if (ax->sign == 0) continue;
    if (!opt.allow_any_signature) {
      if (mu == 0 && ax->sign < 0) throw NonLorentzianSignature(name + " = " + g.g(mu, mu).str() + " is negative");
      if (mu > 0 && ax->sign > 0) throw NonLorentzianSignature(name + " = " + g.g(mu, mu).str() + " is positive");
    }
    out.push_back({mu, ax->sign, ax->magnitude});
  }
  return out;
}

Deriv deriv_for(int mu, bool q) { return static_cast<Deriv>(mu + (q ? 4 : 0)); }

}  // namespace

MatrixDiffOp build_dalembertian(const MetricSpec& g, const OperatorOptions& opt) {
  MatrixDiffOp box;
  for (const auto& a : axis_terms(g, opt)) {
    CoeffExpr c = a.mu == 0 ? a.magnitude : -a.magnitude;
    box.add_term(DerivMono::of(deriv_for(a.mu, opt.q_derivatives), 2), GMatrix::identity().scaled(c));
  }
  return box;
}

MatrixDiffOp build_dirac(const MetricSpec& g, const OperatorOptions& opt) {
  const GammaSet gammas = gamma_set(opt.basis);
  MatrixDiffOp d;
  for (const auto& a : axis_terms(g, opt)) {
    CoeffExpr root = a.magnitude.sqrt();
    d.add_term(DerivMono::of(deriv_for(a.mu, opt.q_derivatives)), gammas[a.mu].scaled(a.mu == 0 ? root : -root));
  }
  return d;
}

bool FactorizationReport::mixed_vanish() const {
  return std::all_of(mixed.begin(), mixed.end(), [](const MixedTerm& m) { return m.coeff.is_zero(); });
}

FactorizationReport verify_factorization(const MetricSpec& g, const OperatorOptions& opt) {
  FactorizationReport rep;
  rep.dirac = build_dirac(g, opt);
  rep.dalembertian = build_dalembertian(g, opt);
  rep.square = op_mul(rep.dirac, rep.dirac);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      DerivMono m = DerivMono::of(deriv_for(mu, opt.q_derivatives)) * DerivMono::of(deriv_for(nu, opt.q_derivatives));
      rep.mixed.push_back({mu, nu, rep.square.coeff(m)});
    }
  }
  rep.status = rep.square == rep.dalembertian ? Status::pass : Status::fail;
  if (rep.status == Status::fail) rep.notes.push_back("D^2 - box = " + str(rep.square - rep.dalembertian, opt.basis));
  return rep;
}

CliffDiffOp build_quadratic_qdirac() {
  CliffDiffOp d;
  d.add_term(DerivMono::of(Deriv::qx), Cl03Element::basis(Cl03Element::ex));
  d.add_term(DerivMono::of(Deriv::qy), Cl03Element::basis(Cl03Element::ey));
  d.add_term(DerivMono::of(Deriv::qz), Cl03Element::basis(Cl03Element::ez));
  return d;
}

QuadraticFactorizationReport verify_quadratic_factorization(const Cl03Signature& sig) {
  QuadraticFactorizationReport rep;
  CliffDiffOp d = build_quadratic_qdirac();
  rep.square = op_mul(d, d, sig);
  const Cl03Element minus_e0 = Cl03Element::basis(Cl03Element::e0, CoeffExpr(-1));
  for (Deriv v : {Deriv::qx, Deriv::qy, Deriv::qz}) rep.expected.add_term(DerivMono::of(v, 2), minus_e0);
  const std::pair<Deriv, Deriv> pairs[] = {{Deriv::qx, Deriv::qy}, {Deriv::qx, Deriv::qz}, {Deriv::qy, Deriv::qz}};
  for (auto [a, b] : pairs) {
    DerivMono m = DerivMono::of(a) * DerivMono::of(b);
    rep.mixed.emplace_back(m.str(), rep.square.coeff(m));
  }
  rep.status = rep.square == rep.expected ? Status::pass : Status::fail;
  return rep;
}

BracketReport qweyl_bracket_report() {
  BracketReport rep;
  const QWeylPoly X = QWeylPoly::X();
  const QWeylPoly D = QWeylPoly::D();
  const CoeffExpr q = q_param();
  rep.commutator = qweyl_normal_form(D * X - X * D);
  rep.q_commutator = qweyl_normal_form(D * X - (X * D).scaled(q));
  const Bindings classical{{"q", CoeffExpr(1)}};
  rep.commutator_classical = rep.commutator.substitute(classical);
  rep.q_commutator_classical = rep.q_commutator.substitute(classical);
  // dq_y and dq_z commute with x, so they only enter the q-commutator.
  rep.full_commutator = "[D^q, x] = e_x*(" + rep.commutator.str() + ")";
  rep.full_q_commutator = "D^q*x - q*x*D^q = e_x*(" + rep.q_commutator.str() + ") + (1 - q)*x*(e_y*dq_y + e_z*dq_z)";
  rep.notes.push_back("the computed brackets carry e_x without a factor -i; the value -i*gamma^x is not asserted");
  return rep;
}

// ---------------------------------------------------------------------------
// Dispersion

namespace {

// Nonzero kernel vector of a constant matrix by exact elimination.
std::optional<std::array<CoeffExpr, 4>> kernel_vector(const GMatrix& m) {
  std::array<std::array<CoeffExpr, 4>, 4> a;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a[r][c] = m(r, c);
  }
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  int row = 0;
  std::vector<bool> is_pivot(4, false);
  for (int col = 0; col < 4 && row < 4; ++col) {
    int p = row;
    while (p < 4 && a[p][col].is_zero()) ++p;
    if (p == 4) continue;
    std::swap(a[p], a[row]);
    CoeffExpr inv = a[row][col].inverse();
    for (int c = 0; c < 4; ++c) a[row][c] *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      CoeffExpr f = a[r][col];
      for (int c = 0; c < 4; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col[row] = col;
    is_pivot[col] = true;
    ++row;
  }
  int free_col = -1;
  for (int c = 0; c < 4; ++c) {
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  }
  if (free_col < 0) return std::nullopt;
  std::array<CoeffExpr, 4> u;
  u[free_col] = CoeffExpr(1);
  for (int r = 0; r < row; ++r) u[pivot_col[r]] = -a[r][free_col];
  return u;
}

std::complex<double> numeric(const CoeffExpr& c) {
  auto v = c.as_constant();
  if (!v) throw Error("expected a numeric value, got " + c.str());
  return v->to_complex();
}

}  // namespace

DispersionResult dispersion_1p1(const CoeffExpr& q, const CoeffExpr& k, int N, QConvention conv) {
  if (N < 4) throw std::invalid_argument("dispersion needs order N >= 4");
  DispersionResult res;
  const GammaSet gm = gamma_set(GammaBasis::dirac);
  const CoeffExpr i = CoeffExpr::i();
  const CoeffExpr omega = CoeffExpr::param("omega");

  // psi = e_q(i w t) e_q(-i k x) u gives (i w gamma0 + i k q gammax) u = 0.
  auto kernel_matrix = [&](const CoeffExpr& w) { return gm[0].scaled(i * w) + gm[1].scaled(i * k * q); };
  res.determinant = kernel_matrix(omega).determinant();

  const Polynomial& num = res.determinant.num();
  const int square_units = 2 * kExponentUnits;  // omega^2
  bool found = false;
  Monomial content = num.monomial_content();
  Polynomial rest = num.monic();
  if (!content.is_one()) rest = *Polynomial::divide_exact(rest, Polynomial(GaussRational(1), content));
  if (!rest.is_constant()) {
    for (const auto& [f, mult] : rest.squarefree()) {
      auto parts = f.coefficients_in("omega");
      if (parts.size() == 2 && parts.count(0) && parts.count(square_units)) {
        res.omega_squared = -CoeffExpr::fraction(parts.at(0), parts.at(square_units));
        res.multiplicity = mult;
        found = true;
        break;
      }
    }
  }
  if (!found) {
    int units = content.exponent("omega");
    if (units == 0) throw Error("kernel condition has no root in omega^2: " + res.determinant.str());
    res.omega_squared = CoeffExpr();
    res.multiplicity = units / square_units;
    res.notes.push_back("determinant is a pure power of omega");
  }

  if (!q.is_constant() || !k.is_constant()) {
    res.notes.push_back("residual skipped: q and k must be numeric");
    return res;
  }

  // omega = +q k, exact kernel vector, then the truncated series in floating point.
  const CoeffExpr w = q * k;
  auto u = kernel_vector(kernel_matrix(w));
  if (!u) throw Error("kernel condition has no nonzero solution at omega = " + w.str());
  QSeries A = qexp_truncated(i * w, N, conv, q);
  QSeries B = qexp_truncated(-i * k, N, conv, q);
  std::array<std::complex<double>, 4> g0u{}, gxu{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      g0u[r] += numeric(gm[0](r, c)) * numeric((*u)[c]);
      gxu[r] += numeric(gm[1](r, c)) * numeric((*u)[c]);
    }
  }
  const std::complex<double> qd = numeric(q);
  // Coefficient of t^m x^n in D psi for m, n <= N-1 (Jackson derivative: d z^(j+1) = [j+1]_basic z^j).
  std::vector<std::array<std::complex<double>, 4>> coeff(static_cast<std::size_t>(N) * N);
  for (int m = 0; m < N; ++m) {
    for (int n = 0; n < N; ++n) {
      std::complex<double> dt = numeric(qnum(m + 1, QConvention::basic, q) * A.c[m + 1] * B.c[n]);
      std::complex<double> dx = numeric(qnum(n + 1, QConvention::basic, q) * B.c[n + 1] * A.c[m]);
      for (int r = 0; r < 4; ++r) coeff[m * N + n][r] = dt * g0u[r] - qd * dx * gxu[r];
    }
  }
  constexpr int kGrid = 21;  // |t|, |x| <= 1 in steps of 0.1
  double worst = 0;
  for (int a = 0; a < kGrid; ++a) {
    for (int b = 0; b < kGrid; ++b) {
      const double t = -1.0 + 2.0 * a / (kGrid - 1);
      const double x = -1.0 + 2.0 * b / (kGrid - 1);
      std::array<std::complex<double>, 4> v{};
      double tp = 1;
      for (int m = 0; m < N; ++m, tp *= t) {
        double xp = 1;
        for (int n = 0; n < N; ++n, xp *= x) {
          for (int r = 0; r < 4; ++r) v[r] += coeff[m * N + n][r] * (tp * xp);
        }
      }
      for (const auto& e : v) worst = std::max(worst, std::abs(e));
    }
  }
  res.residual = worst;
  res.notes.push_back("plane wave e_q(i*omega*t)*e_q(-i*k*x)*u with omega = q*k, " + std::string(to_string(conv)) +
                      " q-factorials, truncated per variable at order " + std::to_string(N - 1));
  return res;
}

}  // namespace metriq
