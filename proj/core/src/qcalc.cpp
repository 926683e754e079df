#include "metriq/qcalc.hpp"

#include <algorithm>
#include <stdexcept>

#include "metriq/errors.hpp"

namespace metriq {

std::string_view to_string(QConvention c) { return c == QConvention::symmetric ? "symmetric" : "basic"; }

CoeffExpr qnum(int n, QConvention conv, const CoeffExpr& q) {
  if (n < 0) throw std::invalid_argument("qnum needs n >= 0");
  // Closed forms of the defining quotients; both stay valid at q = 1 and q = -1.
  CoeffExpr out;
  if (conv == QConvention::basic) {
    for (int k = 0; k < n; ++k) out += q.pow(k);
  } else {
    for (int k = 0; k < n; ++k) out += q.pow(n - 1 - 2 * k);
  }
  return out;
}

CoeffExpr qfact(int n, QConvention conv, const CoeffExpr& q) {
  CoeffExpr out(1);
  for (int k = 2; k <= n; ++k) out *= qnum(k, conv, q);
  return out;
}

// ---------------------------------------------------------------------------

QWeylPoly::QWeylPoly(CoeffExpr c) {
  if (!c.is_zero()) terms_.emplace("", std::move(c));
}

QWeylPoly QWeylPoly::word(std::string w, CoeffExpr c) {
  for (char ch : w) {
    if (ch != 'X' && ch != 'D') throw std::invalid_argument("q-Weyl words use only X and D");
  }
  QWeylPoly p;
  p.add_term(w, c);
  return p;
}

CoeffExpr QWeylPoly::coeff(const std::string& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? CoeffExpr() : it->second;
}

void QWeylPoly::add_term(const std::string& w, const CoeffExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QWeylPoly& QWeylPoly::operator+=(const QWeylPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

QWeylPoly& QWeylPoly::operator-=(const QWeylPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

QWeylPoly operator*(const QWeylPoly& a, const QWeylPoly& b) {
  QWeylPoly out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) out.add_term(wa + wb, ca * cb);
  }
  return out;
}

QWeylPoly QWeylPoly::scaled(const CoeffExpr& c) const {
  QWeylPoly out;
  for (const auto& [w, v] : terms_) out.add_term(w, v * c);
  return out;
}

QWeylPoly QWeylPoly::pow(unsigned k) const {
  QWeylPoly out(CoeffExpr(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

QWeylPoly QWeylPoly::substitute(const Bindings& b) const {
  QWeylPoly out;
  for (const auto& [w, c] : terms_) out.add_term(w, c.substitute(b));
  return out;
}

std::string QWeylPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    std::string word;
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      if (!word.empty()) word += "*";
      word += w[i] == 'X' ? "X" : "Dq";
      if (j - i > 1) word += "^" + std::to_string(j - i);
      i = j;
    }
    std::string t;
    if (word.empty()) {
      t = c.needs_parens() ? "(" + c.str() + ")" : c.str();
    } else if (c.is_one()) {
      t = word;
    } else if ((-c).is_one()) {
      t = "-" + word;
    } else {
      t = (c.needs_parens() ? "(" + c.str() + ")" : c.str()) + "*" + word;
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

QWeylPoly qweyl_normal_form(const QWeylPoly& p, const CoeffExpr& q) {
  // Degree, then lexicographic with D above X: Dq X -> X Dq lowers a word.
  auto key_less = [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](char u, char v) { return (u == 'D') < (v == 'D'); });
  };
  std::map<std::string, CoeffExpr, decltype(key_less)> work(key_less);
  auto add = [&work](const std::string& w, const CoeffExpr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = work.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  for (const auto& [w, c] : p.terms()) add(w, c);
  QWeylPoly out;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    std::string w = it->first;
    CoeffExpr c = std::move(it->second);
    work.erase(it);
    auto at = w.find("DX");
    if (at == std::string::npos) {
      out.add_term(w, c);
      continue;
    }
    add(w.substr(0, at) + w.substr(at + 2), c);
    add(w.substr(0, at) + "XD" + w.substr(at + 2), c * q);
  }
  return out;
}

// ---------------------------------------------------------------------------

QSeries QSeries::operator*(const QSeries& o) const {
  QSeries out;
  out.order = std::min(order, o.order);
  out.c.assign(out.order + 1, CoeffExpr());
  for (int i = 0; i <= out.order; ++i) {
    for (int j = 0; i + j <= out.order; ++j) out.c[i + j] += c[i] * o.c[j];
  }
  return out;
}

std::string QSeries::str(std::string_view var) const {
  std::string out;
  for (int n = 0; n <= order; ++n) {
    if (c[n].is_zero()) continue;
    std::string t = c[n].needs_parens() ? "(" + c[n].str() + ")" : c[n].str();
    if (n > 0) {
      t += "*" + std::string(var);
      if (n > 1) t += "^" + std::to_string(n);
    }
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out.empty() ? "0" : out;
}

QSeries qexp_truncated(const CoeffExpr& a, int N, QConvention conv, const CoeffExpr& q) {
  if (N < 0) throw std::invalid_argument("series order must be non-negative");
  QSeries s;
  s.order = N;
  CoeffExpr fact(1);
  CoeffExpr apow(1);
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      CoeffExpr qn = qnum(n, conv, q);
      if (qn.is_zero()) throw QFactorialZero(n);
      fact *= qn;
      apow *= a;
    }
    s.c.push_back(apow / fact);
  }
  return s;
}

bool EigenResidual::zero() const {
  for (const auto& d : diff) {
    if (!d.is_zero()) return false;
  }
  return true;
}

EigenResidual qexp_eigen_check(const CoeffExpr& a, int N, QConvention conv, const CoeffExpr& q) {
  QSeries s = qexp_truncated(a, N, conv, q);
  EigenResidual r;
  for (int k = 0; k < N; ++k) r.diff.push_back(s.c[k + 1] * qnum(k + 1, QConvention::basic, q) - a * s.c[k]);
  return r;
}

// ---------------------------------------------------------------------------

bool OscillatorReport::all_pass() const {
  for (const auto& c : checks) {
    if (c.status != Status::pass) return false;
  }
  return true;
}

OscillatorReport oscillator_identity(int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be non-negative");
  const QConvention sym = QConvention::symmetric;
  const CoeffExpr q = q_param();
  OscillatorReport rep;
  auto record = [&rep](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(detail)});
  };

  for (int n = 0; n <= n_max; ++n) {
    CoeffExpr lhs = qnum(n + 1, sym, q) - q * qnum(n, sym, q);
    CoeffExpr rhs = q.pow(-n);
    record("q-integer identity n=" + std::to_string(n), lhs == rhs, lhs.str() + " vs " + rhs.str());
  }

  // Fock module |0>..|n_max>: a+|n> = |n+1>, a|n> = [n]|n-1>, N|n> = n|n>.
  // Each operator maps basis vectors to multiples of basis vectors, so the
  // checks compare scalar weights on a fixed target state.
  auto a_weight = [&](int n) { return qnum(n, sym, q); };
  for (int n = 0; n < n_max; ++n) {
    CoeffExpr aad = a_weight(n + 1);                        // a a+ |n>
    CoeffExpr ada = n > 0 ? a_weight(n) : CoeffExpr();      // a+ a |n>
    CoeffExpr lhs = aad - q * ada;
    record("a a+ - q a+ a = q^-N on |" + std::to_string(n) + ">", lhs == q.pow(-n), lhs.str());
    // [N, a+]|n> = ((n+1) - n) a+|n>
    CoeffExpr nad = CoeffExpr(n + 1) - CoeffExpr(n);
    record("[N, a+] = a+ on |" + std::to_string(n) + ">", nad.is_one(), nad.str());
  }
  for (int n = 1; n <= n_max; ++n) {
    // [N, a]|n> = ((n-1) - n) [n] |n-1>
    CoeffExpr w = (CoeffExpr(n - 1) - CoeffExpr(n)) * a_weight(n);
    record("[N, a] = -a on |" + std::to_string(n) + ">", w == -a_weight(n), w.str());
  }
  return rep;
}

}  // namespace metriq
