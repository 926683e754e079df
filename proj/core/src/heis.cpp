#include "metriq/heis.hpp"

#include <mutex>
#include <set>
#include <stdexcept>

#include "metriq/errors.hpp"
#include "metriq/params.hpp"

namespace metriq {

std::string_view to_string(Algebra a) { return a == Algebra::m1 ? "M1" : "M2"; }
std::string_view to_string(Mode m) { return m == Mode::strict ? "strict" : "completed"; }

namespace {

int slot(int mu, int nu) {
  if (mu > nu) std::swap(mu, nu);
  if (mu < 0 || nu > 3) throw std::out_of_range("metric index out of range");
  static constexpr int kOffset[4] = {0, 4, 7, 9};
  return kOffset[mu] + (nu - mu);
}

}  // namespace

std::string component_name(int mu, int nu) {
  if (mu > nu) std::swap(mu, nu);
  return "g" + std::to_string(mu) + std::to_string(nu);
}

MetricSpec MetricSpec::minkowski() {
  MetricSpec g;
  g.set(0, 0, 1);
  for (int i = 1; i < 4; ++i) g.set(i, i, -1);
  return g;
}

MetricSpec MetricSpec::symbolic() {
  MetricSpec g;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) g.set(mu, nu, CoeffExpr::param(component_name(mu, nu)));
  }
  return g;
}

MetricSpec MetricSpec::diagonal_symbolic() {
  MetricSpec g;
  for (int mu = 0; mu < 4; ++mu) g.set(mu, mu, CoeffExpr::param(component_name(mu, mu)));
  return g;
}

MetricSpec MetricSpec::from_bindings(const Bindings& b) {
  MetricSpec g;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      auto it = b.find(component_name(mu, nu));
      if (it != b.end()) g.set(mu, nu, it->second);
    }
  }
  return g;
}

const CoeffExpr& MetricSpec::g(int mu, int nu) const { return c_[slot(mu, nu)]; }
void MetricSpec::set(int mu, int nu, CoeffExpr v) { c_[slot(mu, nu)] = std::move(v); }

std::optional<int> monomial_sign(const CoeffExpr& e) {
  if (e.is_zero()) return 0;
  auto mono = e.as_monomial();
  if (!mono || !mono->first.is_real()) return std::nullopt;
  const auto& reg = ParamRegistry::global();
  for (const auto& [name, units] : mono->second.factors()) {
    if (!reg.is_positive(name) && units % (2 * kExponentUnits) != 0) return std::nullopt;
  }
  return sgn(mono->first.re()) > 0 ? 1 : -1;
}

CoeffExpr monomial_abs(const CoeffExpr& e) {
  auto s = monomial_sign(e);
  if (!s) throw UnsupportedRoot("sign of '" + e.str() + "' is not determined");
  return *s < 0 ? -e : e;
}

std::optional<MetricSpec::Axis> MetricSpec::axis(int mu) const {
  const CoeffExpr& v = g(mu, mu);
  auto s = monomial_sign(v);
  if (!s) return std::nullopt;
  return Axis{*s, *s < 0 ? -v : v};
}

Bindings MetricSpec::bindings() const {
  Bindings b;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) b.emplace(component_name(mu, nu), g(mu, nu));
  }
  return b;
}

// ---------------------------------------------------------------------------
// Relations

namespace {

struct RelationText {
  const char* name;
  Generator a;
  Generator b;
  const char* text;
};

using G = Generator;

constexpr RelationText kM1[] = {
    {"x-p_x", G::x, G::p_x, "g00*x*p_x + g11*p_x*x + i*g22"},
    {"y-p_y", G::y, G::p_y, "g00*y*p_y + g22*p_y*y + i*g33"},
    {"z-p_z", G::z, G::p_z, "g00*z*p_z + g33*p_z*z + i*g11"},
    {"x-y", G::x, G::y, "g22*x*y - g33*y*x - g23"},
    {"y-z", G::y, G::z, "g33*y*z - g11*z*y - g13"},
    {"z-x", G::z, G::x, "g11*z*x - g22*x*z - g12"},
    {"p_x-p_y", G::p_x, G::p_y, "g22*p_x*p_y - g33*p_y*p_x - g23"},
    {"p_y-p_z", G::p_y, G::p_z, "g33*p_y*p_z - g11*p_z*p_y - g13"},
    {"p_z-p_x", G::p_z, G::p_x, "g11*p_z*p_x - g22*p_x*p_z - g12"},
};

constexpr RelationText kM2[] = {
    {"x-p_y", G::x, G::p_y, "g00*x*p_y + g33*p_y*x - i*g03"},
    {"x-p_z", G::x, G::p_z, "g00*x*p_z + g22*p_z*x - i*g02"},
    {"y-p_x", G::y, G::p_x, "g00*y*p_x + g33*p_x*y - i*g03"},
    {"y-p_z", G::y, G::p_z, "g00*y*p_z + g11*p_z*y + i*g01"},
    {"z-p_x", G::z, G::p_x, "g00*z*p_x + g22*p_x*z + i*g02"},
    {"z-p_y", G::z, G::p_y, "g00*z*p_y + g11*p_y*z + i*g01"},
    {"x-y", G::x, G::y, "g00*x*y + g33*y*x - g03"},
    {"y-z", G::y, G::z, "g00*y*z + g11*z*y - g01"},
    {"z-x", G::z, G::x, "g22*z*x + g00*x*z - g02"},
    {"p_x-p_y", G::p_x, G::p_y, "g00*p_x*p_y + g33*p_y*p_x - g03"},
    {"p_y-p_z", G::p_y, G::p_z, "g00*p_y*p_z + g11*p_z*p_y - g01"},
    {"p_z-p_x", G::p_z, G::p_x, "g00*p_z*p_x + g22*p_x*p_z - g02"},
};

template <std::size_t N>
const std::vector<Relation>& symbolic_relations(const RelationText (&table)[N]) {
  static const std::vector<Relation> rels = [&] {
    std::vector<Relation> out;
    for (const auto& r : table) {
      NCPoly p = parse_nc(r.text);
      out.push_back({r.name, {r.a, r.b}, p, p});
    }
    return out;
  }();
  return rels;
}

RelationSet instantiate(const std::vector<Relation>& symbolic, Algebra a, const MetricSpec& g) {
  RelationSet out{a, {}};
  Bindings b = g.bindings();
  for (const auto& r : symbolic) out.relations.push_back({r.name, r.pair, r.symbolic.substitute(b), r.symbolic});
  return out;
}

}  // namespace

const Relation* RelationSet::find(std::string_view name) const {
  for (const auto& r : relations) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

RelationSet relations_m1(const MetricSpec& g) { return instantiate(symbolic_relations(kM1), Algebra::m1, g); }
RelationSet relations_m2(const MetricSpec& g) { return instantiate(symbolic_relations(kM2), Algebra::m2, g); }
RelationSet relations(const MetricSpec& g, Algebra a) { return a == Algebra::m1 ? relations_m1(g) : relations_m2(g); }

// ---------------------------------------------------------------------------
// Rewriting

RewriteSystem::RewriteSystem(std::vector<Rule> rules, Mode mode, GeneratorOrder order)
    : rules_(std::move(rules)), mode_(mode), order_(order) {
  for (auto& row : table_) row.fill(-1);
  WordLess less{order_};
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (r.lhs.size() != 2) throw std::invalid_argument("rule leading words must have two letters");
    int& cell = table_[index(r.lhs[0])][index(r.lhs[1])];
    if (cell >= 0) throw std::invalid_argument("duplicate leading word " + word_str(r.lhs));
    for (const auto& [w, c] : r.rhs.terms()) {
      if (!less(w, r.lhs)) throw std::invalid_argument("rule for " + word_str(r.lhs) + " does not decrease");
    }
    cell = static_cast<int>(i);
  }
}

RewriteSystem build_rewrite_system(const RelationSet& rels, Mode mode, const GeneratorOrder& order) {
  std::vector<Rule> rules;
  std::vector<std::string> vanishing;
  bool constrained[kNumGenerators][kNumGenerators] = {};
  for (const auto& rel : rels.relations) {
    auto [a, b] = rel.pair;
    constrained[index(a)][index(b)] = constrained[index(b)][index(a)] = true;
    Word lead = order(a) < order(b) ? Word{b, a} : Word{a, b};
    CoeffExpr c = rel.poly.coeff(lead);
    if (c.is_zero()) {
      vanishing.push_back(rel.symbolic.coeff(lead).str() + " (" + rel.name + ")");
      continue;
    }
    NCPoly rest = rel.poly - NCPoly::word(lead, c);
    rules.push_back({lead, rest.scaled(-c.inverse()), rel.name});
  }
  if (!vanishing.empty()) throw DegenerateMetric(vanishing);
  if (mode == Mode::completed) {
    for (Generator a : kAllGenerators) {
      for (Generator b : kAllGenerators) {
        if (order(a) >= order(b) || constrained[index(a)][index(b)]) continue;
        rules.push_back({{b, a}, NCPoly::word({a, b}), "completion"});
      }
    }
  }
  return RewriteSystem(std::move(rules), mode, order);
}

NCPoly normal_form(const NCPoly& p, const RewriteSystem& rs) {
  std::map<Word, CoeffExpr, WordLess> work(WordLess{rs.order()});
  auto add = [&work](Word w, const CoeffExpr& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = work.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  for (const auto& [w, c] : p.terms()) add(w, c);

  NCPoly out;
  while (!work.empty()) {
    auto top = std::prev(work.end());
    Word w = top->first;
    CoeffExpr c = std::move(top->second);
    work.erase(top);
    const Rule* rule = nullptr;
    std::size_t at = 0;
    for (; at + 1 < w.size(); ++at) {
      if ((rule = rs.rule_for(w[at], w[at + 1]))) break;
    }
    if (!rule) {
      out.add_term(w, c);
      continue;
    }
    for (const auto& [rw, rc] : rule->rhs.terms()) {
      Word nw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
      nw.insert(nw.end(), rw.begin(), rw.end());
      nw.insert(nw.end(), w.begin() + static_cast<std::ptrdiff_t>(at + 2), w.end());
      add(std::move(nw), c * rc);
    }
  }
  return out;
}

ObstructionReport check_confluence(const RewriteSystem& rs, int max_overlap_degree) {
  if (max_overlap_degree < 3) throw std::invalid_argument("max_overlap_degree must be at least 3");
  ObstructionReport report;
  for (Generator a : kAllGenerators) {
    for (Generator b : kAllGenerators) {
      const Rule* left = rs.rule_for(a, b);
      if (!left) continue;
      for (Generator c : kAllGenerators) {
        const Rule* right = rs.rule_for(b, c);
        if (!right) continue;
        ++report.overlaps_checked;
        NCPoly via_left = normal_form(left->rhs * NCPoly::gen(c), rs);
        NCPoly via_right = normal_form(NCPoly::gen(a) * right->rhs, rs);
        NCPoly residual = via_left - via_right;
        if (!residual.is_zero()) {
          report.obstructions.push_back({{a, b, c}, std::move(via_left), std::move(via_right), std::move(residual)});
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Embeddings

namespace {

EmbeddingCandidate compare(const std::string& name, NCPoly reduced, const NCPoly& target, bool scale_free) {
  EmbeddingCandidate cand{name, std::move(reduced), std::nullopt, {}};
  if (target.is_zero()) {
    cand.residual = cand.reduced;
    if (cand.reduced.is_zero()) cand.scale = CoeffExpr(1);
    return cand;
  }
  const Word& lw = target.leading_word();
  CoeffExpr s = cand.reduced.coeff(lw) / target.coeff(lw);
  if (s.is_zero() || !scale_free) s = CoeffExpr(1);
  cand.residual = cand.reduced - target.scaled(s);
  if (cand.residual.is_zero()) cand.scale = s;
  return cand;
}

bool has_param(const NCPoly& p, const std::string& name) {
  for (const auto& [w, c] : p.terms()) {
    for (const auto& v : c.variables()) {
      if (v == name) return true;
    }
  }
  return false;
}

}  // namespace

EmbeddingVerdict verify_embedding(const RelationSet& rels, const Bindings& bindings, const NCPoly& target,
                                  bool scale_free) {
  EmbeddingVerdict v;
  std::vector<NCPoly> reduced;
  for (const auto& rel : rels.relations) reduced.push_back(rel.poly.substitute(bindings));

  auto search = [&](const NCPoly& t, std::vector<EmbeddingCandidate>& out) -> const EmbeddingCandidate* {
    out.clear();
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      out.push_back(compare(rels.relations[i].name, reduced[i], t, scale_free));
    }
    for (const auto& c : out) {
      if (c.scale) return &c;
    }
    return nullptr;
  };

  if (const auto* hit = search(target, v.candidates)) {
    v.status = Status::pass;
    v.matched = hit->relation;
    v.scale = hit->scale;
    return v;
  }
  if (has_param(target, "hbar")) {
    NCPoly unit_hbar = target.substitute({{"hbar", CoeffExpr(1)}});
    std::vector<EmbeddingCandidate> retry;
    if (const auto* hit = search(unit_hbar, retry)) {
      v.hbar_dropped = true;
      v.matched = hit->relation;
      v.scale = hit->scale;
      v.notes.push_back("relation " + hit->relation + " matches with scale " + hit->scale->str() +
                        " only after hbar -> 1; no metric component carries hbar");
      return v;
    }
  }
  v.notes.push_back("no relation reduces to the target");
  return v;
}

// ---------------------------------------------------------------------------
// Verma module

int VermaTruncation::basis_index(int d, int e, int f) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == std::array<int, 3>{d, e, f}) return static_cast<int>(i);
  }
  return -1;
}

namespace {

Word momentum_word(const std::array<int, 3>& v) {
  Word w;
  w.insert(w.end(), v[0], Generator::p_x);
  w.insert(w.end(), v[1], Generator::p_y);
  w.insert(w.end(), v[2], Generator::p_z);
  return w;
}

using SparseVector = std::map<int, CoeffExpr>;

SparseVector act(const SparseColumns& m, const SparseVector& v) {
  SparseVector out;
  for (const auto& [j, c] : v) {
    for (const auto& [i, a] : m[j]) {
      CoeffExpr& slot = out[i];
      slot += a * c;
      if (slot.is_zero()) out.erase(i);
    }
  }
  return out;
}

}  // namespace

VermaTruncation verma_truncate(const MetricSpec& g, Algebra a, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("max_degree must be non-negative");
  RelationSet rels = relations(g, a);
  RewriteSystem rs = build_rewrite_system(rels, Mode::completed, GeneratorOrder::momentum_first());

  VermaTruncation vt;
  vt.max_degree = max_degree;
  for (int deg = 0; deg <= max_degree; ++deg) {
    for (int d = deg; d >= 0; --d) {
      for (int e = deg - d; e >= 0; --e) vt.basis.push_back({d, e, deg - d - e});
    }
  }
  std::map<std::array<int, 3>, int> where;
  for (std::size_t i = 0; i < vt.basis.size(); ++i) where[vt.basis[i]] = static_cast<int>(i);

  for (Generator gen : kAllGenerators) {
    SparseColumns& m = vt.action[index(gen)];
    m.resize(vt.basis.size());
    for (std::size_t j = 0; j < vt.basis.size(); ++j) {
      Word w{gen};
      Word tail = momentum_word(vt.basis[j]);
      w.insert(w.end(), tail.begin(), tail.end());
      NCPoly nf = normal_form(NCPoly::word(w), rs);
      for (const auto& [rw, c] : nf.terms()) {
        std::array<int, 3> exps{0, 0, 0};
        bool kills = false;
        for (Generator l : rw) {
          if (is_position(l)) {
            kills = true;
            break;
          }
          ++exps[index(l) - 3];
        }
        if (kills) continue;
        auto it = where.find(exps);
        if (it != where.end()) m[j][it->second] += c;
      }
    }
  }

  for (const auto& rel : rels.relations) {
    for (std::size_t j = 0; j < vt.basis.size(); ++j) {
      const auto& b = vt.basis[j];
      if (b[0] + b[1] + b[2] > max_degree - 2) continue;
      ++vt.checks;
      SparseVector total;
      for (const auto& [w, c] : rel.poly.terms()) {
        SparseVector v{{static_cast<int>(j), c}};
        for (auto it = w.rbegin(); it != w.rend(); ++it) v = act(vt.action[index(*it)], v);
        for (const auto& [i, x] : v) {
          CoeffExpr& slot = total[i];
          slot += x;
          if (slot.is_zero()) total.erase(i);
        }
      }
      if (total.empty()) continue;
      NCPoly value;
      for (const auto& [i, x] : total) value.add_term(momentum_word(vt.basis[i]), x);
      vt.residuals.push_back({rel.name, b, std::move(value)});
    }
  }
  return vt;
}

// ---------------------------------------------------------------------------

SylvesterResult sylvester_rescale(const CoeffExpr& alpha, const CoeffExpr& beta, const CoeffExpr& gamma,
                                  const CoeffExpr& delta) {
  monomial_abs(alpha).sqrt();
  SylvesterResult out{MetricSpec::minkowski(), {}};
  const std::pair<Generator, Generator> axes[] = {
      {Generator::x, Generator::p_x}, {Generator::y, Generator::p_y}, {Generator::z, Generator::p_z}};
  const CoeffExpr* coeffs[] = {&beta, &gamma, &delta};
  for (int k = 0; k < 3; ++k) {
    CoeffExpr root = monomial_abs(*coeffs[k]).sqrt();
    auto [pos, mom] = axes[k];
    out.relations.push_back(NCPoly::word({pos, mom}) - NCPoly::word({mom, pos}) - NCPoly(CoeffExpr::i() * root));
  }
  return out;
}

}  // namespace metriq
