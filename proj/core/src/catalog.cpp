#include "metriq/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "metriq/diffop.hpp"
#include "metriq/errors.hpp"

namespace metriq {

using json = nlohmann::json;

std::string_view to_string(AlgebraChoice a) {
  switch (a) {
    case AlgebraChoice::m1: return "M1";
    case AlgebraChoice::m2: return "M2";
    case AlgebraChoice::either: return "either";
  }
  return "?";
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::embeddings: return "embeddings";
    case Suite::dirac: return "dirac";
    case Suite::confluence: return "confluence";
    case Suite::all: return "all";
  }
  return "?";
}

std::optional<Suite> suite_from_string(std::string_view s) {
  for (Suite v : {Suite::embeddings, Suite::dirac, Suite::confluence, Suite::all}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Data files

namespace {

std::optional<AlgebraChoice> algebra_choice(const std::string& s) {
  for (AlgebraChoice a : {AlgebraChoice::m1, AlgebraChoice::m2, AlgebraChoice::either}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::map<std::string, long> first_instance(const std::map<std::string, std::vector<long>>& sweep) {
  std::map<std::string, long> env;
  for (const auto& [k, v] : sweep) env[k] = v.front();
  return env;
}

void validate_row(const TableRow& row, const std::string& source) {
  const auto env = first_instance(row.sweep);
  auto guard = [&](const std::string& field, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      throw SchemaError(source, static_cast<long>(row.index), field, e.what());
    }
  };
  for (const auto& [name, text] : row.bindings) guard("bindings." + name, [&] { parse_coeff(text, env); });
  if (row.target) guard("target", [&] { parse_nc(*row.target, env); });
  if (row.expected_dirac) guard("expected_dirac", [&] { parse_operator(*row.expected_dirac, env); });
}

}  // namespace

Table parse_table(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(source, -1, "", e.what());
  }
  auto fail = [&source](long row, const std::string& field, const std::string& why) -> SchemaError {
    return SchemaError(source, row, field, why);
  };
  if (!doc.is_object()) throw fail(-1, "", "top level must be an object");
  for (const auto& [k, _] : doc.items()) {
    if (k != "table_id" && k != "algebra" && k != "rows") throw fail(-1, k, "unknown field");
  }
  Table t;
  if (!doc.contains("table_id") || !doc["table_id"].is_string()) throw fail(-1, "table_id", "missing string");
  t.table_id = doc["table_id"].get<std::string>();
  if (!doc.contains("algebra") || !doc["algebra"].is_string()) throw fail(-1, "algebra", "missing string");
  auto alg = algebra_choice(doc["algebra"].get<std::string>());
  if (!alg) throw fail(-1, "algebra", "expected M1, M2 or either");
  t.algebra = *alg;
  if (!doc.contains("rows") || !doc["rows"].is_array()) throw fail(-1, "rows", "missing array");

  long index = 0;
  for (const auto& r : doc["rows"]) {
    TableRow row;
    row.table_id = t.table_id;
    row.index = static_cast<std::size_t>(index);
    row.algebra = t.algebra;
    if (!r.is_object()) throw fail(index, "", "row must be an object");
    for (const auto& [k, v] : r.items()) {
      if (k == "key") {
        if (!v.is_object()) throw fail(index, k, "expected object");
        for (const auto& [kk, kv] : v.items()) {
          if (kv.is_number_integer()) {
            row.key[kk] = kv.get<long>();
          } else if (kv.is_string()) {
            row.key[kk] = kv.get<std::string>();
          } else {
            throw fail(index, "key." + kk, "expected integer or string");
          }
        }
      } else if (k == "algebra") {
        auto a = v.is_string() ? algebra_choice(v.get<std::string>()) : std::nullopt;
        if (!a) throw fail(index, k, "expected M1, M2 or either");
        row.algebra = *a;
        row.algebra_override = true;
      } else if (k == "bindings") {
        if (!v.is_object()) throw fail(index, k, "expected object");
        for (const auto& [name, text] : v.items()) {
          if (!text.is_string()) throw fail(index, "bindings." + name, "expected coefficient text");
          row.bindings[name] = text.get<std::string>();
        }
      } else if (k == "target" || k == "expected_dirac") {
        if (!v.is_string()) throw fail(index, k, "expected text");
        (k == "target" ? row.target : row.expected_dirac) = v.get<std::string>();
      } else if (k == "sweep") {
        if (!v.is_object()) throw fail(index, k, "expected object");
        for (const auto& [name, vals] : v.items()) {
          if (!vals.is_array() || vals.empty()) throw fail(index, "sweep." + name, "expected non-empty array");
          for (const auto& x : vals) {
            if (!x.is_number_integer()) throw fail(index, "sweep." + name, "expected integers");
            row.sweep[name].push_back(x.get<long>());
          }
        }
      } else {
        throw fail(index, k, "unknown field");
      }
    }
    if (!r.contains("bindings")) throw fail(index, "bindings", "missing");
    validate_row(row, source);
    t.rows.push_back(std::move(row));
    ++index;
  }
  return t;
}

std::string save_table(const Table& t) {
  json doc;
  doc["table_id"] = t.table_id;
  doc["algebra"] = std::string(to_string(t.algebra));
  doc["rows"] = json::array();
  for (const auto& row : t.rows) {
    json r;
    json key = json::object();
    for (const auto& [k, v] : row.key) {
      if (std::holds_alternative<long>(v)) {
        key[k] = std::get<long>(v);
      } else {
        key[k] = std::get<std::string>(v);
      }
    }
    r["key"] = key;
    if (row.algebra_override) r["algebra"] = std::string(to_string(row.algebra));
    r["bindings"] = json::object();
    for (const auto& [k, v] : row.bindings) r["bindings"][k] = v;
    if (row.target) r["target"] = *row.target;
    if (row.expected_dirac) r["expected_dirac"] = *row.expected_dirac;
    if (!row.sweep.empty()) r["sweep"] = row.sweep;
    doc["rows"].push_back(r);
  }
  return doc.dump(2) + "\n";
}

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SchemaError(p.string(), -1, "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<TableRow> load_tables(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  std::vector<TableRow> rows;
  for (const auto& f : files) {
    std::string text = read_file(f);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) continue;  // empty file, no rows
    Table t = parse_table(text, f.string());
    for (auto& r : t.rows) rows.push_back(std::move(r));
  }
  return rows;
}

MetricSpec load_metric(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError(path, -1, "", e.what());
  }
  if (!doc.is_object()) throw SchemaError(path, -1, "", "metric file must be an object of g-components");
  Bindings b;
  for (const auto& [k, v] : doc.items()) {
    if (!v.is_string()) throw SchemaError(path, -1, k, "expected coefficient text");
    if (k.size() != 3 || k[0] != 'g' || k[1] < '0' || k[1] > '3' || k[2] < '0' || k[2] > '3' || k[1] > k[2]) {
      throw SchemaError(path, -1, k, "expected a component name g<mu><nu> with mu <= nu");
    }
    try {
      b[k] = parse_coeff(v.get<std::string>());
    } catch (const Error& e) {
      throw SchemaError(path, -1, k, e.what());
    }
  }
  return MetricSpec::from_bindings(b);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

bool is_metric_name(const std::string& n) {
  return n.size() == 3 && n[0] == 'g' && n[1] >= '0' && n[1] <= '3' && n[2] >= '0' && n[2] <= '3';
}

std::vector<std::map<std::string, long>> instances(const TableRow& row, const SuiteOptions& opt) {
  std::vector<std::map<std::string, long>> out{{}};
  for (const auto& [name, defaults] : row.sweep) {
    auto it = opt.sweep.find(name);
    const auto& vals = it != opt.sweep.end() ? it->second : defaults;
    std::vector<std::map<std::string, long>> next;
    for (const auto& base : out) {
      for (long v : vals) {
        auto m = base;
        m[name] = v;
        next.push_back(std::move(m));
      }
    }
    out = std::move(next);
  }
  return out;
}

Bindings row_bindings(const TableRow& row, const std::map<std::string, long>& env) {
  Bindings b;
  for (const auto& [name, text] : row.bindings) b[name] = parse_coeff(text, env);
  return b;
}

Bindings non_metric(const Bindings& b) {
  Bindings out;
  for (const auto& [k, v] : b) {
    if (!is_metric_name(k)) out[k] = v;
  }
  return out;
}

RowVerdict base_verdict(std::string_view suite, const TableRow& row, const std::map<std::string, long>& inst,
                        std::string algebra) {
  RowVerdict v;
  v.suite = std::string(suite);
  v.table_id = row.table_id;
  v.row_index = row.index;
  v.key = row.key;
  v.algebra = std::move(algebra);
  v.instance = inst;
  return v;
}

std::string algebra_name(Algebra a) { return a == Algebra::m1 ? "M1" : "M2"; }

// ---- embeddings

RowVerdict embedding_verdict(const TableRow& row, const std::map<std::string, long>& inst,
                             const std::vector<Algebra>& algebras, const SuiteOptions& opt) {
  RowVerdict out = base_verdict("embeddings", row, inst, std::string(to_string(row.algebra)));
  try {
    const Bindings b = row_bindings(row, inst);
    const MetricSpec g = MetricSpec::from_bindings(b);
    const NCPoly target = parse_nc(*row.target, inst).substitute(non_metric(b));
    out.detail["target"] = target.str();

    std::vector<std::pair<Algebra, EmbeddingVerdict>> tried;
    for (Algebra a : algebras) tried.emplace_back(a, verify_embedding(relations(g, a), b, target, opt.scale_free));
    auto pick = std::find_if(tried.begin(), tried.end(), [](const auto& t) { return t.second.status == Status::pass; });
    if (pick == tried.end()) {
      pick = std::find_if(tried.begin(), tried.end(), [](const auto& t) { return t.second.hbar_dropped; });
    }
    if (pick == tried.end()) pick = tried.begin();
    const auto& [alg, verdict] = *pick;

    out.algebra = algebra_name(alg);
    out.status = verdict.status;
    out.matched = verdict.matched;
    if (verdict.scale) out.scale = verdict.scale->str();
    if (verdict.hbar_dropped) out.detail["hbar_dropped"] = "true";
    for (const auto& c : verdict.candidates) {
      if (!c.reduced.is_zero()) out.detail["reduced." + c.relation] = c.reduced.str();
    }
    out.notes = verdict.notes;
    for (const auto& [a, v] : tried) {
      if (a == alg) continue;
      out.notes.push_back(algebra_name(a) + ": " + std::string(to_string(v.status)) +
                          (v.matched ? " via " + *v.matched : std::string()));
    }
  } catch (const Error& e) {
    out.status = Status::skip;
    out.notes.push_back(e.what());
  }
  return out;
}

// ---- dirac

// True when every term of `printed` is +/- the corresponding term of `computed`.
bool same_up_to_term_signs(const MatrixDiffOp& computed, const MatrixDiffOp& printed) {
  if (computed.terms().size() != printed.terms().size()) return false;
  for (const auto& [m, c] : computed.terms()) {
    GMatrix p = printed.coeff(m);
    if (!(p == c) && !(p == -c)) return false;
  }
  return true;
}

RowVerdict dirac_verdict(const TableRow& row, const std::map<std::string, long>& inst, const SuiteOptions& opt) {
  RowVerdict out = base_verdict("dirac", row, inst, std::string(to_string(row.algebra)));
  OperatorOptions oo;
  oo.allow_any_signature = opt.allow_any_signature;
  oo.basis = opt.basis;
  try {
    const Bindings b = row_bindings(row, inst);
    const MetricSpec g = MetricSpec::from_bindings(b);
    FactorizationReport f = verify_factorization(g, oo);
    out.detail["dirac"] = str(f.dirac, opt.basis);
    out.detail["square"] = str(f.square, opt.basis);
    out.detail["dalembertian"] = str(f.dalembertian, opt.basis);
    out.detail["factorization"] = std::string(to_string(f.status));
    out.detail["mixed_vanish"] = f.mixed_vanish() ? "true" : "false";
    for (const auto& n : f.notes) out.notes.push_back(n);
    out.status = f.status;
    if (!row.expected_dirac) return out;

    MatrixDiffOp printed = parse_operator(*row.expected_dirac, inst, opt.basis).substitute(non_metric(b));
    out.detail["printed"] = str(printed, opt.basis);
    if (f.status != Status::pass) return out;
    if (printed == f.dirac) return out;
    if (same_up_to_term_signs(f.dirac, printed) && op_mul(printed, printed) == f.dalembertian) {
      out.notes.push_back("printed operator differs from the computed one by term signs; its square is still the box");
      return out;
    }
    out.status = Status::fail;
    out.notes.push_back("printed operator differs from the computed one: difference " +
                        str(printed - f.dirac, opt.basis));
  } catch (const NonLorentzianSignature& e) {
    out.status = Status::skip;
    out.notes.push_back(std::string(e.what()) + " (rerun with the signature bypass)");
  } catch (const Error& e) {
    out.status = Status::skip;
    out.notes.push_back(e.what());
  }
  return out;
}

// ---- confluence

void fill_confluence(RowVerdict& out, const MetricSpec& g, Algebra a, Mode mode, int max_degree) {
  try {
    RewriteSystem rs = build_rewrite_system(relations(g, a), mode);
    for (const auto& r : rs.rules()) {
      out.detail["rule." + word_str(r.lhs)] = r.rhs.str() + " [" + r.origin + "]";
    }
    ObstructionReport rep = check_confluence(rs, max_degree);
    out.detail["mode"] = std::string(to_string(mode));
    out.detail["overlaps_checked"] = std::to_string(rep.overlaps_checked);
    for (const auto& ob : rep.obstructions) {
      std::map<std::string, std::string> e;
      e["overlap"] = word_str(ob.overlap);
      e["via_left"] = ob.via_left.str();
      e["via_right"] = ob.via_right.str();
      e["residual"] = ob.residual.str();
      std::string cond;
      for (auto it = ob.residual.terms().rbegin(); it != ob.residual.terms().rend(); ++it) {
        if (!cond.empty()) cond += "; ";
        cond += (it->first.empty() ? std::string("1") : word_str(it->first)) + ": " +
                it->second.factor_numerator().str() + " = 0";
      }
      e["conditions"] = cond;
      out.obstructions.push_back(std::move(e));
    }
    out.status = rep.resolved() ? Status::pass : Status::fail;
    if (!rep.resolved()) {
      out.notes.push_back(std::to_string(rep.obstructions.size()) + " overlaps resolve only where the listed conditions hold");
    }
  } catch (const DegenerateMetric& e) {
    out.status = Status::degenerate;
    out.notes.push_back(e.what());
  }
}

RowVerdict confluence_verdict(const TableRow& row, const std::map<std::string, long>& inst, Algebra a) {
  RowVerdict out = base_verdict("confluence", row, inst, algebra_name(a));
  try {
    fill_confluence(out, MetricSpec::from_bindings(row_bindings(row, inst)), a, Mode::completed, 3);
  } catch (const Error& e) {
    out.status = Status::skip;
    out.notes.push_back(e.what());
  }
  return out;
}

std::vector<Algebra> algebras_for(const TableRow& row, const SuiteOptions& opt) {
  std::vector<Algebra> out;
  for (Algebra a : {Algebra::m1, Algebra::m2}) {
    bool usable = row.algebra == AlgebraChoice::either || (row.algebra == AlgebraChoice::m1) == (a == Algebra::m1);
    if (usable && (!opt.algebra || *opt.algebra == a)) out.push_back(a);
  }
  return out;
}

}  // namespace

VerdictReport run_suite(const std::vector<TableRow>& input, Suite suite, const SuiteOptions& opt) {
  std::vector<const TableRow*> rows;
  for (const auto& r : input) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const TableRow* a, const TableRow* b) {
    return std::tie(a->table_id, a->index) < std::tie(b->table_id, b->index);
  });

  std::vector<std::function<RowVerdict()>> tasks;
  auto want = [suite](Suite s) { return suite == Suite::all || suite == s; };
  if (want(Suite::embeddings)) {
    for (const TableRow* r : rows) {
      if (!r->target) continue;
      auto algs = algebras_for(*r, opt);
      if (algs.empty()) continue;
      for (const auto& inst : instances(*r, opt)) {
        tasks.emplace_back([r, inst, algs, &opt] { return embedding_verdict(*r, inst, algs, opt); });
      }
    }
  }
  if (want(Suite::dirac)) {
    for (const TableRow* r : rows) {
      if (!r->expected_dirac) continue;
      for (const auto& inst : instances(*r, opt)) {
        tasks.emplace_back([r, inst, &opt] { return dirac_verdict(*r, inst, opt); });
      }
    }
  }
  if (want(Suite::confluence)) {
    for (const TableRow* r : rows) {
      if (r->expected_dirac) continue;
      for (const auto& inst : instances(*r, opt)) {
        for (Algebra a : algebras_for(*r, opt)) {
          tasks.emplace_back([r, inst, a] { return confluence_verdict(*r, inst, a); });
        }
      }
    }
  }

  VerdictReport report;
  report.timing = opt.timing;
  report.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      auto t0 = std::chrono::steady_clock::now();
      report.rows[i] = tasks[i]();
      report.rows[i].elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return report;
}

VerdictReport confluence_report(const MetricSpec& g, Algebra a, Mode mode, int max_degree, const std::string& label) {
  RowVerdict v;
  v.suite = "confluence";
  v.table_id = label;
  v.algebra = algebra_name(a);
  auto t0 = std::chrono::steady_clock::now();
  fill_confluence(v, g, a, mode, max_degree);
  v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  VerdictReport r;
  r.rows.push_back(std::move(v));
  return r;
}

// ---------------------------------------------------------------------------
// Report

std::map<std::string, std::size_t> VerdictReport::counts() const {
  std::map<std::string, std::size_t> c;
  for (Status s : {Status::pass, Status::fail, Status::skip, Status::degenerate}) c[std::string(to_string(s))] = 0;
  for (const auto& r : rows) ++c[std::string(to_string(r.status))];
  return c;
}

bool VerdictReport::any_fail() const {
  return std::any_of(rows.begin(), rows.end(), [](const RowVerdict& r) { return r.status == Status::fail; });
}

std::string VerdictReport::to_json() const {
  json doc;
  doc["schema"] = "metriq.report/1";
  doc["summary"] = counts();
  doc["results"] = json::array();
  for (const auto& r : rows) {
    json e;
    e["suite"] = r.suite;
    e["table_id"] = r.table_id;
    e["row"] = r.row_index;
    json key = json::object();
    for (const auto& [k, v] : r.key) {
      if (std::holds_alternative<long>(v)) {
        key[k] = std::get<long>(v);
      } else {
        key[k] = std::get<std::string>(v);
      }
    }
    e["key"] = key;
    e["algebra"] = r.algebra;
    e["instance"] = r.instance.empty() ? json::object() : json(r.instance);
    e["status"] = std::string(to_string(r.status));
    if (r.matched) e["matched"] = *r.matched;
    if (r.scale) e["scale"] = *r.scale;
    if (!r.detail.empty()) e["detail"] = r.detail;
    if (!r.obstructions.empty()) e["obstructions"] = r.obstructions;
    if (!r.notes.empty()) e["notes"] = r.notes;
    if (timing) e["elapsed_ms"] = r.elapsed_ms;
    doc["results"].push_back(e);
  }
  return doc.dump(2) + "\n";
}

}  // namespace metriq
