// metriq command line: verify suites over the shipped tables, normal forms,
// dispersion checks and PBW/confluence reports.

#include <cmath>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "metriq/catalog.hpp"
#include "metriq/diffop.hpp"
#include "metriq/errors.hpp"
#include "metriq/heis.hpp"

namespace {

using namespace metriq;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "n=0..3,m=1,l=0..2"
std::map<std::string, std::vector<long>> parse_sweep(const std::string& text) {
  static const std::regex item(R"(\s*([A-Za-z_]\w*)\s*=\s*(-?\d+)(?:\s*\.\.\s*(-?\d+))?\s*)");
  std::map<std::string, std::vector<long>> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, item)) throw UsageError("bad --sweep item '" + part + "'");
    long lo = std::stol(m[2]);
    long hi = m[3].matched ? std::stol(m[3]) : lo;
    if (hi < lo) throw UsageError("empty range in --sweep item '" + part + "'");
    auto& vals = out[m[1]];
    vals.clear();
    for (long v = lo; v <= hi; ++v) vals.push_back(v);
  }
  return out;
}

std::optional<Algebra> parse_algebra(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "m1" || s == "M1") return Algebra::m1;
  if (s == "m2" || s == "M2") return Algebra::m2;
  throw UsageError("--algebra must be m1 or m2");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string key_str(const std::map<std::string, KeyValue>& key) {
  std::string out;
  for (const auto& [k, v] : key) {
    out += (out.empty() ? "" : ",") + k + "=";
    out += std::holds_alternative<long>(v) ? std::to_string(std::get<long>(v)) : std::get<std::string>(v);
  }
  return out;
}

void print_report(const VerdictReport& rep) {
  for (const auto& r : rep.rows) {
    std::cout << to_string(r.status) << "  " << r.suite << "  " << r.table_id << " [" << key_str(r.key) << "]";
    if (!r.instance.empty()) {
      std::cout << " {";
      bool first = true;
      for (const auto& [k, v] : r.instance) {
        std::cout << (first ? "" : ",") << k << "=" << v;
        first = false;
      }
      std::cout << "}";
    }
    std::cout << " " << r.algebra;
    if (r.matched) std::cout << "  matched " << *r.matched;
    if (r.scale) std::cout << " scale " << *r.scale;
    if (!r.obstructions.empty()) std::cout << "  obstructions " << r.obstructions.size();
    std::cout << "\n";
    for (const auto& n : r.notes) std::cout << "      " << n << "\n";
  }
  std::cout << "summary:";
  for (const auto& [k, v] : rep.counts()) std::cout << " " << k << "=" << v;
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metriq: exact verification for metric-deformed Heisenberg algebras"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite over the metric tables");
  std::string suite_name;
  std::string tables = METRIQ_DEFAULT_TABLES;
  std::string algebra_flag, sweep_flag, basis_flag = "dirac", json_out;
  bool any_signature = false, exact = false, timing = false;
  unsigned jobs = 1;
  verify->add_option("suite", suite_name, "embeddings|dirac|confluence|all")->required();
  verify->add_option("--tables", tables, "Table file or directory");
  verify->add_option("--algebra", algebra_flag, "m1|m2");
  verify->add_option("--sweep", sweep_flag, "Exponent ranges, e.g. n=0..3,m=0..3,l=0..3");
  verify->add_flag("--allow-any-signature", any_signature, "Use |g| for every axis regardless of sign");
  verify->add_option("--basis", basis_flag, "Gamma basis: dirac|chiral");
  verify->add_flag("--exact", exact, "Embeddings must match without rescaling");
  verify->add_option("--jobs", jobs, "Worker threads");
  verify->add_flag("--timing", timing, "Include per-row timings in the JSON report");
  verify->add_option("--json", json_out, "Write the JSON report here");

  // nf
  auto* nf = app.add_subcommand("nf", "Normal form of a noncommutative expression");
  std::string nf_expr, metric_file, mode_flag = "completed", env_flag;
  bool symbolic = false;
  std::string nf_algebra = "m1";
  nf->add_option("expr", nf_expr, "Expression text")->required();
  nf->add_option("--metric", metric_file, "Metric JSON file {\"g00\": \"1\", ...}");
  nf->add_flag("--symbolic", symbolic, "Fully symbolic metric");
  nf->add_option("--algebra", nf_algebra, "m1|m2");
  nf->add_option("--mode", mode_flag, "strict|completed");
  nf->add_option("--env", env_flag, "Exponent values, e.g. n=2");

  // dispersion
  auto* disp = app.add_subcommand("dispersion", "Plane-wave dispersion for the 1+1 q-Dirac operator");
  std::string q_text, k_text, conv_flag = "basic";
  int order = 12;
  disp->add_option("--q", q_text, "Rational q")->required();
  disp->add_option("--k", k_text, "Rational k")->required();
  disp->add_option("--order", order, "Series order N");
  disp->add_option("--convention", conv_flag, "basic|symmetric");

  // pbw
  auto* pbw = app.add_subcommand("pbw", "Overlap (confluence) report for the rewriting system");
  std::string pbw_metric, pbw_algebra = "m1", pbw_mode = "completed", pbw_json;
  bool pbw_symbolic = false;
  int max_degree = 3;
  pbw->add_option("--metric", pbw_metric, "Metric JSON file");
  pbw->add_flag("--symbolic", pbw_symbolic, "Fully symbolic metric");
  pbw->add_option("--max-degree", max_degree, "Overlap word length");
  pbw->add_option("--algebra", pbw_algebra, "m1|m2");
  pbw->add_option("--mode", pbw_mode, "strict|completed");
  pbw->add_option("--json", pbw_json, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto parse_mode = [](const std::string& s) {
    if (s == "strict") return Mode::strict;
    if (s == "completed") return Mode::completed;
    throw UsageError("--mode must be strict or completed");
  };
  auto metric_from = [](const std::string& file, bool sym) {
    if (sym == !file.empty()) throw UsageError("give exactly one of --metric FILE or --symbolic");
    return sym ? MetricSpec::symbolic() : load_metric(file);
  };

  try {
    if (*verify) {
      auto suite = suite_from_string(suite_name);
      if (!suite) throw UsageError("unknown suite '" + suite_name + "'");
      SuiteOptions opt;
      opt.algebra = parse_algebra(algebra_flag);
      if (!sweep_flag.empty()) opt.sweep = parse_sweep(sweep_flag);
      opt.allow_any_signature = any_signature;
      if (basis_flag != "dirac" && basis_flag != "chiral") throw UsageError("--basis must be dirac or chiral");
      opt.basis = basis_flag == "dirac" ? GammaBasis::dirac : GammaBasis::chiral;
      opt.scale_free = !exact;
      opt.jobs = jobs;
      opt.timing = timing;
      VerdictReport rep = run_suite(load_tables(tables), *suite, opt);
      print_report(rep);
      if (!json_out.empty()) write_file(json_out, rep.to_json());
      return rep.any_fail() ? kExitFail : 0;
    }

    if (*nf) {
      MetricSpec g = metric_from(metric_file, symbolic);
      std::map<std::string, long> env;
      if (!env_flag.empty()) {
        for (const auto& [k, v] : parse_sweep(env_flag)) env[k] = v.front();
      }
      auto alg = parse_algebra(nf_algebra);
      RewriteSystem rs = build_rewrite_system(relations(g, *alg), parse_mode(mode_flag));
      std::cout << normal_form(parse_nc(nf_expr, env), rs).str() << "\n";
      return 0;
    }

    if (*disp) {
      QConvention conv;
      if (conv_flag == "basic") {
        conv = QConvention::basic;
      } else if (conv_flag == "symmetric") {
        conv = QConvention::symmetric;
      } else {
        throw UsageError("--convention must be basic or symmetric");
      }
      CoeffExpr q = parse_coeff(q_text), k = parse_coeff(k_text);
      if (!q.is_constant() || !k.is_constant()) throw UsageError("--q and --k must be numbers");
      DispersionResult d = dispersion_1p1(q, k, order, conv);
      CoeffExpr expected = q * q * k * k;
      std::cout << "det(i*omega*gamma0 + i*k*q*gammax) = " << d.determinant.str() << "\n"
                << "omega^2 = " << d.omega_squared.str() << " (multiplicity " << d.multiplicity << ")\n"
                << "q^2*k^2 = " << expected.str() << "\n";
      if (d.residual) std::cout << "residual (order " << order << ", |t|,|x| <= 1) = " << *d.residual << "\n";
      for (const auto& n : d.notes) std::cout << "  " << n << "\n";
      bool ok = d.omega_squared == expected && d.residual && *d.residual < 1e-8;
      std::cout << (ok ? "PASS" : "FAIL") << "\n";
      return ok ? 0 : kExitFail;
    }

    if (*pbw) {
      MetricSpec g = metric_from(pbw_metric, pbw_symbolic);
      auto alg = parse_algebra(pbw_algebra);
      std::string label = pbw_symbolic ? "symbolic" : pbw_metric;
      VerdictReport rep = confluence_report(g, *alg, parse_mode(pbw_mode), max_degree, label);
      const RowVerdict& r = rep.rows.front();
      std::cout << to_string(r.status) << "  " << label << " " << to_string(*alg) << "\n";
      if (auto it = r.detail.find("overlaps_checked"); it != r.detail.end()) {
        std::cout << "overlaps checked: " << it->second << ", obstructions: " << r.obstructions.size() << "\n";
      }
      for (const auto& ob : r.obstructions) {
        std::cout << "  " << ob.at("overlap") << ": residual " << ob.at("residual") << "\n"
                  << "      " << ob.at("conditions") << "\n";
      }
      for (const auto& n : r.notes) std::cout << "  " << n << "\n";
      if (!pbw_json.empty()) write_file(pbw_json, rep.to_json());
      return r.status == Status::pass ? 0 : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "metriq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "metriq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SyntaxError& e) {
    std::cerr << "metriq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "metriq: " << e.what() << "\n";
    return kExitFail;
  }
  return 0;
}
