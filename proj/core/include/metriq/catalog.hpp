#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "metriq/clifford.hpp"
#include "metriq/heis.hpp"
#include "metriq/status.hpp"

namespace metriq {

enum class AlgebraChoice { m1, m2, either };
std::string_view to_string(AlgebraChoice a);

using KeyValue = std::variant<long, std::string>;

struct TableRow {
  std::string table_id;
  std::size_t index = 0;
  /// Row label as printed, e.g. {"j": 1, "k": 1}.
  std::map<std::string, KeyValue> key;
  AlgebraChoice algebra = AlgebraChoice::either;
  /// True when the row overrides the table-level algebra.
  bool algebra_override = false;
  /// Parameter -> coefficient text. Names g00..g33 are metric components.
  std::map<std::string, std::string> bindings;
  std::optional<std::string> target;
  std::optional<std::string> expected_dirac;
  /// Exponent variables and their default values.
  std::map<std::string, std::vector<long>> sweep;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct Table {
  std::string table_id;
  AlgebraChoice algebra = AlgebraChoice::either;
  std::vector<TableRow> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// Parses one data file's text. `source` labels errors. Throws SchemaError.
Table parse_table(const std::string& text, const std::string& source = "<memory>");
/// Serializes with sorted keys; parse_table(save_table(t)) == t.
std::string save_table(const Table& t);

/// Rows of a single file, or of every *.json table file in a directory
/// (sorted by file name). Throws SchemaError.
std::vector<TableRow> load_tables(const std::string& path);

enum class Suite { embeddings, dirac, confluence, all };
std::string_view to_string(Suite s);
std::optional<Suite> suite_from_string(std::string_view s);

struct SuiteOptions {
  /// Only rows usable in this algebra.
  std::optional<Algebra> algebra;
  /// Replaces the row's values for each listed exponent variable it sweeps.
  std::map<std::string, std::vector<long>> sweep;
  bool allow_any_signature = false;
  GammaBasis basis = GammaBasis::dirac;
  bool scale_free = true;
  unsigned jobs = 1;
  bool timing = false;
};

struct RowVerdict {
  std::string suite;
  std::string table_id;
  std::size_t row_index = 0;
  std::map<std::string, KeyValue> key;
  std::string algebra;
  std::map<std::string, long> instance;
  Status status = Status::fail;
  std::optional<std::string> matched;
  std::optional<std::string> scale;
  /// Suite-specific text fields (computed operators, residuals, ...).
  std::map<std::string, std::string> detail;
  /// Confluence only: one entry per unresolved overlap.
  std::vector<std::map<std::string, std::string>> obstructions;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
};

struct VerdictReport {
  std::vector<RowVerdict> rows;
  bool timing = false;

  std::map<std::string, std::size_t> counts() const;
  bool any_fail() const;
  /// Schema "metriq.report/1", keys sorted, two-space indent, trailing newline.
  std::string to_json() const;
};

VerdictReport run_suite(const std::vector<TableRow>& rows, Suite suite, const SuiteOptions& opt = {});

/// Single-entry confluence report for one metric, as used by the pbw command.
VerdictReport confluence_report(const MetricSpec& g, Algebra a, Mode mode, int max_degree,
                                const std::string& label);

/// Metric file: JSON object {"g00": coeff-text, ...}. Throws SchemaError.
MetricSpec load_metric(const std::string& path);

}  // namespace metriq
