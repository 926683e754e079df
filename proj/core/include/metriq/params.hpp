#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace metriq {

/// A named commuting scalar parameter of the coefficient field.
struct Param {
  std::string name;
  /// Whether the symbol may appear under a square root (fractional exponents).
  bool positive_declared = false;
};

/// Process-wide parameter table. Registration is append-only and thread-safe.
///
/// The reserved names q, hbar, Psi, Pi, Phi (positive) and the ten metric
/// components g00..g33 (not positive) are registered on first use.
/// Identifiers that were never declared behave as non-positive parameters.
class ParamRegistry {
 public:
  static ParamRegistry& global();

  /// Declares a parameter. Re-declaring with a different positivity throws.
  void declare(std::string_view name, bool positive);
  bool is_positive(std::string_view name) const;
  bool is_declared(std::string_view name) const;
  std::vector<Param> all() const;

  static bool is_reserved(std::string_view name);

 private:
  ParamRegistry();
  struct Impl;
  Impl* impl_;
};

/// Names of the metric components in canonical order (g00, g01, ..., g33, mu <= nu).
const std::vector<std::string>& metric_component_names();

}  // namespace metriq
