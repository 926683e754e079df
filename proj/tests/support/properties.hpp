#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace metriq::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && cases > 0; }
};

inline constexpr std::uint64_t kPropertySeed = 0x6d657472697131ULL;

/// nf(nf(p)) = nf(p); on confluent systems every output word is ordered.
PropertyResult prop_nf_idempotence(int cases, std::uint64_t seed = kPropertySeed);
/// nf(a p + b r) = a nf(p) + b nf(r).
PropertyResult prop_nf_linearity(int cases, std::uint64_t seed = kPropertySeed);
/// parse(str(v)) = v for coefficients, noncommutative polynomials and operators.
PropertyResult prop_parser_roundtrip(int cases, std::uint64_t seed = kPropertySeed);
/// Normal form over a symbolic metric, then substitution, equals the normal
/// form computed over the substituted metric.
PropertyResult prop_subst_nf(int cases, std::uint64_t seed = kPropertySeed);
/// For words of length <= 4 over a 3-letter subalphabet, every reduction
/// order ends at normal_form's answer (systems with no obstructions).
PropertyResult prop_bfs_oracle(int cases, std::uint64_t seed = kPropertySeed);

std::vector<PropertyResult> run_acceptance_properties(int cases);

}  // namespace metriq::testing
