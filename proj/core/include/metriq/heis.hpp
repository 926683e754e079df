#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metriq/coeff_expr.hpp"
#include "metriq/ncpoly.hpp"
#include "metriq/status.hpp"

namespace metriq {

enum class Algebra { m1, m2 };
std::string_view to_string(Algebra a);

/// Inverse-metric components g^{mu nu} (mu <= nu), zero when not given.
class MetricSpec {
 public:
  /// Sign and magnitude of a diagonal component, g^{mu mu} = sign * magnitude.
  struct Axis {
    int sign = 0;
    CoeffExpr magnitude;
  };

  MetricSpec() = default;
  static MetricSpec minkowski();
  /// Every component a free parameter g00, g01, ..., g33.
  static MetricSpec symbolic();
  /// Diagonal free parameters, off-diagonal zero.
  static MetricSpec diagonal_symbolic();
  /// Components taken from bindings on the names g00..g33; others are zero.
  /// Bindings on other names are ignored.
  static MetricSpec from_bindings(const Bindings& b);

  const CoeffExpr& g(int mu, int nu) const;
  void set(int mu, int nu, CoeffExpr v);

  /// Sign and magnitude of g^{mu mu}; nullopt when the sign is not determined
  /// (a sum, a non-real scalar, or an odd power of a parameter of unknown sign).
  std::optional<Axis> axis(int mu) const;

  /// g00..g33 bound to the component values.
  Bindings bindings() const;

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

 private:
  std::array<CoeffExpr, 10> c_{};
};

/// Component name "g<mu><nu>" with mu <= nu.
std::string component_name(int mu, int nu);
/// Sign of a real monomial, when determined by the positivity declarations.
std::optional<int> monomial_sign(const CoeffExpr& e);

struct Relation {
  std::string name;
  std::pair<Generator, Generator> pair;
  /// Ideal generator asserted to be zero.
  NCPoly poly;
  /// The same generator with symbolic components, used to name vanishing coefficients.
  NCPoly symbolic;
};

struct RelationSet {
  Algebra algebra = Algebra::m1;
  std::vector<Relation> relations;
  const Relation* find(std::string_view name) const;
};

RelationSet relations_m1(const MetricSpec& g);
RelationSet relations_m2(const MetricSpec& g);
RelationSet relations(const MetricSpec& g, Algebra a);

enum class Mode { strict, completed };
std::string_view to_string(Mode m);

struct Rule {
  Word lhs;
  NCPoly rhs;
  /// Relation name, or "completion" for added commutation rules.
  std::string origin;
};

class RewriteSystem {
 public:
  RewriteSystem(std::vector<Rule> rules, Mode mode, GeneratorOrder order);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  Mode mode() const noexcept { return mode_; }
  const GeneratorOrder& order() const noexcept { return order_; }
  /// Rule whose leading word is (a, b), or nullptr.
  const Rule* rule_for(Generator a, Generator b) const {
    int i = table_[index(a)][index(b)];
    return i < 0 ? nullptr : &rules_[i];
  }

 private:
  std::vector<Rule> rules_;
  Mode mode_;
  GeneratorOrder order_;
  std::array<std::array<int, kNumGenerators>, kNumGenerators> table_;
};

/// Orients every relation at its inverted word. Throws DegenerateMetric.
RewriteSystem build_rewrite_system(const RelationSet& rels, Mode mode,
                                   const GeneratorOrder& order = GeneratorOrder::pbw());

NCPoly normal_form(const NCPoly& p, const RewriteSystem& rs);

struct Obstruction {
  Word overlap;
  NCPoly via_left;   // reduce ab first
  NCPoly via_right;  // reduce bc first
  NCPoly residual;   // via_left - via_right
};

struct ObstructionReport {
  std::size_t overlaps_checked = 0;
  std::vector<Obstruction> obstructions;
  bool resolved() const noexcept { return obstructions.empty(); }
};

/// Reduces every overlap abc (ab, bc leading words) both ways. Rules have
/// two-letter leading words, so degrees above 3 add no further overlaps.
ObstructionReport check_confluence(const RewriteSystem& rs, int max_overlap_degree = 3);

struct EmbeddingCandidate {
  std::string relation;
  NCPoly reduced;
  /// reduced = scale * target when matched.
  std::optional<CoeffExpr> scale;
  /// reduced - s * target for the best s found from the leading word.
  NCPoly residual;
};

struct EmbeddingVerdict {
  Status status = Status::fail;
  std::optional<std::string> matched;
  std::optional<CoeffExpr> scale;
  /// Set when the match only appears after binding hbar to 1.
  bool hbar_dropped = false;
  std::vector<EmbeddingCandidate> candidates;
  std::vector<std::string> notes;
};

/// Substitutes bindings into each relation and looks for one equal to target,
/// up to a nonzero coefficient when scale_free. When nothing matches and the
/// target carries hbar, the search is repeated with hbar = 1 and reported as
/// a failed match with a note.
EmbeddingVerdict verify_embedding(const RelationSet& rels, const Bindings& bindings, const NCPoly& target,
                                  bool scale_free = true);

/// Sparse matrix stored by columns: column j maps row index to entry.
using SparseColumns = std::vector<std::map<int, CoeffExpr>>;

struct VermaResidual {
  std::string relation;
  std::array<int, 3> vector;  // (d, e, f) of p_x^d p_y^e p_z^f v0
  NCPoly value;               // nonzero image, as a polynomial in p's
};

struct VermaTruncation {
  int max_degree = 0;
  std::vector<std::array<int, 3>> basis;
  std::array<SparseColumns, kNumGenerators> action;
  /// Defining relations evaluated on vectors of degree <= max_degree - 2.
  std::vector<VermaResidual> residuals;
  std::size_t checks = 0;
  bool interior_ok() const noexcept { return residuals.empty(); }
  int basis_index(int d, int e, int f) const;
};

/// Truncated Verma module on p_x^d p_y^e p_z^f v0 with x, y, z killing v0.
/// Throws DegenerateMetric when the completed system cannot be built in the
/// momentum-first order.
VermaTruncation verma_truncate(const MetricSpec& g, Algebra a, int max_degree);

struct SylvesterResult {
  MetricSpec metric;
  std::vector<NCPoly> relations;
};

/// Rescaled coordinates for the quadratic form alpha t^2 - beta x^2 - gamma y^2 - delta z^2.
SylvesterResult sylvester_rescale(const CoeffExpr& alpha, const CoeffExpr& beta, const CoeffExpr& gamma,
                                  const CoeffExpr& delta);

/// |e| for a monomial of determined sign. Throws UnsupportedRoot otherwise.
CoeffExpr monomial_abs(const CoeffExpr& e);

}  // namespace metriq
