#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "magnn/concept.hpp"
#include "magnn/dataset.hpp"
#include "magnn/model.hpp"
#include "magnn/rules.hpp"

namespace magnn {

/// C_l^c: TOP, the unary atoms on c and, for l >= 1 and every binary
/// predicate P in which c has n > 0 neighbours c_1 < ... < c_n,
/// EXISTSU n P.(C_{l-1}^{c_1}; ...; C_{l-1}^{c_n}) MAXDEG n. Neighbours are
/// successors for `out` and predecessors (role P^-) for `in`. Throws
/// UnknownConstant when c is not in con(d).
Concept build_concept(const Dataset& d, std::string_view constant, int level,
                      Direction dir = Direction::out);

/// Atoms plus one per quantifier node, summed over all slots; TOP counts 0.
std::size_t concept_size(const Concept& c);

enum class Strategy { restricted_unary, restricted_unary_exist, full_omega, full_omega_pruned };

std::string_view to_string(Strategy s);

struct Explanation {
  Fact fact;
  Rule rule;
  std::optional<RestrictedRule> restricted;  // set for the restricted strategies
  Strategy strategy = Strategy::full_omega;
  std::size_t body_concepts = 0;
  Dataset witness;  // dataset the rule was built from
};

struct ExplainOptions {
  std::size_t prune_budget = 0;  // candidate removals tried; 0 disables pruning
  bool relax_bounds = false;
  int relax_limit = 4;  // maximum increase of any single MAXDEG bound
};

inline constexpr std::size_t kUnboundedBudget = std::numeric_limits<std::size_t>::max();

/// Sound rule deriving `fact` on `d`: the restricted rule on the unary facts
/// of the constant, then with its outgoing predicates added, then
/// C_L^a => A. Throws PreconditionError unless the model predicts `fact`.
Explanation explain(const MagnnModel& m, const Dataset& d, const Fact& fact,
                    const ExplainOptions& opts = {});

/// Greedy first-improvement removal over the L-hop neighbourhood: unary
/// facts in canonical order, then whole neighbour groups of one constant and
/// predicate. A removal is kept while the model still predicts `fact`. The
/// concept is rebuilt on the pruned dataset and kept only if it still holds
/// at the constant on `d`.
Explanation prune_explanation(const MagnnModel& m, const Dataset& d, const Fact& fact,
                              std::size_t budget);

/// Raises MAXDEG bounds one step at a time while the model still predicts
/// the head on the tree model of the body padded with fact-free neighbours.
Rule relax_bounds(const MagnnModel& m, const Rule& r, int limit);

/// A dataset in which the Ω concept holds at `root`: one fresh constant per
/// slot, and max_degree - n extra fact-free neighbours per EXISTSU node.
Dataset tree_model(const Concept& c, const std::string& root);

}  // namespace magnn
