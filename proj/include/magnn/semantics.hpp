#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "magnn/concept.hpp"
#include "magnn/dataset.hpp"
#include "magnn/graph.hpp"

namespace magnn {

/// A concept compiled against a signature for repeated evaluation on
/// Boolean graphs.
class ConceptEvaluator {
 public:
  /// Throws SignatureMismatch for predicates missing from `sig`.
  ConceptEvaluator(const Concept& c, const Signature& sig);

  /// (D, v) |= C. EXISTSU slots are assigned distinct successors by maximum
  /// bipartite matching.
  bool holds(const ColoredGraph& g, VertexId v) const;

  /// Necessary conditions read off the top-level conjuncts: unary atoms that
  /// must label the vertex and degree bounds per colour and direction.
  struct RootFilter {
    std::uint64_t required_unary = 0;
    std::vector<int> min_out, max_out, min_in, max_in;  // per colour
  };
  const RootFilter& root_filter() const { return filter_; }

  /// False when the root filter alone rules the vertex out.
  bool may_hold(const ColoredGraph& g, VertexId v) const;

 private:
  struct Node {
    ConceptKind kind;
    std::uint32_t index = 0;  // unary or binary predicate index
    bool inverse = false;
    int n = 0;
    int m = 0;
    std::vector<std::uint32_t> children;
  };

  std::uint32_t compile(const Concept& c, const Signature& sig);
  bool eval(std::uint32_t node, const ColoredGraph& g, VertexId v) const;
  void build_filter(const Concept& c, const Signature& sig);

  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  RootFilter filter_;
};

/// (d, a) |= c. Throws UnknownConstant when a is not in con(d).
bool satisfies(const Dataset& d, const Signature& sig, std::string_view constant, const Concept& c);

/// T_r(d) = { head(a) | a in con(d), (d, a) |= body }.
Dataset immediate_consequences(const Rule& r, const Dataset& d, const Signature& sig);

/// Union of T_r(d) over a program.
Dataset immediate_consequences(std::span<const Rule> program, const Dataset& d, const Signature& sig);

/// Throws SignatureMismatch unless the head is a unary predicate of `sig`.
std::size_t head_index(const Rule& r, const Signature& sig);

}  // namespace magnn
