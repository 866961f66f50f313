#include "magnn/semantics.hpp"

#include <algorithm>

#include "magnn/error.hpp"
#include "magnn/matching.hpp"

namespace magnn {

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max();

int eval_rank(ConceptKind k) {
  switch (k) {
    case ConceptKind::top: return 0;
    case ConceptKind::atomic: return 1;
    case ConceptKind::negation: return 2;
    case ConceptKind::exists:
    case ConceptKind::at_least:
    case ConceptKind::at_most: return 3;
    case ConceptKind::exists_unique: return 4;
    default: return 5;
  }
}

}  // namespace

ConceptEvaluator::ConceptEvaluator(const Concept& c, const Signature& sig) {
  root_ = compile(c, sig);
  filter_.min_out.assign(sig.colours(), 0);
  filter_.min_in.assign(sig.colours(), 0);
  filter_.max_out.assign(sig.colours(), kUnbounded);
  filter_.max_in.assign(sig.colours(), kUnbounded);
  if (c.kind() == ConceptKind::conjunction)
    for (const auto& part : c.children()) build_filter(part, sig);
  else
    build_filter(c, sig);
}

std::uint32_t ConceptEvaluator::compile(const Concept& c, const Signature& sig) {
  Node node;
  node.kind = c.kind();
  node.n = c.count();
  node.m = c.max_degree();
  switch (c.kind()) {
    case ConceptKind::atomic: {
      auto idx = sig.unary_index(c.name());
      if (!idx) throw SignatureMismatch("unknown unary predicate '" + c.name() + "' in concept");
      node.index = static_cast<std::uint32_t>(*idx);
      break;
    }
    case ConceptKind::exists:
    case ConceptKind::at_least:
    case ConceptKind::exists_unique:
    case ConceptKind::for_all:
    case ConceptKind::at_most: {
      auto idx = sig.binary_index(c.role().predicate);
      if (!idx)
        throw SignatureMismatch("unknown binary predicate '" + c.role().predicate + "' in concept");
      node.index = static_cast<std::uint32_t>(*idx);
      node.inverse = c.role().inverse;
      break;
    }
    default: break;
  }
  std::vector<std::pair<int, std::uint32_t>> kids;
  for (const auto& ch : c.children()) kids.emplace_back(eval_rank(ch.kind()), compile(ch, sig));
  // Cheap conjuncts first so evaluation fails fast; slot order is kept.
  if (c.kind() == ConceptKind::conjunction || c.kind() == ConceptKind::disjunction)
    std::stable_sort(kids.begin(), kids.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& k : kids) node.children.push_back(k.second);
  nodes_.push_back(std::move(node));
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void ConceptEvaluator::build_filter(const Concept& c, const Signature& sig) {
  auto tighten_min = [&](const Role& r, int n) {
    auto idx = *sig.binary_index(r.predicate);
    auto& v = r.inverse ? filter_.min_in : filter_.min_out;
    v[idx] = std::max(v[idx], n);
  };
  auto tighten_max = [&](const Role& r, int m) {
    auto idx = *sig.binary_index(r.predicate);
    auto& v = r.inverse ? filter_.max_in : filter_.max_out;
    v[idx] = std::min(v[idx], m);
  };
  switch (c.kind()) {
    case ConceptKind::atomic: {
      auto idx = *sig.unary_index(c.name());
      if (idx < 64) filter_.required_unary |= std::uint64_t{1} << idx;
      break;
    }
    case ConceptKind::exists:
    case ConceptKind::at_least: tighten_min(c.role(), c.count()); break;
    case ConceptKind::exists_unique:
      tighten_min(c.role(), c.count());
      tighten_max(c.role(), c.max_degree());
      break;
    case ConceptKind::at_most:
      if (c.child().kind() == ConceptKind::top) tighten_max(c.role(), c.count());
      break;
    default: break;
  }
}

bool ConceptEvaluator::may_hold(const ColoredGraph& g, VertexId v) const {
  auto label = g.label(v);
  for (std::size_t p = 0; p < label.size() && p < 64; ++p)
    if ((filter_.required_unary >> p & 1) && label[p] == 0.0) return false;
  for (std::size_t c = 0; c < g.colour_count(); ++c) {
    int out = static_cast<int>(g.successors(c, v).size());
    int in = static_cast<int>(g.predecessors(c, v).size());
    if (out < filter_.min_out[c] || out > filter_.max_out[c]) return false;
    if (in < filter_.min_in[c] || in > filter_.max_in[c]) return false;
  }
  return true;
}

bool ConceptEvaluator::holds(const ColoredGraph& g, VertexId v) const { return eval(root_, g, v); }

bool ConceptEvaluator::eval(std::uint32_t id, const ColoredGraph& g, VertexId v) const {
  const Node& node = nodes_[id];
  auto nbrs = [&] {
    return node.inverse ? g.predecessors(node.index, v) : g.successors(node.index, v);
  };
  switch (node.kind) {
    case ConceptKind::top: return true;
    case ConceptKind::atomic: return g.label(v)[node.index] != 0.0;
    case ConceptKind::conjunction:
      for (auto ch : node.children)
        if (!eval(ch, g, v)) return false;
      return true;
    case ConceptKind::disjunction:
      for (auto ch : node.children)
        if (eval(ch, g, v)) return true;
      return false;
    case ConceptKind::negation: return !eval(node.children.front(), g, v);
    case ConceptKind::exists: {
      for (VertexId u : nbrs())
        if (eval(node.children.front(), g, u)) return true;
      return false;
    }
    case ConceptKind::at_least:
    case ConceptKind::at_most: {
      auto list = nbrs();
      int count = 0;
      for (VertexId u : list) {
        if (eval(node.children.front(), g, u)) ++count;
        if (node.kind == ConceptKind::at_least && count >= node.n) return true;
        if (node.kind == ConceptKind::at_most && count > node.n) return false;
      }
      return node.kind == ConceptKind::at_most;
    }
    case ConceptKind::for_all: {
      for (VertexId u : nbrs())
        if (!eval(node.children.front(), g, u)) return false;
      return true;
    }
    case ConceptKind::exists_unique: {
      auto list = nbrs();
      const auto degree = static_cast<int>(list.size());
      if (degree > node.m || degree < node.n) return false;
      std::vector<std::vector<std::uint32_t>> adjacency(node.children.size());
      for (std::size_t slot = 0; slot < node.children.size(); ++slot) {
        for (std::uint32_t j = 0; j < list.size(); ++j)
          if (eval(node.children[slot], g, list[j])) adjacency[slot].push_back(j);
        if (adjacency[slot].empty()) return false;
      }
      return max_bipartite_matching(adjacency, list.size()) == node.children.size();
    }
  }
  return false;
}

bool satisfies(const Dataset& d, const Signature& sig, std::string_view constant, const Concept& c) {
  ColoredGraph g = encode(d, sig);
  auto v = g.vertex_of(constant);
  if (!v) throw UnknownConstant("constant '" + std::string(constant) + "' does not occur in the dataset");
  return ConceptEvaluator(c, sig).holds(g, *v);
}

std::size_t head_index(const Rule& r, const Signature& sig) {
  auto idx = sig.unary_index(r.head);
  if (!idx) throw SignatureMismatch("rule head '" + r.head + "' is not a unary predicate of the signature");
  return *idx;
}

Dataset immediate_consequences(std::span<const Rule> program, const Dataset& d, const Signature& sig) {
  ColoredGraph g = encode(d, sig);
  Dataset out;
  for (const Rule& r : program) {
    head_index(r, sig);
    ConceptEvaluator eval(r.body, sig);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (eval.holds(g, v)) out.insert(Fact::unary(r.head, g.constant(v)));
  }
  return out;
}

Dataset immediate_consequences(const Rule& r, const Dataset& d, const Signature& sig) {
  return immediate_consequences(std::span<const Rule>(&r, 1), d, sig);
}

}  // namespace magnn
