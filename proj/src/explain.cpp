#include "magnn/explain.hpp"

#include <map>
#include <set>

#include "magnn/error.hpp"
#include "magnn/semantics.hpp"
#include "magnn/soundness.hpp"

namespace magnn {

namespace {

class ConceptBuilder {
 public:
  ConceptBuilder(const Dataset& d, Direction dir) {
    for (const auto& f : d) {
      if (!f.is_binary()) {
        unary_[f.first].push_back(f.predicate);
        continue;
      }
      if (dir == Direction::out)
        neighbours_[f.first][f.predicate].push_back(f.second);
      else
        neighbours_[f.second][f.predicate].push_back(f.first);
    }
    for (auto& [c, preds] : neighbours_)
      for (auto& [p, list] : preds) std::sort(list.begin(), list.end());
    inverse_ = dir == Direction::in;
  }

  Concept build(const std::string& c, int level) {
    auto key = std::make_pair(c, level);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Concept> parts{Concept::top()};
    if (auto it = unary_.find(c); it != unary_.end())
      for (const auto& a : it->second) parts.push_back(Concept::atomic(a));
    if (level > 0) {
      if (auto it = neighbours_.find(c); it != neighbours_.end()) {
        for (const auto& [p, list] : it->second) {
          std::vector<Concept> slots;
          for (const auto& n : list) slots.push_back(build(n, level - 1));
          const int count = static_cast<int>(list.size());
          parts.push_back(Concept::exists_unique(Role{p, inverse_}, std::move(slots), count));
        }
      }
    }
    Concept out = parts.size() == 1 ? parts.front() : Concept::conjunction(std::move(parts));
    memo_.emplace(key, out);
    return out;
  }

 private:
  std::map<std::string, std::vector<std::string>> unary_;  // sorted by Dataset order
  std::map<std::string, std::map<std::string, std::vector<std::string>>> neighbours_;
  std::map<std::pair<std::string, int>, Concept> memo_;
  bool inverse_ = false;
};

Explanation make_restricted(const RestrictedRule& r, const Fact& fact, Strategy s, const Dataset& d) {
  Rule rule = restricted_to_rule(r);
  Explanation e{fact, rule, r, s, concept_size(rule.body), {}};
  for (const auto& f : d) {
    if (f.first != fact.first) continue;
    if (!f.is_binary() ? r.unary.count(f.predicate) > 0 : r.exist.count(f.predicate) > 0)
      e.witness.insert(f);
  }
  return e;
}

void check_fact(const MagnnModel& m, const Dataset& d, const Fact& fact) {
  require_monotone(m);
  if (fact.is_binary()) throw PreconditionError("only unary facts can be explained: " + to_string(fact));
  if (!m.signature.unary_index(fact.predicate))
    throw SignatureMismatch("unknown unary predicate '" + fact.predicate + "'");
  if (!apply(m, d).contains(fact))
    throw PreconditionError("the model does not predict " + to_string(fact));
}

Explanation explain_checked(const MagnnModel& m, const Dataset& d, const Fact& fact) {
  const std::string& a = fact.first;
  RestrictedRule r{fact.predicate, {}, {}};
  for (const auto& f : d)
    if (!f.is_binary() && f.first == a) r.unary.insert(f.predicate);
  if (check_restricted(m, r).sound) return make_restricted(r, fact, Strategy::restricted_unary, d);

  for (const auto& f : d)
    if (f.is_binary() && f.first == a) r.exist.insert(f.predicate);
  if (!r.exist.empty() && check_restricted(m, r).sound)
    return make_restricted(r, fact, Strategy::restricted_unary_exist, d);

  const int level = static_cast<int>(m.depth());
  Dataset local = khop_neighborhood(d, a, level, m.direction);
  Rule rule{build_concept(local, a, level, m.direction), fact.predicate};
  return Explanation{fact, rule, std::nullopt, Strategy::full_omega, concept_size(rule.body),
                     std::move(local)};
}

void collect_bounds(const Concept& c, std::vector<int>& bounds) {
  if (c.kind() == ConceptKind::exists_unique) bounds.push_back(c.max_degree());
  for (const auto& ch : c.children()) collect_bounds(ch, bounds);
}

Concept with_bounds(const Concept& c, const std::vector<int>& bounds, std::size_t& next) {
  switch (c.kind()) {
    case ConceptKind::conjunction: {
      std::vector<Concept> parts;
      for (const auto& ch : c.children()) parts.push_back(with_bounds(ch, bounds, next));
      return Concept::conjunction(std::move(parts));
    }
    case ConceptKind::exists_unique: {
      int bound = bounds[next++];
      std::vector<Concept> slots;
      for (const auto& ch : c.children()) slots.push_back(with_bounds(ch, bounds, next));
      return Concept::exists_unique(c.role(), std::move(slots), bound);
    }
    default: return c;
  }
}

void grow_tree(const Concept& c, const std::string& at, Dataset& out, std::size_t& fresh) {
  switch (c.kind()) {
    case ConceptKind::top: return;
    case ConceptKind::atomic: out.insert(Fact::unary(c.name(), at)); return;
    case ConceptKind::conjunction:
      for (const auto& ch : c.children()) grow_tree(ch, at, out, fresh);
      return;
    case ConceptKind::exists_unique: {
      auto edge = [&](const std::string& other) {
        out.insert(c.role().inverse ? Fact::binary(c.role().predicate, other, at)
                                    : Fact::binary(c.role().predicate, at, other));
      };
      for (const auto& slot : c.children()) {
        std::string child = "t" + std::to_string(fresh++);
        edge(child);
        grow_tree(slot, child, out, fresh);
      }
      for (int k = c.count(); k < c.max_degree(); ++k) edge("t" + std::to_string(fresh++));
      return;
    }
    default: throw FragmentViolation("tree models exist only for Ω concepts: " + to_text(c));
  }
}

}  // namespace

Concept build_concept(const Dataset& d, std::string_view constant, int level, Direction dir) {
  if (!d.mentions(constant))
    throw UnknownConstant("constant '" + std::string(constant) + "' does not occur in the dataset");
  if (level < 0) throw PreconditionError("concept level must be non-negative");
  return ConceptBuilder(d, dir).build(std::string(constant), level);
}

std::size_t concept_size(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::top: return 0;
    case ConceptKind::atomic: return 1;
    case ConceptKind::conjunction:
    case ConceptKind::disjunction: {
      std::size_t n = 0;
      for (const auto& ch : c.children()) n += concept_size(ch);
      return n;
    }
    default: {
      std::size_t n = 1;
      for (const auto& ch : c.children()) n += concept_size(ch);
      return n;
    }
  }
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::restricted_unary: return "restricted-unary";
    case Strategy::restricted_unary_exist: return "restricted-unary-exist";
    case Strategy::full_omega: return "full-omega";
    case Strategy::full_omega_pruned: return "full-omega-pruned";
  }
  return "?";
}

Explanation explain(const MagnnModel& m, const Dataset& d, const Fact& fact, const ExplainOptions& opts) {
  check_fact(m, d, fact);
  Explanation e = explain_checked(m, d, fact);
  if (e.strategy != Strategy::full_omega) return e;
  if (opts.prune_budget > 0) e = prune_explanation(m, d, fact, opts.prune_budget);
  if (opts.relax_bounds) {
    e.rule = relax_bounds(m, e.rule, opts.relax_limit);
    e.body_concepts = concept_size(e.rule.body);
  }
  return e;
}

Explanation prune_explanation(const MagnnModel& m, const Dataset& d, const Fact& fact,
                              std::size_t budget) {
  check_fact(m, d, fact);
  Explanation base = explain_checked(m, d, fact);
  if (base.strategy != Strategy::full_omega || budget == 0) return base;

  const std::string& a = fact.first;
  const int level = static_cast<int>(m.depth());
  Dataset current = base.witness;
  std::set<std::vector<Fact>> tried;
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    std::vector<std::vector<Fact>> candidates;
    std::map<std::pair<std::string, std::string>, std::vector<Fact>> groups;  // (constant, P)
    for (const auto& f : current) {
      if (!f.is_binary())
        candidates.push_back({f});
      else if (m.direction == Direction::out)
        groups[{f.first, f.predicate}].push_back(f);
      else
        groups[{f.second, f.predicate}].push_back(f);
    }
    for (auto& [key, facts] : groups) candidates.push_back(std::move(facts));

    for (const auto& cand : candidates) {
      if (budget == 0) break;
      if (!tried.insert(cand).second) continue;
      --budget;
      Dataset next = current;
      for (const auto& f : cand) next.erase(f);
      if (apply(m, next).contains(fact)) {
        current = std::move(next);
        improved = true;
        break;
      }
    }
  }

  Dataset local = khop_neighborhood(current, a, level, m.direction);
  Rule rule{build_concept(local, a, level, m.direction), fact.predicate};
  if (rule.body == base.rule.body || !satisfies(d, m.signature, a, rule.body)) return base;
  return Explanation{fact, rule, std::nullopt, Strategy::full_omega_pruned, concept_size(rule.body),
                     std::move(local)};
}

Dataset tree_model(const Concept& c, const std::string& root) {
  Dataset out;
  std::size_t fresh = 0;
  grow_tree(c, root, out, fresh);
  return out;
}

Rule relax_bounds(const MagnnModel& m, const Rule& r, int limit) {
  require_monotone(m);
  if (!is_omega(r.body)) throw FragmentViolation("bound relaxation needs an Ω body");
  const std::string root = "r";
  auto predicted = [&](const Concept& body) {
    Dataset t = tree_model(body, root);
    // A body that is just TOP or has no facts at the root still needs the root.
    if (!t.mentions(root)) return false;
    return apply(m, t).contains(Fact::unary(r.head, root));
  };
  std::vector<int> bounds;
  collect_bounds(r.body, bounds);
  auto rebuild = [&] {
    std::size_t next = 0;
    return with_bounds(r.body, bounds, next);
  };
  if (!predicted(r.body)) return r;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const int original = bounds[i];
    while (bounds[i] - original < limit) {
      ++bounds[i];
      if (!predicted(rebuild())) {
        --bounds[i];
        break;
      }
    }
  }
  return Rule{rebuild(), r.head};
}

}  // namespace magnn
