#include "magnn/soundness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <set>
#include <thread>

#include "magnn/error.hpp"

namespace magnn {

std::vector<AnchoredDataset> base_datasets(const RestrictedRule& r, const Signature& sig,
                                           Direction dir) {
  check_signature(r, sig);
  const std::string a = "a";
  const std::string b = "b";
  if (r.body_size() > 0) {
    AnchoredDataset out{{}, a};
    for (const auto& u : r.unary) out.data.insert(Fact::unary(u, a));
    for (const auto& p : r.exist) out.data.insert(Fact::binary(p, a, b));
    return {out};
  }
  if (sig.colours() > 0) {
    const auto& p = sig.binary().front();
    Fact f = dir == Direction::out ? Fact::binary(p, b, a) : Fact::binary(p, a, b);
    return {AnchoredDataset{Dataset{f}, a}};
  }
  // Without binary predicates a constant is mentioned only through its own
  // unary facts, so the minimal datasets are the singletons {A'(a)}.
  std::vector<AnchoredDataset> out;
  for (const auto& u : sig.unary()) out.push_back({Dataset{Fact::unary(u, a)}, a});
  return out;
}

AnchoredDataset base_dataset(const RestrictedRule& r, const Signature& sig, Direction dir) {
  return base_datasets(r, sig, dir).front();
}

namespace {

SoundnessVerdict check_unchecked(const MagnnModel& m, const RestrictedRule& r) {
  SoundnessVerdict v;
  v.rule = r;
  v.sound = true;
  for (auto& base : base_datasets(r, m.signature, m.direction)) {
    if (!apply(m, base.data).contains(Fact::unary(r.head, base.anchor))) {
      v.sound = false;
      v.witness = std::move(base);
      break;
    }
  }
  return v;
}

template <typename F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

SoundnessVerdict check_restricted(const MagnnModel& m, const RestrictedRule& r) {
  require_monotone(m);
  return check_unchecked(m, r);
}

std::vector<RestrictedRule> all_restricted_rules(const Signature& sig, std::size_t max_body_size) {
  const std::size_t du = sig.dim();
  const std::size_t dc = sig.colours();
  std::vector<RestrictedRule> out;
  for (const auto& head : sig.unary()) {
    for (std::uint64_t um = 0; um < (std::uint64_t{1} << du); ++um) {
      for (std::uint64_t cm = 0; cm < (std::uint64_t{1} << dc); ++cm) {
        if (static_cast<std::size_t>(std::popcount(um) + std::popcount(cm)) > max_body_size) continue;
        RestrictedRule r;
        r.head = head;
        for (std::size_t i = 0; i < du; ++i)
          if (um >> i & 1) r.unary.insert(sig.unary()[i]);
        for (std::size_t i = 0; i < dc; ++i)
          if (cm >> i & 1) r.exist.insert(sig.binary()[i]);
        out.push_back(std::move(r));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const RestrictedRule& x, const RestrictedRule& y) {
    if (x.body_size() != y.body_size()) return x.body_size() < y.body_size();
    return x < y;
  });
  return out;
}

ExtractionReport enumerate_sound(const MagnnModel& m, std::size_t max_body_size,
                                 const EnumerateOptions& opts) {
  require_monotone(m);
  ExtractionReport report;
  const std::size_t limit = m.signature.dim() + m.signature.colours();
  if (max_body_size > limit) {
    report.warning = "maximum body size " + std::to_string(max_body_size) + " clamped to " +
                     std::to_string(limit);
    max_body_size = limit;
  }
  report.max_body_size = max_body_size;

  auto candidates = all_restricted_rules(m.signature, max_body_size);
  report.candidates_visited = candidates.size();
  std::map<std::string, std::vector<const RestrictedRule*>> found;  // by head
  auto subsumed = [&](const RestrictedRule& r) {
    auto it = found.find(r.head);
    if (it == found.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](const RestrictedRule* s) { return subsumes_restricted(*s, r); });
  };

  std::vector<RestrictedRule> minimal;
  minimal.reserve(candidates.size());
  std::size_t begin = 0;
  while (begin < candidates.size()) {
    std::size_t end = begin;
    const std::size_t size = candidates[begin].body_size();
    while (end < candidates.size() && candidates[end].body_size() == size) ++end;

    // Subsumption is tested against earlier levels only; rules of equal size
    // subsume each other only when identical.
    std::vector<std::size_t> pending;
    std::vector<char> pruned(end - begin, 0);
    for (std::size_t i = begin; i < end; ++i) {
      if (opts.prune && subsumed(candidates[i]))
        pruned[i - begin] = 1;
      else
        pending.push_back(i);
    }
    std::vector<char> sound(pending.size(), 0);
    parallel_for(pending.size(), opts.jobs,
                 [&](std::size_t k) { sound[k] = check_unchecked(m, candidates[pending[k]]).sound; });
    report.candidates_checked += pending.size();

    std::size_t k = 0;
    std::vector<const RestrictedRule*> level;
    for (std::size_t i = begin; i < end; ++i) {
      if (pruned[i - begin]) {
        ++report.subsumed_sound;
        continue;
      }
      if (!sound[k++]) continue;
      if (!opts.prune && subsumed(candidates[i])) {
        ++report.subsumed_sound;
        continue;
      }
      minimal.push_back(candidates[i]);
      level.push_back(&candidates[i]);
    }
    for (const auto* r : level) found[r->head].push_back(r);
    begin = end;
  }

  for (const auto& r : minimal) ++report.per_body_size[r.body_size()];
  report.minimal_sound = std::move(minimal);
  return report;
}

namespace {

// Each disjunct is a list of conjuncts that are TOP, atoms or EXISTS P.TOP.
using Disjuncts = std::vector<std::vector<Concept>>;

Disjuncts outer_dnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::top: return {{}};
    case ConceptKind::atomic: return {{c}};
    case ConceptKind::exists:
    case ConceptKind::at_least: return {{Concept::exists(c.role(), Concept::top())}};
    case ConceptKind::disjunction: {
      Disjuncts out;
      for (const auto& part : c.children()) {
        auto sub = outer_dnf(part);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case ConceptKind::conjunction: {
      Disjuncts acc{{}};
      for (const auto& part : c.children()) {
        auto sub = outer_dnf(part);
        Disjuncts next;
        for (const auto& x : acc)
          for (const auto& y : sub) {
            auto joined = x;
            joined.insert(joined.end(), y.begin(), y.end());
            next.push_back(std::move(joined));
          }
        acc = std::move(next);
      }
      return acc;
    }
    default: throw FragmentViolation("concept is not in ELUQ: " + to_text(c));
  }
}

}  // namespace

std::vector<RestrictedRule> reduce_eluq(const Rule& r) {
  if (!is_eluq(r.body)) throw FragmentViolation("rule body is not in ELUQ: " + to_text(r.body));
  std::set<RestrictedRule> out;
  for (const auto& conjuncts : outer_dnf(r.body)) {
    RestrictedRule rr;
    rr.head = r.head;
    for (const auto& c : conjuncts) {
      if (c.kind() == ConceptKind::atomic) rr.unary.insert(c.name());
      if (c.kind() == ConceptKind::exists) rr.exist.insert(c.role().predicate);
    }
    out.insert(std::move(rr));
  }
  return {out.begin(), out.end()};
}

EluqVerdict check_eluq(const MagnnModel& m, const Rule& r) {
  require_monotone(m);
  EluqVerdict v{true, r, {}};
  for (const auto& part : reduce_eluq(r)) {
    v.parts.push_back(check_unchecked(m, part));
    v.sound = v.sound && v.parts.back().sound;
  }
  return v;
}

}  // namespace magnn
