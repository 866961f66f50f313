#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "magnn/error.hpp"
#include "magnn/fuzz.hpp"
#include "magnn/matching.hpp"
#include "magnn/rules.hpp"
#include "magnn/semantics.hpp"

using namespace magnn;

namespace {

const Signature kThree({"A1", "A2", "A3"}, {"P1", "P2", "P3"});

Dataset seven_facts() {
  return parse_dataset("A1(a)\nP1(a,b1)\nP1(a,b2)\nP2(b3,a)\nA2(b2)\nP2(b2,c)\nP3(c,d)\n");
}

// Injective assignment of slots to successors by trying every permutation.
bool naive_exists_unique(const std::vector<std::set<std::string>>& succ_labels,
                         const std::vector<std::string>& slots, int max_degree) {
  if (static_cast<int>(succ_labels.size()) > max_degree) return false;
  if (slots.size() > succ_labels.size()) return false;
  std::vector<std::size_t> idx(succ_labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  do {
    bool ok = true;
    for (std::size_t s = 0; s < slots.size() && ok; ++s)
      ok = slots[s].empty() || succ_labels[idx[s]].contains(slots[s]);
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

}  // namespace

TEST(ConceptText, ParsesAllConstructors) {
  auto c = parse_concept("A1 AND (EXISTS P1.(A2) OR ATLEAST 2 P2.(TOP))");
  EXPECT_EQ(c.kind(), ConceptKind::conjunction);
  EXPECT_TRUE(is_eluq(c));
  EXPECT_FALSE(is_omega(c));
  auto u = parse_concept("EXISTSU 2 P1.(A1;TOP) MAXDEG 3");
  EXPECT_EQ(u.kind(), ConceptKind::exists_unique);
  EXPECT_EQ(u.count(), 2);
  EXPECT_EQ(u.max_degree(), 3);
  EXPECT_TRUE(is_omega(u));
  EXPECT_FALSE(is_eluq(u));
  EXPECT_FALSE(is_eluq(parse_concept("NOT (A1)")));
  EXPECT_EQ(parse_concept("EXISTS P1^-.(TOP)").role().inverse, true);
}

TEST(ConceptText, ParseErrorsCarryColumn) {
  try {
    parse_concept("A1 AND ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_GT(e.column(), 0u);
  }
  EXPECT_THROW(parse_rule("A1"), ParseError);
  EXPECT_THROW(parse_concept("EXISTSU 2 P1.(A1) MAXDEG 2"), ParseError);
}

TEST(ConceptText, RandomRoundTrip) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto r = random_eluq_rule(kThree, s, 3);
    auto text = to_text(r);
    auto back = parse_rule(text);
    EXPECT_EQ(to_text(back), text);
    EXPECT_EQ(canonical(back.body), canonical(r.body));
  }
}

TEST(ConceptText, CanonicalOrdering) {
  auto c = canonical(parse_concept("EXISTS P1.(TOP) AND A2 AND (A1 AND TOP) AND A2"));
  EXPECT_EQ(to_text(c), "TOP AND A1 AND A2 AND EXISTS P1.(TOP)");
}

TEST(ConceptText, DescriptionLogicString) {
  auto r = parse_rule("A1 AND EXISTS P1.(A2) => A3");
  EXPECT_EQ(to_dl(r), "A1 ⊓ ∃P1.A2 ⊑ A3");
}

TEST(Satisfaction, NestedExistsUniqueOnWorkedExample) {
  auto c = parse_concept("TOP AND A1 AND EXISTSU 2 P1.(TOP;TOP AND A2 AND EXISTSU 1 P2.(TOP) MAXDEG 1) MAXDEG 2");
  EXPECT_TRUE(satisfies(seven_facts(), kThree, "a", c));
  auto d = seven_facts();
  d.insert(Fact::binary("P1", "a", "b4"));
  EXPECT_FALSE(satisfies(d, kThree, "a", c));
  EXPECT_THROW(satisfies(d, kThree, "nope", c), UnknownConstant);
}

TEST(Satisfaction, AtLeastCountsDistinctSuccessors) {
  auto d = parse_dataset("P1(a,b)\nP1(a,c)\nA1(b)\nA1(c)\nP1(x,b)\n");
  EXPECT_TRUE(satisfies(d, kThree, "a", parse_concept("ATLEAST 2 P1.(A1)")));
  EXPECT_FALSE(satisfies(d, kThree, "x", parse_concept("ATLEAST 2 P1.(A1)")));
  EXPECT_FALSE(satisfies(d, kThree, "a", parse_concept("ATLEAST 3 P1.(TOP)")));
}

TEST(Satisfaction, ExistsUniqueNeedsDistinctSuccessors) {
  auto d = parse_dataset("P1(a,b1)\nP1(a,b2)\nA1(b1)\n");
  EXPECT_TRUE(satisfies(d, kThree, "a", parse_concept("EXISTSU 2 P1.(A1;TOP) MAXDEG 2")));
  EXPECT_FALSE(satisfies(d, kThree, "a", parse_concept("EXISTSU 2 P1.(A1;A1) MAXDEG 2")));
  EXPECT_FALSE(satisfies(d, kThree, "a", parse_concept("EXISTSU 1 P1.(A1) MAXDEG 1")));
}

TEST(Satisfaction, InverseRoles) {
  auto d = seven_facts();
  EXPECT_TRUE(satisfies(d, kThree, "a", parse_concept("EXISTS P2^-.(TOP)")));
  EXPECT_FALSE(satisfies(d, kThree, "a", parse_concept("EXISTS P2.(TOP)")));
}

TEST(Satisfaction, AlcqConstructors) {
  auto d = parse_dataset("P1(a,b)\nA1(b)\nA2(c)\n");
  EXPECT_TRUE(satisfies(d, kThree, "a", parse_concept("FORALL P1.(A1)")));
  EXPECT_TRUE(satisfies(d, kThree, "c", parse_concept("FORALL P1.(A3)")));
  EXPECT_TRUE(satisfies(d, kThree, "a", parse_concept("NOT (A1)")));
  EXPECT_TRUE(satisfies(d, kThree, "a", parse_concept("ATMOST 1 P1.(TOP)")));
}

TEST(Matching, MatchesNaivePermutation) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t left = uniform_int(rng, 0, 5);
    const std::size_t right = uniform_int(rng, 0, 6);
    std::vector<std::vector<std::uint32_t>> adj(left);
    for (auto& a : adj)
      for (std::uint32_t r = 0; r < right; ++r)
        if (unit_uniform(rng) < 0.4) a.push_back(r);
    std::vector<int> partner;
    const auto size = max_bipartite_matching(adj, right, &partner);
    std::set<int> used;
    std::size_t matched = 0;
    for (std::size_t l = 0; l < left; ++l) {
      if (partner[l] < 0) continue;
      ++matched;
      EXPECT_TRUE(std::find(adj[l].begin(), adj[l].end(), static_cast<std::uint32_t>(partner[l])) !=
                  adj[l].end());
      EXPECT_TRUE(used.insert(partner[l]).second);
    }
    EXPECT_EQ(matched, size);
    // No larger matching exists: check by brute force over subsets.
    std::size_t best = 0;
    std::vector<int> perm(right);
    std::iota(perm.begin(), perm.end(), 0);
    std::function<void(std::size_t, std::uint64_t, std::size_t)> rec = [&](std::size_t l, std::uint64_t taken,
                                                                           std::size_t n) {
      if (l == left) {
        best = std::max(best, n);
        return;
      }
      rec(l + 1, taken, n);
      for (auto r : adj[l])
        if (!(taken >> r & 1)) rec(l + 1, taken | (1ull << r), n + 1);
    };
    rec(0, 0, 0);
    EXPECT_EQ(size, best);
  }
}

TEST(Satisfaction, ExistsUniqueAgreesWithNaiveAssignment) {
  Signature sig({"A1", "A2"}, {"P1"});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1500; ++t) {
    const auto n_succ = uniform_int(rng, 0, 6);
    Dataset d;
    std::vector<std::set<std::string>> labels(n_succ);
    for (std::uint64_t i = 0; i < n_succ; ++i) {
      const auto b = "b" + std::to_string(i);
      d.insert(Fact::binary("P1", "a", b));
      for (const auto& u : sig.unary())
        if (unit_uniform(rng) < 0.5) {
          d.insert(Fact::unary(u, b));
          labels[i].insert(u);
        }
    }
    if (d.empty()) d.insert(Fact::unary("A1", "a"));
    const auto n = uniform_int(rng, 1, 4);
    const auto m = static_cast<int>(n + uniform_int(rng, 0, 3));
    std::vector<std::string> slots;
    std::vector<Concept> fillers;
    for (std::uint64_t s = 0; s < n; ++s) {
      const auto k = uniform_int(rng, 0, 2);
      slots.push_back(k == 0 ? "" : sig.unary()[k - 1]);
      fillers.push_back(k == 0 ? Concept::top() : Concept::atomic(slots.back()));
    }
    auto c = Concept::exists_unique(Role{"P1", false}, fillers, m);
    EXPECT_EQ(satisfies(d, sig, "a", c), naive_exists_unique(labels, slots, m)) << to_text(c);
  }
}

TEST(ImmediateConsequences, Examples) {
  Signature sig({"U"}, {"P"});
  auto d = parse_dataset("P(a,b)\nU(b)\nP(c,c)\n");
  EXPECT_EQ(immediate_consequences(parse_rule("EXISTS P.(U) => U"), d, sig), parse_dataset("U(a)\n"));
  EXPECT_EQ(immediate_consequences(parse_rule("TOP => U"), d, sig), parse_dataset("U(a)\nU(b)\nU(c)\n"));
  EXPECT_EQ(immediate_consequences(parse_rule("U => U"), Dataset{}, sig), Dataset{});
  std::vector<Rule> program{parse_rule("U => U"), parse_rule("EXISTS P.(TOP) => U")};
  EXPECT_EQ(immediate_consequences(program, d, sig), parse_dataset("U(a)\nU(b)\nU(c)\n"));
  EXPECT_THROW(immediate_consequences(parse_rule("TOP => Q"), d, sig), SignatureMismatch);
  EXPECT_THROW(immediate_consequences(parse_rule("EXISTS R.(TOP) => U"), d, sig), SignatureMismatch);
}

TEST(ImmediateConsequences, EluqRulesAreMonotone) {
  for (std::uint64_t s = 0; s < 400; ++s) {
    auto r = random_eluq_rule(kThree, s);
    auto d = random_dataset(kThree, 5, 0.2, s + 1);
    auto bigger = d;
    auto extra = random_dataset(kThree, 5, 0.1, s + 2);
    bigger.merge(extra);
    auto small = immediate_consequences(r, d, kThree);
    EXPECT_TRUE(small.subset_of(immediate_consequences(r, bigger, kThree))) << to_text(r);
  }
}

TEST(ImmediateConsequences, RenamingEquivariance) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto r = random_eluq_rule(kThree, s);
    auto d = random_dataset(kThree, 5, 0.3, s * 7);
    std::map<std::string, std::string> ren;
    for (const auto& c : d.constants()) ren[c] = "z" + c;
    EXPECT_EQ(immediate_consequences(r, d.renamed(ren), kThree), immediate_consequences(r, d, kThree).renamed(ren));
  }
}

TEST(ImmediateConsequences, RootFilterNeverRejectsASatisfyingVertex) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    auto r = random_eluq_rule(kThree, s, 2);
    ConceptEvaluator ev(r.body, kThree);
    auto g = encode(random_dataset(kThree, 5, 0.3, s + 9), kThree);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (ev.holds(g, v)) EXPECT_TRUE(ev.may_hold(g, v));
  }
}

TEST(Restricted, SubsumptionImpliesContainment) {
  std::mt19937_64 rng(3);
  auto random_restricted = [&] {
    RestrictedRule r{"A1", {}, {}};
    for (const auto& u : kThree.unary())
      if (unit_uniform(rng) < 0.3) r.unary.insert(u);
    for (const auto& p : kThree.binary())
      if (unit_uniform(rng) < 0.3) r.exist.insert(p);
    return r;
  };
  std::size_t hits = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    auto r1 = random_restricted();
    auto r2 = random_restricted();
    if (!subsumes_restricted(r1, r2)) continue;
    ++hits;
    auto d = random_dataset(kThree, 5, 0.3, s);
    EXPECT_TRUE(immediate_consequences(restricted_to_rule(r2), d, kThree)
                    .subset_of(immediate_consequences(restricted_to_rule(r1), d, kThree)));
  }
  EXPECT_GT(hits, 100u);
}

TEST(Restricted, TextAndConversion) {
  RestrictedRule r{"A3", {"A2", "A1"}, {"P1"}};
  EXPECT_EQ(to_text(restricted_to_rule(r)), "A1 AND A2 AND EXISTS P1.(TOP) => A3");
  EXPECT_EQ(to_text(restricted_to_rule(RestrictedRule{"A1", {}, {}})), "TOP => A1");
  EXPECT_EQ(as_restricted(restricted_to_rule(r)), r);
  EXPECT_FALSE(as_restricted(parse_rule("EXISTS P1.(A1) => A2")).has_value());
  EXPECT_FALSE(as_restricted(parse_rule("A1 OR A2 => A2")).has_value());
  EXPECT_TRUE(subsumes_restricted(RestrictedRule{"A3", {"A1"}, {}}, r));
  EXPECT_FALSE(subsumes_restricted(RestrictedRule{"A2", {"A1"}, {}}, r));
  EXPECT_THROW(check_signature(RestrictedRule{"A1", {"P1"}, {}}, kThree), SignatureMismatch);
}
