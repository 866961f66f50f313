#include <gtest/gtest.h>

#include "magnn/error.hpp"
#include "magnn/fuzz.hpp"
#include "magnn/semantics.hpp"

using namespace magnn;

namespace {

const Signature kUP({"U"}, {"P"});

MagnnModel copy_model() {
  MagnnModel m = majority_model(0.5);
  m.layers[0].self(0, 0) = 1.0;
  m.layers[0].colour[0](0, 0) = 0.0;
  return m;
}

Signature make_sig(int dim, int cols) {
  std::vector<std::string> u, b;
  for (int i = 0; i < dim; ++i) u.push_back("A" + std::to_string(i));
  for (int i = 0; i < cols; ++i) b.push_back("P" + std::to_string(i));
  return Signature(u, b);
}

}  // namespace

TEST(Generators, RandomDatasetIsDeterministicAndBounded) {
  Signature sig({"A", "B"}, {"P"});
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto d = random_dataset(sig, 4, 0.5, s);
    EXPECT_EQ(d, random_dataset(sig, 4, 0.5, s));
    EXPECT_LE(d.constants().size(), 4u);
    d.check_signature(sig);
  }
  EXPECT_TRUE(random_dataset(sig, 4, 0.0, 1).empty());
  EXPECT_EQ(random_dataset(sig, 1, 1.0, 1), parse_dataset("A(c1)\nB(c1)\nP(c1,c1)\n"));
}

TEST(Generators, RandomModels) {
  Signature sig({"A", "B"}, {"P", "Q"});
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto m = random_model(sig, 1 + s % 3, 5, s);
    EXPECT_TRUE(validate_model(m).empty());
    EXPECT_GT(m.threshold, 0.0);
    EXPECT_LT(m.threshold, 1.0);
    EXPECT_EQ(m, random_model(sig, 1 + s % 3, 5, s));
    EXPECT_FALSE(validate_model(random_model(sig, 2, 5, s, false)).empty());
  }
  EXPECT_THROW(random_model(sig, 0, 5, 1), PreconditionError);
}

TEST(Generators, RandomEluqRules) {
  Signature sig({"A", "B"}, {"P", "Q"});
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto r = random_eluq_rule(sig, s, 2);
    EXPECT_TRUE(is_eluq(r.body));
    EXPECT_LE(role_depth(r.body), 2);
  }
  EXPECT_EQ(role_depth(random_eluq_rule(Signature({"A"}, {}), 4, 3).body), 0);
}

TEST(Generators, TrialSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(trial_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(trial_seed(1, 0), trial_seed(2, 0));
}

TEST(Fuzz, SoundRuleHasNoViolations) {
  FuzzOptions opts;
  opts.trials = 500;
  auto rep = fuzz_soundness(copy_model(), parse_rule("U => U"), opts);
  EXPECT_EQ(rep.violation_count, 0u);
  EXPECT_GT(rep.body_firings, 0u);
  EXPECT_FALSE(rep.vacuous());
  EXPECT_EQ(rep.trials, 500u);
  EXPECT_EQ(rep.model_digest, model_digest(copy_model()));
}

TEST(Fuzz, UnsoundRuleIsCaughtAndShrunk) {
  FuzzOptions opts;
  opts.trials = 200;
  auto rep = fuzz_soundness(majority_model(0.5), parse_rule("U => U"), opts);
  ASSERT_GT(rep.violation_count, 0u);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_LE(rep.violations.size(), opts.keep);
  for (const auto& v : rep.violations) {
    EXPECT_EQ(v.dataset.size(), 1u);
    EXPECT_EQ(v.fact.predicate, "U");
    EXPECT_FALSE(violations(majority_model(0.5), parse_rule("U => U"), v.dataset).empty());
  }
}

TEST(Fuzz, VacuousWhenBodyNeverHolds) {
  Signature sig({"U", "V"}, {"P"});
  FuzzOptions opts;
  opts.trials = 50;
  opts.density = 0.0;
  auto m = random_model(sig, 1, 2, 3);
  EXPECT_TRUE(fuzz_soundness(m, parse_rule("U => V"), opts).vacuous());
}

TEST(Fuzz, ThreadCountDoesNotChangeTheReport) {
  Signature sig({"A", "B"}, {"P", "Q"});
  auto m = random_model(sig, 2, 4, 9);
  std::vector<Rule> rules;
  for (std::uint64_t s = 0; s < 10; ++s) rules.push_back(random_eluq_rule(sig, s));
  FuzzOptions opts;
  opts.trials = 300;
  opts.seed = 42;
  auto one = fuzz_soundness(m, rules, opts);
  opts.jobs = 3;
  auto three = fuzz_soundness(m, rules, opts);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].body_firings, three[i].body_firings);
    EXPECT_EQ(one[i].violation_count, three[i].violation_count);
    ASSERT_EQ(one[i].violations.size(), three[i].violations.size());
    for (std::size_t k = 0; k < one[i].violations.size(); ++k) {
      EXPECT_EQ(one[i].violations[k].trial, three[i].violations[k].trial);
      EXPECT_EQ(one[i].violations[k].dataset, three[i].violations[k].dataset);
    }
  }
}

TEST(Fuzz, SeededTrialsExtendTheSeeds) {
  FuzzOptions opts;
  opts.seeds = {parse_dataset("U(s)\nP(s,t)\n")};
  for (std::size_t t = 1; t < 40; t += 2) EXPECT_TRUE(opts.seeds[0].subset_of(fuzz_dataset(kUP, opts, t)));
}

TEST(Shrink, RemovesIrrelevantFactsAndMergesConstants) {
  auto m = majority_model(0.5);
  auto r = parse_rule("U => U");
  auto small = shrink_counterexample(m, r, parse_dataset("U(a)\nU(b)\nP(c,d)\nP(a,e)\n"));
  EXPECT_EQ(small.size(), 1u);
  EXPECT_THROW(shrink_counterexample(copy_model(), r, parse_dataset("U(a)\n")), PreconditionError);
}

TEST(Exhaustive, EnumerationSizes) {
  EXPECT_EQ(enumeration_size(make_sig(1, 1), 3), 2048u);
  EXPECT_EQ(enumeration_size(make_sig(2, 1), 3), 10240u);
  EXPECT_EQ(enumeration_size(make_sig(3, 2), 3), 31457280u);
  EXPECT_EQ(enumeration_size(make_sig(2, 2), 2), 2560u);
}

TEST(Exhaustive, VisitsEveryDatasetUpToRenaming) {
  auto sig = make_sig(1, 1);
  std::uint64_t visited = 0;
  std::set<std::string> seen;
  for_each_dataset(sig, 2, 1000, [&](const ColoredGraph& g) {
    ++visited;
    seen.insert(serialize_dataset(graph_dataset(g, sig)));
  });
  EXPECT_EQ(visited, enumeration_size(sig, 2));
  // Every dataset over two constants is a renaming of one that was visited.
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto d = random_dataset(sig, 2, 0.5, s);
    bool found = seen.contains(serialize_dataset(d)) ||
                 seen.contains(serialize_dataset(d.renamed({{"c1", "c2"}, {"c2", "c1"}})));
    EXPECT_TRUE(found || d.constants().size() < 2) << serialize_dataset(d);
  }
}

TEST(Exhaustive, BoundExceeded) {
  EXPECT_THROW(for_each_dataset(make_sig(3, 2), 3, 1000, [](const ColoredGraph&) {}), BoundExceeded);
  EXPECT_THROW(brute_force_soundness(majority_model(0.5), parse_rule("U => U"), ExhaustiveOptions{6, 1000}),
               BoundExceeded);
}

TEST(Exhaustive, Examples) {
  auto maj = majority_model(0.5);
  auto bad = brute_force_soundness(maj, parse_rule("U => U"));
  EXPECT_FALSE(bad.sound);
  ASSERT_TRUE(bad.counterexample.has_value());
  EXPECT_FALSE(violations(maj, parse_rule("U => U"), *bad.counterexample).empty());
  EXPECT_TRUE(brute_force_soundness(copy_model(), parse_rule("U => U")).sound);
  EXPECT_TRUE(brute_force_soundness(maj, parse_rule("EXISTSU 1 P.(U) MAXDEG 1 => U")).sound);
  EXPECT_TRUE(brute_force_soundness(maj, parse_rule("EXISTSU 1 P.(U) MAXDEG 2 => U")).sound);
  EXPECT_FALSE(brute_force_soundness(maj, parse_rule("EXISTSU 1 P.(U) MAXDEG 3 => U")).sound);
  EXPECT_FALSE(brute_force_soundness(maj, parse_rule("EXISTS P.(U) => U")).sound);
}

TEST(Exhaustive, BatchMatchesSingleRules) {
  Signature sig({"A", "B"}, {"P"});
  auto m = random_model(sig, 2, 3, 17);
  std::vector<Rule> rules;
  for (std::uint64_t s = 0; s < 12; ++s) rules.push_back(random_eluq_rule(sig, s));
  auto batch = brute_force_soundness(m, rules);
  for (std::size_t i = 0; i < rules.size(); ++i)
    EXPECT_EQ(batch[i].sound, brute_force_soundness(m, rules[i]).sound) << to_text(rules[i]);
}
