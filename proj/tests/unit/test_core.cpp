#include <gtest/gtest.h>

#include "magnn/error.hpp"
#include "magnn/fuzz.hpp"
#include "magnn/graph.hpp"

using namespace magnn;

namespace {

const Signature kUP({"U"}, {"P"});
const Signature kThree({"A1", "A2", "A3"}, {"P1", "P2", "P3"});

Dataset seven_facts() {
  return parse_dataset("A1(a)\nP1(a,b1)\nP1(a,b2)\nP2(b3,a)\nA2(b2)\nP2(b2,c)\nP3(c,d)\n");
}

}  // namespace

TEST(Signature, RejectsDuplicatesAndBadNames) {
  EXPECT_THROW(Signature({"A", "A"}, {}), Error);
  EXPECT_THROW(Signature({"A"}, {"A"}), Error);
  EXPECT_THROW(Signature({"A B"}, {}), Error);
  EXPECT_THROW(Signature({"A("}, {}), Error);
}

TEST(Signature, ParseAndSerializeRoundTrip) {
  auto sig = parse_signature("# comment\nunary:\nA1\nA2\n\nbinary:\nP1\n");
  EXPECT_EQ(sig.unary(), (std::vector<std::string>{"A1", "A2"}));
  EXPECT_EQ(sig.binary(), (std::vector<std::string>{"P1"}));
  EXPECT_EQ(*sig.unary_index("A2"), 1u);
  EXPECT_EQ(parse_signature(serialize_signature(sig)), sig);
}

TEST(Dataset, ParsesFactsAndComments) {
  auto d = parse_dataset("U(a)\n# note\n\nP(a,b)\n");
  EXPECT_EQ(d, (Dataset{Fact::unary("U", "a"), Fact::binary("P", "a", "b")}));
  EXPECT_EQ(d.constants(), (std::set<std::string>{"a", "b"}));
}

TEST(Dataset, ArityMismatchReportsLine) {
  try {
    parse_dataset("U(a)\nP(a)\n", &kUP);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_dataset("Q(a)\n", &kUP), Error);
  EXPECT_THROW(parse_dataset("U(a\n"), ParseError);
}

TEST(Dataset, SerializeIsSortedAndRoundTrips) {
  auto d = parse_dataset("P(b,a)\nU(a)\nP(a,b)\n");
  EXPECT_EQ(serialize_dataset(d), "P(a,b)\nP(b,a)\nU(a)\n");
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto r = random_dataset(kThree, 5, 0.3, s);
    EXPECT_EQ(parse_dataset(serialize_dataset(r)), r);
  }
}

TEST(Encode, SingleUnaryFact) {
  auto g = encode(Dataset{Fact::unary("U", "a")}, kUP);
  ASSERT_EQ(g.vertex_count(), 1u);
  EXPECT_EQ(g.label(0)[0], 1.0);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Encode, BaseDatasetShape) {
  auto d = parse_dataset("A1(a)\nA2(a)\nP1(a,b)\nP2(a,b)\n");
  Signature sig({"A1", "A2", "A3"}, {"P1", "P2"});
  auto g = encode(d, sig);
  ASSERT_EQ(g.vertex_count(), 2u);
  auto a = *g.vertex_of("a");
  auto b = *g.vertex_of("b");
  EXPECT_EQ(std::vector<double>(g.label(a).begin(), g.label(a).end()), (std::vector<double>{1, 1, 0}));
  EXPECT_EQ(std::vector<double>(g.label(b).begin(), g.label(b).end()), (std::vector<double>{0, 0, 0}));
  EXPECT_TRUE(g.has_edge(0, a, b));
  EXPECT_TRUE(g.has_edge(1, a, b));
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(Encode, EmptyDatasetAndUnknownPredicate) {
  EXPECT_EQ(encode(Dataset{}, kUP).vertex_count(), 0u);
  try {
    encode(Dataset{Fact::unary("Q", "a")}, kUP);
    FAIL();
  } catch (const SignatureMismatch& e) {
    EXPECT_NE(std::string(e.what()).find("Q"), std::string::npos);
  }
}

TEST(Encode, LexicographicVertexOrder) {
  auto g = encode(parse_dataset("P(z,b)\nU(m)\n"), kUP);
  EXPECT_EQ(g.constants(), (std::vector<std::string>{"b", "m", "z"}));
}

TEST(Decode, InverseOfEncodeOnRandomDatasets) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    auto d = random_dataset(kThree, 6, 0.25, s);
    EXPECT_EQ(decode(encode(d, kThree), kThree), d) << "seed " << s;
  }
}

TEST(Decode, EdgeOnlyGraphAndNonBooleanLabel) {
  ColoredGraph g({"a", "b"}, 1, 1);
  g.add_edge(0, 0, 1);
  EXPECT_EQ(decode(g, kUP), Dataset{Fact::binary("P", "a", "b")});
  g.set_label(1, 0, 0.7);
  try {
    decode(g, kUP);
    FAIL();
  } catch (const InvalidGraph& e) {
    EXPECT_NE(std::string(e.what()).find("b"), std::string::npos);
  }
}

TEST(Encode, RenamingCommutes) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto d = random_dataset(kThree, 5, 0.3, s);
    std::map<std::string, std::string> ren;
    for (const auto& c : d.constants()) ren[c] = "x_" + c;
    auto g1 = encode(d, kThree);
    auto g2 = encode(d.renamed(ren), kThree);
    ASSERT_EQ(g1.vertex_count(), g2.vertex_count());
    for (VertexId v = 0; v < g1.vertex_count(); ++v) {
      auto w = *g2.vertex_of(ren.at(g1.constant(v)));
      EXPECT_TRUE(std::equal(g1.label(v).begin(), g1.label(v).end(), g2.label(w).begin()));
      for (std::size_t c = 0; c < kThree.colours(); ++c)
        EXPECT_EQ(g1.successors(c, v).size(), g2.successors(c, w).size());
    }
    EXPECT_EQ(decode(g2, kThree), d.renamed(ren));
  }
}

TEST(Khop, WorkedExample) {
  auto d = seven_facts();
  EXPECT_EQ(khop_neighborhood(d, "a", 2),
            parse_dataset("A1(a)\nP1(a,b1)\nP1(a,b2)\nA2(b2)\nP2(b2,c)\n"));
  EXPECT_EQ(khop_neighborhood(d, "a", 1), parse_dataset("A1(a)\nP1(a,b1)\nP1(a,b2)\nA2(b2)\n"));
  EXPECT_EQ(khop_neighborhood(d, "a", 0), parse_dataset("A1(a)\n"));
}

TEST(Khop, IsolatedConstantAndUnknown) {
  Dataset d{Fact::unary("B", "a")};
  for (int l = 0; l < 4; ++l) EXPECT_EQ(khop_neighborhood(d, "a", l), d);
  EXPECT_THROW(khop_neighborhood(d, "zz", 1), UnknownConstant);
}

TEST(Khop, IncomingDirection) {
  auto d = seven_facts();
  EXPECT_EQ(khop_neighborhood(d, "a", 1, Direction::in), parse_dataset("A1(a)\nP2(b3,a)\n"));
}

TEST(Khop, SubsetAndMonotoneInDepth) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto d = random_dataset(kThree, 6, 0.2, s);
    if (d.empty()) continue;
    const auto a = *d.constants().begin();
    for (auto dir : {Direction::out, Direction::in}) {
      Dataset prev;
      for (int l = 0; l <= 4; ++l) {
        auto cur = khop_neighborhood(d, a, l, dir);
        EXPECT_TRUE(cur.subset_of(d));
        EXPECT_TRUE(prev.subset_of(cur));
        prev = cur;
      }
    }
  }
}
