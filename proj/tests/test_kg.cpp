#include <gtest/gtest.h>

#include <random>

#include "motif/error.hpp"
#include "motif/kg.hpp"
#include "motif/motif.hpp"
#include "motif/random_kg.hpp"
#include "test_data.hpp"

using namespace motif;

TEST(Parse, SingleFact) {
  const KnowledgeGraph g = parse_kg("a\tr\tb");
  EXPECT_EQ(g.num_nodes(), 2u);
  EXPECT_EQ(g.num_relations(), 1u);
  EXPECT_EQ(g.num_facts(), 1u);
  EXPECT_TRUE(g.contains(0, 0, 1));
}

TEST(Parse, CounterExampleFile) {
  const KnowledgeGraph g = read_kg_file(data_path("counterexample.tsv"));
  EXPECT_EQ(g.num_nodes(), 5u);
  EXPECT_EQ(g.num_relations(), 3u);
  EXPECT_EQ(g.num_facts(), 7u);
  for (const char* v : {"u", "x", "y", "v1", "v2"}) EXPECT_TRUE(g.node_id(v)) << v;
}

TEST(Parse, DuplicateLinesCollapse) {
  const KnowledgeGraph g = parse_kg("a\tr\tb\na\tr\tb\n");
  EXPECT_EQ(g.num_facts(), 1u);
}

TEST(Parse, FirstAppearanceIds) {
  const KnowledgeGraph g = parse_kg("# header\n\nb\ts\ta\r\na\tr\tc\n");
  EXPECT_EQ(g.node_name(0), "b");
  EXPECT_EQ(g.node_name(1), "a");
  EXPECT_EQ(g.node_name(2), "c");
  EXPECT_EQ(g.relation_name(0), "s");
  EXPECT_EQ(g.relation_name(1), "r");
}

TEST(Parse, WrongFieldCountReportsLine) {
  try {
    parse_kg("a\tr\tb\n# fine\na\tr\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_kg("a\tr\tb\tc\n"), ParseError);
  EXPECT_THROW(parse_kg("a\t\tb\n"), ParseError);
}

TEST(Parse, SerializeRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    const KnowledgeGraph g = random_kg(rng);
    const KnowledgeGraph back = parse_kg(serialize_kg(g));
    EXPECT_EQ(back.num_facts(), g.num_facts());
    for (const Fact& f : g.facts()) {
      EXPECT_TRUE(back.contains(*back.relation_id(g.relation_name(f.relation)),
                                *back.node_id(g.node_name(f.head)),
                                *back.node_id(g.node_name(f.tail))));
    }
    EXPECT_TRUE(parse_kg(serialize_kg(back)).same_as(back));
  }
}

TEST(Adjacency, InAndOutSlices) {
  const KnowledgeGraph g = parse_kg("a\tr\tb\nc\tr\tb\na\ts\tb\nb\tr\ta\n");
  const NodeId a = *g.node_id("a"), b = *g.node_id("b");
  const RelId r = *g.relation_id("r");
  EXPECT_EQ(g.in_facts(b).size(), 3u);
  EXPECT_EQ(g.in_facts(b, r).size(), 2u);
  EXPECT_EQ(g.out_facts(a).size(), 2u);
  EXPECT_EQ(g.out_facts(b, r).size(), 1u);
  EXPECT_EQ(g.relation_size(r), 3u);
}

TEST(Augment, SingleFact) {
  const KnowledgeGraph g = augment_inverses(parse_kg("u\tr\tv"));
  EXPECT_EQ(g.num_relations(), 2u);
  EXPECT_EQ(g.num_facts(), 2u);
  EXPECT_TRUE(g.contains(1, *g.node_id("v"), *g.node_id("u")));
}

TEST(Augment, SelfLoopGetsNoInverseFact) {
  const KnowledgeGraph g = augment_inverses(parse_kg("u\tr\tu"));
  EXPECT_EQ(g.num_relations(), 2u);
  EXPECT_EQ(g.num_facts(), 1u);
}

TEST(Augment, Empty) {
  const KnowledgeGraph g = augment_inverses(KnowledgeGraph{});
  EXPECT_EQ(g.num_nodes(), 0u);
  EXPECT_EQ(g.num_facts(), 0u);
}

TEST(Augment, NeverDuplicatesOriginalFacts) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const KnowledgeGraph g = random_kg(rng);
    const KnowledgeGraph once = augment_inverses(g);
    const KnowledgeGraph twice = augment_inverses(once);
    std::size_t non_loops = 0;
    for (const Fact& f : g.facts()) non_loops += f.head != f.tail;
    EXPECT_EQ(once.num_facts(), g.num_facts() + non_loops);
    EXPECT_EQ(twice.num_facts(), 2 * once.num_facts() - (g.num_facts() - non_loops));
    for (const Fact& f : g.facts()) EXPECT_TRUE(twice.contains(f));
  }
}

TEST(Isomorphism, SelfWithIdentityWitness) {
  const KnowledgeGraph g = read_kg_file(data_path("counterexample.tsv"));
  const auto iso = find_isomorphism(g, g);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(validate_homomorphism(*iso, g, g));
}

TEST(Isomorphism, HeadToTailMatchesTailToHead) {
  EXPECT_TRUE(is_isomorphic(catalog("h2t")[0].pattern, catalog("t2h")[0].pattern));
}

TEST(Isomorphism, PathLengthsDiffer) {
  EXPECT_FALSE(is_isomorphic(catalog("h2t")[0].pattern, catalog("tfh")[0].pattern));
}

TEST(Isomorphism, SizeGuard) {
  std::string text;
  for (int i = 0; i < 40; ++i) text += "n" + std::to_string(i) + "\tr\tn" + std::to_string(i + 1) + "\n";
  const KnowledgeGraph g = parse_kg(text);
  EXPECT_THROW(is_isomorphic(g, g), SizeLimitError);
  EXPECT_TRUE(is_isomorphic(g, g, 64));
}

TEST(Isomorphism, RandomCopiesAndEquivalence) {
  std::mt19937_64 rng(3);
  RandomKgOptions opts;
  opts.max_nodes = 7;
  opts.max_relations = 3;
  opts.p = 0.2;
  for (int i = 0; i < 40; ++i) {
    const KnowledgeGraph a = random_kg(rng, opts);
    auto [b, iso] = random_isomorphic_copy(a, rng);
    auto [c, iso2] = random_isomorphic_copy(b, rng);
    EXPECT_TRUE(validate_homomorphism(iso, a, b));
    EXPECT_TRUE(is_isomorphic(a, b));
    EXPECT_TRUE(is_isomorphic(b, a));
    EXPECT_TRUE(is_isomorphic(a, c));
    const KnowledgeGraph other = random_kg(rng, opts);
    EXPECT_EQ(is_isomorphic(a, other), is_isomorphic(other, a));
  }
}

TEST(Isomorphism, OneFactMoved) {
  const KnowledgeGraph a = parse_kg("x\tr\ty\ny\tr\tz\n");
  const KnowledgeGraph b = parse_kg("x\tr\ty\nz\tr\ty\n");
  EXPECT_FALSE(is_isomorphic(a, b));
}

TEST(Homomorphism, TwoPathIntoTrainingGraph) {
  const KnowledgeGraph g = read_kg_file(data_path("training_example.tsv"));
  KnowledgeGraphBuilder b;
  b.add_fact("u1", "alpha", "u2");
  b.add_fact("u2", "beta", "u3");
  const KnowledgeGraph p = std::move(b).build();
  NodeRelHomomorphism h;
  h.node_map = {*g.node_id("Bloomberg"), *g.node_id("Oxford"), *g.node_id("Finance")};
  h.rel_map = {*g.relation_id("provide"), *g.relation_id("research")};
  EXPECT_TRUE(validate_homomorphism(h, p, g));
  h.node_map[2] = *g.node_id("HSBC");
  EXPECT_FALSE(validate_homomorphism(h, p, g));
  h.node_map.pop_back();
  EXPECT_FALSE(validate_homomorphism(h, p, g));
}

TEST(Homomorphism, IdentityValidates) {
  const KnowledgeGraph g = read_kg_file(data_path("training_example.tsv"));
  NodeRelHomomorphism id;
  for (NodeId v = 0; v < g.num_nodes(); ++v) id.node_map.push_back(v);
  for (RelId r = 0; r < g.num_relations(); ++r) id.rel_map.push_back(r);
  EXPECT_TRUE(validate_homomorphism(id, g, g));
}
