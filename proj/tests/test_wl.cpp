#include <gtest/gtest.h>

#include <random>

#include "motif/random_kg.hpp"
#include "motif/wl.hpp"
#include "oracles.hpp"
#include "test_data.hpp"

using namespace motif;

namespace {

RandomKgOptions small(std::size_t nodes, std::size_t rels, double p) {
  RandomKgOptions o;
  o.max_nodes = nodes;
  o.max_relations = rels;
  o.p = p;
  return o;
}

// Oracle colors of every link at (t, l), in all_link_colors order.
std::vector<int> oracle_links(const KnowledgeGraph& g, const RelationalHypergraph& h, std::size_t t,
                              std::size_t l) {
  oracle::Wl wl;
  const std::size_t n = g.num_nodes();
  std::vector<int> out;
  for (RelId q = 0; q < g.num_relations(); ++q) {
    const std::vector<int> rel = wl.hcwl(h, q, t);
    for (NodeId u = 0; u < n; ++u) {
      const std::vector<int> c = wl.link(g, rel, q, u, l);
      out.insert(out.end(), c.begin(), c.end());
    }
  }
  return out;
}

struct CounterGraph {
  KnowledgeGraph g = read_kg_file(data_path("counterexample.tsv"));
  RelId r1 = *g.relation_id("r1"), r2 = *g.relation_id("r2"), r3 = *g.relation_id("r3");
  LinkQuery a{r3, *g.node_id("u"), *g.node_id("v1")};
  LinkQuery b{r3, *g.node_id("u"), *g.node_id("v2")};
};

}  // namespace

TEST(Interner, IdsFromOneAndStable) {
  ColorInterner in;
  const std::vector<std::uint32_t> a{1, 2, 3}, b{1, 2}, c{};
  const Color ca = in.intern(a);
  EXPECT_EQ(ca, 1u);
  EXPECT_EQ(in.intern(b), 2u);
  EXPECT_EQ(in.intern(c), 3u);
  EXPECT_EQ(in.intern(a), ca);
  EXPECT_EQ(in.size(), 3u);
}

TEST(Interner, SurvivesGrowth) {
  ColorInterner in;
  for (std::uint32_t i = 0; i < 5000; ++i) {
    const std::vector<std::uint32_t> s{i, i * 7};
    EXPECT_EQ(in.intern(s), i + 1);
  }
  for (std::uint32_t i = 0; i < 5000; i += 97) {
    const std::vector<std::uint32_t> s{i, i * 7};
    EXPECT_EQ(in.intern(s), i + 1);
  }
}

TEST(Partition, Helpers) {
  const std::vector<Color> a{5, 5, 7, 9}, b{1, 1, 2, 3}, c{1, 2, 2, 3}, coarse{4, 4, 4, 8};
  EXPECT_EQ(canonical_blocks(a), (std::vector<std::uint32_t>{0, 0, 1, 2}));
  EXPECT_TRUE(same_partition(a, b));
  EXPECT_FALSE(same_partition(a, c));
  EXPECT_TRUE(refines(a, coarse));
  EXPECT_FALSE(refines(coarse, a));
}

TEST(Hcwl, InitialIndicator) {
  ColorInterner in;
  const CounterGraph f;
  const RelColoring c = hcwl_colors(lift(catalog("ultra4"), f.g), f.r3, 0, in);
  EXPECT_EQ(c.at(0)[f.r3], 1u);
  EXPECT_EQ(c.at(0)[f.r1], 0u);
  EXPECT_EQ(c.at(0)[f.r2], 0u);
}

TEST(Hcwl, CounterExampleUltraCannotSplit) {
  const CounterGraph f;
  ColorInterner in;
  const RelColoring c = hcwl_colors(lift(catalog("ultra4"), f.g), f.r3, 10, in);
  for (std::size_t t = 0; t <= 10; ++t) EXPECT_EQ(c.at(t)[f.r1], c.at(t)[f.r2]) << t;
}

TEST(Hcwl, CounterExampleThreePathsSplit) {
  const CounterGraph f;
  ColorInterner in;
  const RelColoring c = hcwl_colors(lift(catalog("f3path"), f.g), f.r3, 1, in);
  EXPECT_NE(c.at(1)[f.r1], c.at(1)[f.r2]);
}

TEST(Hcwl, ExtendMatchesFreshRun) {
  std::mt19937_64 rng(59);
  const KnowledgeGraph g = random_kg(rng);
  const RelationalHypergraph h = lift(catalog("f3path"), g);
  ColorInterner in;
  RelColoring c = hcwl_colors(h, 0, 1, in);
  extend_hcwl(h, c, 4, in);
  const RelColoring d = hcwl_colors(h, 0, 4, in);
  EXPECT_EQ(c.history, d.history);
}

TEST(Hcwl, MatchesOracle) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    const KnowledgeGraph g = random_kg(rng, small(8, 5, 0.15));
    for (const std::string set : {"ultra4", "f3path", "f3star,para"}) {
      const RelationalHypergraph h = lift(catalog(set), g);
      for (RelId q = 0; q < g.num_relations(); ++q) {
        ColorInterner in;
        oracle::Wl wl;
        const RelColoring c = hcwl_colors(h, q, 4, in);
        for (std::size_t t = 0; t <= 4; ++t) {
          EXPECT_TRUE(oracle::same_partition(c.at(t), wl.hcwl(h, q, t))) << set << " t=" << t;
        }
      }
    }
  }
}

TEST(LinkColors, MatchOracleAcrossAllLinks) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    const KnowledgeGraph g = random_kg(rng, small(7, 4, 0.15));
    for (const std::string set : {"f2path", "f3path", "f3star"}) {
      const auto motifs = catalog(set);
      LinkColorer colorer(g, motifs);
      for (std::size_t t = 0; t <= 3; ++t) {
        for (std::size_t l = 0; l <= 3; ++l) {
          EXPECT_TRUE(oracle::same_partition(colorer.all_link_colors(t, l),
                                             oracle_links(g, colorer.lifted(), t, l)))
              << set << " t=" << t << " l=" << l << "\n"
              << serialize_kg(g);
        }
      }
    }
  }
}

TEST(LinkColors, LayerZeroOffSourceIsZero) {
  const CounterGraph f;
  LinkColorer colorer(f.g, catalog("f3path"));
  const std::vector<Color> c = colorer.all_link_colors(2, 0);
  const std::size_t n = f.g.num_nodes();
  for (RelId q = 0; q < f.g.num_relations(); ++q) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (v != u) EXPECT_EQ(c[(q * n + u) * n + v], 0u);
      }
    }
  }
}

TEST(LinkColors, StableLayerRecorded) {
  const CounterGraph f;
  const LinkColoring c = motif_link_colors(f.g, catalog("f2path"), f.r3, f.a.source, 2, 12);
  ASSERT_TRUE(c.stable_layer);
  EXPECT_LE(*c.stable_layer, 12u);
  const std::size_t s = *c.stable_layer;
  EXPECT_TRUE(same_partition(c.at(s), c.at(s - 1)));
}

TEST(LinkColors, MonotoneInTAndL) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 15; ++i) {
    const KnowledgeGraph g = random_kg(rng, small(8, 4, 0.15));
    LinkColorer colorer(g, catalog("f3path"));
    for (std::size_t t = 0; t <= 3; ++t) {
      for (std::size_t l = 0; l <= 3; ++l) {
        const auto c = colorer.all_link_colors(t, l);
        EXPECT_TRUE(refines(colorer.all_link_colors(t, l + 1), c));
        EXPECT_TRUE(refines(colorer.all_link_colors(t + 1, l), c));
      }
    }
    for (RelId q = 0; q < g.num_relations(); ++q) {
      const RelColoring& rc = colorer.relation_colors(q, 4);
      for (std::size_t t = 0; t < 4; ++t) EXPECT_TRUE(refines(rc.at(t + 1), rc.at(t)));
    }
  }
}

TEST(LinkColors, IsomorphicMotifCopyChangesNothing) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 15; ++i) {
    const KnowledgeGraph g = random_kg(rng, small(8, 4, 0.15));
    auto base = catalog("f2path,tfh");
    auto extended = base;
    extended.push_back(renamed(catalog("t2h")[0], "zz_copy"));
    extended.push_back(renamed(catalog("tfh")[0], "tfh_copy"));
    LinkColorer a(g, base), b(g, extended);
    for (std::size_t t = 1; t <= 3; ++t) {
      EXPECT_TRUE(same_partition(a.all_link_colors(t, 3), b.all_link_colors(t, 3)));
    }
  }
}

TEST(LinkColors, IsomorphismInvariance) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 20; ++i) {
    const KnowledgeGraph g = random_kg(rng, small(7, 4, 0.2));
    const auto [copy, iso] = random_isomorphic_copy(g, rng);
    const std::size_t n = g.num_nodes();
    for (const bool ultra : {false, true}) {
      LinkColorer a = ultra ? LinkColorer::ultra(g) : LinkColorer(g, catalog("f3path"));
      LinkColorer b = ultra ? LinkColorer::ultra(copy) : LinkColorer(copy, catalog("f3path"));
      const auto ca = a.all_link_colors(3, 3);
      const auto cb = b.all_link_colors(3, 3);
      std::vector<Color> mapped(ca.size());
      for (RelId q = 0; q < g.num_relations(); ++q) {
        for (NodeId u = 0; u < n; ++u) {
          for (NodeId v = 0; v < n; ++v) {
            mapped[(q * n + u) * n + v] = cb[(iso.rel_map[q] * n + iso.node_map[u]) * n + iso.node_map[v]];
          }
        }
      }
      EXPECT_TRUE(same_partition(ca, mapped)) << (ultra ? "ultra" : "f3path");
    }
  }
}

TEST(Rawl2, SourceOnlyAtLayerZero) {
  const KnowledgeGraph g = parse_kg("u\tr\ta\na\tr\tb\n");
  ColorInterner in;
  const auto c = rawl2_colors(g, *g.node_id("u"), 2, in);
  EXPECT_NE(c[0][*g.node_id("u")], c[0][*g.node_id("a")]);
  EXPECT_EQ(c[0][*g.node_id("a")], c[0][*g.node_id("b")]);
}

TEST(Rawl2, PathSeparatesAtLayerTwo) {
  const KnowledgeGraph g = parse_kg("u\tr\ta\na\tr\tb\n");
  ColorInterner in;
  const auto c = rawl2_colors(g, *g.node_id("u"), 2, in);
  EXPECT_NE(c[2][*g.node_id("a")], c[2][*g.node_id("b")]);
}

TEST(Rawl2, IsolatedNodeKeepsItsBlock) {
  KnowledgeGraphBuilder b;
  b.add_fact("u", "r", "a");
  b.add_fact("a", "r", "b");
  b.add_node("lonely");
  b.add_node("alone");
  const KnowledgeGraph g = std::move(b).build();
  ColorInterner in;
  const auto c = rawl2_colors(g, *g.node_id("u"), 4, in);
  for (std::size_t l = 0; l <= 4; ++l) EXPECT_EQ(c[l][*g.node_id("lonely")], c[l][*g.node_id("alone")]);
}

TEST(Rawl2, MatchesOracle) {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 30; ++i) {
    const KnowledgeGraph g = random_kg(rng);
    ColorInterner in;
    oracle::Wl wl;
    std::vector<Color> all;
    std::vector<int> expected;
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
      const auto c = rawl2_colors(g, s, 3, in);
      const auto o = wl.rawl2(g, s, 3);
      all.insert(all.end(), c[3].begin(), c[3].end());
      expected.insert(expected.end(), o.begin(), o.end());
    }
    EXPECT_TRUE(oracle::same_partition(all, expected));
  }
}

TEST(Separation, LinkAgainstItself) {
  const CounterGraph f;
  LinkColorer colorer(f.g, catalog("f3path"));
  EXPECT_FALSE(sweep_separation(colorer, f.a, f.a, 4, 4).separated);
}

TEST(Separation, CounterExample) {
  const CounterGraph f;
  LinkColorer ultra = LinkColorer::ultra(f.g);
  const Separation su = sweep_separation(ultra, f.a, f.b, 10, 10);
  EXPECT_FALSE(su.separated);
  EXPECT_FALSE(su.first_at);

  LinkColorer paths(f.g, catalog("f3path"));
  const Separation sp = sweep_separation(paths, f.a, f.b, 10, 10);
  ASSERT_TRUE(sp.separated);
  ASSERT_TRUE(sp.first_at);
  EXPECT_TRUE(separates(paths, f.a, f.b, sp.first_at->first, sp.first_at->second).separated);
  EXPECT_EQ(*sp.first_at, (std::pair<std::size_t, std::size_t>{1, 1}));
}

TEST(Separation, CounterExampleUnderInverses) {
  CounterGraph f;
  f.g = augment_inverses(f.g);
  LinkColorer ultra = LinkColorer::ultra(f.g);
  EXPECT_FALSE(sweep_separation(ultra, f.a, f.b, 6, 6).separated);
  LinkColorer paths(f.g, catalog("f3path"));
  EXPECT_TRUE(sweep_separation(paths, f.a, f.b, 6, 6).separated);
}

TEST(UltraEquivalence, PartitionsMatchTwoPaths) {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 25; ++i) {
    const KnowledgeGraph g = random_kg(rng);
    LinkColorer ultra = LinkColorer::ultra(g);
    LinkColorer paths(g, catalog("f2path"));
    for (std::size_t t = 1; t <= 3; ++t) {
      for (std::size_t l = 1; l <= 3; ++l) {
        EXPECT_TRUE(same_partition(ultra.all_link_colors(t, l), paths.all_link_colors(t, l)))
            << serialize_kg(g);
      }
    }
  }
}

TEST(UltraEquivalence, SingleFactInitialColors) {
  const KnowledgeGraph g = parse_kg("a\tr\tb\nb\ts\tc\nc\tw\ta\n");
  LinkColorer ultra = LinkColorer::ultra(g);
  for (RelId q = 0; q < 3; ++q) {
    const RelColoring& c = ultra.relation_colors(q, 0);
    for (RelId r = 0; r < 3; ++r) {
      if (r != q) EXPECT_NE(c.at(0)[q], c.at(0)[r]);
    }
  }
}
