#include "motif/random_kg.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "motif/error.hpp"

namespace motif {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace

KnowledgeGraph random_kg(std::mt19937_64& rng, const RandomKgOptions& options) {
  if (options.min_nodes == 0 || options.min_nodes > options.max_nodes ||
      options.max_relations == 0) {
    throw PreconditionError("bad random KG size bounds");
  }
  const std::size_t n = uniform(rng, options.min_nodes, options.max_nodes);
  const std::size_t m = uniform(rng, 1, options.max_relations);
  KnowledgeGraphBuilder b;
  for (std::size_t v = 0; v < n; ++v) b.add_node("n" + std::to_string(v));
  for (std::size_t r = 0; r < m; ++r) b.add_relation("r" + std::to_string(r));
  for (RelId r = 0; r < m; ++r) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (unit(rng) < options.p) b.add_fact(r, u, v);
      }
    }
  }
  return std::move(b).build();
}

KnowledgeGraph random_kg(std::uint64_t seed, const RandomKgOptions& options) {
  std::mt19937_64 rng(seed);
  return random_kg(rng, options);
}

std::pair<KnowledgeGraph, NodeRelHomomorphism> random_isomorphic_copy(const KnowledgeGraph& g,
                                                                      std::mt19937_64& rng) {
  NodeRelHomomorphism iso;
  iso.node_map.resize(g.num_nodes());
  iso.rel_map.resize(g.num_relations());
  std::iota(iso.node_map.begin(), iso.node_map.end(), 0);
  std::iota(iso.rel_map.begin(), iso.rel_map.end(), 0);
  std::shuffle(iso.node_map.begin(), iso.node_map.end(), rng);
  std::shuffle(iso.rel_map.begin(), iso.rel_map.end(), rng);

  KnowledgeGraphBuilder b;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) b.add_node("x" + std::to_string(v));
  for (std::size_t r = 0; r < g.num_relations(); ++r) b.add_relation("s" + std::to_string(r));
  std::vector<Fact> facts;
  for (const Fact& f : g.facts()) {
    facts.push_back({iso.rel_map[f.relation], iso.node_map[f.head], iso.node_map[f.tail]});
  }
  std::shuffle(facts.begin(), facts.end(), rng);
  for (const Fact& f : facts) b.add_fact(f.relation, f.head, f.tail);
  return {std::move(b).build(), std::move(iso)};
}

}  // namespace motif
