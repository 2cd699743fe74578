#pragma once

// Seeded random KGs for fuzzing, and random isomorphic copies.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "motif/kg.hpp"

namespace motif {

struct RandomKgOptions {
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 12;
  std::size_t max_relations = 5;
  /// Probability of each candidate fact r(u, v), self-loops included.
  double p = 0.15;
};

/// n uniform in [min_nodes, max_nodes], m uniform in [1, max_relations];
/// all n nodes and m relations are registered, facts may leave some unused.
KnowledgeGraph random_kg(std::mt19937_64& rng, const RandomKgOptions& options = {});
KnowledgeGraph random_kg(std::uint64_t seed, const RandomKgOptions& options = {});

/// A copy with shuffled ids and fresh names, plus the isomorphism g -> copy.
std::pair<KnowledgeGraph, NodeRelHomomorphism> random_isomorphic_copy(const KnowledgeGraph& g,
                                                                      std::mt19937_64& rng);

}  // namespace motif
