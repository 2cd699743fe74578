#pragma once

// Exact backtracking search for node-relation homomorphisms between KGs.
//
// The search assigns source facts one at a time, in an order that keeps
// each new fact adjacent to already-mapped nodes, choosing candidate target
// facts from the per-node adjacency of the target graph. Nodes and relations
// of the source that occur in no fact are completed with one canonical
// choice per fact assignment, so enumeration reports each distinct mapping
// of the fact-bearing part exactly once.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "motif/kg.hpp"

namespace motif {

struct HomSearchOptions {
  bool injective_nodes = false;
  bool injective_relations = false;
  /// Optional mask over target relations; phi may only use masked ids.
  std::vector<bool> allowed_relations;
  /// Upper bound on |pi(V)|.
  std::size_t max_image_nodes = std::numeric_limits<std::size_t>::max();
  /// Bounds on the number of distinct facts in the image h(E).
  std::size_t min_image_facts = 0;
  std::size_t max_image_facts = std::numeric_limits<std::size_t>::max();
  /// Only map nodes onto target nodes with the same (in, out, self-loop)
  /// degrees. Sound only for isomorphism searches.
  bool match_degree_profile = false;
  /// After a report, backtrack straight to the last choice that changed
  /// phi. Each relation map is then found once per phi-choice path rather
  /// than once per compatible node map; callers still deduplicate.
  bool skip_repeated_relation_maps = false;
};

/// Visitor returns false to stop the enumeration.
using HomVisitor = std::function<bool(const NodeRelHomomorphism&)>;

/// Enumerates homomorphisms src -> dst satisfying `options`. Returns false
/// if the visitor stopped the search early.
bool for_each_homomorphism(const KnowledgeGraph& src, const KnowledgeGraph& dst,
                           const HomSearchOptions& options, const HomVisitor& visit);

std::optional<NodeRelHomomorphism> find_homomorphism(const KnowledgeGraph& src,
                                                     const KnowledgeGraph& dst,
                                                     const HomSearchOptions& options = {});

}  // namespace motif
