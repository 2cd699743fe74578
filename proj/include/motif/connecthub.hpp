#pragma once

// ConnectHub(k): KGs with a positive (k+1)-star hub plus one k-star
// community per size-k subset of each relation class, and the hub-detection
// task scored by WL separation.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "motif/kg.hpp"
#include "motif/motif.hpp"

namespace motif {

struct ConnectHubGraph {
  KnowledgeGraph graph;
  std::vector<RelId> positive_relations;
  std::vector<RelId> negative_relations;
  /// Registered in the graph but never used by a fact.
  RelId q = 0;
  NodeId hub_center = 0;
  std::vector<NodeId> positive_centers;
  std::vector<NodeId> negative_centers;
};

struct ConnectHubInstance {
  std::size_t k = 0;
  std::size_t l = 0;
  std::uint64_t seed = 0;
  std::vector<ConnectHubGraph> graphs;
};

/// l = 0 means k + 1. Requires 2 <= k <= 8 and l > k.
ConnectHubInstance generate_connecthub(std::size_t k, std::size_t l, std::size_t n_graphs,
                                       std::uint64_t seed);

/// Throws Error describing the first violated construction invariant.
void audit_connecthub(const ConnectHubInstance& inst);

/// Writes graph_<i>.tsv files and manifest.json into `dir`.
void write_connecthub(const ConnectHubInstance& inst, const std::filesystem::path& dir);
ConnectHubInstance read_connecthub(const std::filesystem::path& manifest);

struct ConnectHubScore {
  std::vector<double> per_graph;
  double accuracy = 0;
};

/// A graph scores 1.0 when every q(hub, positive center) link gets a color
/// different from every q(hub, negative center) link at (t, l_layers), and
/// 0.5 otherwise.
ConnectHubScore evaluate_separation(const ConnectHubInstance& inst, std::span<const Motif> motifs,
                                    std::size_t t, std::size_t l_layers);
ConnectHubScore evaluate_separation_ultra(const ConnectHubInstance& inst, std::size_t t,
                                          std::size_t l_layers);

}  // namespace motif
