#pragma once

// Knowledge graph data model: dense node/relation ids with name tables,
// a deduplicated fact set, and per-node adjacency sorted by relation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace motif {

using NodeId = std::uint32_t;
using RelId = std::uint32_t;

/// A labeled edge r(head, tail).
struct Fact {
  RelId relation = 0;
  NodeId head = 0;
  NodeId tail = 0;

  friend auto operator<=>(const Fact&, const Fact&) = default;
};

struct FactHash {
  std::size_t operator()(const Fact& f) const noexcept {
    std::uint64_t x = (std::uint64_t{f.relation} << 42) ^ (std::uint64_t{f.head} << 21) ^ f.tail;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

/// A potential link q(source, target); need not be a fact.
struct LinkQuery {
  RelId relation = 0;
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const LinkQuery&, const LinkQuery&) = default;
};

/// Bijection between names and dense ids, ids assigned in insertion order.
class NameTable {
 public:
  std::uint32_t intern(std::string_view name);
  std::optional<std::uint32_t> find(std::string_view name) const;
  const std::string& name(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  friend bool operator==(const NameTable& a, const NameTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Immutable knowledge graph G = (V, E, R).
///
/// Facts keep their first-insertion order (which is what the serializer
/// writes); membership and neighborhood queries go through a hash set and
/// per-node adjacency lists sorted by (relation, other endpoint).
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  /// Validates ids and collapses duplicate facts (first occurrence wins).
  KnowledgeGraph(NameTable nodes, NameTable relations, std::vector<Fact> facts);

  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  std::size_t num_relations() const noexcept { return relations_.size(); }
  std::size_t num_facts() const noexcept { return facts_.size(); }

  const NameTable& nodes() const noexcept { return nodes_; }
  const NameTable& relations() const noexcept { return relations_; }
  const std::string& node_name(NodeId v) const { return nodes_.name(v); }
  const std::string& relation_name(RelId r) const { return relations_.name(r); }
  std::optional<NodeId> node_id(std::string_view name) const { return nodes_.find(name); }
  std::optional<RelId> relation_id(std::string_view name) const { return relations_.find(name); }

  std::span<const Fact> facts() const noexcept { return facts_; }
  bool contains(const Fact& f) const { return fact_set_.contains(f); }
  bool contains(RelId r, NodeId head, NodeId tail) const { return contains(Fact{r, head, tail}); }

  /// Facts whose head is `u`, sorted by (relation, tail).
  std::span<const Fact> out_facts(NodeId u) const;
  /// Facts whose tail is `v`, sorted by (relation, head).
  std::span<const Fact> in_facts(NodeId v) const;
  /// Facts r(u, *), sorted by tail.
  std::span<const Fact> out_facts(NodeId u, RelId r) const;
  /// Facts r(*, v), sorted by head; the heads form N_r(v).
  std::span<const Fact> in_facts(NodeId v, RelId r) const;

  /// Number of facts per relation.
  std::size_t relation_size(RelId r) const { return relation_sizes_.at(r); }

  /// Same graph up to fact order: identical name tables and fact sets.
  bool same_as(const KnowledgeGraph& other) const;

 private:
  NameTable nodes_;
  NameTable relations_;
  std::vector<Fact> facts_;
  std::unordered_set<Fact, FactHash> fact_set_;
  std::vector<Fact> out_sorted_;
  std::vector<Fact> in_sorted_;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<std::size_t> relation_sizes_;
};

/// Incremental construction of a KnowledgeGraph.
class KnowledgeGraphBuilder {
 public:
  NodeId add_node(std::string_view name) { return nodes_.intern(name); }
  RelId add_relation(std::string_view name) { return relations_.intern(name); }
  void add_fact(RelId r, NodeId head, NodeId tail) { facts_.push_back({r, head, tail}); }
  /// Adds head/relation/tail by name, interning any new names in that order.
  void add_fact(std::string_view head, std::string_view relation, std::string_view tail);

  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  std::size_t num_relations() const noexcept { return relations_.size(); }

  KnowledgeGraph build() &&;
  KnowledgeGraph build() const&;

 private:
  NameTable nodes_;
  NameTable relations_;
  std::vector<Fact> facts_;
};

/// Node map pi and relation map phi between two KGs.
struct NodeRelHomomorphism {
  std::vector<NodeId> node_map;
  std::vector<RelId> rel_map;

  friend bool operator==(const NodeRelHomomorphism&, const NodeRelHomomorphism&) = default;
};

/// Parses "head<TAB>relation<TAB>tail" lines; '#' comments and blank lines
/// are skipped. Throws ParseError (with the 1-based line number) on a line
/// that does not have exactly three fields.
KnowledgeGraph parse_kg(std::string_view text);
KnowledgeGraph read_kg_file(const std::filesystem::path& path);

/// Writes one line per fact in insertion order. Nodes and relations that
/// appear in no fact are not representable in the triple format.
std::string serialize_kg(const KnowledgeGraph& g);
void write_kg_file(const KnowledgeGraph& g, const std::filesystem::path& path);

/// G+ = (V, E u E-, R u R-), with one fresh relation r^- per r and
/// E- = { r^-(v,u) | r(u,v) in E, u != v }. The inverse of relation r has id
/// r + |R|.
KnowledgeGraph augment_inverses(const KnowledgeGraph& g);

/// True iff every fact of `src` is mapped onto a fact of `dst`. Maps that
/// are not total or point out of range yield false.
bool validate_homomorphism(const NodeRelHomomorphism& h, const KnowledgeGraph& src,
                           const KnowledgeGraph& dst);

/// The image h(G): nodes pi(V), relations phi(R), facts h(E), named as in
/// `dst`. Ids of the image are assigned in increasing dst-id order.
KnowledgeGraph homomorphic_image(const NodeRelHomomorphism& h, const KnowledgeGraph& src,
                                 const KnowledgeGraph& dst);

/// Subgraph induced on a subset of facts; keeps only nodes incident to the
/// kept facts but every relation of `g`.
KnowledgeGraph fact_subgraph(const KnowledgeGraph& g, std::span<const Fact> facts);

inline constexpr std::size_t kDefaultIsomorphismNodeCap = 32;

/// Backtracking isomorphism test with degree-profile pruning. Returns a
/// witness (pi, phi) on success. Throws SizeLimitError when either graph has
/// more than `max_nodes` nodes.
std::optional<NodeRelHomomorphism> find_isomorphism(const KnowledgeGraph& g1,
                                                    const KnowledgeGraph& g2,
                                                    std::size_t max_nodes = kDefaultIsomorphismNodeCap);

inline bool is_isomorphic(const KnowledgeGraph& g1, const KnowledgeGraph& g2,
                          std::size_t max_nodes = kDefaultIsomorphismNodeCap) {
  return find_isomorphism(g1, g2, max_nodes).has_value();
}

}  // namespace motif
