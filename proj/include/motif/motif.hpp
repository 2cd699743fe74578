#pragma once

// Motifs, motif evaluation and the Lift construction.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motif/kg.hpp"

namespace motif {

/// A graph motif P = (G_M, r): a connected pattern KG and an ordering of
/// its relation symbols. The arity of P is |R_M|.
struct Motif {
  std::string name;
  KnowledgeGraph pattern;
  std::vector<RelId> order;

  std::size_t arity() const noexcept { return order.size(); }
};

/// One pattern fact, by variable names: {relation, head, tail}.
struct PatternFact {
  std::string relation;
  std::string head;
  std::string tail;
};

/// Builds and validates a motif. Throws ParseError if the pattern is empty
/// or disconnected, repeats a relation symbol, or if `order` is not a
/// permutation of the relation symbols.
Motif make_motif(std::string name, const std::vector<PatternFact>& facts,
                 const std::vector<std::string>& order);

/// Same motif with another name (used to build isomorphic copies).
Motif renamed(const Motif& m, std::string name);

/// {"name": ..., "order": [...], "facts": [[rel, head, tail], ...]}
Motif parse_motif_json(std::string_view text);
std::string motif_to_json(const Motif& m);

/// Named motif sets. Accepts the set names listed by catalog_names(),
/// single motif names (h2t, t2h, h2h, t2t, tfh, tft, hfh, hft, p4_*,
/// star1..star8, para, loop) and comma-separated unions of both.
/// Throws CatalogError on unknown names.
std::vector<Motif> catalog(std::string_view spec);
std::vector<std::string> catalog_names();

/// A catalog spec, or else a path to a motif JSON file holding one motif
/// object or an array of them.
std::vector<Motif> resolve_motifs(std::string_view spec);

/// Motifs sorted by name with exact duplicates removed. Two different
/// patterns under one name are rejected.
std::vector<Motif> canonical_motif_set(std::vector<Motif> motifs);

/// Sorted, duplicate-free tuples of equal arity stored back to back.
struct TupleSet {
  std::size_t arity = 0;
  std::vector<RelId> data;

  std::size_t size() const noexcept { return arity == 0 ? 0 : data.size() / arity; }
  std::span<const RelId> operator[](std::size_t i) const {
    return std::span<const RelId>(data).subspan(i * arity, arity);
  }
  bool contains(std::span<const RelId> tuple) const;

  /// Sorts and deduplicates `data` in place.
  void normalize();

  friend bool operator==(const TupleSet&, const TupleSet&) = default;
};

/// Eval(P, G): the tuples (phi(r_1), ..., phi(r_k)) over all node-relation
/// homomorphisms (pi, phi) from the pattern into `g`.
TupleSet eval_motif(const Motif& p, const KnowledgeGraph& g);

struct HyperEdge {
  std::size_t motif_index = 0;
  std::vector<RelId> tuple;

  friend auto operator<=>(const HyperEdge&, const HyperEdge&) = default;
};

/// Relational hypergraph produced by Lift: nodes are the relations of the
/// source KG, hyperedge types are motifs sorted by name, and the
/// hyperedges of each type are kept as a TupleSet.
class RelationalHypergraph {
 public:
  RelationalHypergraph() = default;
  RelationalHypergraph(std::vector<std::string> node_names, std::vector<Motif> edge_types,
                       std::vector<TupleSet> edges);

  std::size_t num_nodes() const noexcept { return node_names_.size(); }
  const std::vector<std::string>& node_names() const noexcept { return node_names_; }
  const std::vector<Motif>& edge_types() const noexcept { return edge_types_; }
  std::size_t num_edge_types() const noexcept { return edge_types_.size(); }
  const TupleSet& edges(std::size_t type) const { return edges_.at(type); }
  std::size_t num_hyperedges() const noexcept;

  std::optional<std::size_t> type_index(std::string_view motif_name) const;
  bool contains(std::string_view motif_name, std::span<const RelId> tuple) const;
  /// Same, with the tuple given by relation names.
  bool contains(std::string_view motif_name, const std::vector<std::string>& tuple) const;

  std::vector<HyperEdge> hyperedges() const;

  /// Same nodes, same edge type names and arities, same hyperedge sets.
  bool same_as(const RelationalHypergraph& other) const;

  /// Union of hyperedges with another lift over the same nodes.
  RelationalHypergraph merged(const RelationalHypergraph& other) const;

  /// The same hypergraph viewed as a binary multi-relational KG (only
  /// meaningful when every edge type has arity 2): nodes are relations,
  /// relation names are motif names, a hyperedge P(r1, r2) becomes the fact
  /// P(r1, r2). Every edge type is registered even without edges.
  KnowledgeGraph as_binary_kg() const;

 private:
  std::vector<std::string> node_names_;
  std::vector<Motif> edge_types_;
  std::vector<TupleSet> edges_;
};

struct LiftOptions {
  std::size_t threads = 1;
};

RelationalHypergraph lift(std::span<const Motif> motifs, const KnowledgeGraph& g,
                          const LiftOptions& options = {});

/// Lift over the four ULTRA motifs via boolean products of the head and
/// tail incidence matrices.
RelationalHypergraph lift_fast_2path(const KnowledgeGraph& g);

/// Lift over the 2- and 3-path motifs: the 2-path part as above, the
/// 3-path motifs through products E^T A E with the middle adjacency.
RelationalHypergraph lift_fast_3path(const KnowledgeGraph& g);

/// Sparse-product lift for a set equal to ultra4, f2path or f3path;
/// throws PreconditionError for any other set.
RelationalHypergraph lift_fast(std::span<const Motif> motifs, const KnowledgeGraph& g);
bool has_fast_path(std::span<const Motif> motifs);

/// Keeps only the listed edge types (by name, must exist).
RelationalHypergraph restrict_edge_types(const RelationalHypergraph& h,
                                         const std::vector<std::string>& names);

}  // namespace motif
