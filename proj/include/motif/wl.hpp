#pragma once

// Color refinement tests: hcwl over lifted hypergraphs (stage one), the
// conditioned link coloring col_{F,T} (stage two), the ULTRA-side test and
// rawl2.
//
// Hash is realized by interning canonical signatures. All colorings made
// through one ColorInterner are comparable by id; colorings from different
// interners can only be compared as partitions.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "motif/kg.hpp"
#include "motif/motif.hpp"

namespace motif {

/// Interned color. 0 is never issued by an interner; it stands for the
/// literal zero color of the initial indicator colorings.
using Color = std::uint32_t;

class ColorInterner {
 public:
  ColorInterner();

  /// Returns the id of `signature`, issuing the next free id (from 1) for a
  /// signature not seen before.
  Color intern(std::span<const std::uint32_t> signature);
  std::size_t size() const noexcept { return count_; }

 private:
  struct Slot {
    std::uint64_t hash = 0;
    std::uint64_t offset = 0;
    std::uint32_t length = 0;
    Color id = 0;
  };
  void grow();

  std::vector<std::uint32_t> arena_;
  std::vector<Slot> slots_;
  std::size_t count_ = 0;
};

/// hcwl^(t)(q, .) for t = 0..T, indexed [t][r].
struct RelColoring {
  RelId q = 0;
  std::vector<std::vector<Color>> history;

  std::size_t iterations() const noexcept { return history.empty() ? 0 : history.size() - 1; }
  const std::vector<Color>& at(std::size_t t) const { return history.at(t); }
};

/// col^(l)(q(u, v)) for every v and l = 0..L, indexed [l][v], computed
/// with the stage-one colors at depth t.
struct LinkColoring {
  RelId q = 0;
  NodeId u = 0;
  std::size_t t = 0;
  std::vector<std::vector<Color>> history;
  /// First layer whose partition equals the previous layer's, if reached.
  std::optional<std::size_t> stable_layer;

  std::size_t layers() const noexcept { return history.empty() ? 0 : history.size() - 1; }
  const std::vector<Color>& at(std::size_t l) const { return history.at(l); }
};

/// Stage one over a relational hypergraph, conditioned on node q.
RelColoring hcwl_colors(const RelationalHypergraph& h, RelId q, std::size_t t_max,
                        ColorInterner& interner);
/// Continues an existing history up to t_max.
void extend_hcwl(const RelationalHypergraph& h, RelColoring& c, std::size_t t_max,
                 ColorInterner& interner);

/// rawl2 conditioned on `source` with the indicator initial coloring;
/// returns [l][v]. Neighbors of v are the w with a fact r(w, v), paired
/// with r.
std::vector<std::vector<Color>> rawl2_colors(const KnowledgeGraph& g, NodeId source,
                                             std::size_t l_max, ColorInterner& interner);

/// Stage two for one (q, u): col^(0)(v) = [v = u] * rel_colors[q], then
/// Hash(col(v), {{ (col(w), rel_colors[r]) | w in N_r(v), r in R }}).
LinkColoring link_colors(const KnowledgeGraph& g, RelId q, NodeId u,
                         std::span<const Color> rel_colors, std::size_t t, std::size_t l_max,
                         ColorInterner& interner);

enum class TestKind { kMotif, kUltra };

/// Lazily computed two-stage coloring of one KG. For kMotif the first stage
/// is hcwl over Lift_F(G); for kUltra it is rawl2 over the binary relation
/// graph Lift_ultra4(G), conditioned on q.
class LinkColorer {
 public:
  /// kMotif over the given motif set.
  LinkColorer(const KnowledgeGraph& g, std::span<const Motif> motifs);
  /// Over a precomputed lift of `g`.
  LinkColorer(const KnowledgeGraph& g, RelationalHypergraph lifted, TestKind kind);
  /// The ULTRA test (lifts with the four ULTRA motifs).
  static LinkColorer ultra(const KnowledgeGraph& g);

  const KnowledgeGraph& graph() const noexcept { return g_; }
  const RelationalHypergraph& lifted() const noexcept { return lifted_; }
  TestKind kind() const noexcept { return kind_; }
  ColorInterner& interner() noexcept { return *interner_; }

  /// Stage-one history for q, at least t_max iterations deep.
  const RelColoring& relation_colors(RelId q, std::size_t t_max);
  LinkColoring link_colors(RelId q, NodeId u, std::size_t t, std::size_t l_max);
  Color color(const LinkQuery& link, std::size_t t, std::size_t l);

  /// Colors of every link q(u, v) at (t, l), indexed (q * n + u) * n + v.
  std::vector<Color> all_link_colors(std::size_t t, std::size_t l);

 private:
  KnowledgeGraph g_;
  RelationalHypergraph lifted_;
  TestKind kind_;
  KnowledgeGraph binary_;  // kUltra only
  std::unique_ptr<ColorInterner> interner_;
  std::map<RelId, RelColoring> stage_one_;
};

/// Convenience wrappers computing fresh colorings.
LinkColoring motif_link_colors(const KnowledgeGraph& g, std::span<const Motif> motifs, RelId q,
                               NodeId u, std::size_t t, std::size_t l);
LinkColoring ultra_link_colors(const KnowledgeGraph& g, RelId q, NodeId u, std::size_t t,
                               std::size_t l);

struct Separation {
  bool separated = false;
  /// Lexicographically smallest separating (t, l) of a sweep.
  std::optional<std::pair<std::size_t, std::size_t>> first_at;
};

/// Compares the two links at exactly (t, l).
Separation separates(LinkColorer& colorer, const LinkQuery& a, const LinkQuery& b, std::size_t t,
                     std::size_t l);
/// Searches t = 0..t_max, l = 0..l_max; `separated` is true iff some grid
/// point separates the links.
Separation sweep_separation(LinkColorer& colorer, const LinkQuery& a, const LinkQuery& b,
                            std::size_t t_max, std::size_t l_max);

/// Relabels colors by order of first occurrence; two colorings induce the
/// same partition iff their canonical block vectors are equal.
std::vector<std::uint32_t> canonical_blocks(std::span<const Color> colors);
bool same_partition(std::span<const Color> a, std::span<const Color> b);
/// True iff every block of `fine` lies inside a block of `coarse`.
bool refines(std::span<const Color> fine, std::span<const Color> coarse);

}  // namespace motif
