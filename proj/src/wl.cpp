#include "motif/wl.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <unordered_map>

#include "motif/error.hpp"

namespace motif {

namespace {

// Signature kinds, so that signatures of different tests never collide.
enum : std::uint32_t {
  kHcwlSub = 0x48430001,
  kHcwlNode = 0x48430002,
  kRawl = 0x52410001,
  kLink = 0x4c4b0001,
};

std::uint64_t hash_words(std::span<const std::uint32_t> words) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ words.size();
  for (std::uint32_t w : words) {
    h ^= w;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 32;
  }
  h ^= h >> 29;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 32;
  return h;
}

std::size_t distinct_count(std::span<const Color> colors) {
  std::vector<Color> c(colors.begin(), colors.end());
  std::sort(c.begin(), c.end());
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

// One refinement step of a rawl2-style test: each node hashes its previous
// color with the multiset of (color of in-neighbor w, label of r) over
// facts r(w, v).
std::vector<Color> relational_step(const KnowledgeGraph& g, std::span<const Color> prev,
                                   std::span<const Color> labels, std::uint32_t tag,
                                   ColorInterner& interner) {
  std::vector<Color> next(g.num_nodes());
  std::vector<std::uint64_t> pairs;
  std::vector<std::uint32_t> sig;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    pairs.clear();
    for (const Fact& f : g.in_facts(v)) {
      pairs.push_back((std::uint64_t{prev[f.head]} << 32) | labels[f.relation]);
    }
    std::sort(pairs.begin(), pairs.end());
    sig.assign({tag, prev[v]});
    for (std::uint64_t p : pairs) {
      sig.push_back(static_cast<std::uint32_t>(p >> 32));
      sig.push_back(static_cast<std::uint32_t>(p));
    }
    next[v] = interner.intern(sig);
  }
  return next;
}

}  // namespace

ColorInterner::ColorInterner() : slots_(1024) {}

void ColorInterner::grow() {
  std::vector<Slot> old = std::move(slots_);
  slots_.assign(old.size() * 2, Slot{});
  const std::size_t mask = slots_.size() - 1;
  for (const Slot& s : old) {
    if (s.id == 0) continue;
    std::size_t i = s.hash & mask;
    while (slots_[i].id != 0) i = (i + 1) & mask;
    slots_[i] = s;
  }
}

Color ColorInterner::intern(std::span<const std::uint32_t> signature) {
  const std::uint64_t h = hash_words(signature);
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = h & mask;
  while (slots_[i].id != 0) {
    const Slot& s = slots_[i];
    if (s.hash == h && s.length == signature.size() &&
        (signature.empty() ||
         std::memcmp(arena_.data() + s.offset, signature.data(),
                     signature.size() * sizeof(std::uint32_t)) == 0)) {
      return s.id;
    }
    i = (i + 1) & mask;
  }
  if (count_ + 1 >= std::numeric_limits<Color>::max()) throw Error("color space exhausted");
  Slot& s = slots_[i];
  s.hash = h;
  s.offset = arena_.size();
  s.length = static_cast<std::uint32_t>(signature.size());
  s.id = static_cast<Color>(++count_);
  arena_.insert(arena_.end(), signature.begin(), signature.end());
  const Color id = s.id;
  if (2 * count_ > slots_.size()) grow();
  return id;
}

void extend_hcwl(const RelationalHypergraph& h, RelColoring& c, std::size_t t_max,
                 ColorInterner& interner) {
  const std::size_t n = h.num_nodes();
  if (c.history.empty()) {
    if (c.q >= n) throw PreconditionError("query relation is not a node of the hypergraph");
    std::vector<Color> init(n, 0);
    init[c.q] = 1;
    c.history.push_back(std::move(init));
  }
  std::vector<std::vector<std::uint32_t>> bucket(n);
  std::vector<std::uint32_t> sig;
  while (c.iterations() < t_max) {
    const std::vector<Color>& prev = c.history.back();
    for (auto& b : bucket) b.clear();
    for (std::size_t type = 0; type < h.num_edge_types(); ++type) {
      const TupleSet& edges = h.edges(type);
      const std::size_t k = edges.arity;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto tuple = edges[e];
        for (std::size_t i = 0; i < k; ++i) {
          sig.assign({kHcwlSub, static_cast<std::uint32_t>(type), static_cast<std::uint32_t>(i)});
          for (std::size_t j = 0; j < k; ++j) {
            if (j != i) sig.push_back(prev[tuple[j]]);
          }
          bucket[tuple[i]].push_back(interner.intern(sig));
        }
      }
    }
    std::vector<Color> next(n);
    for (std::size_t r = 0; r < n; ++r) {
      auto& b = bucket[r];
      std::sort(b.begin(), b.end());
      sig.assign({kHcwlNode, prev[r]});
      for (std::size_t i = 0; i < b.size();) {
        std::size_t j = i;
        while (j < b.size() && b[j] == b[i]) ++j;
        sig.push_back(b[i]);
        sig.push_back(static_cast<std::uint32_t>(j - i));
        i = j;
      }
      next[r] = interner.intern(sig);
    }
    c.history.push_back(std::move(next));
  }
}

RelColoring hcwl_colors(const RelationalHypergraph& h, RelId q, std::size_t t_max,
                        ColorInterner& interner) {
  RelColoring c;
  c.q = q;
  extend_hcwl(h, c, t_max, interner);
  return c;
}

std::vector<std::vector<Color>> rawl2_colors(const KnowledgeGraph& g, NodeId source,
                                             std::size_t l_max, ColorInterner& interner) {
  if (source >= g.num_nodes()) throw PreconditionError("source node out of range");
  std::vector<std::vector<Color>> history;
  std::vector<Color> init(g.num_nodes(), 0);
  init[source] = 1;
  history.push_back(std::move(init));
  std::vector<Color> labels(g.num_relations());
  for (RelId r = 0; r < g.num_relations(); ++r) labels[r] = r;
  for (std::size_t l = 0; l < l_max; ++l) {
    history.push_back(relational_step(g, history.back(), labels, kRawl, interner));
  }
  return history;
}

LinkColoring link_colors(const KnowledgeGraph& g, RelId q, NodeId u,
                         std::span<const Color> rel_colors, std::size_t t, std::size_t l_max,
                         ColorInterner& interner) {
  if (q >= g.num_relations() || u >= g.num_nodes()) {
    throw PreconditionError("link condition out of range");
  }
  if (rel_colors.size() != g.num_relations()) {
    throw PreconditionError("one stage-one color per relation is required");
  }
  LinkColoring c;
  c.q = q;
  c.u = u;
  c.t = t;
  std::vector<Color> init(g.num_nodes(), 0);
  init[u] = rel_colors[q];
  c.history.push_back(std::move(init));
  std::size_t blocks = distinct_count(c.history.back());
  for (std::size_t l = 0; l < l_max; ++l) {
    c.history.push_back(relational_step(g, c.history.back(), rel_colors, kLink, interner));
    const std::size_t now = distinct_count(c.history.back());
    if (!c.stable_layer && now == blocks) c.stable_layer = l + 1;
    blocks = now;
  }
  return c;
}

LinkColorer::LinkColorer(const KnowledgeGraph& g, std::span<const Motif> motifs)
    : LinkColorer(g, has_fast_path(motifs) ? lift_fast(motifs, g) : lift(motifs, g),
                  TestKind::kMotif) {}

LinkColorer::LinkColorer(const KnowledgeGraph& g, RelationalHypergraph lifted, TestKind kind)
    : g_(g),
      lifted_(std::move(lifted)),
      kind_(kind),
      interner_(std::make_unique<ColorInterner>()) {
  if (lifted_.num_nodes() != g_.num_relations()) {
    throw PreconditionError("lift does not match the graph's relations");
  }
  if (kind_ == TestKind::kUltra) binary_ = lifted_.as_binary_kg();
}

LinkColorer LinkColorer::ultra(const KnowledgeGraph& g) {
  return LinkColorer(g, lift_fast_2path(g), TestKind::kUltra);
}

const RelColoring& LinkColorer::relation_colors(RelId q, std::size_t t_max) {
  if (q >= g_.num_relations()) throw PreconditionError("query relation out of range");
  RelColoring& c = stage_one_[q];
  c.q = q;
  if (kind_ == TestKind::kMotif) {
    extend_hcwl(lifted_, c, t_max, *interner_);
  } else if (c.iterations() < t_max || c.history.empty()) {
    c.history = rawl2_colors(binary_, q, std::max(t_max, c.iterations()), *interner_);
  }
  return c;
}

LinkColoring LinkColorer::link_colors(RelId q, NodeId u, std::size_t t, std::size_t l_max) {
  const RelColoring& rc = relation_colors(q, t);
  return motif::link_colors(g_, q, u, rc.at(t), t, l_max, *interner_);
}

Color LinkColorer::color(const LinkQuery& link, std::size_t t, std::size_t l) {
  if (link.target >= g_.num_nodes()) throw PreconditionError("link target out of range");
  return link_colors(link.relation, link.source, t, l).at(l)[link.target];
}

std::vector<Color> LinkColorer::all_link_colors(std::size_t t, std::size_t l) {
  const std::size_t n = g_.num_nodes();
  std::vector<Color> out;
  out.reserve(g_.num_relations() * n * n);
  for (RelId q = 0; q < g_.num_relations(); ++q) {
    for (NodeId u = 0; u < n; ++u) {
      const LinkColoring c = link_colors(q, u, t, l);
      out.insert(out.end(), c.at(l).begin(), c.at(l).end());
    }
  }
  return out;
}

LinkColoring motif_link_colors(const KnowledgeGraph& g, std::span<const Motif> motifs, RelId q,
                               NodeId u, std::size_t t, std::size_t l) {
  LinkColorer colorer(g, motifs);
  return colorer.link_colors(q, u, t, l);
}

LinkColoring ultra_link_colors(const KnowledgeGraph& g, RelId q, NodeId u, std::size_t t,
                               std::size_t l) {
  LinkColorer colorer = LinkColorer::ultra(g);
  return colorer.link_colors(q, u, t, l);
}

Separation separates(LinkColorer& colorer, const LinkQuery& a, const LinkQuery& b, std::size_t t,
                     std::size_t l) {
  Separation s;
  s.separated = colorer.color(a, t, l) != colorer.color(b, t, l);
  return s;
}

Separation sweep_separation(LinkColorer& colorer, const LinkQuery& a, const LinkQuery& b,
                            std::size_t t_max, std::size_t l_max) {
  Separation s;
  for (std::size_t t = 0; t <= t_max; ++t) {
    const LinkColoring ca = colorer.link_colors(a.relation, a.source, t, l_max);
    const LinkColoring cb = colorer.link_colors(b.relation, b.source, t, l_max);
    for (std::size_t l = 0; l <= l_max; ++l) {
      if (ca.at(l).at(a.target) != cb.at(l).at(b.target)) {
        s.separated = true;
        s.first_at = {t, l};
        return s;
      }
    }
  }
  return s;
}

std::vector<std::uint32_t> canonical_blocks(std::span<const Color> colors) {
  std::unordered_map<Color, std::uint32_t> ids;
  std::vector<std::uint32_t> out;
  out.reserve(colors.size());
  for (Color c : colors) {
    auto [it, fresh] = ids.try_emplace(c, static_cast<std::uint32_t>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

bool same_partition(std::span<const Color> a, std::span<const Color> b) {
  return a.size() == b.size() && canonical_blocks(a) == canonical_blocks(b);
}

bool refines(std::span<const Color> fine, std::span<const Color> coarse) {
  if (fine.size() != coarse.size()) return false;
  std::unordered_map<Color, Color> to_coarse;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto [it, fresh] = to_coarse.try_emplace(fine[i], coarse[i]);
    if (!fresh && it->second != coarse[i]) return false;
  }
  return true;
}

}  // namespace motif
