#include "motif/kg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "motif/error.hpp"
#include "motif/hom_search.hpp"

namespace motif {

std::uint32_t NameTable::intern(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<std::uint32_t> NameTable::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

namespace {

std::span<const Fact> slice(const std::vector<Fact>& v, std::size_t begin, std::size_t end) {
  return std::span<const Fact>(v).subspan(begin, end - begin);
}

}  // namespace

KnowledgeGraph::KnowledgeGraph(NameTable nodes, NameTable relations, std::vector<Fact> facts)
    : nodes_(std::move(nodes)), relations_(std::move(relations)) {
  const std::size_t n = nodes_.size();
  const std::size_t m = relations_.size();
  facts_.reserve(facts.size());
  fact_set_.reserve(facts.size());
  for (const Fact& f : facts) {
    if (f.head >= n || f.tail >= n || f.relation >= m) {
      throw PreconditionError("fact references an unknown node or relation id");
    }
    if (fact_set_.insert(f).second) facts_.push_back(f);
  }

  relation_sizes_.assign(m, 0);
  for (const Fact& f : facts_) ++relation_sizes_[f.relation];

  out_sorted_ = facts_;
  std::sort(out_sorted_.begin(), out_sorted_.end(), [](const Fact& a, const Fact& b) {
    return std::tie(a.head, a.relation, a.tail) < std::tie(b.head, b.relation, b.tail);
  });
  in_sorted_ = facts_;
  std::sort(in_sorted_.begin(), in_sorted_.end(), [](const Fact& a, const Fact& b) {
    return std::tie(a.tail, a.relation, a.head) < std::tie(b.tail, b.relation, b.head);
  });

  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const Fact& f : facts_) {
    ++out_offsets_[f.head + 1];
    ++in_offsets_[f.tail + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
}

std::span<const Fact> KnowledgeGraph::out_facts(NodeId u) const {
  return slice(out_sorted_, out_offsets_.at(u), out_offsets_.at(u + 1));
}

std::span<const Fact> KnowledgeGraph::in_facts(NodeId v) const {
  return slice(in_sorted_, in_offsets_.at(v), in_offsets_.at(v + 1));
}

std::span<const Fact> KnowledgeGraph::out_facts(NodeId u, RelId r) const {
  auto all = out_facts(u);
  auto lo = std::lower_bound(all.begin(), all.end(), r,
                             [](const Fact& f, RelId rel) { return f.relation < rel; });
  auto hi = std::upper_bound(lo, all.end(), r,
                             [](RelId rel, const Fact& f) { return rel < f.relation; });
  return {lo, hi};
}

std::span<const Fact> KnowledgeGraph::in_facts(NodeId v, RelId r) const {
  auto all = in_facts(v);
  auto lo = std::lower_bound(all.begin(), all.end(), r,
                             [](const Fact& f, RelId rel) { return f.relation < rel; });
  auto hi = std::upper_bound(lo, all.end(), r,
                             [](RelId rel, const Fact& f) { return rel < f.relation; });
  return {lo, hi};
}

bool KnowledgeGraph::same_as(const KnowledgeGraph& other) const {
  return nodes_ == other.nodes_ && relations_ == other.relations_ &&
         fact_set_ == other.fact_set_;
}

void KnowledgeGraphBuilder::add_fact(std::string_view head, std::string_view relation,
                                     std::string_view tail) {
  const NodeId h = nodes_.intern(head);
  const RelId r = relations_.intern(relation);
  const NodeId t = nodes_.intern(tail);
  facts_.push_back({r, h, t});
}

KnowledgeGraph KnowledgeGraphBuilder::build() && {
  return KnowledgeGraph(std::move(nodes_), std::move(relations_), std::move(facts_));
}

KnowledgeGraph KnowledgeGraphBuilder::build() const& {
  return KnowledgeGraph(nodes_, relations_, facts_);
}

KnowledgeGraph parse_kg(std::string_view text) {
  KnowledgeGraphBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3) {
      throw ParseError("expected 3 tab-separated fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    for (auto f : fields) {
      if (f.empty()) throw ParseError("empty field", line_no);
    }
    builder.add_fact(fields[0], fields[1], fields[2]);
    if (end == text.size()) break;
  }
  return std::move(builder).build();
}

KnowledgeGraph read_kg_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_kg(buffer.str());
}

std::string serialize_kg(const KnowledgeGraph& g) {
  std::string out;
  for (const Fact& f : g.facts()) {
    out += g.node_name(f.head);
    out += '\t';
    out += g.relation_name(f.relation);
    out += '\t';
    out += g.node_name(f.tail);
    out += '\n';
  }
  return out;
}

void write_kg_file(const KnowledgeGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_kg(g);
}

KnowledgeGraph augment_inverses(const KnowledgeGraph& g) {
  NameTable relations = g.relations();
  const std::size_t m = g.num_relations();
  for (RelId r = 0; r < m; ++r) {
    std::string name = g.relation_name(r) + "^-";
    while (relations.find(name)) name += "'";
    relations.intern(name);
  }
  std::vector<Fact> facts(g.facts().begin(), g.facts().end());
  for (const Fact& f : g.facts()) {
    if (f.head != f.tail) {
      facts.push_back({static_cast<RelId>(f.relation + m), f.tail, f.head});
    }
  }
  return KnowledgeGraph(g.nodes(), std::move(relations), std::move(facts));
}

bool validate_homomorphism(const NodeRelHomomorphism& h, const KnowledgeGraph& src,
                           const KnowledgeGraph& dst) {
  if (h.node_map.size() != src.num_nodes() || h.rel_map.size() != src.num_relations()) {
    return false;
  }
  for (NodeId v : h.node_map) {
    if (v >= dst.num_nodes()) return false;
  }
  for (RelId r : h.rel_map) {
    if (r >= dst.num_relations()) return false;
  }
  for (const Fact& f : src.facts()) {
    if (!dst.contains(h.rel_map[f.relation], h.node_map[f.head], h.node_map[f.tail])) {
      return false;
    }
  }
  return true;
}

KnowledgeGraph homomorphic_image(const NodeRelHomomorphism& h, const KnowledgeGraph& src,
                                 const KnowledgeGraph& dst) {
  std::vector<NodeId> nodes(h.node_map.begin(), h.node_map.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<RelId> rels(h.rel_map.begin(), h.rel_map.end());
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());

  NameTable node_names;
  NameTable rel_names;
  std::unordered_map<NodeId, NodeId> node_index;
  std::unordered_map<RelId, RelId> rel_index;
  for (NodeId v : nodes) node_index[v] = node_names.intern(dst.node_name(v));
  for (RelId r : rels) rel_index[r] = rel_names.intern(dst.relation_name(r));

  std::vector<Fact> facts;
  facts.reserve(src.num_facts());
  for (const Fact& f : src.facts()) {
    facts.push_back({rel_index.at(h.rel_map[f.relation]), node_index.at(h.node_map[f.head]),
                     node_index.at(h.node_map[f.tail])});
  }
  std::sort(facts.begin(), facts.end());
  return KnowledgeGraph(std::move(node_names), std::move(rel_names), std::move(facts));
}

KnowledgeGraph fact_subgraph(const KnowledgeGraph& g, std::span<const Fact> facts) {
  std::vector<bool> keep(g.num_nodes(), false);
  for (const Fact& f : facts) keep[f.head] = keep[f.tail] = true;
  NameTable node_names;
  std::vector<NodeId> remap(g.num_nodes(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (keep[v]) remap[v] = node_names.intern(g.node_name(v));
  }
  std::vector<Fact> out;
  out.reserve(facts.size());
  for (const Fact& f : facts) out.push_back({f.relation, remap[f.head], remap[f.tail]});
  return KnowledgeGraph(std::move(node_names), g.relations(), std::move(out));
}

std::optional<NodeRelHomomorphism> find_isomorphism(const KnowledgeGraph& g1,
                                                    const KnowledgeGraph& g2,
                                                    std::size_t max_nodes) {
  if (g1.num_nodes() > max_nodes || g2.num_nodes() > max_nodes) {
    throw SizeLimitError("isomorphism check limited to " + std::to_string(max_nodes) +
                         " nodes, got " + std::to_string(std::max(g1.num_nodes(), g2.num_nodes())));
  }
  if (g1.num_nodes() != g2.num_nodes() || g1.num_relations() != g2.num_relations() ||
      g1.num_facts() != g2.num_facts()) {
    return std::nullopt;
  }
  std::vector<std::size_t> sizes1, sizes2;
  for (RelId r = 0; r < g1.num_relations(); ++r) {
    sizes1.push_back(g1.relation_size(r));
    sizes2.push_back(g2.relation_size(r));
  }
  std::sort(sizes1.begin(), sizes1.end());
  std::sort(sizes2.begin(), sizes2.end());
  if (sizes1 != sizes2) return std::nullopt;

  // With both maps injective and equal fact counts, an injective
  // homomorphism maps E bijectively onto E', i.e. it is an isomorphism.
  HomSearchOptions options;
  options.injective_nodes = true;
  options.injective_relations = true;
  options.match_degree_profile = true;
  return find_homomorphism(g1, g2, options);
}

}  // namespace motif
