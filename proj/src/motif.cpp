#include "motif/motif.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "motif/error.hpp"
#include "motif/hom_search.hpp"

namespace motif {

namespace {

using json = nlohmann::json;

bool connected(const KnowledgeGraph& g) {
  if (g.num_nodes() == 0) return false;
  std::vector<NodeId> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = g.num_nodes();
  for (const Fact& f : g.facts()) {
    const NodeId a = find(f.head), b = find(f.tail);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

// Packs tuples into one word when they fit, so sorting the words sorts the
// tuples lexicographically.
class TuplePacker {
 public:
  TuplePacker(std::size_t arity, std::size_t universe) : arity_(arity) {
    bits_ = universe <= 1 ? 1 : static_cast<unsigned>(std::bit_width(universe - 1));
    fits_ = arity_ * bits_ <= 64;
  }
  bool fits() const noexcept { return fits_; }

  std::uint64_t pack(std::span<const RelId> t) const {
    std::uint64_t x = 0;
    for (RelId r : t) x = (x << bits_) | r;
    return x;
  }
  void unpack(std::uint64_t x, RelId* out) const {
    const std::uint64_t mask = bits_ == 64 ? ~0ULL : ((1ULL << bits_) - 1);
    for (std::size_t i = arity_; i-- > 0;) {
      out[i] = static_cast<RelId>(x & mask);
      x >>= bits_;
    }
  }

 private:
  std::size_t arity_;
  unsigned bits_ = 1;
  bool fits_ = false;
};

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Accumulates tuples of one arity and produces a normalized TupleSet.
class TupleCollector {
 public:
  TupleCollector(std::size_t arity, std::size_t universe)
      : arity_(arity), packer_(arity, universe) {}

  void add(std::span<const RelId> t) {
    if (packer_.fits()) {
      packed_.push_back(packer_.pack(t));
      if (packed_.size() >= next_compaction_) {
        sort_unique(packed_);
        next_compaction_ = std::max<std::size_t>(next_compaction_, 2 * packed_.size());
      }
    } else {
      loose_.insert(loose_.end(), t.begin(), t.end());
    }
  }

  TupleSet finish() {
    TupleSet out;
    out.arity = arity_;
    if (packer_.fits()) {
      sort_unique(packed_);
      out.data.resize(packed_.size() * arity_);
      for (std::size_t i = 0; i < packed_.size(); ++i) {
        packer_.unpack(packed_[i], out.data.data() + i * arity_);
      }
    } else {
      out.data = std::move(loose_);
      out.normalize();
    }
    return out;
  }

 private:
  std::size_t arity_;
  TuplePacker packer_;
  std::vector<std::uint64_t> packed_;
  std::vector<RelId> loose_;
  std::size_t next_compaction_ = std::size_t{1} << 20;
};

}  // namespace

Motif make_motif(std::string name, const std::vector<PatternFact>& facts,
                 const std::vector<std::string>& order) {
  if (facts.empty()) throw ParseError("motif '" + name + "' has no facts");
  KnowledgeGraphBuilder builder;
  std::set<std::string> seen;
  for (const PatternFact& f : facts) {
    if (!seen.insert(f.relation).second) {
      throw ParseError("motif '" + name + "' repeats relation symbol '" + f.relation + "'");
    }
    builder.add_fact(f.head, f.relation, f.tail);
  }
  Motif m{std::move(name), std::move(builder).build(), {}};
  if (!connected(m.pattern)) throw ParseError("motif '" + m.name + "' is not connected");
  if (order.size() != m.pattern.num_relations()) {
    throw ParseError("motif '" + m.name + "': order must list each relation exactly once");
  }
  std::vector<bool> used(m.pattern.num_relations(), false);
  for (const std::string& r : order) {
    const auto id = m.pattern.relation_id(r);
    if (!id || used[*id]) {
      throw ParseError("motif '" + m.name + "': order must list each relation exactly once");
    }
    used[*id] = true;
    m.order.push_back(*id);
  }
  return m;
}

Motif renamed(const Motif& m, std::string name) {
  Motif copy = m;
  copy.name = std::move(name);
  return copy;
}

Motif parse_motif_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("motif json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name") || !j.contains("order") || !j.contains("facts")) {
    throw ParseError("motif json needs \"name\", \"order\" and \"facts\"");
  }
  try {
    std::vector<PatternFact> facts;
    for (const auto& f : j.at("facts")) {
      if (!f.is_array() || f.size() != 3) throw ParseError("motif fact must be [rel, head, tail]");
      facts.push_back({f[0].get<std::string>(), f[1].get<std::string>(), f[2].get<std::string>()});
    }
    return make_motif(j.at("name").get<std::string>(), facts,
                      j.at("order").get<std::vector<std::string>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("motif json: ") + e.what());
  }
}

namespace {

json motif_json(const Motif& m) {
  json j;
  j["name"] = m.name;
  json order = json::array();
  for (RelId r : m.order) order.push_back(m.pattern.relation_name(r));
  j["order"] = order;
  json facts = json::array();
  for (const Fact& f : m.pattern.facts()) {
    facts.push_back({m.pattern.relation_name(f.relation), m.pattern.node_name(f.head),
                     m.pattern.node_name(f.tail)});
  }
  j["facts"] = facts;
  return j;
}

Motif path_motif(std::string name, std::string_view orientation) {
  static constexpr const char* kRels[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<PatternFact> facts;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < orientation.size(); ++i) {
    const std::string left = "x" + std::to_string(i);
    const std::string right = "x" + std::to_string(i + 1);
    if (orientation[i] == 'f') {
      facts.push_back({kRels[i], left, right});
    } else {
      facts.push_back({kRels[i], right, left});
    }
    order.emplace_back(kRels[i]);
  }
  return make_motif(std::move(name), facts, order);
}

Motif star_motif(std::size_t k) {
  std::vector<PatternFact> facts;
  std::vector<std::string> order;
  for (std::size_t i = 1; i <= k; ++i) {
    facts.push_back({"r" + std::to_string(i), "v" + std::to_string(i), "u"});
    order.push_back("r" + std::to_string(i));
  }
  return make_motif("star" + std::to_string(k), facts, order);
}

std::string flip_reverse(std::string_view s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) c = c == 'f' ? 'b' : 'f';
  return out;
}

// One representative per orientation class of 4-edge paths.
std::vector<std::string> path4_classes() {
  std::set<std::string> reps;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::string s;
    for (int i = 3; i >= 0; --i) s += (mask >> i) & 1U ? 'f' : 'b';
    reps.insert(std::min(s, flip_reverse(s)));
  }
  return {reps.begin(), reps.end()};
}

const std::map<std::string, Motif>& single_motifs() {
  static const std::map<std::string, Motif> motifs = [] {
    std::map<std::string, Motif> m;
    auto add = [&](Motif x) { m.emplace(x.name, std::move(x)); };
    add(make_motif("t2h", {{"a", "u", "v"}, {"b", "v", "w"}}, {"a", "b"}));
    add(make_motif("h2t", {{"a", "v", "u"}, {"b", "w", "v"}}, {"a", "b"}));
    add(make_motif("h2h", {{"a", "v", "u"}, {"b", "v", "w"}}, {"a", "b"}));
    add(make_motif("t2t", {{"a", "u", "v"}, {"b", "w", "v"}}, {"a", "b"}));
    add(make_motif("tfh", {{"a", "u", "v"}, {"b", "v", "w"}, {"c", "w", "x"}}, {"a", "b", "c"}));
    add(make_motif("tft", {{"a", "u", "v"}, {"b", "v", "w"}, {"c", "x", "w"}}, {"a", "b", "c"}));
    add(make_motif("hfh", {{"a", "v", "u"}, {"b", "v", "w"}, {"c", "x", "w"}}, {"a", "b", "c"}));
    add(make_motif("hft", {{"a", "v", "u"}, {"b", "v", "w"}, {"c", "w", "x"}}, {"a", "b", "c"}));
    for (const std::string& s : path4_classes()) add(path_motif("p4_" + s, s));
    for (std::size_t k = 1; k <= 8; ++k) add(star_motif(k));
    add(make_motif("para", {{"a", "x", "y"}, {"b", "x", "y"}}, {"a", "b"}));
    add(make_motif("loop", {{"a", "x", "x"}}, {"a"}));
    return m;
  }();
  return motifs;
}

const std::map<std::string, std::vector<std::string>>& motif_sets() {
  static const std::map<std::string, std::vector<std::string>> sets = [] {
    std::map<std::string, std::vector<std::string>> s;
    s["empty"] = {};
    s["ultra4"] = {"h2t", "t2h", "h2h", "t2t"};
    s["f2path"] = {"h2t", "h2h", "t2t"};
    s["f3path"] = {"h2t", "h2h", "t2t", "tfh", "tft", "hfh", "hft"};
    s["f4path"] = s["f3path"];
    for (const std::string& c : path4_classes()) s["f4path"].push_back("p4_" + c);
    for (std::size_t m = 1; m <= 8; ++m) {
      auto& v = s["f" + std::to_string(m) + "star"];
      for (std::size_t k = 1; k <= m; ++k) v.push_back("star" + std::to_string(k));
    }
    return s;
  }();
  return sets;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string motif_to_json(const Motif& m) { return motif_json(m).dump(); }

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : motif_sets()) names.push_back(name);
  for (const auto& [name, _] : single_motifs()) names.push_back(name);
  return names;
}

std::vector<Motif> catalog(std::string_view spec) {
  std::vector<Motif> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string_view::npos) comma = spec.size();
    const std::string name = trim(spec.substr(start, comma - start));
    start = comma + 1;
    if (auto it = motif_sets().find(name); it != motif_sets().end()) {
      for (const std::string& m : it->second) out.push_back(single_motifs().at(m));
    } else if (auto jt = single_motifs().find(name); jt != single_motifs().end()) {
      out.push_back(jt->second);
    } else {
      std::string valid;
      for (const std::string& n : catalog_names()) valid += (valid.empty() ? "" : ", ") + n;
      throw CatalogError("unknown motif catalog entry '" + name + "'; valid names: " + valid);
    }
    if (comma == spec.size()) break;
  }
  return canonical_motif_set(std::move(out));
}

std::vector<Motif> resolve_motifs(std::string_view spec) {
  const std::filesystem::path path{std::string(spec)};
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return catalog(spec);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  std::vector<Motif> motifs;
  if (j.is_array()) {
    for (const auto& item : j) motifs.push_back(parse_motif_json(item.dump()));
  } else {
    motifs.push_back(parse_motif_json(j.dump()));
  }
  return canonical_motif_set(std::move(motifs));
}

std::vector<Motif> canonical_motif_set(std::vector<Motif> motifs) {
  std::stable_sort(motifs.begin(), motifs.end(),
                   [](const Motif& a, const Motif& b) { return a.name < b.name; });
  std::vector<Motif> out;
  for (Motif& m : motifs) {
    if (!out.empty() && out.back().name == m.name) {
      const Motif& prev = out.back();
      if (!prev.pattern.same_as(m.pattern) || prev.order != m.order) {
        throw PreconditionError("two different motifs are named '" + m.name + "'");
      }
      continue;
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool TupleSet::contains(std::span<const RelId> tuple) const {
  if (tuple.size() != arity || arity == 0) return false;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto t = (*this)[mid];
    if (std::lexicographical_compare(t.begin(), t.end(), tuple.begin(), tuple.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < size() && std::equal(tuple.begin(), tuple.end(), (*this)[lo].begin());
}

void TupleSet::normalize() {
  if (arity == 0) {
    data.clear();
    return;
  }
  const std::size_t n = size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const auto ta = (*this)[a], tb = (*this)[b];
    return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<RelId> out;
  out.reserve(data.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto t = (*this)[idx[k]];
    if (k > 0) {
      const auto p = (*this)[idx[k - 1]];
      if (std::equal(t.begin(), t.end(), p.begin())) continue;
    }
    out.insert(out.end(), t.begin(), t.end());
  }
  data = std::move(out);
}

TupleSet eval_motif(const Motif& p, const KnowledgeGraph& g) {
  TupleCollector collector(p.arity(), g.num_relations());
  std::vector<RelId> tuple(p.arity());
  HomSearchOptions options;
  options.skip_repeated_relation_maps = true;
  for_each_homomorphism(p.pattern, g, options, [&](const NodeRelHomomorphism& h) {
    for (std::size_t i = 0; i < p.order.size(); ++i) tuple[i] = h.rel_map[p.order[i]];
    collector.add(tuple);
    return true;
  });
  return collector.finish();
}

RelationalHypergraph::RelationalHypergraph(std::vector<std::string> node_names,
                                           std::vector<Motif> edge_types,
                                           std::vector<TupleSet> edges)
    : node_names_(std::move(node_names)) {
  if (edge_types.size() != edges.size()) {
    throw PreconditionError("one tuple set per edge type is required");
  }
  std::vector<std::size_t> perm(edge_types.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return edge_types[a].name < edge_types[b].name;
  });
  for (std::size_t i : perm) {
    if (!edge_types_.empty() && edge_types_.back().name == edge_types[i].name) {
      throw PreconditionError("duplicate edge type '" + edge_types[i].name + "'");
    }
    TupleSet& t = edges[i];
    if (t.arity != edge_types[i].arity()) {
      throw PreconditionError("hyperedge arity does not match motif '" + edge_types[i].name + "'");
    }
    for (RelId r : t.data) {
      if (r >= node_names_.size()) throw PreconditionError("hyperedge references unknown relation");
    }
    t.normalize();
    edge_types_.push_back(std::move(edge_types[i]));
    edges_.push_back(std::move(t));
  }
}

std::size_t RelationalHypergraph::num_hyperedges() const noexcept {
  std::size_t n = 0;
  for (const TupleSet& t : edges_) n += t.size();
  return n;
}

std::optional<std::size_t> RelationalHypergraph::type_index(std::string_view motif_name) const {
  for (std::size_t i = 0; i < edge_types_.size(); ++i) {
    if (edge_types_[i].name == motif_name) return i;
  }
  return std::nullopt;
}

bool RelationalHypergraph::contains(std::string_view motif_name,
                                    std::span<const RelId> tuple) const {
  const auto i = type_index(motif_name);
  return i && edges_[*i].contains(tuple);
}

bool RelationalHypergraph::contains(std::string_view motif_name,
                                    const std::vector<std::string>& tuple) const {
  std::vector<RelId> ids;
  for (const std::string& name : tuple) {
    auto it = std::find(node_names_.begin(), node_names_.end(), name);
    if (it == node_names_.end()) return false;
    ids.push_back(static_cast<RelId>(it - node_names_.begin()));
  }
  return contains(motif_name, ids);
}

std::vector<HyperEdge> RelationalHypergraph::hyperedges() const {
  std::vector<HyperEdge> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    for (std::size_t k = 0; k < edges_[i].size(); ++k) {
      const auto t = edges_[i][k];
      out.push_back({i, std::vector<RelId>(t.begin(), t.end())});
    }
  }
  return out;
}

bool RelationalHypergraph::same_as(const RelationalHypergraph& other) const {
  if (node_names_ != other.node_names_ || edge_types_.size() != other.edge_types_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edge_types_.size(); ++i) {
    if (edge_types_[i].name != other.edge_types_[i].name) return false;
    if (!(edges_[i] == other.edges_[i])) return false;
  }
  return true;
}

RelationalHypergraph RelationalHypergraph::merged(const RelationalHypergraph& other) const {
  if (node_names_ != other.node_names_) {
    throw PreconditionError("cannot merge lifts over different relation sets");
  }
  std::map<std::string, std::pair<Motif, TupleSet>> by_name;
  auto absorb = [&](const RelationalHypergraph& h) {
    for (std::size_t i = 0; i < h.edge_types_.size(); ++i) {
      auto [it, fresh] = by_name.try_emplace(h.edge_types_[i].name, h.edge_types_[i], h.edges_[i]);
      if (!fresh) {
        TupleSet& t = it->second.second;
        t.data.insert(t.data.end(), h.edges_[i].data.begin(), h.edges_[i].data.end());
      }
    }
  };
  absorb(*this);
  absorb(other);
  std::vector<Motif> types;
  std::vector<TupleSet> edges;
  for (auto& [_, entry] : by_name) {
    types.push_back(std::move(entry.first));
    edges.push_back(std::move(entry.second));
  }
  return RelationalHypergraph(node_names_, std::move(types), std::move(edges));
}

KnowledgeGraph RelationalHypergraph::as_binary_kg() const {
  NameTable nodes, rels;
  for (const std::string& n : node_names_) nodes.intern(n);
  std::vector<Fact> facts;
  for (std::size_t i = 0; i < edge_types_.size(); ++i) {
    if (edge_types_[i].arity() != 2) {
      throw PreconditionError("edge type '" + edge_types_[i].name + "' is not binary");
    }
    const RelId r = rels.intern(edge_types_[i].name);
    for (std::size_t k = 0; k < edges_[i].size(); ++k) {
      facts.push_back({r, edges_[i][k][0], edges_[i][k][1]});
    }
  }
  return KnowledgeGraph(std::move(nodes), std::move(rels), std::move(facts));
}

RelationalHypergraph lift(std::span<const Motif> motifs, const KnowledgeGraph& g,
                          const LiftOptions& options) {
  std::vector<Motif> types = canonical_motif_set({motifs.begin(), motifs.end()});
  std::vector<TupleSet> edges(types.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, types.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < types.size(); ++i) edges[i] = eval_motif(types[i], g);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < types.size(); i = next++) edges[i] = eval_motif(types[i], g);
      });
    }
    for (auto& t : pool) t.join();
  }
  return RelationalHypergraph(g.relations().names(), std::move(types), std::move(edges));
}

namespace {

// Relations leaving / entering each node: the rows of E_h and columns of E_t.
struct Incidence {
  std::vector<std::vector<RelId>> out;
  std::vector<std::vector<RelId>> in;

  explicit Incidence(const KnowledgeGraph& g) : out(g.num_nodes()), in(g.num_nodes()) {
    for (const Fact& f : g.facts()) {
      out[f.head].push_back(f.relation);
      in[f.tail].push_back(f.relation);
    }
    for (auto* side : {&out, &in}) {
      for (auto& v : *side) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
    }
  }
};

// Boolean product X^T Y for 0/1 matrices given by rows of nonzero columns.
TupleSet boolean_product(const std::vector<std::vector<RelId>>& x,
                         const std::vector<std::vector<RelId>>& y, std::size_t m) {
  std::vector<bool> hit(m * m, false);
  for (std::size_t v = 0; v < x.size(); ++v) {
    for (RelId a : x[v]) {
      for (RelId b : y[v]) hit[std::size_t{a} * m + b] = true;
    }
  }
  TupleSet t;
  t.arity = 2;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (hit[a * m + b]) {
        t.data.push_back(static_cast<RelId>(a));
        t.data.push_back(static_cast<RelId>(b));
      }
    }
  }
  return t;
}

// Triple product over the middle adjacency: for every fact r2(v, w), all
// (r1, r2, r3) with r1 in left[v] and r3 in right[w].
TupleSet triple_product(const KnowledgeGraph& g, const std::vector<std::vector<RelId>>& left,
                        const std::vector<std::vector<RelId>>& right) {
  TupleCollector collector(3, g.num_relations());
  RelId t[3];
  for (const Fact& f : g.facts()) {
    t[1] = f.relation;
    for (RelId a : left[f.head]) {
      t[0] = a;
      for (RelId b : right[f.tail]) {
        t[2] = b;
        collector.add(t);
      }
    }
  }
  return collector.finish();
}

const Motif& catalog_motif(const std::string& name) { return single_motifs().at(name); }

void two_path_lift(const KnowledgeGraph& g, const Incidence& inc,
                                   const std::vector<std::string>& names,
                                   std::vector<Motif>& types, std::vector<TupleSet>& edges) {
  const std::size_t m = g.num_relations();
  for (const std::string& name : names) {
    types.push_back(catalog_motif(name));
    if (name == "t2h") edges.push_back(boolean_product(inc.in, inc.out, m));
    if (name == "h2t") edges.push_back(boolean_product(inc.out, inc.in, m));
    if (name == "h2h") edges.push_back(boolean_product(inc.out, inc.out, m));
    if (name == "t2t") edges.push_back(boolean_product(inc.in, inc.in, m));
  }
}

bool same_motif_set(std::span<const Motif> motifs, const std::string& set_name) {
  const std::vector<Motif> given = canonical_motif_set({motifs.begin(), motifs.end()});
  const std::vector<Motif> want = catalog(set_name);
  if (given.size() != want.size()) return false;
  for (std::size_t i = 0; i < given.size(); ++i) {
    if (given[i].name != want[i].name || !given[i].pattern.same_as(want[i].pattern) ||
        given[i].order != want[i].order) {
      return false;
    }
  }
  return true;
}

}  // namespace

RelationalHypergraph lift_fast_2path(const KnowledgeGraph& g) {
  const Incidence inc(g);
  std::vector<Motif> types;
  std::vector<TupleSet> edges;
  two_path_lift(g, inc, {"h2h", "h2t", "t2h", "t2t"}, types, edges);
  return RelationalHypergraph(g.relations().names(), std::move(types), std::move(edges));
}

RelationalHypergraph lift_fast_3path(const KnowledgeGraph& g) {
  const Incidence inc(g);
  std::vector<Motif> types;
  std::vector<TupleSet> edges;
  two_path_lift(g, inc, {"h2h", "h2t", "t2t"}, types, edges);
  types.push_back(catalog_motif("tfh"));
  edges.push_back(triple_product(g, inc.in, inc.out));
  types.push_back(catalog_motif("tft"));
  edges.push_back(triple_product(g, inc.in, inc.in));
  types.push_back(catalog_motif("hfh"));
  edges.push_back(triple_product(g, inc.out, inc.in));
  types.push_back(catalog_motif("hft"));
  edges.push_back(triple_product(g, inc.out, inc.out));
  return RelationalHypergraph(g.relations().names(), std::move(types), std::move(edges));
}

bool has_fast_path(std::span<const Motif> motifs) {
  return same_motif_set(motifs, "ultra4") || same_motif_set(motifs, "f2path") ||
         same_motif_set(motifs, "f3path");
}

RelationalHypergraph lift_fast(std::span<const Motif> motifs, const KnowledgeGraph& g) {
  if (same_motif_set(motifs, "ultra4")) return lift_fast_2path(g);
  if (same_motif_set(motifs, "f3path")) return lift_fast_3path(g);
  if (same_motif_set(motifs, "f2path")) {
    return restrict_edge_types(lift_fast_2path(g), {"h2h", "h2t", "t2t"});
  }
  throw PreconditionError("no sparse-product lift for this motif set (ultra4, f2path, f3path only)");
}

RelationalHypergraph restrict_edge_types(const RelationalHypergraph& h,
                                         const std::vector<std::string>& names) {
  std::vector<Motif> types;
  std::vector<TupleSet> edges;
  for (const std::string& name : names) {
    const auto i = h.type_index(name);
    if (!i) throw PreconditionError("no edge type '" + name + "'");
    types.push_back(h.edge_types()[*i]);
    edges.push_back(h.edges(*i));
  }
  return RelationalHypergraph(h.node_names(), std::move(types), std::move(edges));
}

}  // namespace motif
