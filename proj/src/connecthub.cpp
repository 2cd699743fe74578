#include "motif/connecthub.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "motif/error.hpp"
#include "motif/wl.hpp"

namespace motif {

namespace {

using nlohmann::json;

// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

struct RawFact {
  std::string head, relation, tail;
};

ConnectHubGraph generate_one(std::size_t k, std::size_t l, std::mt19937_64& rng) {
  // Relation names carry no class information; the class assignment is random.
  std::vector<std::string> names;
  for (std::size_t i = 0; i < 2 * l + 1; ++i) names.push_back("r" + std::to_string(i));
  std::shuffle(names.begin(), names.end(), rng);
  const std::vector<std::string> pos(names.begin(), names.begin() + l);
  const std::vector<std::string> neg(names.begin() + l, names.begin() + 2 * l);
  const std::string q = names.back();

  std::vector<RawFact> facts;
  for (std::size_t j = 0; j < l; ++j) {
    facts.push_back({"hub_leaf" + std::to_string(j), pos[j], "hub"});
  }
  std::vector<std::string> pos_centers, neg_centers;
  const auto comb = subsets(l, k);
  auto communities = [&](const std::vector<std::string>& rels, const std::string& prefix,
                         std::vector<std::string>& centers) {
    for (std::size_t c = 0; c < comb.size(); ++c) {
      const std::string center = prefix + std::to_string(c);
      centers.push_back(center);
      for (std::size_t j = 0; j < k; ++j) {
        facts.push_back({center + "_leaf" + std::to_string(j), rels[comb[c][j]], center});
      }
    }
  };
  communities(pos, "pos", pos_centers);
  communities(neg, "neg", neg_centers);

  // Randomize id order so that ids do not reveal the construction.
  std::vector<std::string> node_names;
  for (const RawFact& f : facts) {
    node_names.push_back(f.head);
    node_names.push_back(f.tail);
  }
  std::sort(node_names.begin(), node_names.end());
  node_names.erase(std::unique(node_names.begin(), node_names.end()), node_names.end());
  std::shuffle(node_names.begin(), node_names.end(), rng);
  std::shuffle(names.begin(), names.end(), rng);
  std::shuffle(facts.begin(), facts.end(), rng);

  KnowledgeGraphBuilder b;
  for (const std::string& n : node_names) b.add_node(n);
  for (const std::string& r : names) b.add_relation(r);
  for (const RawFact& f : facts) b.add_fact(f.head, f.relation, f.tail);

  ConnectHubGraph out;
  out.graph = std::move(b).build();
  const KnowledgeGraph& g = out.graph;
  for (const std::string& r : pos) out.positive_relations.push_back(*g.relation_id(r));
  for (const std::string& r : neg) out.negative_relations.push_back(*g.relation_id(r));
  out.q = *g.relation_id(q);
  out.hub_center = *g.node_id("hub");
  for (const std::string& c : pos_centers) out.positive_centers.push_back(*g.node_id(c));
  for (const std::string& c : neg_centers) out.negative_centers.push_back(*g.node_id(c));
  return out;
}

void check(bool ok, std::size_t graph, const std::string& what) {
  if (!ok) throw Error("connecthub graph " + std::to_string(graph) + ": " + what);
}

// In-relations of a center, each from its own leaf that has no other fact.
std::vector<RelId> star_relations(const KnowledgeGraph& g, NodeId center, std::set<NodeId>& used,
                                  std::size_t graph) {
  check(g.out_facts(center).empty(), graph, "center has outgoing facts");
  check(used.insert(center).second, graph, "components share a node");
  std::vector<RelId> rels;
  for (const Fact& f : g.in_facts(center)) {
    check(g.in_facts(f.head).empty() && g.out_facts(f.head).size() == 1, graph,
          "leaf is not private to its star");
    check(used.insert(f.head).second, graph, "components share a node");
    rels.push_back(f.relation);
  }
  std::sort(rels.begin(), rels.end());
  check(std::adjacent_find(rels.begin(), rels.end()) == rels.end(), graph,
        "star repeats a relation");
  return rels;
}

void audit_class(const KnowledgeGraph& g, const std::vector<RelId>& cls,
                 const std::vector<NodeId>& centers, std::size_t k, std::set<NodeId>& used,
                 std::size_t graph) {
  std::vector<RelId> sorted = cls;
  std::sort(sorted.begin(), sorted.end());
  std::set<std::vector<RelId>> seen;
  for (NodeId c : centers) {
    std::vector<RelId> rels = star_relations(g, c, used, graph);
    check(rels.size() == k, graph, "community is not a k-star");
    check(std::includes(sorted.begin(), sorted.end(), rels.begin(), rels.end()), graph,
          "community mixes relation classes");
    check(seen.insert(rels).second, graph, "repeated community");
  }
  check(seen.size() == subsets(cls.size(), k).size(), graph, "missing community");
}

}  // namespace

ConnectHubInstance generate_connecthub(std::size_t k, std::size_t l, std::size_t n_graphs,
                                       std::uint64_t seed) {
  if (l == 0) l = k + 1;
  if (k < 2 || k > 8) throw PreconditionError("connecthub needs 2 <= k <= 8");
  if (l <= k) throw PreconditionError("connecthub needs l > k");
  ConnectHubInstance inst{k, l, seed, {}};
  for (std::size_t i = 0; i < n_graphs; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    inst.graphs.push_back(generate_one(k, l, rng));
  }
  audit_connecthub(inst);
  return inst;
}

void audit_connecthub(const ConnectHubInstance& inst) {
  for (std::size_t i = 0; i < inst.graphs.size(); ++i) {
    const ConnectHubGraph& h = inst.graphs[i];
    const KnowledgeGraph& g = h.graph;
    check(h.positive_relations.size() == inst.l && h.negative_relations.size() == inst.l, i,
          "relation classes must have size l");
    std::set<RelId> all(h.positive_relations.begin(), h.positive_relations.end());
    all.insert(h.negative_relations.begin(), h.negative_relations.end());
    all.insert(h.q);
    check(all.size() == 2 * inst.l + 1 && g.num_relations() == all.size(), i,
          "relations are not partitioned into P, N and q");
    check(g.relation_size(h.q) == 0, i, "query relation occurs as a fact");

    std::set<NodeId> used;
    std::vector<RelId> hub = star_relations(g, h.hub_center, used, i);
    std::vector<RelId> pos = h.positive_relations;
    std::sort(pos.begin(), pos.end());
    check(hub == pos, i, "hub is not a star over all positive relations");
    audit_class(g, h.positive_relations, h.positive_centers, inst.k, used, i);
    audit_class(g, h.negative_relations, h.negative_centers, inst.k, used, i);
    check(used.size() == g.num_nodes(), i, "stray nodes");
    const std::size_t communities = subsets(inst.l, inst.k).size();
    check(g.num_facts() == inst.l + 2 * communities * inst.k, i, "unexpected fact count");
  }
}

void write_connecthub(const ConnectHubInstance& inst, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json manifest;
  manifest["k"] = inst.k;
  manifest["l"] = inst.l;
  manifest["seed"] = inst.seed;
  manifest["graphs"] = json::array();
  for (std::size_t i = 0; i < inst.graphs.size(); ++i) {
    const ConnectHubGraph& h = inst.graphs[i];
    const KnowledgeGraph& g = h.graph;
    const std::string file = "graph_" + std::to_string(i) + ".tsv";
    write_kg_file(g, dir / file);
    auto node_names = [&](const std::vector<NodeId>& ids) {
      std::vector<std::string> out;
      for (NodeId v : ids) out.push_back(g.node_name(v));
      return out;
    };
    auto rel_names = [&](const std::vector<RelId>& ids) {
      std::vector<std::string> out;
      for (RelId r : ids) out.push_back(g.relation_name(r));
      return out;
    };
    manifest["graphs"].push_back({{"file", file},
                                  {"hub_center", g.node_name(h.hub_center)},
                                  {"positive_centers", node_names(h.positive_centers)},
                                  {"negative_centers", node_names(h.negative_centers)},
                                  {"positive_relations", rel_names(h.positive_relations)},
                                  {"negative_relations", rel_names(h.negative_relations)},
                                  {"q", g.relation_name(h.q)}});
  }
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

ConnectHubInstance read_connecthub(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error("cannot read " + manifest.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  try {
    ConnectHubInstance inst;
    inst.k = j.at("k").get<std::size_t>();
    inst.l = j.at("l").get<std::size_t>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    for (const json& e : j.at("graphs")) {
      const KnowledgeGraph file = read_kg_file(manifest.parent_path() / e.at("file").get<std::string>());
      // The query relation has no facts, so it has to be registered again.
      KnowledgeGraphBuilder b;
      for (NodeId v = 0; v < file.num_nodes(); ++v) b.add_node(file.node_name(v));
      for (RelId r = 0; r < file.num_relations(); ++r) b.add_relation(file.relation_name(r));
      const std::string q = e.at("q").get<std::string>();
      b.add_relation(q);
      for (const Fact& f : file.facts()) b.add_fact(f.relation, f.head, f.tail);

      ConnectHubGraph h;
      h.graph = std::move(b).build();
      const KnowledgeGraph& g = h.graph;
      auto node = [&](const std::string& name) {
        auto id = g.node_id(name);
        if (!id) throw ParseError("manifest: unknown node '" + name + "'");
        return *id;
      };
      auto rel = [&](const std::string& name) {
        auto id = g.relation_id(name);
        if (!id) throw ParseError("manifest: unknown relation '" + name + "'");
        return *id;
      };
      h.q = rel(q);
      h.hub_center = node(e.at("hub_center").get<std::string>());
      for (const auto& s : e.at("positive_centers")) h.positive_centers.push_back(node(s));
      for (const auto& s : e.at("negative_centers")) h.negative_centers.push_back(node(s));
      for (const auto& s : e.at("positive_relations")) h.positive_relations.push_back(rel(s));
      for (const auto& s : e.at("negative_relations")) h.negative_relations.push_back(rel(s));
      inst.graphs.push_back(std::move(h));
    }
    audit_connecthub(inst);
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

namespace {

double score_graph(LinkColorer& colorer, const ConnectHubGraph& h, std::size_t t,
                   std::size_t l_layers) {
  const LinkColoring c = colorer.link_colors(h.q, h.hub_center, t, l_layers);
  const std::vector<Color>& col = c.at(l_layers);
  std::set<Color> negative;
  for (NodeId v : h.negative_centers) negative.insert(col[v]);
  for (NodeId v : h.positive_centers) {
    if (negative.count(col[v])) return 0.5;
  }
  return 1.0;
}

ConnectHubScore aggregate(std::vector<double> per_graph) {
  ConnectHubScore s;
  s.per_graph = std::move(per_graph);
  if (!s.per_graph.empty()) {
    s.accuracy = std::accumulate(s.per_graph.begin(), s.per_graph.end(), 0.0) /
                 static_cast<double>(s.per_graph.size());
  }
  return s;
}

}  // namespace

ConnectHubScore evaluate_separation(const ConnectHubInstance& inst, std::span<const Motif> motifs,
                                    std::size_t t, std::size_t l_layers) {
  std::vector<double> scores;
  for (const ConnectHubGraph& h : inst.graphs) {
    LinkColorer colorer(h.graph, motifs);
    scores.push_back(score_graph(colorer, h, t, l_layers));
  }
  return aggregate(std::move(scores));
}

ConnectHubScore evaluate_separation_ultra(const ConnectHubInstance& inst, std::size_t t,
                                          std::size_t l_layers) {
  std::vector<double> scores;
  for (const ConnectHubGraph& h : inst.graphs) {
    LinkColorer colorer = LinkColorer::ultra(h.graph);
    scores.push_back(score_graph(colorer, h, t, l_layers));
  }
  return aggregate(std::move(scores));
}

}  // namespace motif
