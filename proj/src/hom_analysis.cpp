#include "motif/hom_analysis.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "motif/error.hpp"
#include "motif/hom_search.hpp"

namespace motif {

namespace {

void check_limits(const KnowledgeGraph& g, const AnalysisLimits& limits, const std::string& what) {
  if (g.num_nodes() > limits.max_nodes || g.num_relations() > limits.max_relations) {
    throw SizeLimitError(what + " has " + std::to_string(g.num_nodes()) +
                         " nodes and " + std::to_string(g.num_relations()) +
                         " relations; the limit is " + std::to_string(limits.max_nodes) + "/" +
                         std::to_string(limits.max_relations));
  }
}

std::vector<bool> relation_mask(const KnowledgeGraph& src, const KnowledgeGraph& dst) {
  std::vector<bool> mask(dst.num_relations(), false);
  for (RelId r = 0; r < src.num_relations(); ++r) {
    const auto id = dst.relation_id(src.relation_name(r));
    if (!id) {
      throw PreconditionError("relation '" + src.relation_name(r) +
                              "' of the source is missing from the target");
    }
    mask[*id] = true;
  }
  return mask;
}

std::optional<NodeRelHomomorphism> rp_endomorphism(const KnowledgeGraph& g,
                                                   std::size_t max_image_nodes) {
  HomSearchOptions options;
  options.injective_relations = true;
  options.max_image_nodes = max_image_nodes;
  return find_homomorphism(g, g, options);
}

const KnowledgeGraph& single_fact_graph() {
  static const KnowledgeGraph g = [] {
    KnowledgeGraphBuilder b;
    b.add_fact("u", "r", "v");
    return std::move(b).build();
  }();
  return g;
}

}  // namespace

std::optional<NodeRelHomomorphism> find_rp_homomorphism(const KnowledgeGraph& src,
                                                        const KnowledgeGraph& dst) {
  HomSearchOptions options;
  options.injective_relations = true;
  options.allowed_relations = relation_mask(src, dst);
  return find_homomorphism(src, dst, options);
}

CoreResult rp_core_with_witnesses(const KnowledgeGraph& g, const AnalysisLimits& limits) {
  check_limits(g, limits, "graph");
  CoreResult result{g, {}, {}};
  result.to_core.node_map.resize(g.num_nodes());
  result.to_core.rel_map.resize(g.num_relations());
  for (NodeId v = 0; v < g.num_nodes(); ++v) result.to_core.node_map[v] = v;
  for (RelId r = 0; r < g.num_relations(); ++r) result.to_core.rel_map[r] = r;

  while (true) {
    std::optional<NodeRelHomomorphism> shrink;
    for (std::size_t k = 1; k < result.core.num_nodes() && !shrink; ++k) {
      shrink = rp_endomorphism(result.core, k);
    }
    if (!shrink) break;
    KnowledgeGraph image = homomorphic_image(*shrink, result.core, result.core);
    // The image keeps the names of the current graph; map ids through them.
    for (NodeId& v : result.to_core.node_map) {
      v = *image.node_id(result.core.node_name(shrink->node_map[v]));
    }
    for (RelId& r : result.to_core.rel_map) {
      r = *image.relation_id(result.core.relation_name(shrink->rel_map[r]));
    }
    result.core = std::move(image);
  }

  result.from_core.node_map.resize(result.core.num_nodes());
  result.from_core.rel_map.resize(result.core.num_relations());
  for (NodeId v = 0; v < result.core.num_nodes(); ++v) {
    result.from_core.node_map[v] = *g.node_id(result.core.node_name(v));
  }
  for (RelId r = 0; r < result.core.num_relations(); ++r) {
    result.from_core.rel_map[r] = *g.relation_id(result.core.relation_name(r));
  }
  return result;
}

KnowledgeGraph rp_core(const KnowledgeGraph& g, const AnalysisLimits& limits) {
  return rp_core_with_witnesses(g, limits).core;
}

bool is_trivial_motif(const Motif& p, const AnalysisLimits& limits) {
  const KnowledgeGraph core = rp_core(p.pattern, limits);
  return core.num_facts() == 1 && is_isomorphic(core, single_fact_graph());
}

std::optional<NodeRelHomomorphism> find_core_onto(const Motif& p, const Motif& q,
                                                  const AnalysisLimits& limits) {
  check_limits(p.pattern, limits, "motif '" + p.name + "'");
  check_limits(q.pattern, limits, "motif '" + q.name + "'");
  const KnowledgeGraph core = rp_core(q.pattern, limits);

  HomSearchOptions options;
  options.max_image_nodes = core.num_nodes();
  options.min_image_facts = core.num_facts();
  options.max_image_facts = core.num_facts();

  std::set<std::pair<std::vector<NodeId>, std::vector<Fact>>> seen;
  std::optional<NodeRelHomomorphism> found;
  for_each_homomorphism(p.pattern, q.pattern, options, [&](const NodeRelHomomorphism& h) {
    std::vector<NodeId> nodes(h.node_map.begin(), h.node_map.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    if (nodes.size() != core.num_nodes()) return true;
    std::vector<Fact> facts;
    for (const Fact& f : p.pattern.facts()) {
      facts.push_back({h.rel_map[f.relation], h.node_map[f.head], h.node_map[f.tail]});
    }
    std::sort(facts.begin(), facts.end());
    facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
    if (!seen.emplace(nodes, facts).second) return true;
    if (is_isomorphic(homomorphic_image(h, p.pattern, q.pattern), core, limits.max_nodes)) {
      found = h;
      return false;
    }
    return true;
  });
  return found;
}

RefinementReport refinement_report(std::span<const Motif> from, std::span<const Motif> to,
                                   const AnalysisLimits& limits) {
  const std::vector<Motif> f = canonical_motif_set({from.begin(), from.end()});
  const std::vector<Motif> f2 = canonical_motif_set({to.begin(), to.end()});
  RefinementReport report;
  for (const Motif& m : f) report.from.push_back(m.name);
  for (const Motif& m : f2) report.to.push_back(m.name);
  for (const Motif& target : f2) {
    if (is_trivial_motif(target, limits)) {
      report.trivial_exempt.push_back(target.name);
      continue;
    }
    bool covered = false;
    for (const Motif& source : f) {
      if (auto h = find_core_onto(source, target, limits)) {
        report.covered.push_back({target.name, source.name, *h});
        covered = true;
        break;
      }
    }
    if (!covered) report.uncovered.push_back(target.name);
  }
  return report;
}

std::string refinement_report_json(const RefinementReport& report, int indent) {
  nlohmann::json j;
  j["from"] = report.from;
  j["to"] = report.to;
  j["uncovered"] = report.uncovered;
  j["covered"] = nlohmann::json::array();
  for (const CoveredMotif& c : report.covered) {
    j["covered"].push_back({{"motif", c.motif}, {"witness_via", c.witness_via}});
  }
  j["trivial_exempt"] = report.trivial_exempt;
  return j.dump(indent);
}

}  // namespace motif
