#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "motif/connecthub.hpp"
#include "motif/error.hpp"
#include "motif/hom_analysis.hpp"
#include "motif/kg.hpp"
#include "motif/motif.hpp"
#include "motif/numenc.hpp"
#include "motif/random_kg.hpp"
#include "motif/wl.hpp"

namespace motif::cli {

using nlohmann::json;

namespace {

int level_rank(const std::string& level) {
  if (level == "error") return 0;
  if (level == "warn") return 1;
  if (level == "info") return 2;
  return 3;
}

void log(const Globals& g, const std::string& level, const std::string& msg) {
  if (level_rank(level) <= level_rank(g.log_level)) std::cerr << level << ": " << msg << '\n';
}

json globals_json(const Globals& g) {
  return {{"seed", g.seed}, {"threads", g.threads}, {"log_level", g.log_level}};
}

KnowledgeGraph load_kg(const std::string& path, bool augment) {
  KnowledgeGraph g = read_kg_file(path);
  return augment ? augment_inverses(g) : g;
}

LinkQuery parse_link(const KnowledgeGraph& g, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
  if (parts.size() != 3) throw PreconditionError("link '" + text + "' is not of the form q,u,v");
  const auto q = g.relation_id(parts[0]);
  if (!q) throw PreconditionError("unknown relation '" + parts[0] + "'");
  const auto u = g.node_id(parts[1]);
  if (!u) throw PreconditionError("unknown node '" + parts[1] + "'");
  const auto v = g.node_id(parts[2]);
  if (!v) throw PreconditionError("unknown node '" + parts[2] + "'");
  return {*q, *u, *v};
}

// "ultra4" selects the ULTRA-side test; anything else the motif test.
LinkColorer make_colorer(const KnowledgeGraph& g, const std::string& spec) {
  if (spec == "ultra4") return LinkColorer::ultra(g);
  return LinkColorer(g, resolve_motifs(spec));
}

json facts_json(const KnowledgeGraph& g) {
  json out = json::array();
  for (const Fact& f : g.facts()) {
    out.push_back({g.node_name(f.head), g.relation_name(f.relation), g.node_name(f.tail)});
  }
  return out;
}

json hom_json(const NodeRelHomomorphism& h, const KnowledgeGraph& src, const KnowledgeGraph& dst) {
  json nodes = json::object(), rels = json::object();
  for (NodeId v = 0; v < h.node_map.size(); ++v) {
    nodes[src.node_name(v)] = dst.node_name(h.node_map[v]);
  }
  for (RelId r = 0; r < h.rel_map.size(); ++r) {
    rels[src.relation_name(r)] = dst.relation_name(h.rel_map[r]);
  }
  return {{"nodes", nodes}, {"relations", rels}};
}

json lift_json(const RelationalHypergraph& h) {
  json types = json::array();
  for (const Motif& m : h.edge_types()) types.push_back(m.name);
  json edges = json::array();
  for (const HyperEdge& e : h.hyperedges()) {
    std::vector<std::string> names;
    for (RelId r : e.tuple) names.push_back(h.node_names()[r]);
    edges.push_back({h.edge_types()[e.motif_index].name, names});
  }
  return {{"nodes", h.node_names()},
          {"edge_types", types},
          {"num_hyperedges", h.num_hyperedges()},
          {"hyperedges", edges}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Result cmd_lift(const Globals& g, const LiftArgs& a) {
  const KnowledgeGraph kg = read_kg_file(a.kg);
  const std::vector<Motif> motifs = resolve_motifs(a.motifs);
  RelationalHypergraph h;
  if (a.fast) {
    h = lift_fast(motifs, kg);
  } else {
    h = lift(motifs, kg, LiftOptions{std::max<std::size_t>(1, g.threads)});
  }
  log(g, "info", "lift has " + std::to_string(h.num_hyperedges()) + " hyperedges");
  json report = lift_json(h);
  report["config"] = {{"command", "lift"},
                      {"global", globals_json(g)},
                      {"kg", a.kg},
                      {"motifs", a.motifs},
                      {"fast", a.fast}};
  return {report, 0};
}

Result cmd_separate(const Globals& g, const SeparateArgs& a) {
  const KnowledgeGraph kg = load_kg(a.kg, a.augment);
  const LinkQuery l1 = parse_link(kg, a.link1);
  const LinkQuery l2 = parse_link(kg, a.link2);
  LinkColorer colorer = make_colorer(kg, a.motifs);
  json report;
  report["config"] = {{"command", "separate"}, {"global", globals_json(g)},
                      {"kg", a.kg},            {"motifs", a.motifs},
                      {"link1", a.link1},      {"link2", a.link2},
                      {"t", a.t},              {"l", a.l},
                      {"sweep", a.sweep},      {"augment_inverses", a.augment}};
  report["link1"] = a.link1;
  report["link2"] = a.link2;
  if (a.sweep) {
    const Separation s = sweep_separation(colorer, l1, l2, a.t, a.l);
    report["separated"] = s.separated;
    report["first_at"] = s.first_at ? json::array({s.first_at->first, s.first_at->second})
                                    : json(nullptr);
  } else {
    report["separated"] = separates(colorer, l1, l2, a.t, a.l).separated;
  }
  return {report, 0};
}

Result cmd_wl_dump(const Globals& g, const WlDumpArgs& a) {
  const KnowledgeGraph kg = load_kg(a.kg, a.augment);
  const auto q = kg.relation_id(a.q);
  if (!q) throw PreconditionError("unknown relation '" + a.q + "'");
  const auto u = kg.node_id(a.u);
  if (!u) throw PreconditionError("unknown node '" + a.u + "'");
  LinkColorer colorer = make_colorer(kg, a.motifs);
  const RelColoring& rc = colorer.relation_colors(*q, a.t);
  const LinkColoring lc = colorer.link_colors(*q, *u, a.t, a.l);
  auto rel_pairs = [&](std::size_t t) {
    json out = json::array();
    for (RelId r = 0; r < kg.num_relations(); ++r) out.push_back({kg.relation_name(r), rc.at(t)[r]});
    return out;
  };
  auto node_pairs = [&](std::size_t l) {
    json out = json::array();
    for (NodeId v = 0; v < kg.num_nodes(); ++v) out.push_back({kg.node_name(v), lc.at(l)[v]});
    return out;
  };
  json rel_history = json::array(), link_history = json::array();
  for (std::size_t t = 0; t <= a.t; ++t) rel_history.push_back(rel_pairs(t));
  for (std::size_t l = 0; l <= a.l; ++l) link_history.push_back(node_pairs(l));
  json report;
  report["config"] = {{"command", "wl-dump"}, {"global", globals_json(g)}, {"kg", a.kg},
                      {"motifs", a.motifs},   {"q", a.q},                  {"u", a.u},
                      {"t", a.t},             {"l", a.l},                  {"augment_inverses", a.augment}};
  report["condition"] = {{"q", a.q}, {"u", a.u}};
  report["t"] = a.t;
  report["l"] = a.l;
  report["colors"] = node_pairs(a.l);
  report["relation_colors"] = rel_pairs(a.t);
  report["relation_history"] = rel_history;
  report["link_history"] = link_history;
  report["stable_layer"] = lc.stable_layer ? json(*lc.stable_layer) : json(nullptr);
  return {report, 0};
}

Result cmd_core(const Globals& g, const CoreArgs& a) {
  if (a.kg.empty() == a.motifs.empty()) {
    throw PreconditionError("core needs exactly one of --kg and --motifs");
  }
  json report;
  report["config"] = {{"command", "core"}, {"global", globals_json(g)}, {"kg", a.kg},
                      {"motifs", a.motifs}};
  auto describe = [](const KnowledgeGraph& src) {
    const CoreResult c = rp_core_with_witnesses(src);
    return json{{"core", facts_json(c.core)},
                {"core_nodes", c.core.nodes().names()},
                {"core_relations", c.core.relations().names()},
                {"to_core", hom_json(c.to_core, src, c.core)},
                {"from_core", hom_json(c.from_core, c.core, src)}};
  };
  if (!a.kg.empty()) {
    report["result"] = describe(read_kg_file(a.kg));
  } else {
    json out = json::array();
    for (const Motif& m : resolve_motifs(a.motifs)) {
      json j = describe(m.pattern);
      j["motif"] = m.name;
      j["trivial"] = is_trivial_motif(m);
      out.push_back(j);
    }
    report["result"] = out;
  }
  return {report, 0};
}

Result cmd_refine(const Globals& g, const RefineArgs& a) {
  const std::vector<Motif> from = resolve_motifs(a.from);
  const std::vector<Motif> to = resolve_motifs(a.to);
  const RefinementReport r = refinement_report(from, to);
  json report = json::parse(refinement_report_json(r));
  report["config"] = {{"command", "refine"}, {"global", globals_json(g)}, {"from", a.from},
                      {"to", a.to}};
  return {report, 0};
}

Result cmd_connecthub(const Globals& g, const ConnectHubArgs& a) {
  ConnectHubInstance inst = generate_connecthub(a.k, a.l, a.graphs, g.seed);
  if (!a.write_dir.empty()) write_connecthub(inst, a.write_dir);
  if (a.augment) {
    // Original node and relation ids survive augmentation.
    for (ConnectHubGraph& h : inst.graphs) h.graph = augment_inverses(h.graph);
  }
  std::vector<std::string> eval = a.eval;
  if (eval.empty()) {
    eval.push_back("ultra4");
    for (std::size_t m = 1; m <= a.k + 1; ++m) eval.push_back("f" + std::to_string(m) + "star");
  }
  json accuracy = json::object(), per_graph = json::object();
  for (const std::string& name : eval) {
    const ConnectHubScore s = name == "ultra4"
                                  ? evaluate_separation_ultra(inst, a.t, a.layers)
                                  : evaluate_separation(inst, resolve_motifs(name), a.t, a.layers);
    log(g, "info", name + ": " + std::to_string(s.accuracy));
    accuracy[name] = s.accuracy;
    per_graph[name] = s.per_graph;
  }
  json report;
  report["config"] = {{"command", "connecthub"},
                      {"global", globals_json(g)},
                      {"k", a.k},
                      {"l", inst.l},
                      {"graphs", a.graphs},
                      {"eval", eval},
                      {"t", a.t},
                      {"layers", a.layers},
                      {"write_dir", a.write_dir},
                      {"augment_inverses", a.augment}};
  report["k"] = a.k;
  report["eval_order"] = eval;
  report["accuracy"] = accuracy;
  report["per_graph"] = per_graph;
  return {report, 0};
}

Result cmd_ultra_equiv(const Globals& g, const UltraEquivArgs& a) {
  json report;
  report["config"] = {{"command", "ultra-equiv"},
                      {"global", globals_json(g)},
                      {"trials", a.trials},
                      {"max_nodes", a.max_nodes},
                      {"max_rels", a.max_rels},
                      {"p", a.p},
                      {"t", a.t},
                      {"l", a.l},
                      {"augment_inverses", a.augment},
                      {"inject_bug", a.inject_bug}};
  if (a.trials == 0) {
    log(g, "warn", "ultra-equiv with zero trials passes vacuously");
    report["warning"] = "zero trials: vacuous pass";
  }
  const std::vector<Motif> motifs = catalog(a.inject_bug ? "h2t" : "f2path");
  std::mt19937_64 rng(g.seed);
  RandomKgOptions opts;
  opts.max_nodes = a.max_nodes;
  opts.max_relations = a.max_rels;
  opts.p = a.p;
  json trials = json::array();
  bool all = true;
  for (std::size_t i = 0; i < a.trials; ++i) {
    KnowledgeGraph kg = random_kg(rng, opts);
    if (a.augment) kg = augment_inverses(kg);
    LinkColorer ultra = LinkColorer::ultra(kg);
    LinkColorer motif(kg, motifs);
    std::optional<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t t = 1; t <= a.t && !bad; ++t) {
      std::vector<std::vector<Color>> cu(a.l + 1), cm(a.l + 1);
      for (RelId q = 0; q < kg.num_relations(); ++q) {
        for (NodeId u = 0; u < kg.num_nodes(); ++u) {
          const LinkColoring x = ultra.link_colors(q, u, t, a.l);
          const LinkColoring y = motif.link_colors(q, u, t, a.l);
          for (std::size_t l = 1; l <= a.l; ++l) {
            cu[l].insert(cu[l].end(), x.at(l).begin(), x.at(l).end());
            cm[l].insert(cm[l].end(), y.at(l).begin(), y.at(l).end());
          }
        }
      }
      for (std::size_t l = 1; l <= a.l && !bad; ++l) {
        if (!same_partition(cu[l], cm[l])) bad = {t, l};
      }
    }
    trials.push_back({{"trial", i}, {"pass", !bad.has_value()}});
    if (bad) {
      all = false;
      report["counterexample"] = {{"trial", i},
                                  {"kg", serialize_kg(kg)},
                                  {"relations", kg.relations().names()},
                                  {"nodes", kg.nodes().names()},
                                  {"t", bad->first},
                                  {"l", bad->second}};
      log(g, "error", "partition mismatch in trial " + std::to_string(i));
      break;
    }
  }
  report["trials"] = trials;
  report["passed"] = all;
  return {report, all ? 0 : 1};
}

Result cmd_numenc_probe(const Globals& g, const NumencProbeArgs& a) {
  const KnowledgeGraph kg = load_kg(a.kg, a.augment);
  const std::vector<Motif> motifs = resolve_motifs(a.motifs);
  EncoderWeights w = a.weights_in.empty()
                         ? make_weights(g.seed, EncoderShape{a.d, a.t, a.l}, motifs)
                         : weights_from_json(read_text(a.weights_in));
  if (!a.weights_out.empty()) write_text(a.weights_out, weights_to_json(w));
  NumencOptions opts;
  opts.aggregation = a.fast_aggregation ? Aggregation::kFast : Aggregation::kCanonical;
  opts.entity_concat = a.current_concat ? EntityConcat::kCurrent : EntityConcat::kInitial;
  opts.normalization = a.no_norm ? Normalization::kNone : Normalization::kLayerNorm;

  const RelationalHypergraph h = has_fast_path(motifs) ? lift_fast(motifs, kg) : lift(motifs, kg);
  LinkColorer colorer(kg, h, TestKind::kMotif);
  std::vector<LinkQuery> links{parse_link(kg, a.link1)};
  if (!a.link2.empty()) links.push_back(parse_link(kg, a.link2));

  json report;
  report["config"] = {{"command", "numenc-probe"}, {"global", globals_json(g)},
                      {"kg", a.kg},                {"motifs", a.motifs},
                      {"link1", a.link1},          {"link2", a.link2},
                      {"d", w.d},                  {"t", a.t},
                      {"l", a.l},                  {"fast_aggregation", a.fast_aggregation},
                      {"entity_concat", a.current_concat ? "current" : "initial"},
                      {"layer_norm", !a.no_norm},
                      {"weights_in", a.weights_in}, {"augment_inverses", a.augment}};
  json out = json::array();
  std::vector<std::vector<double>> embeddings;
  std::vector<Color> colors;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const LinkQuery& link = links[i];
    const EmbeddingTable rel = relation_forward(h, link.relation, w, a.t, opts);
    const EmbeddingTable ent = entity_forward(kg, rel, link.source, link.relation, w, a.l, opts);
    const auto e = ent.last(link.target);
    embeddings.emplace_back(e.begin(), e.end());
    colors.push_back(colorer.color(link, a.t, a.l));
    out.push_back({{"link", i == 0 ? a.link1 : a.link2},
                   {"score", decode(w, e)},
                   {"embedding", embeddings.back()}});
    if (!a.embeddings_out.empty() && i == 0) {
      write_text(a.embeddings_out, embeddings_to_json(ent, kg.nodes().names()));
    }
  }
  report["links"] = out;
  int code = 0;
  if (links.size() == 2) {
    const bool identical = embeddings[0] == embeddings[1];
    const bool wl_equal = colors[0] == colors[1];
    report["identical_embeddings"] = identical;
    report["wl_equal"] = wl_equal;
    // Equal WL colors must give equal embeddings under canonical aggregation.
    const bool violation = wl_equal && !identical && !a.fast_aggregation;
    report["consistent"] = !violation;
    if (violation) code = 1;
  }
  return {report, code};
}

Result cmd_gen_random(const Globals& g, const GenRandomArgs& a) {
  RandomKgOptions opts;
  opts.max_nodes = a.max_nodes;
  opts.max_relations = a.max_rels;
  opts.p = a.p;
  std::mt19937_64 rng(g.seed);
  json graphs = json::array();
  if (!a.dir.empty()) std::filesystem::create_directories(a.dir);
  for (std::size_t i = 0; i < a.count; ++i) {
    const KnowledgeGraph kg = random_kg(rng, opts);
    json entry = {{"nodes", kg.num_nodes()},
                  {"relations", kg.num_relations()},
                  {"facts", kg.num_facts()}};
    if (!a.dir.empty()) {
      const std::string file = "random_" + std::to_string(i) + ".tsv";
      write_kg_file(kg, std::filesystem::path(a.dir) / file);
      entry["file"] = file;
    } else {
      entry["tsv"] = serialize_kg(kg);
    }
    graphs.push_back(entry);
  }
  json report;
  report["config"] = {{"command", "gen-random"}, {"global", globals_json(g)},
                      {"count", a.count},        {"max_nodes", a.max_nodes},
                      {"max_rels", a.max_rels},  {"p", a.p},
                      {"dir", a.dir}};
  report["graphs"] = graphs;
  return {report, 0};
}

std::string render_pretty(const std::string& command, const json& report) {
  std::ostringstream out;
  if (command == "connecthub") {
    out << "ConnectHub(" << report.at("k").get<std::size_t>() << ")\n";
    for (const auto& name : report.at("eval_order")) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "  %-10s %.2f\n", name.get<std::string>().c_str(),
                    report.at("accuracy").at(name.get<std::string>()).get<double>());
      out << buf;
    }
    return out.str();
  }
  for (const auto& [key, value] : report.items()) {
    if (key == "config") continue;
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return out.str();
}

}  // namespace motif::cli
