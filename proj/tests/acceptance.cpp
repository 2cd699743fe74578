// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

#include "commands.hpp"
#include "motif/hom_analysis.hpp"
#include "motif/numenc.hpp"
#include "motif/random_kg.hpp"
#include "motif/wl.hpp"
#include "test_data.hpp"

using namespace motif;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

RandomKgOptions fuzz(std::size_t nodes, std::size_t rels, double p) {
  RandomKgOptions o;
  o.max_nodes = nodes;
  o.max_relations = rels;
  o.p = p;
  return o;
}

bool bit_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

Outcome connecthub_table() {
  Outcome o;
  for (std::size_t k = 2; k <= 6; ++k) {
    cli::ConnectHubArgs a;
    a.k = k;
    a.graphs = 2;
    const json acc = cli::cmd_connecthub({}, a).report.at("accuracy");
    std::ostringstream row;
    row << "k=" << k;
    for (const auto& [name, value] : acc.items()) {
      const double expected = name == "f" + std::to_string(k + 1) + "star" ? 1.0 : 0.5;
      row << " " << name << "=" << value.get<double>();
      if (value.get<double>() != expected) o.fail("k=" + std::to_string(k) + " " + name);
    }
    std::cout << "  " << row.str() << "\n";
  }
  return o;
}

Outcome counter_example() {
  Outcome o;
  cli::SeparateArgs a;
  a.kg = data_path("counterexample.tsv").string();
  a.link1 = "r3,u,v1";
  a.link2 = "r3,u,v2";
  a.t = a.l = 10;
  a.sweep = true;
  a.motifs = "ultra4";
  const json u = cli::cmd_separate({}, a).report;
  a.motifs = "f3path";
  const json p = cli::cmd_separate({}, a).report;
  std::cout << "  ultra4 separated=" << u.at("separated") << " first_at=" << u.at("first_at")
            << "; f3path separated=" << p.at("separated") << " first_at=" << p.at("first_at") << "\n";
  if (u.at("separated") != false) o.fail("ultra4 separates");
  if (p.at("separated") != true || p.at("first_at").is_null()) o.fail("f3path does not separate");
  return o;
}

Outcome ultra_equivalence() {
  Outcome o;
  for (const bool augment : {false, true}) {
    cli::UltraEquivArgs a;
    a.trials = 200;
    a.augment = augment;
    const cli::Result r = cli::cmd_ultra_equiv({}, a);
    std::cout << "  augment=" << augment << " passed=" << r.report.at("passed") << "\n";
    if (r.exit_code != 0) o.fail(r.report.at("counterexample").dump());
  }
  return o;
}

Outcome sparse_lifts() {
  Outcome o;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const KnowledgeGraph g = random_kg(rng);
    if (!lift_fast_2path(g).same_as(lift(catalog("ultra4"), g))) o.fail("2-path lift, graph " + std::to_string(i));
    if (!lift_fast_3path(g).same_as(lift(catalog("f3path"), g))) o.fail("3-path lift, graph " + std::to_string(i));
  }
  return o;
}

Outcome core_machinery() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const KnowledgeGraph g = random_kg(rng, fuzz(7, 3, 0.2));
    const CoreResult c = rp_core_with_witnesses(g);
    if (!validate_homomorphism(c.to_core, g, c.core)) o.fail("to_core invalid");
    if (!validate_homomorphism(c.from_core, c.core, g)) o.fail("from_core invalid");
    if (!is_isomorphic(rp_core(c.core), c.core)) o.fail("core not idempotent");
  }
  std::size_t motifs = 0;
  for (const Motif& m : catalog("f4path,f8star,para,loop")) {
    ++motifs;
    if (!core_onto_exists(m, m)) o.fail("no core-onto self map for " + m.name);
  }
  std::cout << "  100 graphs, " << motifs << " catalog motifs\n";
  return o;
}

Outcome refinement_hierarchy() {
  Outcome o;
  auto check = [&](const std::string& family, std::size_t top) {
    for (std::size_t n = 2; n <= top; ++n) {
      for (std::size_t m = n + 1; m <= top; ++m) {
        const auto from = catalog("f" + std::to_string(n) + family);
        const auto to = catalog("f" + std::to_string(m) + family);
        if (refinement_report(from, to).uncovered.empty()) {
          o.fail(family + " " + std::to_string(n) + "->" + std::to_string(m) + " fully covered");
        }
      }
    }
  };
  check("path", 4);
  check("star", 8);
  const auto r = refinement_report(catalog("h2t"), catalog("h2t,h2h"));
  if (r.uncovered != std::vector<std::string>{"h2h"}) o.fail("h2h not uncovered");
  for (const std::string set : {"f2path", "f3path", "f4star"}) {
    auto from = catalog(set);
    auto to = from;
    to.push_back(renamed(from.back(), from.back().name + "_copy"));
    if (!refinement_report(from, to).uncovered.empty()) o.fail("isomorphic copy uncovered in " + set);
  }
  return o;
}

Outcome numeric_consistency() {
  Outcome o;
  const auto motifs = catalog("f2path");
  const std::size_t T = 3, L = 3;
  EncoderShape shape;
  shape.d = 16;
  shape.relation_layers = T;
  shape.entity_layers = L;
  std::mt19937_64 rng(3);
  std::size_t pairs = 0;
  for (int i = 0; i < 50; ++i) {
    const KnowledgeGraph g = random_kg(rng);
    LinkColorer colorer(g, motifs);
    const std::vector<Color> colors = colorer.all_link_colors(T, L);
    const std::size_t n = g.num_nodes();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const EncoderWeights w = make_weights(seed, shape, motifs);
      std::vector<std::vector<double>> emb(colors.size());
      for (RelId q = 0; q < g.num_relations(); ++q) {
        const EmbeddingTable rel = relation_forward(colorer.lifted(), q, w, T);
        for (NodeId u = 0; u < n; ++u) {
          const EmbeddingTable ent = entity_forward(g, rel, u, q, w, L);
          for (NodeId v = 0; v < n; ++v) {
            const auto e = ent.last(v);
            emb[(q * n + u) * n + v].assign(e.begin(), e.end());
          }
        }
      }
      // Group by color, compare each member with the first of its block.
      std::unordered_map<Color, std::size_t> first;
      for (std::size_t x = 0; x < colors.size(); ++x) {
        const auto [it, fresh] = first.try_emplace(colors[x], x);
        if (fresh) continue;
        ++pairs;
        if (!bit_equal(emb[x], emb[it->second])) o.fail("graph " + std::to_string(i) + " seed " + std::to_string(seed));
      }
    }
  }
  const KnowledgeGraph g = read_kg_file(data_path("counterexample.tsv"));
  const auto paths = catalog("f3path");
  const RelationalHypergraph h = lift(paths, g);
  const RelId q = *g.relation_id("r3");
  const NodeId u = *g.node_id("u");
  int differing = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const EncoderWeights w = make_weights(seed, EncoderShape{}, paths);
    const EmbeddingTable ent = entity_forward(g, relation_forward(h, q, w, 4), u, q, w, 4);
    differing += !bit_equal(ent.last(*g.node_id("v1")), ent.last(*g.node_id("v2")));
  }
  std::cout << "  " << pairs << " WL-equal pairs checked; counter-example differs for " << differing
            << "/5 seeds\n";
  if (differing < 4) o.fail("counter-example embeddings coincide");
  return o;
}

Outcome isomorphism_invariance() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const KnowledgeGraph g = random_kg(rng, fuzz(8, 4, 0.15));
    const auto [copy, iso] = random_isomorphic_copy(g, rng);
    const std::size_t n = g.num_nodes();
    for (const bool ultra : {false, true}) {
      LinkColorer a = ultra ? LinkColorer::ultra(g) : LinkColorer(g, catalog("f3path"));
      LinkColorer b = ultra ? LinkColorer::ultra(copy) : LinkColorer(copy, catalog("f3path"));
      const auto ca = a.all_link_colors(3, 3);
      const auto cb = b.all_link_colors(3, 3);
      std::vector<Color> mapped(ca.size());
      for (RelId q = 0; q < g.num_relations(); ++q) {
        for (NodeId u = 0; u < n; ++u) {
          for (NodeId v = 0; v < n; ++v) {
            mapped[(q * n + u) * n + v] = cb[(iso.rel_map[q] * n + iso.node_map[u]) * n + iso.node_map[v]];
          }
        }
      }
      if (!same_partition(ca, mapped)) o.fail("graph " + std::to_string(i));
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ConnectHub accuracy table, k=2..6", connecthub_table},
      {"counter-example separation sweep", counter_example},
      {"ULTRA and two-path motif partitions agree", ultra_equivalence},
      {"sparse-product lifts match generic lift", sparse_lifts},
      {"core machinery", core_machinery},
      {"refinement hierarchy", refinement_hierarchy},
      {"WL and numeric encoder consistency", numeric_consistency},
      {"isomorphism invariance of colorings", isomorphism_invariance},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << std::fixed << std::setprecision(1) << secs << "s)";
    if (!o.pass) std::cout << " -- " << o.detail;
    std::cout << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
