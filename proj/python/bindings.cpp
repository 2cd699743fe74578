#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "commands.hpp"
#include "motif/error.hpp"
#include "motif/hom_analysis.hpp"
#include "motif/kg.hpp"
#include "motif/motif.hpp"
#include "motif/numenc.hpp"
#include "motif/wl.hpp"

namespace py = pybind11;
using namespace motif;

namespace {

using NamedLink = std::tuple<std::string, std::string, std::string>;

LinkQuery to_link(const KnowledgeGraph& g, const NamedLink& link) {
  const auto& [q, u, v] = link;
  const auto qi = g.relation_id(q);
  const auto ui = g.node_id(u);
  const auto vi = g.node_id(v);
  if (!qi || !ui || !vi) throw PreconditionError("link names not in the graph");
  return {*qi, *ui, *vi};
}

py::list facts_of(const KnowledgeGraph& g) {
  py::list out;
  for (const Fact& f : g.facts()) {
    out.append(py::make_tuple(g.node_name(f.head), g.relation_name(f.relation), g.node_name(f.tail)));
  }
  return out;
}

py::list lift_edges(const KnowledgeGraph& g, const std::string& spec, bool fast) {
  const std::vector<Motif> motifs = resolve_motifs(spec);
  const RelationalHypergraph h = fast ? lift_fast(motifs, g) : lift(motifs, g);
  py::list out;
  for (const HyperEdge& e : h.hyperedges()) {
    py::list names;
    for (RelId r : e.tuple) names.append(h.node_names()[r]);
    out.append(py::make_tuple(h.edge_types()[e.motif_index].name, py::tuple(names)));
  }
  return out;
}

py::dict separate(const KnowledgeGraph& g, const std::string& spec, const NamedLink& a,
                  const NamedLink& b, std::size_t t, std::size_t l, bool sweep) {
  LinkColorer colorer = spec == "ultra4" ? LinkColorer::ultra(g) : LinkColorer(g, resolve_motifs(spec));
  const LinkQuery la = to_link(g, a), lb = to_link(g, b);
  const Separation s = sweep ? sweep_separation(colorer, la, lb, t, l) : separates(colorer, la, lb, t, l);
  py::dict out;
  out["separated"] = s.separated;
  if (s.first_at) {
    out["first_at"] = py::make_tuple(s.first_at->first, s.first_at->second);
  } else {
    out["first_at"] = py::none();
  }
  return out;
}

double score(const KnowledgeGraph& g, const std::string& spec, const NamedLink& link, std::uint64_t seed,
             std::size_t d, std::size_t t, std::size_t l) {
  const std::vector<Motif> motifs = resolve_motifs(spec);
  EncoderShape shape;
  shape.d = d;
  shape.relation_layers = t;
  shape.entity_layers = l;
  return score_link(g, motifs, to_link(g, link), make_weights(seed, shape, motifs), t, l);
}

std::string connecthub(std::size_t k, std::size_t l, std::size_t graphs, std::uint64_t seed,
                       std::vector<std::string> eval, std::size_t t, std::size_t layers, bool augment) {
  cli::Globals glob;
  glob.seed = seed;
  cli::ConnectHubArgs a;
  a.k = k;
  a.l = l;
  a.graphs = graphs;
  a.eval = std::move(eval);
  a.t = t;
  a.layers = layers;
  a.augment = augment;
  return cli::cmd_connecthub(glob, a).report.dump();
}

std::string ultra_equiv(std::size_t trials, std::uint64_t seed, std::size_t t, std::size_t l, bool augment) {
  cli::Globals glob;
  glob.seed = seed;
  cli::UltraEquivArgs a;
  a.trials = trials;
  a.t = t;
  a.l = l;
  a.augment = augment;
  return cli::cmd_ultra_equiv(glob, a).report.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Motif lifting, WL color refinement and ConnectHub on knowledge graphs";

  py::register_exception<Error>(m, "MotifError", PyExc_RuntimeError);

  py::class_<KnowledgeGraph>(m, "KnowledgeGraph")
      .def_static("parse", &parse_kg, py::arg("text"))
      .def_static("read", &read_kg_file, py::arg("path"))
      .def_property_readonly("num_nodes", &KnowledgeGraph::num_nodes)
      .def_property_readonly("num_relations", &KnowledgeGraph::num_relations)
      .def_property_readonly("num_facts", &KnowledgeGraph::num_facts)
      .def_property_readonly("nodes", [](const KnowledgeGraph& g) { return g.nodes().names(); })
      .def_property_readonly("relations", [](const KnowledgeGraph& g) { return g.relations().names(); })
      .def("facts", &facts_of)
      .def("serialize", &serialize_kg)
      .def("augment_inverses", &augment_inverses)
      .def("is_isomorphic", [](const KnowledgeGraph& a, const KnowledgeGraph& b) { return is_isomorphic(a, b); })
      .def("__repr__", [](const KnowledgeGraph& g) {
        return "<KnowledgeGraph nodes=" + std::to_string(g.num_nodes()) +
               " relations=" + std::to_string(g.num_relations()) + " facts=" + std::to_string(g.num_facts()) + ">";
      });

  m.def("catalog_names", &catalog_names);
  m.def("motif_names", [](const std::string& spec) {
    std::vector<std::string> out;
    for (const Motif& x : resolve_motifs(spec)) out.push_back(x.name);
    return out;
  });
  m.def("lift", &lift_edges, py::arg("kg"), py::arg("motifs"), py::arg("fast") = false);
  m.def("separate", &separate, py::arg("kg"), py::arg("motifs"), py::arg("link1"), py::arg("link2"),
        py::arg("t") = 8, py::arg("l") = 8, py::arg("sweep") = true);
  m.def("score_link", &score, py::arg("kg"), py::arg("motifs"), py::arg("link"), py::arg("seed") = 0,
        py::arg("d") = 32, py::arg("t") = 4, py::arg("l") = 4);
  m.def("rp_core", [](const KnowledgeGraph& g) { return rp_core(g); });
  m.def("_refinement_report", [](const std::string& from, const std::string& to) {
    return refinement_report_json(refinement_report(resolve_motifs(from), resolve_motifs(to)));
  });
  m.def("_connecthub", &connecthub);
  m.def("_ultra_equiv", &ultra_equiv);
}
