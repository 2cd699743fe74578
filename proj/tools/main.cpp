#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "motif/error.hpp"

using namespace motif::cli;

int main(int argc, char** argv) {
  CLI::App app{"motif: motif lifts, WL tests, cores and ConnectHub"};
  app.require_subcommand(1);

  Globals globals;
  std::string out_path;
  bool pretty = false;
  app.add_option("--seed", globals.seed, "Random seed")->envname("MOTIF_SEED");
  app.add_option("--threads", globals.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--log-level", globals.log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));
  app.add_flag("--pretty", pretty, "Human-readable output");

  LiftArgs lift;
  auto* c_lift = app.add_subcommand("lift", "Lift a KG into a relational hypergraph");
  c_lift->add_option("--kg", lift.kg, "Triple file")->required();
  c_lift->add_option("--motifs", lift.motifs, "Catalog spec or motif JSON file")->required();
  c_lift->add_flag("--fast", lift.fast, "Sparse-product lift (ultra4, f2path, f3path)");

  SeparateArgs sep;
  bool sep_no_aug = false;
  auto* c_sep = app.add_subcommand("separate", "Do two links get different colors?");
  c_sep->add_option("--kg", sep.kg)->required();
  c_sep->add_option("--motifs", sep.motifs, "Catalog spec; ultra4 runs the ULTRA test")
      ->required();
  c_sep->add_option("--link1", sep.link1, "q,u,v")->required();
  c_sep->add_option("--link2", sep.link2, "q,u,v")->required();
  c_sep->add_option("--t", sep.t, "Relation iterations (sweep bound with --sweep)");
  c_sep->add_option("--l", sep.l, "Link layers (sweep bound with --sweep)");
  c_sep->add_flag("--sweep", sep.sweep, "Report the first separating (t, l)");
  c_sep->add_flag("--no-augment", sep_no_aug, "Do not add inverse relations");

  WlDumpArgs dump;
  bool dump_no_aug = false;
  auto* c_dump = app.add_subcommand("wl-dump", "Dump relation and link colors");
  c_dump->add_option("--kg", dump.kg)->required();
  c_dump->add_option("--motifs", dump.motifs)->required();
  c_dump->add_option("--q", dump.q, "Query relation")->required();
  c_dump->add_option("--u", dump.u, "Source node")->required();
  c_dump->add_option("--t", dump.t);
  c_dump->add_option("--l", dump.l);
  c_dump->add_flag("--no-augment", dump_no_aug);

  CoreArgs core;
  auto* c_core = app.add_subcommand("core", "Relation-preserving core of a KG or of motifs");
  c_core->add_option("--kg", core.kg);
  c_core->add_option("--motifs", core.motifs);

  RefineArgs refine;
  auto* c_refine = app.add_subcommand("refine", "Core-onto refinement report");
  c_refine->add_option("--from", refine.from)->required();
  c_refine->add_option("--to", refine.to)->required();

  ConnectHubArgs hub;
  bool hub_no_aug = false;
  auto* c_hub = app.add_subcommand("connecthub", "Generate and evaluate ConnectHub(k)");
  c_hub->add_option("--k", hub.k)->check(CLI::Range(2, 8));
  c_hub->add_option("--l", hub.l, "Relations per class (default k+1)");
  c_hub->add_option("--graphs", hub.graphs);
  c_hub->add_option("--eval", hub.eval, "Motif sets to evaluate")->delimiter(',');
  c_hub->add_option("--t", hub.t);
  c_hub->add_option("--layers", hub.layers);
  c_hub->add_option("--write", hub.write_dir, "Also write the instance here");
  c_hub->add_flag("--no-augment", hub_no_aug);

  UltraEquivArgs eq;
  bool eq_no_aug = false;
  auto* c_eq = app.add_subcommand("ultra-equiv", "Fuzz ULTRA against f2path partitions");
  c_eq->add_option("--trials", eq.trials);
  c_eq->add_option("--max-nodes", eq.max_nodes)->check(CLI::PositiveNumber);
  c_eq->add_option("--max-rels", eq.max_rels)->check(CLI::PositiveNumber);
  c_eq->add_option("--p", eq.p)->check(CLI::Range(0.0, 1.0));
  c_eq->add_option("--t", eq.t);
  c_eq->add_option("--l", eq.l);
  c_eq->add_flag("--no-augment", eq_no_aug);
  c_eq->add_flag("--inject-bug", eq.inject_bug, "Negative control: compare against a weakened motif set");

  NumencProbeArgs probe;
  bool probe_no_aug = false;
  auto* c_probe = app.add_subcommand("numenc-probe", "Run the numeric encoder on links");
  c_probe->add_option("--kg", probe.kg)->required();
  c_probe->add_option("--motifs", probe.motifs)->required();
  c_probe->add_option("--link1", probe.link1, "q,u,v")->required();
  c_probe->add_option("--link2", probe.link2, "q,u,v");
  c_probe->add_option("--d", probe.d);
  c_probe->add_option("--t", probe.t);
  c_probe->add_option("--l", probe.l);
  c_probe->add_flag("--fast-aggregation", probe.fast_aggregation);
  c_probe->add_flag("--current-concat", probe.current_concat, "Use h_v^(l) in the update");
  c_probe->add_flag("--no-norm", probe.no_norm, "Skip the layer norm before ReLU");
  c_probe->add_option("--weights-in", probe.weights_in);
  c_probe->add_option("--weights-out", probe.weights_out);
  c_probe->add_option("--embeddings-out", probe.embeddings_out);
  c_probe->add_flag("--no-augment", probe_no_aug);

  GenRandomArgs gen;
  auto* c_gen = app.add_subcommand("gen-random", "Write random KGs");
  c_gen->add_option("--count", gen.count);
  c_gen->add_option("--max-nodes", gen.max_nodes)->check(CLI::PositiveNumber);
  c_gen->add_option("--max-rels", gen.max_rels)->check(CLI::PositiveNumber);
  c_gen->add_option("--p", gen.p)->check(CLI::Range(0.0, 1.0));
  c_gen->add_option("--dir", gen.dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Result result;
  std::string name;
  try {
    if (*c_lift) {
      name = "lift";
      result = cmd_lift(globals, lift);
    } else if (*c_sep) {
      name = "separate";
      sep.augment = !sep_no_aug;
      result = cmd_separate(globals, sep);
    } else if (*c_dump) {
      name = "wl-dump";
      dump.augment = !dump_no_aug;
      result = cmd_wl_dump(globals, dump);
    } else if (*c_core) {
      name = "core";
      result = cmd_core(globals, core);
    } else if (*c_refine) {
      name = "refine";
      result = cmd_refine(globals, refine);
    } else if (*c_hub) {
      name = "connecthub";
      hub.augment = !hub_no_aug;
      result = cmd_connecthub(globals, hub);
    } else if (*c_eq) {
      name = "ultra-equiv";
      eq.augment = !eq_no_aug;
      result = cmd_ultra_equiv(globals, eq);
    } else if (*c_probe) {
      name = "numenc-probe";
      probe.augment = !probe_no_aug;
      result = cmd_numenc_probe(globals, probe);
    } else if (*c_gen) {
      name = "gen-random";
      result = cmd_gen_random(globals, gen);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const std::string text = pretty ? render_pretty(name, result.report) : result.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}
