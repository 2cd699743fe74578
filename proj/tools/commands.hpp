#pragma once

// The motif subcommands as library functions. Each returns its JSON report
// (with the resolved config embedded) and the process exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace motif::cli {

struct Result {
  nlohmann::json report;
  int exit_code = 0;
};

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string log_level = "warn";
};

struct LiftArgs {
  std::string kg;
  std::string motifs;
  bool fast = false;
};
Result cmd_lift(const Globals& g, const LiftArgs& a);

struct SeparateArgs {
  std::string kg;
  std::string motifs;
  std::string link1, link2;
  std::size_t t = 8, l = 8;
  bool sweep = false;
  bool augment = true;
};
Result cmd_separate(const Globals& g, const SeparateArgs& a);

struct WlDumpArgs {
  std::string kg;
  std::string motifs;
  std::string q, u;
  std::size_t t = 3, l = 3;
  bool augment = true;
};
Result cmd_wl_dump(const Globals& g, const WlDumpArgs& a);

struct CoreArgs {
  std::string kg;
  std::string motifs;
};
Result cmd_core(const Globals& g, const CoreArgs& a);

struct RefineArgs {
  std::string from, to;
};
Result cmd_refine(const Globals& g, const RefineArgs& a);

struct ConnectHubArgs {
  std::size_t k = 2;
  std::size_t l = 0;
  std::size_t graphs = 1;
  /// Empty means ultra4 and f1star..f{k+1}star.
  std::vector<std::string> eval;
  std::size_t t = 2, layers = 2;
  std::string write_dir;
  bool augment = true;
};
Result cmd_connecthub(const Globals& g, const ConnectHubArgs& a);

struct UltraEquivArgs {
  std::size_t trials = 200;
  std::size_t max_nodes = 12, max_rels = 5;
  double p = 0.15;
  std::size_t t = 4, l = 4;
  bool augment = true;
  /// Negative control for tests: compares against a deliberately weakened
  /// motif set.
  bool inject_bug = false;
};
Result cmd_ultra_equiv(const Globals& g, const UltraEquivArgs& a);

struct NumencProbeArgs {
  std::string kg;
  std::string motifs;
  std::string link1, link2;
  std::size_t d = 32, t = 4, l = 4;
  bool fast_aggregation = false;
  bool current_concat = false;
  bool no_norm = false;
  std::string weights_in, weights_out, embeddings_out;
  bool augment = true;
};
Result cmd_numenc_probe(const Globals& g, const NumencProbeArgs& a);

struct GenRandomArgs {
  std::size_t count = 1;
  std::size_t max_nodes = 12, max_rels = 5;
  double p = 0.15;
  std::string dir;
};
Result cmd_gen_random(const Globals& g, const GenRandomArgs& a);

/// Human-readable rendering of a report.
std::string render_pretty(const std::string& command, const nlohmann::json& report);

}  // namespace motif::cli
