#pragma once

// Relation-preserving homomorphisms, rp-cores, core-onto homomorphisms and
// the refinement report built on them.
//
// Relations are matched by name: an rp-homomorphism src -> dst needs every
// relation name of src to exist in dst, and maps R_src onto itself. Callers
// comparing patterns over different vocabularies rename relations first.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motif/kg.hpp"
#include "motif/motif.hpp"

namespace motif {

struct AnalysisLimits {
  std::size_t max_nodes = 16;
  std::size_t max_relations = 12;
};

/// h = (pi, phi) from src to dst with phi(R_src) = R_src. Throws
/// PreconditionError when a relation name of src is missing from dst.
std::optional<NodeRelHomomorphism> find_rp_homomorphism(const KnowledgeGraph& src,
                                                        const KnowledgeGraph& dst);

struct CoreResult {
  KnowledgeGraph core;
  /// rp-homomorphism g -> core.
  NodeRelHomomorphism to_core;
  /// rp-homomorphism core -> g (the core is a subgraph of g).
  NodeRelHomomorphism from_core;
};

/// Relation-preserving core. Repeatedly retracts onto the image of an
/// rp-endomorphism with the fewest image nodes until every rp-endomorphism
/// is onto. Node and relation names of the core are those of `g`.
CoreResult rp_core_with_witnesses(const KnowledgeGraph& g, const AnalysisLimits& limits = {});
KnowledgeGraph rp_core(const KnowledgeGraph& g, const AnalysisLimits& limits = {});

/// True iff the rp-core of the pattern is a single fact r(u, v) with u != v.
bool is_trivial_motif(const Motif& p, const AnalysisLimits& limits = {});

/// A homomorphism p.pattern -> q.pattern whose image is isomorphic to the
/// rp-core of q.pattern, if one exists.
std::optional<NodeRelHomomorphism> find_core_onto(const Motif& p, const Motif& q,
                                                  const AnalysisLimits& limits = {});
inline bool core_onto_exists(const Motif& p, const Motif& q, const AnalysisLimits& limits = {}) {
  return find_core_onto(p, q, limits).has_value();
}

struct CoveredMotif {
  std::string motif;
  std::string witness_via;
  NodeRelHomomorphism witness;
};

struct RefinementReport {
  std::vector<std::string> from;
  std::vector<std::string> to;
  std::vector<std::string> uncovered;
  std::vector<CoveredMotif> covered;
  std::vector<std::string> trivial_exempt;
};

/// For every non-trivial P' in `to`, looks for P in `from` with a core-onto
/// homomorphism P -> P'. A non-empty `uncovered` list shows that `to` can
/// separate links that `from` cannot.
RefinementReport refinement_report(std::span<const Motif> from, std::span<const Motif> to,
                                   const AnalysisLimits& limits = {});

std::string refinement_report_json(const RefinementReport& report, int indent = -1);

}  // namespace motif
