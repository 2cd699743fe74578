#pragma once

// Deliberately naive reference implementations used as test oracles. None
// of them shares code with the library beyond the data model.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "motif/kg.hpp"
#include "motif/motif.hpp"

namespace oracle {

using motif::Fact;
using motif::KnowledgeGraph;
using motif::NodeId;
using motif::RelId;

// Calls f(assignment) for every vector in {0..base-1}^len.
template <typename F>
void for_each_assignment(std::size_t len, std::size_t base, F&& f) {
  std::vector<std::uint32_t> a(len, 0);
  if (len > 0 && base == 0) return;
  while (true) {
    f(a);
    std::size_t i = 0;
    while (i < len && ++a[i] == base) a[i++] = 0;
    if (i == len) return;
  }
}

inline bool is_hom(const KnowledgeGraph& src, const KnowledgeGraph& dst,
                   const std::vector<std::uint32_t>& pi, const std::vector<std::uint32_t>& phi) {
  for (const Fact& f : src.facts()) {
    if (!dst.contains(phi[f.relation], pi[f.head], pi[f.tail])) return false;
  }
  return true;
}

inline bool hom_exists_with_phi(const KnowledgeGraph& src, const KnowledgeGraph& dst,
                                const std::vector<std::uint32_t>& phi) {
  bool found = false;
  for_each_assignment(src.num_nodes(), dst.num_nodes(), [&](const auto& pi) {
    if (!found && is_hom(src, dst, pi, phi)) found = true;
  });
  return found;
}

// Eval(P, G) by trying every relation map and every node map.
inline std::set<std::vector<RelId>> eval(const motif::Motif& p, const KnowledgeGraph& g) {
  std::set<std::vector<RelId>> out;
  for_each_assignment(p.pattern.num_relations(), g.num_relations(), [&](const auto& phi) {
    if (!hom_exists_with_phi(p.pattern, g, phi)) return;
    std::vector<RelId> t;
    for (RelId r : p.order) t.push_back(phi[r]);
    out.insert(t);
  });
  return out;
}

inline std::set<std::vector<RelId>> to_set(const motif::TupleSet& ts) {
  std::set<std::vector<RelId>> out;
  for (std::size_t i = 0; i < ts.size(); ++i) out.emplace(ts[i].begin(), ts[i].end());
  return out;
}

// Smallest image, as (nodes, facts), over all relation-preserving
// endomorphisms: phi ranges over permutations, pi over all node maps.
inline std::pair<std::size_t, std::size_t> min_rp_image(const KnowledgeGraph& g) {
  std::vector<std::uint32_t> phi(g.num_relations());
  std::iota(phi.begin(), phi.end(), 0);
  std::pair<std::size_t, std::size_t> best{g.num_nodes() + 1, 0};
  do {
    for_each_assignment(g.num_nodes(), g.num_nodes(), [&](const auto& pi) {
      if (!is_hom(g, g, pi, phi)) return;
      std::set<std::uint32_t> nodes(pi.begin(), pi.end());
      std::set<Fact> facts;
      for (const Fact& f : g.facts()) facts.insert({phi[f.relation], pi[f.head], pi[f.tail]});
      const std::pair<std::size_t, std::size_t> size{nodes.size(), facts.size()};
      if (size.first < best.first || (size.first == best.first && size.second < best.second)) {
        best = size;
      }
    });
  } while (std::next_permutation(phi.begin(), phi.end()));
  return best;
}

// Map-based WL. Colors are ints issued by one table per Oracle object, so
// colors from different conditioned runs of the same object are comparable.
class Wl {
 public:
  std::vector<int> hcwl(const motif::RelationalHypergraph& h, RelId q, std::size_t t) {
    std::vector<int> c(h.num_nodes(), 0);
    c[q] = 1;
    for (std::size_t it = 0; it < t; ++it) {
      std::vector<std::vector<std::vector<long>>> ms(h.num_nodes());
      for (std::size_t type = 0; type < h.num_edge_types(); ++type) {
        const auto& edges = h.edges(type);
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const auto tuple = edges[e];
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            std::vector<long> sig{static_cast<long>(type)};
            std::set<std::pair<long, long>> nb;
            for (std::size_t j = 0; j < tuple.size(); ++j) {
              if (j != i) nb.insert({c[tuple[j]], static_cast<long>(j)});
            }
            for (const auto& [col, pos] : nb) {
              sig.push_back(col);
              sig.push_back(pos);
            }
            ms[tuple[i]].push_back(sig);
          }
        }
      }
      std::vector<int> next(h.num_nodes());
      for (std::size_t r = 0; r < h.num_nodes(); ++r) {
        std::sort(ms[r].begin(), ms[r].end());
        next[r] = id({-1, c[r]}, ms[r]);
      }
      c = next;
    }
    return c;
  }

  // Refinement over facts r(w, v) with the given relation labels.
  std::vector<int> refine(const KnowledgeGraph& g, std::vector<int> c,
                          const std::vector<int>& labels, std::size_t layers, long tag) {
    for (std::size_t it = 0; it < layers; ++it) {
      std::vector<int> next(g.num_nodes());
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        std::vector<std::vector<long>> ms;
        for (const Fact& f : g.facts()) {
          if (f.tail == v) ms.push_back({c[f.head], labels[f.relation]});
        }
        std::sort(ms.begin(), ms.end());
        next[v] = id({tag, c[v]}, ms);
      }
      c = next;
    }
    return c;
  }

  std::vector<int> link(const KnowledgeGraph& g, const std::vector<int>& rel, RelId q, NodeId u,
                        std::size_t l) {
    std::vector<int> c(g.num_nodes(), 0);
    c[u] = rel[q];
    return refine(g, c, rel, l, -2);
  }

  std::vector<int> rawl2(const KnowledgeGraph& g, NodeId source, std::size_t l) {
    std::vector<int> c(g.num_nodes(), 0);
    c[source] = 1;
    std::vector<int> labels(g.num_relations());
    std::iota(labels.begin(), labels.end(), 0);
    return refine(g, c, labels, l, -3);
  }

 private:
  int id(std::vector<long> head, const std::vector<std::vector<long>>& ms) {
    auto key = std::make_pair(std::move(head), ms);
    auto [it, fresh] = table_.try_emplace(key, static_cast<int>(table_.size()) + 2);
    return it->second;
  }

  std::map<std::pair<std::vector<long>, std::vector<std::vector<long>>>, int> table_;
};

// Partition equality by brute force over all pairs.
template <typename A, typename B>
bool same_partition(const std::vector<A>& a, const std::vector<B>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace oracle
