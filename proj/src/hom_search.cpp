#include "motif/hom_search.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <unordered_map>

namespace motif {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

using Profile = std::array<std::size_t, 3>;

std::vector<Profile> degree_profiles(const KnowledgeGraph& g) {
  std::vector<Profile> p(g.num_nodes(), Profile{0, 0, 0});
  for (const Fact& f : g.facts()) {
    if (f.head == f.tail) {
      ++p[f.head][2];
    } else {
      ++p[f.head][1];
      ++p[f.tail][0];
    }
  }
  return p;
}

class Search {
 public:
  Search(const KnowledgeGraph& src, const KnowledgeGraph& dst, const HomSearchOptions& options,
         const HomVisitor& visit)
      : src_(src), dst_(dst), opt_(options), visit_(visit) {
    h_.node_map.assign(src.num_nodes(), kUnset);
    h_.rel_map.assign(src.num_relations(), kUnset);
    node_uses_.assign(dst.num_nodes(), 0);
    rel_uses_.assign(dst.num_relations(), 0);
    if (opt_.match_degree_profile) {
      src_profile_ = degree_profiles(src);
      dst_profile_ = degree_profiles(dst);
    }
    track_facts_ = opt_.min_image_facts > 0 ||
                   opt_.max_image_facts != std::numeric_limits<std::size_t>::max();
    order_facts();
  }

  bool run() {
    const bool finished = assign(0);
    cut_active_ = false;
    return finished;
  }

 private:
  void order_facts() {
    const auto facts = src_.facts();
    std::vector<std::size_t> degree(src_.num_nodes(), 0);
    for (const Fact& f : facts) {
      ++degree[f.head];
      ++degree[f.tail];
    }
    std::vector<bool> placed(facts.size(), false);
    std::vector<bool> seen(src_.num_nodes(), false);
    order_.reserve(facts.size());
    for (std::size_t step = 0; step < facts.size(); ++step) {
      std::size_t best = facts.size();
      std::pair<int, std::size_t> best_key{-1, 0};
      for (std::size_t i = 0; i < facts.size(); ++i) {
        if (placed[i]) continue;
        const Fact& f = facts[i];
        const int bound = int(seen[f.head]) + int(seen[f.tail]);
        const std::pair<int, std::size_t> key{bound, degree[f.head] + degree[f.tail]};
        if (key > best_key) {
          best_key = key;
          best = i;
        }
      }
      placed[best] = true;
      seen[facts[best].head] = seen[facts[best].tail] = true;
      order_.push_back(facts[best]);
    }
  }

  bool can_bind_node(NodeId x, NodeId y) const {
    if (h_.node_map[x] != kUnset) return h_.node_map[x] == y;
    if (opt_.injective_nodes && node_uses_[y] != 0) return false;
    if (node_uses_[y] == 0 && image_nodes_ + 1 > opt_.max_image_nodes) return false;
    if (opt_.match_degree_profile && src_profile_[x] != dst_profile_[y]) return false;
    return true;
  }

  bool can_bind_rel(RelId r, RelId s) const {
    if (h_.rel_map[r] != kUnset) return h_.rel_map[r] == s;
    if (!opt_.allowed_relations.empty() && !opt_.allowed_relations[s]) return false;
    if (opt_.injective_relations && rel_uses_[s] != 0) return false;
    if (opt_.match_degree_profile && src_.relation_size(r) != dst_.relation_size(s)) return false;
    return true;
  }

  void bind_node(NodeId x, NodeId y) {
    h_.node_map[x] = y;
    if (node_uses_[y]++ == 0) ++image_nodes_;
  }
  void unbind_node(NodeId x) {
    const NodeId y = h_.node_map[x];
    if (--node_uses_[y] == 0) --image_nodes_;
    h_.node_map[x] = kUnset;
  }
  void bind_rel(RelId r, RelId s) {
    h_.rel_map[r] = s;
    ++rel_uses_[s];
  }
  void unbind_rel(RelId r) {
    --rel_uses_[h_.rel_map[r]];
    h_.rel_map[r] = kUnset;
  }

  bool try_fact(std::size_t depth, const Fact& f, const Fact& g) {
    if ((f.head == f.tail) && g.head != g.tail) return true;
    if (!can_bind_rel(f.relation, g.relation)) return true;
    const bool new_rel = h_.rel_map[f.relation] == kUnset;
    if (new_rel) {
      bind_rel(f.relation, g.relation);
      rel_bind_depths_.push_back(static_cast<std::ptrdiff_t>(depth));
    }
    bool keep_going = true;
    bool fact_budget_ok = true;
    if (track_facts_) {
      if (fact_uses_[g]++ == 0) ++image_facts_;
      const std::size_t remaining = order_.size() - depth - 1;
      fact_budget_ok =
          image_facts_ <= opt_.max_image_facts && image_facts_ + remaining >= opt_.min_image_facts;
    }
    if (fact_budget_ok && can_bind_node(f.head, g.head)) {
      const bool new_head = h_.node_map[f.head] == kUnset;
      if (new_head) bind_node(f.head, g.head);
      if (can_bind_node(f.tail, g.tail)) {
        const bool new_tail = h_.node_map[f.tail] == kUnset;
        if (new_tail) bind_node(f.tail, g.tail);
        keep_going = assign(depth + 1);
        if (new_tail) unbind_node(f.tail);
      }
      if (new_head) unbind_node(f.head);
    }
    if (track_facts_ && --fact_uses_[g] == 0) --image_facts_;
    if (new_rel) {
      unbind_rel(f.relation);
      rel_bind_depths_.pop_back();
    }
    return keep_going;
  }

  // True if the caller at `depth` must return to honour a pending cut.
  bool cut_below(std::size_t depth) {
    if (!cut_active_) return false;
    if (cut_depth_ < static_cast<std::ptrdiff_t>(depth)) return true;
    cut_active_ = false;
    return false;
  }

  bool assign(std::size_t depth) {
    if (depth == order_.size()) return complete();
    const Fact& f = order_[depth];
    const RelId r = h_.rel_map[f.relation];
    const NodeId hu = h_.node_map[f.head];
    const NodeId tv = h_.node_map[f.tail];
    if (hu != kUnset) {
      const auto cands = r != kUnset ? dst_.out_facts(hu, r) : dst_.out_facts(hu);
      for (const Fact& g : cands) {
        if (tv != kUnset && g.tail != tv) continue;
        if (!try_fact(depth, f, g)) return false;
        if (cut_below(depth)) return true;
      }
      return true;
    }
    if (tv != kUnset) {
      const auto cands = r != kUnset ? dst_.in_facts(tv, r) : dst_.in_facts(tv);
      for (const Fact& g : cands) {
        if (!try_fact(depth, f, g)) return false;
        if (cut_below(depth)) return true;
      }
      return true;
    }
    for (const Fact& g : dst_.facts()) {
      if (r != kUnset && g.relation != r) continue;
      if (!try_fact(depth, f, g)) return false;
      if (cut_below(depth)) return true;
    }
    return true;
  }

  // Fact-free nodes and relations get one canonical image each.
  bool complete() {
    std::vector<NodeId> free_nodes;
    std::vector<RelId> free_rels;
    bool ok = !track_facts_ || image_facts_ >= opt_.min_image_facts;
    for (NodeId x = 0; x < src_.num_nodes() && ok; ++x) {
      if (h_.node_map[x] != kUnset) continue;
      NodeId chosen = kUnset;
      for (NodeId y = 0; y < dst_.num_nodes(); ++y) {
        if (!can_bind_node(x, y)) continue;
        if (!opt_.injective_nodes && node_uses_[y] == 0 && image_nodes_ > 0) continue;
        chosen = y;
        break;
      }
      if (chosen == kUnset && !opt_.injective_nodes) {
        for (NodeId y = 0; y < dst_.num_nodes(); ++y) {
          if (can_bind_node(x, y)) {
            chosen = y;
            break;
          }
        }
      }
      if (chosen == kUnset) {
        ok = false;
        break;
      }
      bind_node(x, chosen);
      free_nodes.push_back(x);
    }
    for (RelId r = 0; r < src_.num_relations() && ok; ++r) {
      if (h_.rel_map[r] != kUnset) continue;
      RelId chosen = kUnset;
      for (RelId s = 0; s < dst_.num_relations(); ++s) {
        if (can_bind_rel(r, s)) {
          chosen = s;
          break;
        }
      }
      if (chosen == kUnset) {
        ok = false;
        break;
      }
      bind_rel(r, chosen);
      free_rels.push_back(r);
    }
    bool keep_going = true;
    if (ok) {
      keep_going = visit_(h_);
      if (keep_going && opt_.skip_repeated_relation_maps) {
        cut_active_ = true;
        cut_depth_ = rel_bind_depths_.empty() ? -1 : rel_bind_depths_.back();
      }
    }
    for (auto it = free_rels.rbegin(); it != free_rels.rend(); ++it) unbind_rel(*it);
    for (auto it = free_nodes.rbegin(); it != free_nodes.rend(); ++it) unbind_node(*it);
    return keep_going;
  }

  const KnowledgeGraph& src_;
  const KnowledgeGraph& dst_;
  const HomSearchOptions& opt_;
  const HomVisitor& visit_;
  NodeRelHomomorphism h_;
  std::vector<Fact> order_;
  std::vector<std::size_t> node_uses_;
  std::vector<std::size_t> rel_uses_;
  std::size_t image_nodes_ = 0;
  std::unordered_map<Fact, std::size_t, FactHash> fact_uses_;
  std::size_t image_facts_ = 0;
  bool track_facts_ = false;
  std::vector<std::ptrdiff_t> rel_bind_depths_;
  bool cut_active_ = false;
  std::ptrdiff_t cut_depth_ = 0;
  std::vector<Profile> src_profile_;
  std::vector<Profile> dst_profile_;
};

}  // namespace

bool for_each_homomorphism(const KnowledgeGraph& src, const KnowledgeGraph& dst,
                           const HomSearchOptions& options, const HomVisitor& visit) {
  Search search(src, dst, options, visit);
  return search.run();
}

std::optional<NodeRelHomomorphism> find_homomorphism(const KnowledgeGraph& src,
                                                     const KnowledgeGraph& dst,
                                                     const HomSearchOptions& options) {
  std::optional<NodeRelHomomorphism> found;
  for_each_homomorphism(src, dst, options, [&](const NodeRelHomomorphism& h) {
    found = h;
    return false;
  });
  return found;
}

}  // namespace motif
