/*
 * Copyright 2026 The Trellis Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "trellis/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "trellis/text.hpp"

namespace trellis {

namespace {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr u32 kNone = 0xFFFFFFFFu;

// Tree edges are packed into 64 bits: kind in the top 2 bits, payload
// below. Equivalence edges carry both endpoints (31 bits each).
enum : u64 { kKindData = 0, kKindSimilar = 1, kKindEquiv = 2 };

u64 pack_data(u64 edge_id) { return edge_id; }
u64 pack_similar(u64 row) { return (kKindSimilar << 62) | row; }
u64 pack_equiv(u32 a, u32 b) {
  u32 lo = std::min(a, b), hi = std::max(a, b);
  return (kKindEquiv << 62) | (static_cast<u64>(lo) << 31) | hi;
}
u64 ekey_kind(u64 k) { return k >> 62; }
u64 ekey_payload(u64 k) { return k & ((u64(1) << 62) - 1); }

u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Shared-structure partial tree: a seed, a grow step over a parent, or a
/// merge of two node-disjoint parents. Edges materialize by walking the
/// parent links; the digest is a commutative (sum) hash of the edge keys,
/// so identity checks are O(1) with an exact-compare fallback.
struct TreeRec {
  u32 parent = kNone;
  u32 parent2 = kNone;  // merge only
  u64 delta = 0;        // grow only; valid iff has_delta
  u32 root = 0;
  u32 bits = 0;
  u16 n_edges = 0;
  bool has_delta = false;
  u64 digest = 0;
};

struct Cand {
  u64 ekey;
  u32 other;
  float spec;
};

struct UEntry {
  u32 tree;
  u32 cursor;
  u32 matched;  // popcount of tree bits
  u32 n_nodes;
  float spec;  // candidate edge specificity
  u64 ekey;    // candidate edge (final tiebreak)
};

// Max-heap order: more matched keywords, then fewer nodes, then higher
// specificity, then earlier tree, then smaller edge key.
struct ULess {
  bool operator()(const UEntry& a, const UEntry& b) const {
    if (a.matched != b.matched) return a.matched < b.matched;
    if (a.n_nodes != b.n_nodes) return a.n_nodes > b.n_nodes;
    if (a.spec != b.spec) return a.spec < b.spec;
    if (a.tree != b.tree) return a.tree > b.tree;
    return a.ekey > b.ekey;
  }
};

struct Search {
  const GraphStore& store;
  const Graph& g;
  const Query& q;
  const ScoreFunction& scorefn;

  std::size_t k = 0;
  u32 full_mask = 0;
  std::size_t max_edges = 0;
  std::size_t max_answers = 0;
  Clock::time_point start;
  Clock::time_point deadline;
  bool has_deadline = false;
  bool stop = false;

  std::vector<TreeRec> arena;
  std::unordered_map<u64, u32> explored;
  std::unordered_multimap<u64, u32> explored_overflow;
  std::map<u32, std::unordered_map<u32, std::vector<u32>>> by_keywords;  // K

  std::priority_queue<UEntry, std::vector<UEntry>, ULess> frontier;  // U

  std::unordered_map<u32, u32> kw_bits;
  std::unordered_map<u64, float> kw_sim;  // (node << 5) | keyword
  std::vector<std::string> folded_keywords;

  std::unordered_map<u32, std::vector<Cand>> cand_cache;

  // Answers.
  std::vector<ScoredAnswer> kept;
  std::vector<std::vector<u64>> kept_keys;  // canonical ekeys per kept answer
  std::unordered_map<u64, std::vector<u32>> answer_index;  // digest -> kept
  std::unordered_set<u64> answer_digests;  // when !keep_all
  SearchStats stats;

  // Scratch buffers.
  std::vector<u64> edges_a, edges_b;
  std::vector<u32> nodes_a, nodes_b;

  explicit Search(const GraphStore& s, const Query& query,
                  const ScoreFunction& fn)
      : store(s), g(s.graph()), q(query), scorefn(fn) {}

  u32 rep(u32 n) const { return static_cast<u32>(g.representative(n)); }
  u32 bits_of(u32 n) const {
    auto it = kw_bits.find(n);
    return it == kw_bits.end() ? 0 : it->second;
  }

  std::pair<u32, u32> endpoints(u64 ekey) const {
    switch (ekey_kind(ekey)) {
      case kKindData: {
        const Edge& e = g.edge(ekey_payload(ekey));
        return {static_cast<u32>(e.source), static_cast<u32>(e.target)};
      }
      case kKindSimilar: {
        const SimilarRow& r = g.similar(ekey_payload(ekey));
        return {static_cast<u32>(r.source), static_cast<u32>(r.target)};
      }
      default: {
        u64 p = ekey_payload(ekey);
        return {static_cast<u32>(p >> 31), static_cast<u32>(p & 0x7FFFFFFF)};
      }
    }
  }

  void materialize_edges(u32 t, std::vector<u64>& out) const {
    out.clear();
    std::vector<u32> stack;
    stack.push_back(t);
    while (!stack.empty()) {
      u32 i = stack.back();
      stack.pop_back();
      const TreeRec& r = arena[i];
      if (r.has_delta) out.push_back(r.delta);
      if (r.parent != kNone) stack.push_back(r.parent);
      if (r.parent2 != kNone) stack.push_back(r.parent2);
    }
    std::sort(out.begin(), out.end());
  }

  void materialize_nodes(u32 t, std::vector<u32>& out) const {
    out.clear();
    out.push_back(arena[t].root);
    std::vector<u32> stack{t};
    while (!stack.empty()) {
      u32 i = stack.back();
      stack.pop_back();
      const TreeRec& r = arena[i];
      if (r.has_delta) {
        auto [a, b] = endpoints(r.delta);
        out.push_back(a);
        out.push_back(b);
      }
      if (r.parent != kNone) stack.push_back(r.parent);
      if (r.parent2 != kNone) stack.push_back(r.parent2);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  u64 identity_digest(const TreeRec& r) const {
    return splitmix64(r.digest ^ (static_cast<u64>(r.root) * 0xD6E8FEB86659FD93ull));
  }

  bool trees_equal(u32 a, u32 b) {
    const TreeRec& ra = arena[a];
    const TreeRec& rb = arena[b];
    if (ra.root != rb.root || ra.n_edges != rb.n_edges) return false;
    materialize_edges(a, edges_a);
    materialize_edges(b, edges_b);
    return edges_a == edges_b;
  }

  /// True when the tree at index t (always the newest arena slot) is new.
  bool insert_explored(u32 t) {
    u64 id = identity_digest(arena[t]);
    auto [it, inserted] = explored.try_emplace(id, t);
    if (inserted) return true;
    if (trees_equal(it->second, t)) return false;
    auto range = explored_overflow.equal_range(id);
    for (auto o = range.first; o != range.second; ++o)
      if (trees_equal(o->second, t)) return false;
    explored_overflow.emplace(id, t);
    return true;
  }

  const std::vector<Cand>& candidates(u32 root) {
    auto it = cand_cache.find(root);
    if (it != cand_cache.end()) return it->second;
    std::vector<Cand> cands;
    u32 r = rep(root);
    if (r != root)
      cands.push_back({pack_equiv(root, r), r, 1.0f});
    for (const NeighborRef& ref : g.adjacency(root)) {
      if (ref.kind == NeighborRef::Kind::Data) {
        float spec = static_cast<float>(store.edge_specificity(ref.index));
        cands.push_back({pack_data(ref.index), static_cast<u32>(ref.other), spec});
      } else {
        cands.push_back({pack_similar(ref.index), static_cast<u32>(ref.other), 1.0f});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.spec != b.spec) return a.spec > b.spec;
      return a.ekey < b.ekey;
    });
    return cand_cache.emplace(root, std::move(cands)).first->second;
  }

  void push_entry(u32 tree, u32 cursor) {
    const std::vector<Cand>& cands = candidates(arena[tree].root);
    if (cursor >= cands.size()) return;
    UEntry e;
    e.tree = tree;
    e.cursor = cursor;
    e.matched = static_cast<u32>(__builtin_popcount(arena[tree].bits));
    e.n_nodes = arena[tree].n_edges + 1u;
    e.spec = cands[cursor].spec;
    e.ekey = cands[cursor].ekey;
    frontier.push(e);
  }

  bool grow_valid(u32 t, const Cand& c) {
    const TreeRec& r = arena[t];
    if (max_edges && r.n_edges + 1ull > max_edges) return false;
    materialize_nodes(t, nodes_a);
    if (std::binary_search(nodes_a.begin(), nodes_a.end(), c.other))
      return false;
    u32 overlap = bits_of(c.other) & r.bits;
    if (overlap) {
      // A keyword may be matched twice only by equivalent nodes.
      u32 rep_other = rep(c.other);
      for (u32 m : nodes_a)
        if ((bits_of(m) & overlap) && rep(m) != rep_other) return false;
    }
    return true;
  }

  bool merge_valid(u32 a, u32 b) {
    const TreeRec& ra = arena[a];
    const TreeRec& rb = arena[b];
    if (ra.bits & rb.bits) return false;
    if (max_edges && ra.n_edges + rb.n_edges + 0ull > max_edges) return false;
    materialize_nodes(a, nodes_a);
    materialize_nodes(b, nodes_b);
    // Node sets must intersect exactly in the shared root.
    auto ia = nodes_a.begin();
    auto ib = nodes_b.begin();
    u32 shared = 0;
    while (ia != nodes_a.end() && ib != nodes_b.end()) {
      if (*ia < *ib) ++ia;
      else if (*ib < *ia) ++ib;
      else {
        if (*ia != ra.root) return false;
        ++shared;
        ++ia;
        ++ib;
      }
    }
    return shared == 1;
  }

  u32 make_seed(u32 node) {
    TreeRec r;
    r.root = node;
    r.bits = bits_of(node);
    arena.push_back(r);
    return static_cast<u32>(arena.size() - 1);
  }

  u32 make_grow(u32 t, const Cand& c) {
    const TreeRec& p = arena[t];
    TreeRec r;
    r.parent = t;
    r.delta = c.ekey;
    r.has_delta = true;
    r.root = c.other;
    r.bits = p.bits | bits_of(c.other);
    r.n_edges = static_cast<u16>(p.n_edges + 1);
    r.digest = p.digest + splitmix64(c.ekey);
    arena.push_back(r);
    return static_cast<u32>(arena.size() - 1);
  }

  u32 make_merge(u32 a, u32 b) {
    const TreeRec& ra = arena[a];
    const TreeRec& rb = arena[b];
    TreeRec r;
    r.parent = a;
    r.parent2 = b;
    r.root = ra.root;
    r.bits = ra.bits | rb.bits;
    r.n_edges = static_cast<u16>(ra.n_edges + rb.n_edges);
    r.digest = ra.digest + rb.digest;
    arena.push_back(r);
    return static_cast<u32>(arena.size() - 1);
  }

  bool past_deadline() {
    if (!has_deadline) return false;
    if (Clock::now() >= deadline) {
      stats.timed_out = true;
      stop = true;
      return true;
    }
    return false;
  }

  // ------------------------------------------------------- emission ----

  struct Canonical {
    std::vector<u64> ekeys;   // sorted
    std::vector<u32> nodes;   // sorted
    bool ok = false;
  };

  /// Canonicalizes equivalence components: drops pure connector members
  /// (only equivalence edges, keyword coverage preserved without them) and
  /// re-chains each component with members that have no other edge at the
  /// chain ends. Answers whose components cannot be arranged without a
  /// pure interior node are rejected.
  Canonical canonicalize(u32 t) {
    Canonical out;
    materialize_edges(t, edges_a);
    std::vector<u64> plain;
    std::vector<u64> equiv;
    for (u64 e : edges_a) {
      (ekey_kind(e) == kKindEquiv ? equiv : plain).push_back(e);
    }

    materialize_nodes(t, nodes_a);
    std::vector<u32> nodes = nodes_a;

    // External (non-equivalence) degree per node.
    std::unordered_map<u32, u32> ext_deg;
    for (u64 e : plain) {
      auto [a, b] = endpoints(e);
      ++ext_deg[a];
      ++ext_deg[b];
    }

    std::vector<u64> result = plain;
    if (!equiv.empty()) {
      // Connected components of equivalence edges.
      std::unordered_map<u32, u32> comp;
      std::vector<std::vector<u32>> comp_members;
      auto comp_of = [&](u32 n) -> u32 {
        auto it = comp.find(n);
        return it == comp.end() ? kNone : it->second;
      };
      for (u64 e : equiv) {
        auto [a, b] = endpoints(e);
        u32 ca = comp_of(a), cb = comp_of(b);
        if (ca == kNone && cb == kNone) {
          u32 c = static_cast<u32>(comp_members.size());
          comp_members.push_back({a, b});
          comp[a] = comp[b] = c;
        } else if (ca == kNone) {
          comp[a] = cb;
          comp_members[cb].push_back(a);
        } else if (cb == kNone) {
          comp[b] = ca;
          comp_members[ca].push_back(b);
        } else if (ca != cb) {
          for (u32 m : comp_members[cb]) comp[m] = ca;
          comp_members[ca].insert(comp_members[ca].end(),
                                  comp_members[cb].begin(),
                                  comp_members[cb].end());
          comp_members[cb].clear();
        }
      }

      std::unordered_set<u32> removed;
      auto bit_covered_elsewhere = [&](u32 v) {
        u32 vb = bits_of(v);
        if (!vb) return true;
        u32 seen = 0;
        for (u32 n : nodes) {
          if (n == v || removed.count(n)) continue;
          seen |= bits_of(n);
        }
        return (vb & ~seen) == 0;
      };

      for (auto& members : comp_members) {
        if (members.empty()) continue;
        std::sort(members.begin(), members.end());
        // Drop removable pure connectors, largest id first.
        bool changed = true;
        while (changed) {
          changed = false;
          for (auto it = members.rbegin(); it != members.rend(); ++it) {
            u32 v = *it;
            if (ext_deg.count(v)) continue;
            if (!bit_covered_elsewhere(v)) continue;
            removed.insert(v);
            members.erase(std::next(it).base());
            changed = true;
            break;
          }
        }
        if (members.empty()) return out;  // nothing left to connect through
        if (members.size() == 1) continue;  // no equivalence edges needed
        // Members with no other edge must sit at the chain ends.
        std::vector<u32> ends, interior;
        for (u32 m : members)
          (ext_deg.count(m) ? interior : ends).push_back(m);
        if (ends.size() > 2) return out;
        std::vector<u32> chain;
        if (!ends.empty()) chain.push_back(ends[0]);
        chain.insert(chain.end(), interior.begin(), interior.end());
        if (ends.size() > 1) chain.push_back(ends[1]);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
          result.push_back(pack_equiv(chain[i], chain[i + 1]));
      }

      if (!removed.empty()) {
        std::vector<u32> rest;
        for (u32 n : nodes)
          if (!removed.count(n)) rest.push_back(n);
        nodes = std::move(rest);
      }
    }

    std::sort(result.begin(), result.end());
    out.ekeys = std::move(result);
    out.nodes = std::move(nodes);
    out.ok = true;
    return out;
  }

  /// Minimality, multi-match equivalence and non-redundancy over the
  /// canonical edge set. Answers failing any check are discarded: the
  /// minimal form is always reachable through another search path.
  bool verify(const Canonical& c) {
    // Coverage.
    u32 seen = 0;
    for (u32 n : c.nodes) seen |= bits_of(n);
    if (seen != full_mask) return false;
    if (c.nodes.empty()) return false;
    if (c.ekeys.empty()) return c.nodes.size() == 1;
    if (c.ekeys.size() + 1 != c.nodes.size()) return false;  // not a tree

    // Adjacency over the canonical edges.
    std::unordered_map<u32, std::vector<std::pair<u32, u32>>> adj;  // (edge idx, other)
    for (u32 i = 0; i < c.ekeys.size(); ++i) {
      auto [a, b] = endpoints(c.ekeys[i]);
      adj[a].push_back({i, b});
      adj[b].push_back({i, a});
    }

    // Connectivity (and, with the edge-count check above, acyclicity).
    {
      std::unordered_set<u32> visited{c.nodes[0]};
      std::vector<u32> stack{c.nodes[0]};
      while (!stack.empty()) {
        u32 n = stack.back();
        stack.pop_back();
        for (auto [ei, other] : adj[n])
          if (visited.insert(other).second) stack.push_back(other);
      }
      if (visited.size() != c.nodes.size()) return false;
    }

    // Multi-matched keywords must sit on equivalent nodes.
    for (std::size_t b = 0; b < k; ++b) {
      u32 mask = 1u << b;
      u32 the_rep = kNone;
      for (u32 n : c.nodes) {
        if (!(bits_of(n) & mask)) continue;
        u32 r = rep(n);
        if (the_rep == kNone) the_rep = r;
        else if (r != the_rep) return false;
      }
    }

    // Non-redundancy: no degree-2 node whose incident edges are both
    // equivalence edges.
    for (u32 n : c.nodes) {
      const auto& an = adj[n];
      if (an.size() == 2 &&
          ekey_kind(c.ekeys[an[0].first]) == kKindEquiv &&
          ekey_kind(c.ekeys[an[1].first]) == kKindEquiv)
        return false;
    }

    // Minimality: removing any edge must lose a keyword on both sides.
    for (u32 drop = 0; drop < c.ekeys.size(); ++drop) {
      auto [a, b] = endpoints(c.ekeys[drop]);
      (void)b;
      std::unordered_set<u32> side{a};
      std::vector<u32> stack{a};
      u32 side_bits = bits_of(a);
      while (!stack.empty()) {
        u32 n = stack.back();
        stack.pop_back();
        for (auto [ei, other] : adj[n]) {
          if (ei == drop) continue;
          if (side.insert(other).second) {
            side_bits |= bits_of(other);
            stack.push_back(other);
          }
        }
      }
      u32 other_bits = 0;
      for (u32 n : c.nodes)
        if (!side.count(n)) other_bits |= bits_of(n);
      if (side_bits == full_mask || other_bits == full_mask) return false;
    }
    return true;
  }

  u64 answer_digest(const Canonical& c) const {
    if (c.ekeys.empty())
      return splitmix64(0x5EEDull ^ (static_cast<u64>(c.nodes[0]) << 8));
    u64 d = 0;
    for (u64 e : c.ekeys) d += splitmix64(e);
    return d;
  }

  void try_emit(u32 t) {
    Canonical c = canonicalize(t);
    if (!c.ok || !verify(c)) return;

    u64 digest = answer_digest(c);
    if (q.keep_all_answers) {
      auto it = answer_index.find(digest);
      if (it != answer_index.end()) {
        for (u32 idx : it->second) {
          if (kept_keys[idx] != c.ekeys) continue;
          if (!c.ekeys.empty()) return;  // already emitted
          if (kept[idx].nodes.size() == 1 && kept[idx].nodes[0] == c.nodes[0])
            return;
        }
      }
    } else {
      if (!answer_digests.insert(digest).second) return;
    }

    ++stats.answers_found;
    if (stats.time_to_first_ms < 0)
      stats.time_to_first_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   Clock::now() - start)
                                   .count();

    ScoredAnswer ans;
    ans.ordinal = stats.answers_found - 1;
    ans.nodes.assign(c.nodes.begin(), c.nodes.end());
    ans.matched.resize(k);
    std::vector<double> sims;
    for (std::size_t b = 0; b < k; ++b) {
      double best = 0.0;
      for (u32 n : c.nodes) {
        if (!(bits_of(n) & (1u << b))) continue;
        ans.matched[b].push_back(n);
        auto it = kw_sim.find((static_cast<u64>(n) << 5) | b);
        if (it != kw_sim.end()) best = std::max(best, static_cast<double>(it->second));
      }
      sims.push_back(best);
    }

    std::vector<std::pair<double, double>> conf_spec;
    for (u64 e : c.ekeys) {
      AnswerEdge ae;
      switch (ekey_kind(e)) {
        case kKindData: {
          const Edge& ge = g.edge(ekey_payload(e));
          ae.kind = AnswerEdge::Kind::Data;
          ae.source = ge.source;
          ae.target = ge.target;
          ae.id = ge.id;
          ae.label = ge.label;
          ae.confidence = ge.confidence;
          ae.specificity = store.edge_specificity(ge.id);
          ae.dataset = ge.dataset;
          break;
        }
        case kKindSimilar: {
          const SimilarRow& r = g.similar(ekey_payload(e));
          ae.kind = AnswerEdge::Kind::Similar;
          ae.source = r.source;
          ae.target = r.target;
          ae.id = ekey_payload(e);
          ae.label = kSameAsLabel;
          ae.confidence = r.similarity;
          ae.specificity = 1.0;
          break;
        }
        default: {
          // Conceptual sameAs at confidence 1.0, encoded via representatives.
          auto [a, b] = endpoints(e);
          ae.kind = AnswerEdge::Kind::Equivalence;
          ae.source = a;
          ae.target = b;
          ae.label = kSameAsLabel;
          ae.confidence = 1.0;
          ae.specificity = 1.0;
          break;
        }
      }
      conf_spec.emplace_back(ae.confidence, ae.specificity);
      ans.edges.push_back(std::move(ae));
    }

    ScoreBreakdown sb = scorefn.score(matching_score(sims), conf_spec);
    ans.ms = sb.ms;
    ans.cs_confidence = sb.cs_confidence;
    ans.cs_specificity = sb.cs_specificity;
    ans.total = sb.total;

    if (q.keep_all_answers) {
      answer_index[digest].push_back(static_cast<u32>(kept.size()));
      kept_keys.push_back(c.ekeys);
      kept.push_back(std::move(ans));
    } else {
      // Bounded top-k: replace the current worst when strictly better.
      if (kept.size() < q.k) {
        kept.push_back(std::move(ans));
      } else {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < kept.size(); ++i)
          if (kept[i].total < kept[worst].total ||
              (kept[i].total == kept[worst].total &&
               kept[i].ordinal > kept[worst].ordinal))
            worst = i;
        if (ans.total > kept[worst].total) kept[worst] = std::move(ans);
      }
    }
  }

  // ------------------------------------------------------ main loop ----

  void process_new_tree(u32 t) {
    if (!insert_explored(t)) {
      arena.pop_back();
      return;
    }
    ++stats.trees_explored;
    const u32 bits = arena[t].bits;
    const u32 root = arena[t].root;
    if (bits == full_mask) {
      try_emit(t);
      return;  // answers are neither grown nor merged further
    }
    by_keywords[bits][root].push_back(t);

    // Aggressive merge against every explored tree with the same root and
    // a disjoint keyword set.
    std::vector<u32> new_trees;
    for (auto& [bits2, roots] : by_keywords) {
      if (bits2 & bits) continue;
      auto it = roots.find(root);
      if (it == roots.end()) continue;
      // Merge results land under different keyword sets, so this vector
      // is stable while we scan it.
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        u32 other = it->second[i];
        if ((++stats.merges & 0x3FF) == 0 && past_deadline()) break;
        if (!merge_valid(t, other)) continue;
        u32 merged = make_merge(t, other);
        if (!insert_explored(merged)) {
          arena.pop_back();
          continue;
        }
        ++stats.trees_explored;
        if (arena[merged].bits == full_mask) {
          try_emit(merged);
          if (stats.answers_found >= max_answers) {
            stats.hit_max_answers = true;
            stop = true;
          }
        } else {
          by_keywords[arena[merged].bits][root].push_back(merged);
          new_trees.push_back(merged);
        }
        if (stop) break;
      }
      if (stop) break;
    }

    if (!stop) {
      push_entry(t, 0);
      for (u32 nt : new_trees) push_entry(nt, 0);
    }
  }

  SearchResult run() {
    start = Clock::now();
    if (q.timeout_ms > 0) {
      deadline = start + std::chrono::milliseconds(q.timeout_ms);
      has_deadline = true;
    }
    k = q.keywords.size();
    full_mask = k == 32 ? 0xFFFFFFFFu : (1u << k) - 1;
    max_edges = q.max_edges;
    max_answers = q.effective_max_answers();

    // Keyword match sets with per-node match similarity annotations.
    std::vector<u32> seeds;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<NodeId> matches = store.lookup_keyword(q.keywords[i], q.match_mode);
      if (matches.empty()) throw NoMatchError(q.keywords[i]);
      std::string folded = text::fold(q.keywords[i]);
      for (NodeId nid : matches) {
        u32 n = static_cast<u32>(nid);
        kw_bits[n] |= 1u << i;
        double sim = keyword_label_similarity(folded, g.node(nid).norm_label);
        kw_sim[(static_cast<u64>(n) << 5) | i] = static_cast<float>(sim);
        seeds.push_back(n);
      }
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    // Every matched node forms a one-node partial tree carrying all the
    // keywords it matches; the initial merge* step is subsumed because a
    // node matching several keywords starts as a multi-keyword tree.
    for (u32 n : seeds) {
      process_new_tree(make_seed(n));
      if (stats.answers_found >= max_answers) {
        stats.hit_max_answers = true;
        stop = true;
      }
      if (stop) break;
    }

    while (!stop && !frontier.empty()) {
      if ((++stats.pops & 0xFF) == 0 && past_deadline()) break;
      UEntry e = frontier.top();
      frontier.pop();
      const std::vector<Cand>& cands = candidates(arena[e.tree].root);
      if (e.cursor + 1 < cands.size()) push_entry(e.tree, e.cursor + 1);
      if (!grow_valid(e.tree, cands[e.cursor])) continue;
      process_new_tree(make_grow(e.tree, cands[e.cursor]));
      if (stats.answers_found >= max_answers) {
        stats.hit_max_answers = true;
        break;
      }
    }

    stats.total_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         Clock::now() - start)
                         .count();

    SearchResult result;
    std::sort(kept.begin(), kept.end(),
              [](const ScoredAnswer& a, const ScoredAnswer& b) {
                if (a.total != b.total) return a.total > b.total;
                return a.ordinal < b.ordinal;
              });
    if (kept.size() > q.k) kept.resize(q.k);
    result.answers = std::move(kept);
    result.stats = stats;
    return result;
  }
};

}  // namespace

void Query::validate() const {
  if (keywords.empty()) throw TrellisError("query needs at least one keyword");
  if (keywords.size() > 32) throw TrellisError("at most 32 keywords supported");
  std::unordered_set<std::string> seen;
  for (const std::string& w : keywords) {
    if (w.empty()) throw TrellisError("empty keyword");
    if (!seen.insert(w).second)
      throw TrellisError("duplicate keyword: " + w);
  }
  if (k < 1) throw TrellisError("k must be at least 1");
}

std::size_t Query::effective_max_answers() const {
  if (max_answers != 0) return max_answers;
  return std::max<std::size_t>(50, k);
}

SearchResult gam_search(const GraphStore& store, const Query& q,
                        const ScoreFunction& score) {
  q.validate();
  if (store.graph().node_count() >= (1ull << 31))
    throw TrellisError("graph too large for search node packing");
  if (store.specificities().size() < store.graph().edge_count())
    throw TrellisError("specificities not finalized; run finalize first");
  Search s(store, q, score);
  return s.run();
}

SearchResult gam_search(const GraphStore& store, const Query& q,
                        const ScoreConfig& cfg) {
  WeightedScore score(cfg);
  return gam_search(store, q, score);
}

}  // namespace trellis
