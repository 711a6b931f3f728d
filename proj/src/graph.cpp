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
#include "trellis/graph.hpp"

#include <algorithm>

#include "trellis/match.hpp"

namespace trellis {

namespace {
std::uint64_t pair_key(NodeId a, NodeId b) {
  NodeId lo = std::min(a, b), hi = std::max(a, b);
  std::uint64_t h = lo * 0x9E3779B97F4A7C15ull;
  h ^= hi + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  return h;
}
}  // namespace

const char* node_kind_name(NodeKind k) {
  static constexpr const char* kNames[kNodeKindCount] = {
      "dataset",  "uri",       "value",   "table",       "tuple",
      "map",      "array",     "element", "attribute",   "textdoc",
      "textseg",  "numeric",   "date",    "email",       "hashtag",
      "person",   "location",  "organization"};
  return kNames[static_cast<int>(k)];
}

std::optional<NodeKind> node_kind_from_name(const std::string& name) {
  for (int i = 0; i < kNodeKindCount; ++i)
    if (name == node_kind_name(static_cast<NodeKind>(i)))
      return static_cast<NodeKind>(i);
  return std::nullopt;
}

void Graph::check_node(NodeId n) const {
  if (n >= nodes_.size()) throw TrellisError("unknown node id");
}

NodeId Graph::add_node(std::string label, NodeKind kind, DatasetId dataset) {
  NodeId id = nodes_.size();
  Node n;
  n.id = id;
  n.kind = kind;
  n.dataset = dataset;
  n.representative = id;
  n.norm_label = normalize_label(label, kind);
  n.label = std::move(label);
  nodes_.push_back(std::move(n));
  adj_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(NodeId source, NodeId target, std::string label,
                       DatasetId dataset, double confidence) {
  check_node(source);
  check_node(target);
  if (source == target) throw TrellisError("self-loop edges are rejected");
  if (!(confidence >= 0.0 && confidence <= 1.0))
    throw TrellisError("edge confidence out of [0,1]");
  EdgeId id = edges_.size();
  Edge e;
  e.id = id;
  e.source = source;
  e.target = target;
  e.dataset = dataset;
  e.confidence = confidence;
  e.label = std::move(label);
  edges_.push_back(std::move(e));
  adj_[source].push_back({NeighborRef::Kind::Data, true, id, target});
  adj_[target].push_back({NeighborRef::Kind::Data, false, id, source});
  return id;
}

std::size_t Graph::add_similar(NodeId a, NodeId b, double similarity) {
  check_node(a);
  check_node(b);
  if (a == b) throw TrellisError("Similar row cannot be a self-pair");
  if (!(similarity > 0.0 && similarity < 1.0))
    throw TrellisError("similarity must be strictly between 0 and 1");
  auto& bucket = similar_index_[pair_key(a, b)];
  for (std::size_t row : bucket) {
    const SimilarRow& r = similar_[row];
    if ((r.source == a && r.target == b) || (r.source == b && r.target == a))
      return row;
  }
  std::size_t row = similar_.size();
  similar_.push_back({a, b, similarity});
  bucket.push_back(row);
  adj_[a].push_back({NeighborRef::Kind::Similar, true, row, b});
  adj_[b].push_back({NeighborRef::Kind::Similar, false, row, a});
  return row;
}

NodeId Graph::find_rep(NodeId n) const {
  NodeId r = nodes_[n].representative;
  // The representative column is maintained eagerly; chains are <= 1 hop.
  return r;
}

NodeId Graph::representative(NodeId n) const {
  check_node(n);
  return find_rep(n);
}

std::size_t Graph::class_size(NodeId n) const {
  check_node(n);
  auto it = members_.find(find_rep(n));
  return it == members_.end() ? 1 : it->second.size();
}

std::vector<NodeId> Graph::class_members(NodeId n) const {
  check_node(n);
  NodeId rep = find_rep(n);
  auto it = members_.find(rep);
  if (it == members_.end()) return {n};
  return it->second;
}

NodeId Graph::union_equivalent(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  NodeId ra = find_rep(a), rb = find_rep(b);
  if (ra == rb) return ra;
  NodeId winner = std::min(ra, rb), loser = std::max(ra, rb);
  auto take = [&](NodeId root) {
    auto it = members_.find(root);
    if (it == members_.end()) return std::vector<NodeId>{root};
    std::vector<NodeId> v = std::move(it->second);
    members_.erase(it);
    return v;
  };
  std::vector<NodeId> wm = take(winner), lm = take(loser);
  for (NodeId m : lm) nodes_[m].representative = winner;
  std::vector<NodeId> merged;
  merged.resize(wm.size() + lm.size());
  std::merge(wm.begin(), wm.end(), lm.begin(), lm.end(), merged.begin());
  members_[winner] = std::move(merged);
  ++union_count_;
  return winner;
}

const Node& Graph::node(NodeId id) const {
  check_node(id);
  return nodes_[id];
}

const Edge& Graph::edge(EdgeId id) const {
  if (id >= edges_.size()) throw TrellisError("unknown edge id");
  return edges_[id];
}

const SimilarRow& Graph::similar(std::size_t row) const {
  if (row >= similar_.size()) throw TrellisError("unknown Similar row");
  return similar_[row];
}

const std::vector<NeighborRef>& Graph::adjacency(NodeId n) const {
  check_node(n);
  return adj_[n];
}

std::vector<std::pair<Edge, NodeId>> Graph::neighbors(NodeId n,
                                                      Direction dir) const {
  check_node(n);
  std::vector<std::pair<Edge, NodeId>> out;
  for (const NeighborRef& ref : adj_[n]) {
    if (dir == Direction::In && ref.outgoing) continue;
    if (dir == Direction::Out && !ref.outgoing) continue;
    if (ref.kind == NeighborRef::Kind::Data) {
      out.emplace_back(edges_[ref.index], ref.other);
    } else {
      const SimilarRow& r = similar_[ref.index];
      Edge e;
      e.id = ref.index;
      e.source = r.source;
      e.target = r.target;
      e.dataset = 0;
      e.confidence = r.similarity;
      e.label = kSameAsLabel;
      out.emplace_back(std::move(e), ref.other);
    }
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> Graph::label_degree(
    NodeId n, const std::string& label, bool aggregate) const {
  check_node(n);
  std::uint64_t in = 0, out = 0;
  auto count_for = [&](NodeId m) {
    for (const NeighborRef& ref : adj_[m]) {
      if (ref.kind != NeighborRef::Kind::Data) continue;
      if (edges_[ref.index].label != label) continue;
      if (ref.outgoing)
        ++out;
      else
        ++in;
    }
  };
  if (aggregate) {
    for (NodeId m : class_members(n)) count_for(m);
  } else {
    count_for(n);
  }
  return {in, out};
}

Graph::Mark Graph::mark() const {
  return {nodes_.size(), edges_.size(), similar_.size(), union_count_};
}

void Graph::rollback(const Mark& m) {
  if (m.unions != union_count_)
    throw TrellisError("cannot roll back across an equivalence union");
  while (similar_.size() > m.similar) {
    const SimilarRow& r = similar_.back();
    std::uint64_t key = pair_key(r.source, r.target);
    auto& bucket = similar_index_[key];
    bucket.pop_back();
    if (bucket.empty()) similar_index_.erase(key);
    similar_.pop_back();
  }
  edges_.resize(m.edges);
  nodes_.resize(m.nodes);
  // Appends may interleave edges and Similar rows, so adjacency is rebuilt
  // rather than popped.
  adj_.assign(nodes_.size(), {});
  for (const Edge& e : edges_) {
    adj_[e.source].push_back({NeighborRef::Kind::Data, true, e.id, e.target});
    adj_[e.target].push_back({NeighborRef::Kind::Data, false, e.id, e.source});
  }
  for (std::size_t row = 0; row < similar_.size(); ++row) {
    const SimilarRow& r = similar_[row];
    adj_[r.source].push_back({NeighborRef::Kind::Similar, true, row, r.target});
    adj_[r.target].push_back({NeighborRef::Kind::Similar, false, row, r.source});
  }
}

}  // namespace trellis
