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
#ifndef TRELLIS_GRAPH_HPP
#define TRELLIS_GRAPH_HPP

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trellis/types.hpp"

namespace trellis {

enum class Direction : std::uint8_t { Both, In, Out };

/// One entry of a node's adjacency: a data edge or a Similar row.
/// Equivalence is not represented here; it is exposed via representative().
struct NeighborRef {
  enum class Kind : std::uint8_t { Data, Similar };
  Kind kind;
  bool outgoing;        // the edge/row leaves this node
  std::uint64_t index;  // EdgeId for Data, row index for Similar
  NodeId other;
};

/// In-memory integrated graph: append-only nodes/edges/Similar rows plus
/// the equivalence encoding (representative column, O(k) per class).
class Graph {
 public:
  NodeId add_node(std::string label, NodeKind kind, DatasetId dataset);
  EdgeId add_edge(NodeId source, NodeId target, std::string label,
                  DatasetId dataset, double confidence);
  /// Inserts a Similar row unless the unordered pair already exists.
  /// Returns the row index either way.
  std::size_t add_similar(NodeId a, NodeId b, double similarity);

  /// Unifies the classes of a and b; the representative is the smallest
  /// NodeId of the merged class. Idempotent. Returns the representative.
  NodeId union_equivalent(NodeId a, NodeId b);

  NodeId representative(NodeId n) const;
  std::size_t class_size(NodeId n) const;
  /// All members of n's class (including n), ascending NodeId.
  std::vector<NodeId> class_members(NodeId n) const;

  const Node& node(NodeId id) const;
  const Edge& edge(EdgeId id) const;
  const SimilarRow& similar(std::size_t row) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t similar_count() const { return similar_.size(); }

  std::vector<std::pair<Edge, NodeId>> neighbors(NodeId n, Direction dir) const;
  const std::vector<NeighborRef>& adjacency(NodeId n) const;

  /// Exact counts of label-labeled edges entering/leaving n, aggregated
  /// over n's equivalence class when aggregate is set.
  std::pair<std::uint64_t, std::uint64_t> label_degree(
      NodeId n, const std::string& label, bool aggregate = true) const;

  struct Mark {
    std::size_t nodes, edges, similar, unions;
  };
  Mark mark() const;
  /// Drops everything appended after the mark. Unions cannot be rolled
  /// back; rolling back across one throws.
  void rollback(const Mark& m);

 private:
  NodeId find_rep(NodeId n) const;
  void check_node(NodeId n) const;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<SimilarRow> similar_;
  std::vector<std::vector<NeighborRef>> adj_;
  // Member lists exist only for classes of size > 1, keyed by representative.
  std::unordered_map<NodeId, std::vector<NodeId>> members_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> similar_index_;
  std::size_t union_count_ = 0;
};

}  // namespace trellis

#endif  // TRELLIS_GRAPH_HPP
