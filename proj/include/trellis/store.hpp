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
#ifndef TRELLIS_STORE_HPP
#define TRELLIS_STORE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "trellis/graph.hpp"
#include "trellis/lru.hpp"
#include "trellis/types.hpp"

namespace trellis {

enum class OpenMode : std::uint8_t {
  Create,  // open for writing, creating the store if missing
  Read,    // read-only; fails when the store does not exist
};

enum class MatchMode : std::uint8_t { Exact, Stem, Substring };

struct CacheConfig {
  std::size_t max_nodes = 0;  // 0 = unbounded
  std::size_t max_edges = 0;
};

struct Counters {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t entities = 0;
  std::uint64_t comparisons = 0;
};

/// Persistent graph store. Layout under the store directory:
/// nodes.log, edges.log, similar.log, reps.log, entities.log (append-only
/// length-prefixed records), keywords.idx / spec.idx (sidecars, rebuilt when
/// missing or stale), meta.json (commit marker), lock.
///
/// One writer xor many readers per directory, enforced with flock. Readers
/// see only committed datasets. An empty path gives an ephemeral in-memory
/// store with the same interface.
class GraphStore {
 public:
  static std::unique_ptr<GraphStore> open(const std::string& path,
                                          OpenMode mode,
                                          const CacheConfig& cache = {},
                                          const std::string& language = "en");
  ~GraphStore();

  GraphStore(const GraphStore&) = delete;
  GraphStore& operator=(const GraphStore&) = delete;

  const Graph& graph() const { return graph_; }
  const std::string& language() const { return language_; }
  const std::string& path() const { return path_; }
  const std::vector<Dataset>& datasets() const { return datasets_; }
  Counters counters() const;

  /// Whether specificity degrees aggregate over equivalence classes.
  bool specificity_aggregate() const { return specificity_aggregate_; }
  void set_specificity_aggregate(bool v) { specificity_aggregate_ = v; }

  // ---- write API (single writer) ----
  DatasetId begin_dataset(const std::string& label,
                          const std::string& provenance_uri);
  NodeId add_node(std::string label, NodeKind kind, DatasetId dataset);
  EdgeId add_edge(NodeId source, NodeId target, std::string label,
                  DatasetId dataset, double confidence);
  std::size_t add_similar(NodeId a, NodeId b, double similarity);
  NodeId union_equivalent(NodeId a, NodeId b);
  void add_entity_uri(NodeId entity, const std::string& uri);
  void bump_comparisons(std::uint64_t n) { comparisons_ += n; }

  /// Replaces the whole Specificity table (indexed by edge id).
  void set_specificities(std::vector<double> by_edge);
  const std::vector<double>& specificities() const { return spec_; }
  double edge_specificity(EdgeId e) const {
    return e < spec_.size() ? spec_[e] : 0.0;
  }

  /// Durably commits everything appended since the last commit.
  void commit();
  /// Discards everything appended since the last commit.
  void abort();

  // ---- registries (factorization / entity keying) ----
  std::optional<NodeId> pergraph_value(const std::string& label) const;
  void register_pergraph_value(const std::string& label, NodeId id);
  std::optional<NodeId> entity_by_norm(NodeKind kind,
                                       const std::string& norm) const;
  std::optional<NodeId> entity_by_uri(NodeKind kind,
                                      const std::string& uri) const;
  /// KB URI of a disambiguated entity node, when it has one.
  std::optional<std::string> entity_uri(NodeId entity) const;
  void register_entity_norm(NodeKind kind, const std::string& norm, NodeId id);
  void register_entity_uri(NodeKind kind, const std::string& uri, NodeId id);

  // ---- read API ----
  /// Nodes whose normalized label matches the token under the mode,
  /// ascending NodeId.
  std::vector<NodeId> lookup_keyword(const std::string& token,
                                     MatchMode mode) const;
  /// Similar rows with similarity >= threshold, in row order.
  std::vector<SimilarRow> scan_similar(double threshold) const;

  /// Record reads backed by the on-disk logs through an LRU cache;
  /// records newer than the last commit come from memory.
  Node node_record(NodeId id) const;
  Edge edge_record(EdgeId id) const;
  std::size_t node_cache_size() const { return node_cache_.size(); }

 private:
  GraphStore() = default;
  void load();
  void index_node(NodeId id);
  void rebuild_indexes();
  void write_meta();
  void write_keyword_index();
  bool load_keyword_index();
  void write_spec_table();
  void load_spec_table();

  std::string path_;  // empty = ephemeral
  OpenMode mode_ = OpenMode::Create;
  std::string language_ = "en";
  bool specificity_aggregate_ = true;
  int lock_fd_ = -1;

  Graph graph_;
  std::vector<Dataset> datasets_;
  std::vector<double> spec_;
  std::uint64_t comparisons_ = 0;

  // Committed high-water marks.
  std::size_t committed_nodes_ = 0;
  std::size_t committed_edges_ = 0;
  std::size_t committed_similar_ = 0;
  std::size_t committed_reps_ = 0;
  std::size_t committed_entities_ = 0;
  std::size_t committed_datasets_ = 0;

  // Journals since last commit.
  std::vector<std::pair<NodeId, NodeId>> union_journal_;
  std::vector<std::pair<NodeId, std::string>> entity_uri_journal_;
  std::vector<std::string> value_reg_journal_;
  std::vector<std::string> entity_reg_journal_;  // kind-prefixed keys
  Graph::Mark commit_mark_{0, 0, 0, 0};
  std::uint64_t committed_comparisons_ = 0;
  bool spec_dirty_ = false;

  // Keyword index over normalized-label tokens.
  std::unordered_map<std::string, std::vector<NodeId>> exact_index_;
  std::unordered_map<std::string, std::vector<NodeId>> stem_index_;

  // Factorization / entity registries.
  std::unordered_map<std::string, NodeId> value_registry_;
  std::unordered_map<std::string, NodeId> entity_registry_;
  std::unordered_map<NodeId, std::string> entity_uri_persisted_;

  // File offsets per record for the cached read path.
  std::vector<std::uint64_t> node_offsets_;
  std::vector<std::uint64_t> edge_offsets_;
  mutable LruCache<NodeId, Node> node_cache_{0};
  mutable LruCache<EdgeId, Edge> edge_cache_{0};
};

}  // namespace trellis

#endif  // TRELLIS_STORE_HPP
