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
#ifndef TRELLIS_SEARCH_HPP
#define TRELLIS_SEARCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "trellis/score.hpp"
#include "trellis/store.hpp"
#include "trellis/types.hpp"

namespace trellis {

struct Query {
  std::vector<std::string> keywords;  // deduplicated, all non-empty
  MatchMode match_mode = MatchMode::Exact;
  std::size_t k = 10;            // answers requested
  std::int64_t timeout_ms = 120000;  // 0 = no timeout
  std::size_t max_answers = 0;   // stop after m answers; 0 = max(50, k)
  std::size_t max_edges = 20;    // largest tree developed; 0 = unbounded
  bool keep_all_answers = true;  // false: retain only top-k (benchmarks)

  void validate() const;
  std::size_t effective_max_answers() const;
};

/// One edge of an answer tree. Equivalence edges connect two members of
/// one class and exist only in answers (the graph encodes the class via
/// representatives).
struct AnswerEdge {
  enum class Kind : std::uint8_t { Data, Similar, Equivalence };
  Kind kind = Kind::Data;
  NodeId source = 0;
  NodeId target = 0;
  std::uint64_t id = 0;  // EdgeId / Similar row; unused for Equivalence
  std::string label;
  double confidence = 1.0;
  double specificity = 1.0;
  DatasetId dataset = 0;  // Data edges only
};

struct ScoredAnswer {
  std::vector<AnswerEdge> edges;  // canonical order
  std::vector<NodeId> nodes;      // ascending
  std::vector<std::vector<NodeId>> matched;  // per keyword, ascending
  double ms = 0.0;
  double cs_confidence = 1.0;
  double cs_specificity = 1.0;
  double total = 0.0;
  std::uint64_t ordinal = 0;  // emission order during the search
};

struct SearchStats {
  std::uint64_t trees_explored = 0;
  std::uint64_t pops = 0;
  std::uint64_t merges = 0;
  std::uint64_t answers_found = 0;  // distinct answers, before top-k cut
  std::int64_t time_to_first_ms = -1;
  std::int64_t total_ms = 0;
  bool timed_out = false;
  bool hit_max_answers = false;
};

struct SearchResult {
  std::vector<ScoredAnswer> answers;  // top-k by score, emission order on ties
  SearchStats stats;
};

/// Best-first Grow / Grow2Rep / aggressive-Merge search for the top-k
/// minimal non-redundant answer trees. Requires finalized specificities.
SearchResult gam_search(const GraphStore& store, const Query& q,
                        const ScoreFunction& score);
SearchResult gam_search(const GraphStore& store, const Query& q,
                        const ScoreConfig& cfg = {});

}  // namespace trellis

#endif  // TRELLIS_SEARCH_HPP
