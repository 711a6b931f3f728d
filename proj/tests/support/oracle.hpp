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
#ifndef TRELLIS_TESTS_ORACLE_HPP
#define TRELLIS_TESTS_ORACLE_HPP

#include <array>
#include <set>
#include <string>
#include <vector>

#include "trellis/search.hpp"
#include "trellis/store.hpp"

// Test-only reference implementations, written straight from the
// definitions and independent of src/ internals.
namespace trellis::testing {

/// Literal transcription of the Jaro formula.
double naive_jaro(const std::string& a, const std::string& b);

/// Canonical identity of an answer: sorted rows of
///   (0, data edge id, 0) | (1, similar row, 0) | (2, min node, max node)
/// or a single (3, node, 0) row for a one-node answer.
using AnswerKey = std::vector<std::array<std::uint64_t, 3>>;

AnswerKey answer_key(const ScoredAnswer& a);

/// Exhaustive enumeration of the minimal, non-redundant, canonicalized
/// answer trees, by growing every connected acyclic edge set of the graph
/// (data edges, Similar rows, and all equivalence pairs within classes).
std::set<AnswerKey> enumerate_answers(const GraphStore& store,
                                      const std::vector<std::string>& keywords,
                                      MatchMode mode,
                                      std::size_t max_edges = 0);

/// Analytic answer set for the star benchmark graph: the two keyword
/// branches plus every cluster connector path without adjacent
/// equivalence edges.
std::set<AnswerKey> star_answers(const GraphStore& store,
                                 std::size_t branches, std::size_t branch_len,
                                 NodeId first_node, EdgeId first_edge);

struct InvariantReport {
  bool minimal = true;
  bool multi_match_equivalent = true;
  bool non_redundant = true;
  bool equiv_bound = true;  // Property 2: <= k-1 adjacent equivalence edges
  bool score_in_range = true;
  bool ok() const {
    return minimal && multi_match_equivalent && non_redundant && equiv_bound &&
           score_in_range;
  }
};

/// Re-checks the answer-tree invariants from their definitions.
InvariantReport check_answer_invariants(const GraphStore& store,
                                        std::size_t keyword_count,
                                        const ScoredAnswer& a);

}  // namespace trellis::testing

#endif  // TRELLIS_TESTS_ORACLE_HPP
