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
#ifndef TRELLIS_SYNTH_HPP
#define TRELLIS_SYNTH_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "trellis/search.hpp"
#include "trellis/store.hpp"

namespace trellis {

enum class SynthKind : std::uint8_t { Line, Chain, Star, Barabasi };
const char* synth_kind_name(SynthKind k);
std::optional<SynthKind> synth_kind_from_name(const std::string& name);

/// Deterministic synthetic graphs:
/// - line: n nodes in a path, one edge per adjacent pair;
/// - chain: line with two parallel edges per pair;
/// - star: `branches` 10-node lines, each attached to one member of a
///   data-edge clique whose members form a single equivalence class;
/// - barabasi: an m0-clique first stage, then degree-preferential
///   attachment of each new node to exactly one first-stage node.
struct SynthSpec {
  SynthKind kind = SynthKind::Line;
  std::size_t n = 10;          // nodes (line/chain/barabasi)
  std::size_t branches = 4;    // star
  std::size_t branch_len = 10; // star
  std::size_t m0 = 5;          // barabasi seed-clique size
  std::uint64_t seed = 1;
  // node index -> replacement label (keyword placement)
  std::vector<std::pair<std::size_t, std::string>> relabel;

  void validate() const;
  std::size_t node_count() const;
};

/// Edge list (and equivalence classes) as index pairs; pure in (spec, seed).
struct SynthTopology {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> equivalences;
};
SynthTopology synth_topology(const SynthSpec& spec);

/// Materializes the graph as one committed dataset; nodes are labeled
/// "v0".."v{n-1}" except where relabeled. Returns the dataset id.
DatasetId generate(GraphStore& store, const SynthSpec& spec);

struct BenchRow {
  std::string kind;
  std::size_t n = 0;
  std::size_t param = 0;
  std::size_t rep = 0;
  std::int64_t time_to_first_ms = 0;
  std::int64_t total_ms = 0;
  std::uint64_t answers = 0;
  std::uint64_t trees = 0;
};

/// Places two keywords per §-style protocol (line/chain ends, two star
/// branch extremities, barabasi nodes at the given distance) and runs the
/// query `repetitions` times on a fresh in-memory graph.
std::vector<BenchRow> run_benchmark(const SynthSpec& spec, std::size_t param,
                                    const Query& query_template,
                                    std::size_t repetitions);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace trellis

#endif  // TRELLIS_SYNTH_HPP
