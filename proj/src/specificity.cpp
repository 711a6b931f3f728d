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
#include "trellis/specificity.hpp"

#include <string>
#include <unordered_map>

#include "trellis/store.hpp"

namespace trellis {

double compute_edge_specificity(const Graph& g, const Edge& e, bool aggregate) {
  auto [in_src, out_src] = g.label_degree(e.source, e.label, aggregate);
  auto [in_tgt, out_tgt] = g.label_degree(e.target, e.label, aggregate);
  (void)in_src;
  (void)out_tgt;
  return 2.0 / static_cast<double>(out_src + in_tgt);
}

std::vector<double> compute_all_specificities(const Graph& g, bool aggregate) {
  // One pass to count l-labeled degrees per (class representative, label),
  // one pass to assign. Equals the per-edge definition by construction.
  std::unordered_map<NodeId, std::unordered_map<std::string, std::uint64_t>>
      out_deg, in_deg;
  auto key = [&](NodeId n) { return aggregate ? g.representative(n) : n; };
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    ++out_deg[key(e.source)][e.label];
    ++in_deg[key(e.target)][e.label];
  }
  std::vector<double> table(g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge& e = g.edge(id);
    std::uint64_t out = out_deg[key(e.source)][e.label];
    std::uint64_t in = in_deg[key(e.target)][e.label];
    table[id] = 2.0 / static_cast<double>(out + in);
  }
  return table;
}

void finalize_specificities(GraphStore& store) {
  store.set_specificities(
      compute_all_specificities(store.graph(), store.specificity_aggregate()));
}

}  // namespace trellis
