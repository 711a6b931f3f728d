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
#ifndef TRELLIS_SPECIFICITY_HPP
#define TRELLIS_SPECIFICITY_HPP

#include <vector>

#include "trellis/graph.hpp"

namespace trellis {

class GraphStore;

/// s(e) = 2 / (l-labeled out-degree of source + l-labeled in-degree of
/// target), with degrees aggregated over equivalence classes when
/// aggregate is set. Always in (0, 1].
double compute_edge_specificity(const Graph& g, const Edge& e,
                                bool aggregate = true);

/// Recomputes the whole Specificity table in one batch and stores it.
/// Idempotent; equals per-edge recomputation from scratch.
void finalize_specificities(GraphStore& store);

/// The batch computation alone, without touching a store.
std::vector<double> compute_all_specificities(const Graph& g, bool aggregate);

}  // namespace trellis

#endif  // TRELLIS_SPECIFICITY_HPP
