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
#ifndef TRELLIS_REPORT_HPP
#define TRELLIS_REPORT_HPP

#include <string>

#include <json.hpp>

#include "trellis/match.hpp"
#include "trellis/search.hpp"
#include "trellis/store.hpp"

namespace trellis {

nlohmann::json answer_to_json(const GraphStore& store, const ScoredAnswer& a);
nlohmann::json result_to_json(const GraphStore& store, const Query& q,
                              const SearchResult& res);
nlohmann::json match_report_to_json(const MatchReport& r);

/// DOT rendering of one answer tree.
std::string answer_to_dot(const GraphStore& store, const ScoredAnswer& a,
                          const std::string& name);
/// DOT rendering of the whole graph (data + similarity edges; equivalent
/// nodes share a fill color via their representative).
std::string graph_to_dot(const GraphStore& store);

}  // namespace trellis

#endif  // TRELLIS_REPORT_HPP
