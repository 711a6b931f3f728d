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
#ifndef TRELLIS_CONFIG_HPP
#define TRELLIS_CONFIG_HPP

#include <set>
#include <string>

#include "trellis/ingest.hpp"
#include "trellis/match.hpp"
#include "trellis/score.hpp"
#include "trellis/search.hpp"
#include "trellis/store.hpp"

namespace trellis {

/// Flat key=value configuration ('#' comments). Keys mirror the module
/// knobs: store, language, policy, null_codes, lexicon, kb,
/// extractor.endpoint, extractor.timeout_ms, disambiguator.endpoint,
/// matching.threshold, matching.scope, matching.max_label_length,
/// matching.exhaustive, specificity.aggregate, score.alpha, score.beta,
/// search.timeout_ms, search.max_answers, search.max_edges,
/// search.match_mode, cache.max_nodes, cache.max_edges, extract,
/// disambiguate.
struct Config {
  std::string store_path;
  std::string language = "en";

  // ingestion
  ValuePolicy policy = ValuePolicy::PerGraph;
  std::set<std::string> null_codes;  // normalized forms
  bool extract = true;
  bool disambiguate = false;
  std::string lexicon_path;
  std::string kb_path;
  std::string extractor_endpoint;
  std::string disambiguator_endpoint;
  int extractor_timeout_ms = 10000;

  // matching
  MatchConfig matching;

  // specificity
  bool specificity_aggregate = true;

  // scoring
  ScoreConfig score;

  // search
  std::int64_t timeout_ms = 120000;
  std::size_t max_answers = 0;
  std::size_t max_edges = 20;
  MatchMode match_mode = MatchMode::Exact;

  CacheConfig cache;

  static Config from_file(const std::string& path);
  void set(const std::string& key, const std::string& value);
  /// Loads one null code per line (UTF-8), normalized.
  void load_null_codes(const std::string& path);

  IngestPolicy ingest_policy() const;
  Query make_query(std::vector<std::string> keywords) const;
  void validate() const;
};

std::optional<MatchMode> match_mode_from_name(const std::string& name);

}  // namespace trellis

#endif  // TRELLIS_CONFIG_HPP
