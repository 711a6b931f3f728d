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
#include "trellis/config.hpp"

#include <fstream>

#include "trellis/text.hpp"

namespace trellis {

std::optional<MatchMode> match_mode_from_name(const std::string& name) {
  std::string n = text::fold(name);
  if (n == "exact") return MatchMode::Exact;
  if (n == "stem") return MatchMode::Stem;
  if (n == "substring") return MatchMode::Substring;
  return std::nullopt;
}

namespace {

bool parse_bool(const std::string& v) {
  std::string f = text::fold(v);
  if (f == "true" || f == "1" || f == "yes" || f == "on") return true;
  if (f == "false" || f == "0" || f == "no" || f == "off") return false;
  throw TrellisError("bad boolean config value: " + v);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrellisError("cannot open config file: " + path);
  Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value", lineno, 1);
    cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  if (key == "store") store_path = value;
  else if (key == "language") language = value;
  else if (key == "policy") {
    auto p = value_policy_from_name(value);
    if (!p) throw TrellisError("unknown value policy: " + value);
    policy = *p;
  } else if (key == "null_codes") load_null_codes(value);
  else if (key == "extract") extract = parse_bool(value);
  else if (key == "disambiguate") disambiguate = parse_bool(value);
  else if (key == "lexicon") lexicon_path = value;
  else if (key == "kb") kb_path = value;
  else if (key == "extractor.endpoint") extractor_endpoint = value;
  else if (key == "extractor.timeout_ms") extractor_timeout_ms = std::stoi(value);
  else if (key == "disambiguator.endpoint") disambiguator_endpoint = value;
  else if (key == "matching.threshold") matching.threshold = std::stod(value);
  else if (key == "matching.scope") {
    std::string f = text::fold(value);
    if (f == "entities-only" || f == "entitiesonly")
      matching.scope = CompareScope::EntitiesOnly;
    else if (f == "all-leaves" || f == "allleaves")
      matching.scope = CompareScope::AllLeaves;
    else throw TrellisError("unknown matching scope: " + value);
  } else if (key == "matching.max_label_length")
    matching.max_label_length = std::stoul(value);
  else if (key == "matching.exhaustive") matching.exhaustive = parse_bool(value);
  else if (key == "specificity.aggregate")
    specificity_aggregate = parse_bool(value);
  else if (key == "score.alpha") score.alpha = std::stod(value);
  else if (key == "score.beta") score.beta = std::stod(value);
  else if (key == "search.timeout_ms") timeout_ms = std::stoll(value);
  else if (key == "search.max_answers") max_answers = std::stoul(value);
  else if (key == "search.max_edges") max_edges = std::stoul(value);
  else if (key == "search.match_mode") {
    auto m = match_mode_from_name(value);
    if (!m) throw TrellisError("unknown match mode: " + value);
    match_mode = *m;
  } else if (key == "cache.max_nodes") cache.max_nodes = std::stoul(value);
  else if (key == "cache.max_edges") cache.max_edges = std::stoul(value);
  else throw TrellisError("unknown config key: " + key);
}

void Config::load_null_codes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrellisError("cannot open null-codes file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string folded = text::fold(line);
    if (!folded.empty()) null_codes.insert(folded);
  }
}

IngestPolicy Config::ingest_policy() const {
  IngestPolicy p;
  p.value_nodes = policy;
  p.null_codes = null_codes;
  p.language = language;
  p.extract_entities = extract;
  p.disambiguate = disambiguate;
  return p;
}

Query Config::make_query(std::vector<std::string> keywords) const {
  Query q;
  q.keywords = std::move(keywords);
  q.match_mode = match_mode;
  q.timeout_ms = timeout_ms;
  q.max_answers = max_answers;
  q.max_edges = max_edges;
  return q;
}

void Config::validate() const {
  matching.validate();
  score.validate();
  if (timeout_ms < 0) throw TrellisError("search.timeout_ms must be >= 0");
}

}  // namespace trellis
