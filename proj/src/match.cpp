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
#include "trellis/match.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "trellis/ingest.hpp"
#include "trellis/store.hpp"
#include "trellis/text.hpp"

namespace trellis {

namespace {

const char* kCivility[] = {"m.",   "mr.",  "mrs.", "ms.",  "mme",  "mme.",
                           "mlle", "mlle.", "dr.",  "dr",   "prof.", "prof",
                           "me.",  "sir",  "mr",   "mx."};

// Strips leading civility prefixes from an already-folded person label.
std::string strip_civility(std::string s) {
  bool again = true;
  while (again) {
    again = false;
    for (const char* p : kCivility) {
      std::size_t n = std::char_traits<char>::length(p);
      if (s.size() > n + 1 && s.compare(0, n, p) == 0 && s[n] == ' ') {
        s.erase(0, n + 1);
        again = true;
        break;
      }
    }
  }
  return s;
}

}  // namespace

std::string normalize_label(std::string_view label, NodeKind kind) {
  std::string folded = text::fold(label);
  if (kind != NodeKind::EntityPerson) return folded;
  folded = strip_civility(std::move(folded));
  // "Lastname, Firstname" -> "firstname lastname".
  std::size_t comma = folded.find(',');
  if (comma != std::string::npos && folded.find(',', comma + 1) == std::string::npos) {
    std::string last = folded.substr(0, comma);
    std::string first = folded.substr(comma + 1);
    while (!first.empty() && first.front() == ' ') first.erase(first.begin());
    while (!last.empty() && last.back() == ' ') last.pop_back();
    if (!first.empty() && !last.empty()) folded = first + " " + last;
  }
  return folded;
}

double jaro(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca = text::decode_utf8(a), cb = text::decode_utf8(b);
  if (ca == cb) return 1.0;
  const std::size_t la = ca.size(), lb = cb.size();
  if (la == 0 || lb == 0) return 0.0;
  std::size_t window = std::max(la, lb) / 2;
  window = window > 0 ? window - 1 : 0;
  std::vector<bool> ma(la, false), mb(lb, false);
  std::size_t m = 0;
  for (std::size_t i = 0; i < la; ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(lb, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (!mb[j] && ca[i] == cb[j]) {
        ma[i] = mb[j] = true;
        ++m;
        break;
      }
    }
  }
  if (m == 0) return 0.0;
  std::size_t transpositions = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < la; ++i) {
    if (!ma[i]) continue;
    while (!mb[j]) ++j;
    if (ca[i] != cb[j]) ++transpositions;
    ++j;
  }
  double t = transpositions / 2.0;
  double dm = static_cast<double>(m);
  return (dm / la + dm / lb + (dm - t) / dm) / 3.0;
}

namespace {

// Kinds compared fuzzily with Jaro within their own kind.
bool jaro_kind(NodeKind k) {
  return k == NodeKind::Value || k == NodeKind::Uri || k == NodeKind::Email ||
         k == NodeKind::Hashtag || k == NodeKind::TextSegment ||
         is_entity_kind(k);
}

// Compared by exact normalized equality only.
bool exact_kind(NodeKind k) {
  return k == NodeKind::Numeric || k == NodeKind::Date;
}

bool comparable(NodeKind a, NodeKind b, CompareScope scope) {
  if (is_entity_kind(a) && is_entity_kind(b)) return a == b;
  if (scope == CompareScope::EntitiesOnly) return false;
  if (a == b) return jaro_kind(a) || exact_kind(a);
  // Entity vs plain leaf: the extraction may have missed one side.
  auto cross = [](NodeKind e, NodeKind v) {
    return is_entity_kind(e) && (v == NodeKind::Value || v == NodeKind::Uri ||
                                 v == NodeKind::TextSegment);
  };
  return cross(a, b) || cross(b, a);
}

}  // namespace

MatchReport run_matching(GraphStore& store, const MatchConfig& cfg) {
  cfg.validate();
  const Graph& g = store.graph();
  MatchReport report;

  // Candidate nodes grouped into blocks by first normalized character;
  // matching.exhaustive collapses everything into one block.
  std::map<char32_t, std::vector<NodeId>> blocks;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const Node& n = g.node(id);
    if (n.norm_label.empty()) continue;
    bool entity = is_entity_kind(n.kind);
    if (!entity && cfg.scope == CompareScope::EntitiesOnly) continue;
    if (!entity && !jaro_kind(n.kind) && !exact_kind(n.kind)) continue;
    if (!entity) {
      std::size_t len = text::decode_utf8(n.norm_label).size();
      if (cfg.max_label_length != 0 && len > cfg.max_label_length) continue;
    }
    if (cfg.null_codes.count(n.norm_label)) continue;
    if (is_excluded_value(n.label)) continue;
    char32_t key = cfg.exhaustive ? 0 : text::decode_utf8(n.norm_label)[0];
    blocks[key].push_back(id);
  }

  struct Decision {
    NodeId a, b;
    double sim;  // 1.0 means equivalence
  };
  std::vector<Decision> decisions;

  for (auto& [key, ids] : blocks) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Node& na = g.node(ids[i]);
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const Node& nb = g.node(ids[j]);
        if (!comparable(na.kind, nb.kind, cfg.scope)) continue;
        if (g.representative(ids[i]) == g.representative(ids[j])) continue;
        double sim;
        if (exact_kind(na.kind)) {
          ++report.pairs_compared;
          if (na.norm_label != nb.norm_label) continue;
          sim = 1.0;
        } else {
          ++report.pairs_compared;
          sim = jaro(na.norm_label, nb.norm_label);
        }
        if (sim >= 1.0) {
          decisions.push_back({ids[i], ids[j], 1.0});
        } else if (sim >= cfg.threshold) {
          decisions.push_back({ids[i], ids[j], sim});
        }
      }
    }
  }

  // Unions first, then Similar rows filtered against the final classes, so
  // no Similar row ever connects two members of one equivalence class.
  for (const Decision& d : decisions) {
    if (d.sim < 1.0) continue;
    if (g.representative(d.a) != g.representative(d.b)) {
      store.union_equivalent(d.a, d.b);
      ++report.equivalences_created;
    }
  }
  for (const Decision& d : decisions) {
    if (d.sim >= 1.0) continue;
    if (g.representative(d.a) == g.representative(d.b)) continue;
    std::size_t before = g.similar_count();
    store.add_similar(d.a, d.b, d.sim);
    if (g.similar_count() > before) ++report.same_as_created;
  }
  store.bump_comparisons(report.pairs_compared);
  return report;
}

}  // namespace trellis
