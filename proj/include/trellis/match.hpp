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
#ifndef TRELLIS_MATCH_HPP
#define TRELLIS_MATCH_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "trellis/types.hpp"

namespace trellis {

class GraphStore;

enum class CompareScope : std::uint8_t { EntitiesOnly, AllLeaves };

struct MatchConfig {
  double threshold = 0.8;          // in (0,1)
  CompareScope scope = CompareScope::AllLeaves;
  std::size_t max_label_length = 128;  // skip longer labels in AllLeaves
  bool exhaustive = false;         // disable blocking (oracle comparison)
  std::set<std::string> null_codes;    // normalized; never compared

  void validate() const {
    if (!(threshold > 0.0 && threshold < 1.0))
      throw TrellisError("matching threshold must be in (0,1)");
  }
};

struct MatchReport {
  std::uint64_t pairs_compared = 0;
  std::uint64_t same_as_created = 0;
  std::uint64_t equivalences_created = 0;
};

/// Lowercase, diacritics stripped, whitespace collapsed. Person labels
/// additionally lose civility prefixes and "Lastname, Firstname" is
/// reordered to "firstname lastname".
std::string normalize_label(std::string_view label, NodeKind kind);

/// Standard Jaro similarity over codepoints: match window
/// floor(max(|a|,|b|)/2)-1, transpositions counted halved.
double jaro(std::string_view a, std::string_view b);

/// Compares candidate node pairs of the committed graph; pairs at
/// similarity 1.0 become equivalences, pairs in [threshold, 1) become
/// Similar rows. Commits the resulting matching pass.
MatchReport run_matching(GraphStore& store, const MatchConfig& cfg);

}  // namespace trellis

#endif  // TRELLIS_MATCH_HPP
