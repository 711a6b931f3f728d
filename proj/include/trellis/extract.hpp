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
#ifndef TRELLIS_EXTRACT_HPP
#define TRELLIS_EXTRACT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trellis/types.hpp"

namespace trellis {

class GraphStore;

enum class EntityType : std::uint8_t { Person, Location, Organization };

NodeKind entity_kind(EntityType t);
const char* extract_edge_label(EntityType t);
std::optional<EntityType> entity_type_from_name(const std::string& name);
const char* entity_type_name(EntityType t);

struct Mention {
  std::string text;
  EntityType type = EntityType::Person;
  std::size_t offset = 0;  // codepoints into the source label
  double confidence = 1.0;
};

/// Named-entity extraction over one node label. Implementations must
/// return non-overlapping mentions in left-to-right order.
class Extractor {
 public:
  virtual ~Extractor() = default;
  virtual std::vector<Mention> extract(const std::string& label) = 0;
};

/// Longest-match lexicon extractor. Confidence 1.0 for a case-insensitive
/// match (diacritics intact), 0.8 for a diacritics-insensitive one.
class Gazetteer : public Extractor {
 public:
  void add(const std::string& surface, EntityType type);
  /// TSV lines: surface<TAB>type, type in {person,location,organization}.
  static Gazetteer from_tsv(const std::string& path);
  static Gazetteer from_tsv_content(std::string_view content);

  std::vector<Mention> extract(const std::string& label) override;
  /// True when the whole label (case/diacritics-insensitively) is a known
  /// surface form; such labels are exempt from value-node factorization.
  bool contains_full_label(const std::string& label) const;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::vector<std::string> folded_tokens;
    std::string folded;       // diacritics stripped
    std::string lowercased;   // diacritics intact
    EntityType type;
  };
  std::vector<Entry> entries_;
  // first folded token -> entry indexes, longest first
  std::unordered_map<std::string, std::vector<std::size_t>> by_first_;
};

/// Entity disambiguation: KB URI for a mention, or nothing.
class Disambiguator {
 public:
  virtual ~Disambiguator() = default;
  virtual std::optional<std::string> disambiguate(const Mention& m,
                                                  const std::string& context) = 0;
};

/// Exact (surface, type) dictionary; the context is unused.
class DictionaryDisambiguator : public Disambiguator {
 public:
  void add(const std::string& surface, EntityType type, const std::string& uri);
  /// TSV lines: surface<TAB>type<TAB>uri.
  static DictionaryDisambiguator from_tsv(const std::string& path);
  static DictionaryDisambiguator from_tsv_content(std::string_view content);

  std::optional<std::string> disambiguate(const Mention& m,
                                          const std::string& context) override;

 private:
  std::unordered_map<std::string, std::string> map_;  // "type\x1fsurface"
};

/// Clients for external extraction services.
/// POST {"texts": [...]} -> {"mentions": [[{"text","type","offset",
/// "confidence"}...], ...]}; the disambiguator responds with the same shape
/// plus "uri" fields.
class HttpExtractor : public Extractor {
 public:
  HttpExtractor(std::string endpoint, int timeout_ms = 10000);
  std::vector<Mention> extract(const std::string& label) override;

 private:
  std::string host_;
  std::string path_;
  int timeout_ms_;
};

class HttpDisambiguator : public Disambiguator {
 public:
  HttpDisambiguator(std::string endpoint, int timeout_ms = 10000);
  std::optional<std::string> disambiguate(const Mention& m,
                                          const std::string& context) override;

 private:
  std::string host_;
  std::string path_;
  int timeout_ms_;
};

/// Resolves/creates the per-graph entity node for each mention and adds the
/// cl:extractT edges from `node`. uris[i] (when present) keys mention i by
/// (type, uri) instead of (type, normalized label).
std::vector<EdgeId> attach_entities(
    GraphStore& store, NodeId node, const std::vector<Mention>& mentions,
    const std::vector<std::optional<std::string>>& uris);

}  // namespace trellis

#endif  // TRELLIS_EXTRACT_HPP
