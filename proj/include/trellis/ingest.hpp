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
#ifndef TRELLIS_INGEST_HPP
#define TRELLIS_INGEST_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trellis/extract.hpp"
#include "trellis/parsers.hpp"
#include "trellis/types.hpp"

namespace trellis {

class GraphStore;

enum class ValuePolicy : std::uint8_t {
  PerInstance,
  PerPath,
  PerDataset,
  PerGraph,
};

std::optional<ValuePolicy> value_policy_from_name(const std::string& name);
const char* value_policy_name(ValuePolicy p);

enum class SourceFormat : std::uint8_t { Csv, Json, Xml, Html, NTriples, Text };
std::optional<SourceFormat> format_from_name(const std::string& name);

struct IngestPolicy {
  ValuePolicy value_nodes = ValuePolicy::PerGraph;
  std::set<std::string> null_codes;  // compared after normalization
  std::string language = "en";
  bool extract_entities = true;
  bool disambiguate = false;

  bool is_null_code(const std::string& label) const;
};

struct ForeignKey {
  std::string from_table, from_attr;
  std::string to_table, to_attr;
};

struct SourceDescriptor {
  std::string location;
  SourceFormat format = SourceFormat::Csv;
  std::string provenance_uri;
  std::vector<ForeignKey> foreign_keys;
  std::string name;  // dataset/table label; defaults to the file basename
  char csv_delimiter = ',';
};

/// Uri/Numeric/Date/Email/Hashtag/Value by first-match in that order.
NodeKind classify_value(const std::string& label);

/// true/false (any case) and integers written on fewer than 4 digits are
/// never factorized.
bool is_excluded_value(const std::string& label);

struct IngestReport {
  DatasetId dataset = 0;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t entities = 0;
};

class Ingestor {
 public:
  /// extractor/disambiguator may be null; the exemption lexicon (usually
  /// the same gazetteer) keeps known entity labels out of factorization
  /// regardless of the extract_entities flag.
  Ingestor(GraphStore& store, IngestPolicy policy,
           Extractor* extractor = nullptr, Disambiguator* disambiguator = nullptr,
           const Gazetteer* exemption_lexicon = nullptr);

  /// Parses, maps, extracts, computes specificities and commits; on any
  /// failure the store is left at its previous commit.
  IngestReport ingest(const SourceDescriptor& src);
  IngestReport ingest_content(const SourceDescriptor& src,
                              std::string_view content);

 private:
  friend struct IngestAccess;  // unit tests drive mappers directly

  NodeId resolve_value_node(const std::string& label, const std::string& path,
                            DatasetId ds);
  void map_relational(const std::vector<std::vector<std::string>>& rows,
                      const SourceDescriptor& src, DatasetId ds, NodeId ds_node);
  void map_json(std::string_view content, DatasetId ds, NodeId ds_node);
  void map_xml(const XmlNode& root, DatasetId ds, NodeId ds_node, bool html);
  void map_text(std::string_view content, const std::string& doc_label,
                DatasetId ds, NodeId ds_node);
  void map_ntriples(const std::vector<Triple>& triples, DatasetId ds);
  void run_extraction(NodeId first, NodeId end);

  GraphStore& store_;
  IngestPolicy policy_;
  Extractor* extractor_;
  Disambiguator* disambiguator_;
  const Gazetteer* exemption_;
  // Per-ingest factorization keys (path- and dataset-scoped).
  std::map<std::string, NodeId> per_path_;
  std::map<std::string, NodeId> per_dataset_;
  std::map<std::string, NodeId> rdf_resources_;
};

}  // namespace trellis

#endif  // TRELLIS_INGEST_HPP
