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
#ifndef TRELLIS_TYPES_HPP
#define TRELLIS_TYPES_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace trellis {

using NodeId = std::uint64_t;
using EdgeId = std::uint64_t;
using DatasetId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Node types. Numeric/Date/Email/Hashtag/Uri are refinements assigned by
/// value typing; the three Entity kinds are created by extraction only.
enum class NodeKind : std::uint8_t {
  Dataset = 0,
  Uri,
  Value,
  Table,
  Tuple,
  Map,
  Array,
  Element,
  Attribute,
  TextDoc,
  TextSegment,
  Numeric,
  Date,
  Email,
  Hashtag,
  EntityPerson,
  EntityLocation,
  EntityOrganization,
};

inline constexpr int kNodeKindCount = 18;

const char* node_kind_name(NodeKind k);
std::optional<NodeKind> node_kind_from_name(const std::string& name);

inline bool is_entity_kind(NodeKind k) {
  return k == NodeKind::EntityPerson || k == NodeKind::EntityLocation ||
         k == NodeKind::EntityOrganization;
}

/// Kinds produced by value typing (leaves carrying data values).
inline bool is_value_kind(NodeKind k) {
  switch (k) {
    case NodeKind::Value:
    case NodeKind::Uri:
    case NodeKind::Numeric:
    case NodeKind::Date:
    case NodeKind::Email:
    case NodeKind::Hashtag:
      return true;
    default:
      return false;
  }
}

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::Value;
  DatasetId dataset = 0;
  NodeId representative = 0;
  std::string label;       // may be empty (epsilon)
  std::string norm_label;  // normalized form, see matching module
};

struct Edge {
  EdgeId id = 0;
  NodeId source = 0;
  NodeId target = 0;
  DatasetId dataset = 0;
  double confidence = 1.0;
  std::string label;  // may be empty (epsilon)
};

/// A row of the Similar table: similarity strictly between 0 and 1.
/// Exact matches (similarity 1.0) are encoded via representatives instead.
struct SimilarRow {
  NodeId source = 0;
  NodeId target = 0;
  double similarity = 0.0;
};

struct Dataset {
  DatasetId id = 0;
  NodeId node = kNoNode;  // the dataset node
  std::string label;
  std::string provenance_uri;  // empty when absent
};

// Reserved edge labels.
inline constexpr const char* kProvLabel = "cl:prov";
inline constexpr const char* kExtractPersonLabel = "cl:extractPerson";
inline constexpr const char* kExtractLocationLabel = "cl:extractLocation";
inline constexpr const char* kExtractOrganizationLabel = "cl:extractOrganization";
inline constexpr const char* kSameAsLabel = "cl:sameAs";

class TrellisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StorageError : public TrellisError {
 public:
  using TrellisError::TrellisError;
};

class ParseError : public TrellisError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : TrellisError(what + " at line " + std::to_string(line) + ", column " +
                     std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

/// A query keyword matched no node at all.
class NoMatchError : public TrellisError {
 public:
  explicit NoMatchError(const std::string& keyword)
      : TrellisError("no node matches keyword \"" + keyword + "\""),
        keyword(keyword) {}
  std::string keyword;
};

}  // namespace trellis

#endif  // TRELLIS_TYPES_HPP
