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
#include "trellis/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "trellis/specificity.hpp"
#include "trellis/store.hpp"
#include "trellis/text.hpp"

namespace trellis {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::optional<ValuePolicy> value_policy_from_name(const std::string& name) {
  std::string n = text::fold(name);
  if (n == "per-instance" || n == "perinstance") return ValuePolicy::PerInstance;
  if (n == "per-path" || n == "perpath") return ValuePolicy::PerPath;
  if (n == "per-dataset" || n == "perdataset") return ValuePolicy::PerDataset;
  if (n == "per-graph" || n == "pergraph") return ValuePolicy::PerGraph;
  return std::nullopt;
}

const char* value_policy_name(ValuePolicy p) {
  switch (p) {
    case ValuePolicy::PerInstance: return "per-instance";
    case ValuePolicy::PerPath: return "per-path";
    case ValuePolicy::PerDataset: return "per-dataset";
    case ValuePolicy::PerGraph: return "per-graph";
  }
  return "?";
}

std::optional<SourceFormat> format_from_name(const std::string& name) {
  std::string n = text::fold(name);
  if (n == "csv") return SourceFormat::Csv;
  if (n == "json") return SourceFormat::Json;
  if (n == "xml") return SourceFormat::Xml;
  if (n == "html") return SourceFormat::Html;
  if (n == "ntriples" || n == "nt" || n == "n-triples") return SourceFormat::NTriples;
  if (n == "text" || n == "txt") return SourceFormat::Text;
  return std::nullopt;
}

bool IngestPolicy::is_null_code(const std::string& label) const {
  if (null_codes.empty()) return false;
  return null_codes.count(text::fold(label)) > 0;
}

// ------------------------------------------------------ value typing ----

namespace {

bool is_uri_syntax(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  std::size_t i = 1;
  while (i < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '+' ||
          s[i] == '-' || s[i] == '.'))
    ++i;
  return i + 3 <= s.size() && s.compare(i, 3, "://") == 0 && i + 3 < s.size();
}

bool is_numeric_syntax(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && text::is_ascii_digit(s[i])) ++i, ++digits;
  if (digits == 0) return false;
  if (i == s.size()) return true;
  if (s[i] != '.' && s[i] != ',') return false;
  ++i;
  std::size_t frac = 0;
  while (i < s.size() && text::is_ascii_digit(s[i])) ++i, ++frac;
  return frac > 0 && i == s.size();
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return text::is_ascii_digit(c);
  });
}

int month_from_name(const std::string& folded) {
  static const std::unordered_map<std::string, int> kMonths = {
      {"january", 1},  {"february", 2}, {"march", 3},     {"april", 4},
      {"may", 5},      {"june", 6},     {"july", 7},      {"august", 8},
      {"september", 9}, {"october", 10}, {"november", 11}, {"december", 12},
      {"janvier", 1},  {"fevrier", 2},  {"mars", 3},      {"avril", 4},
      {"mai", 5},      {"juin", 6},     {"juillet", 7},   {"aout", 8},
      {"septembre", 9}, {"octobre", 10}, {"novembre", 11}, {"decembre", 12}};
  auto it = kMonths.find(folded);
  return it == kMonths.end() ? 0 : it->second;
}

bool valid_day_month(long day, long month) {
  return day >= 1 && day <= 31 && month >= 1 && month <= 12;
}

bool is_date_syntax(const std::string& s) {
  // ISO-8601: yyyy-mm-dd
  if (s.size() == 10 && s[4] == '-' && s[7] == '-') {
    std::string_view y(s.data(), 4), m(s.data() + 5, 2), d(s.data() + 8, 2);
    if (all_digits(y) && all_digits(m) && all_digits(d))
      return valid_day_month(std::stol(std::string(d)),
                             std::stol(std::string(m)));
  }
  // dd/mm/yyyy
  {
    std::size_t s1 = s.find('/');
    std::size_t s2 = s1 == std::string::npos ? s1 : s.find('/', s1 + 1);
    if (s2 != std::string::npos && s.find('/', s2 + 1) == std::string::npos) {
      std::string_view d(s.data(), s1), m(s.data() + s1 + 1, s2 - s1 - 1),
          y(s.data() + s2 + 1);
      if (all_digits(d) && all_digits(m) && all_digits(y) && d.size() <= 2 &&
          m.size() <= 2 && y.size() == 4)
        return valid_day_month(std::stol(std::string(d)),
                               std::stol(std::string(m)));
    }
  }
  // "d month yyyy" (French or English month names)
  {
    std::vector<std::string> toks = text::tokenize(text::fold(s));
    if (toks.size() == 3 && all_digits(toks[0]) && toks[0].size() <= 2 &&
        all_digits(toks[2]) && toks[2].size() == 4) {
      int month = month_from_name(toks[1]);
      if (month != 0) return valid_day_month(std::stol(toks[0]), month);
    }
  }
  return false;
}

bool is_email_syntax(const std::string& s) {
  std::size_t at = s.find('@');
  if (at == std::string::npos || at == 0 || s.find('@', at + 1) != std::string::npos)
    return false;
  auto local_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
           c == '_' || c == '%' || c == '+' || c == '-';
  };
  for (std::size_t i = 0; i < at; ++i)
    if (!local_char(s[i])) return false;
  std::string_view domain(s.data() + at + 1, s.size() - at - 1);
  if (domain.empty() || domain.front() == '.' || domain.back() == '.')
    return false;
  std::size_t last_dot = domain.rfind('.');
  if (last_dot == std::string_view::npos) return false;
  std::size_t label_start = 0;
  for (std::size_t i = 0; i <= domain.size(); ++i) {
    if (i == domain.size() || domain[i] == '.') {
      if (i == label_start) return false;
      label_start = i + 1;
      continue;
    }
    if (!std::isalnum(static_cast<unsigned char>(domain[i])) && domain[i] != '-')
      return false;
  }
  std::string_view tld = domain.substr(last_dot + 1);
  return tld.size() >= 2 && std::all_of(tld.begin(), tld.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c));
  });
}

bool is_hashtag_syntax(const std::string& s) {
  if (s.size() < 2 || s[0] != '#') return false;
  std::vector<char32_t> cps = text::decode_utf8(s.substr(1));
  return std::all_of(cps.begin(), cps.end(), [](char32_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c >= 0x80;
  });
}

std::string basename_of(const std::string& path) {
  return fs::path(path).filename().string();
}

}  // namespace

NodeKind classify_value(const std::string& label) {
  if (is_uri_syntax(label)) return NodeKind::Uri;
  if (is_numeric_syntax(label)) return NodeKind::Numeric;
  if (is_date_syntax(label)) return NodeKind::Date;
  if (is_email_syntax(label)) return NodeKind::Email;
  if (is_hashtag_syntax(label)) return NodeKind::Hashtag;
  return NodeKind::Value;
}

bool is_excluded_value(const std::string& label) {
  std::string folded = text::fold(label);
  if (folded == "true" || folded == "false") return true;
  // Integers written on fewer than 4 digits.
  std::size_t i = 0;
  if (i < folded.size() && (folded[i] == '+' || folded[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < folded.size() && text::is_ascii_digit(folded[i])) ++i, ++digits;
  return i == folded.size() && digits >= 1 && digits < 4;
}

// ----------------------------------------------------------- Ingestor ----

Ingestor::Ingestor(GraphStore& store, IngestPolicy policy, Extractor* extractor,
                   Disambiguator* disambiguator, const Gazetteer* exemption)
    : store_(store),
      policy_(std::move(policy)),
      extractor_(extractor),
      disambiguator_(disambiguator),
      exemption_(exemption) {}

NodeId Ingestor::resolve_value_node(const std::string& label,
                                    const std::string& path, DatasetId ds) {
  NodeKind kind = classify_value(label);
  bool excluded = is_excluded_value(label) || policy_.is_null_code(label) ||
                  (exemption_ && exemption_->contains_full_label(label));
  if (excluded || policy_.value_nodes == ValuePolicy::PerInstance)
    return store_.add_node(label, kind, ds);

  switch (policy_.value_nodes) {
    case ValuePolicy::PerPath: {
      std::string key = path + '\x1f' + label;
      auto it = per_path_.find(key);
      if (it != per_path_.end()) return it->second;
      NodeId id = store_.add_node(label, kind, ds);
      per_path_.emplace(std::move(key), id);
      store_.register_pergraph_value(label, id);
      return id;
    }
    case ValuePolicy::PerDataset: {
      auto it = per_dataset_.find(label);
      if (it != per_dataset_.end()) return it->second;
      NodeId id = store_.add_node(label, kind, ds);
      per_dataset_.emplace(label, id);
      store_.register_pergraph_value(label, id);
      return id;
    }
    case ValuePolicy::PerGraph: {
      if (auto hit = store_.pergraph_value(label)) return *hit;
      NodeId id = store_.add_node(label, kind, ds);
      store_.register_pergraph_value(label, id);
      return id;
    }
    default:
      throw TrellisError("bad value policy");
  }
}

void Ingestor::map_relational(const std::vector<std::vector<std::string>>& rows,
                              const SourceDescriptor& src, DatasetId ds,
                              NodeId ds_node) {
  if (rows.empty()) return;
  const std::vector<std::string>& header = rows[0];
  {
    std::unordered_set<std::string> seen;
    for (const std::string& h : header)
      if (!seen.insert(h).second)
        throw TrellisError("duplicate column name: " + h);
  }
  std::string table_name =
      src.name.empty() ? basename_of(src.location) : src.name;
  NodeId table = store_.add_node(table_name, NodeKind::Table, ds);
  store_.add_edge(ds_node, table, "", ds, 1.0);

  std::vector<NodeId> tuples;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    NodeId tuple = store_.add_node("", NodeKind::Tuple, ds);
    store_.add_edge(table, tuple, "", ds, 1.0);
    tuples.push_back(tuple);
    for (std::size_t c = 0; c < header.size() && c < row.size(); ++c) {
      if (row[c].empty()) continue;  // null attribute: no node, no edge
      NodeId value =
          resolve_value_node(row[c], table_name + "." + header[c], ds);
      store_.add_edge(tuple, value, header[c], ds, 1.0);
    }
  }

  // Foreign keys: tuple-to-tuple edges wherever the attribute values join.
  const Graph& g = store_.graph();
  auto find_table = [&](const std::string& name) -> NodeId {
    for (NodeId id = 0; id < g.node_count(); ++id)
      if (g.node(id).kind == NodeKind::Table && g.node(id).label == name)
        return id;
    throw TrellisError("FK references unknown table: " + name);
  };
  auto tuples_of = [&](NodeId table_node) {
    std::vector<NodeId> out;
    for (const auto& ref : g.adjacency(table_node))
      if (ref.kind == NeighborRef::Kind::Data && ref.outgoing &&
          g.node(ref.other).kind == NodeKind::Tuple)
        out.push_back(ref.other);
    return out;
  };
  auto attr_value = [&](NodeId tuple, const std::string& attr)
      -> std::optional<std::string> {
    for (const auto& ref : g.adjacency(tuple))
      if (ref.kind == NeighborRef::Kind::Data && ref.outgoing &&
          g.edge(ref.index).label == attr)
        return g.node(ref.other).label;
    return std::nullopt;
  };

  for (const ForeignKey& fk : src.foreign_keys) {
    NodeId from_table = find_table(fk.from_table);
    NodeId to_table = find_table(fk.to_table);
    std::unordered_map<std::string, std::vector<NodeId>> by_value;
    bool attr_seen = false;
    for (NodeId t : tuples_of(to_table)) {
      if (auto v = attr_value(t, fk.to_attr)) {
        by_value[*v].push_back(t);
        attr_seen = true;
      }
    }
    bool from_attr_seen = false;
    std::vector<std::pair<NodeId, NodeId>> joins;
    for (NodeId t : tuples_of(from_table)) {
      auto v = attr_value(t, fk.from_attr);
      if (!v) continue;
      from_attr_seen = true;
      auto it = by_value.find(*v);
      if (it == by_value.end()) continue;
      for (NodeId other : it->second)
        if (other != t) joins.emplace_back(t, other);
    }
    if (!attr_seen)
      throw TrellisError("FK references unknown attribute: " + fk.to_table +
                         "." + fk.to_attr);
    if (!from_attr_seen)
      throw TrellisError("FK references unknown attribute: " + fk.from_table +
                         "." + fk.from_attr);
    for (auto [from, to] : joins) store_.add_edge(from, to, "", ds, 1.0);
  }
}

void Ingestor::map_json(std::string_view content, DatasetId ds, NodeId ds_node) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(content);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 1, e.byte);
  }

  // Builds the node for v and returns it; null yields no node.
  auto build = [&](auto&& self, const ordered_json& v,
                   const std::string& path) -> std::optional<NodeId> {
    if (v.is_null()) return std::nullopt;
    if (v.is_object()) {
      NodeId map = store_.add_node("", NodeKind::Map, ds);
      for (const auto& [key, child] : v.items()) {
        auto child_node = self(self, child, path.empty() ? key : path + "." + key);
        if (child_node) store_.add_edge(map, *child_node, key, ds, 1.0);
      }
      return map;
    }
    if (v.is_array()) {
      NodeId arr = store_.add_node("", NodeKind::Array, ds);
      for (const auto& child : v) {
        auto child_node = self(self, child, path + ".[]");
        // Array membership edges carry the empty label; positions are
        // recoverable from edge creation order.
        if (child_node) store_.add_edge(arr, *child_node, "", ds, 1.0);
      }
      return arr;
    }
    std::string label;
    if (v.is_string()) label = v.get<std::string>();
    else if (v.is_boolean()) label = v.get<bool>() ? "true" : "false";
    else label = v.dump();
    return resolve_value_node(label, path, ds);
  };

  auto root = build(build, doc, "");
  if (root) store_.add_edge(ds_node, *root, "", ds, 1.0);
}

void Ingestor::map_xml(const XmlNode& root, DatasetId ds, NodeId ds_node,
                       bool html) {
  auto trim = [](const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };

  auto build = [&](auto&& self, const XmlNode& el,
                   const std::string& path) -> NodeId {
    NodeId node = store_.add_node(el.value, NodeKind::Element, ds);
    for (const auto& [name, value] : el.attrs) {
      std::string attr_path = path + ".@" + name;
      if (html) {
        // href="http://a.org" becomes a direct labeled edge to the value;
        // URI-shaped values turn into URI nodes and unify across documents.
        if (value.empty()) continue;
        NodeId v = resolve_value_node(value, attr_path, ds);
        store_.add_edge(node, v, name, ds, 1.0);
      } else {
        NodeId attr = store_.add_node(name, NodeKind::Attribute, ds);
        store_.add_edge(node, attr, "", ds, 1.0);
        if (!value.empty()) {
          NodeId v = resolve_value_node(value, attr_path, ds);
          store_.add_edge(attr, v, "", ds, 1.0);
        }
      }
    }
    for (const XmlNode& child : el.children) {
      if (child.type == XmlNode::Type::Text) {
        std::string content = trim(child.value);
        if (content.empty()) continue;
        NodeId v = resolve_value_node(content, path, ds);
        store_.add_edge(node, v, "", ds, 1.0);
      } else {
        NodeId c = self(self, child, path + "." + child.value);
        store_.add_edge(node, c, "", ds, 1.0);
      }
    }
    return node;
  };

  for (const XmlNode& top : root.children) {
    if (top.type != XmlNode::Type::Element) continue;
    NodeId el = build(build, top, top.value);
    store_.add_edge(ds_node, el, "", ds, 1.0);
  }
}

void Ingestor::map_text(std::string_view content, const std::string& doc_label,
                        DatasetId ds, NodeId ds_node) {
  NodeId doc = store_.add_node(doc_label, NodeKind::TextDoc, ds);
  store_.add_edge(ds_node, doc, "", ds, 1.0);
  for (const std::string& sentence : text::split_sentences(content)) {
    NodeId seg = store_.add_node(sentence, NodeKind::TextSegment, ds);
    store_.add_edge(doc, seg, "", ds, 1.0);
  }
}

void Ingestor::map_ntriples(const std::vector<Triple>& triples, DatasetId ds) {
  // URIs and blank nodes carry their own identity within a dataset; under
  // per-graph factorization URIs also unify across datasets. Blank node
  // labels are document-scoped, so the nodes keep an empty label.
  auto resource = [&](const std::string& term, Triple::Term type) -> NodeId {
    std::string key = (type == Triple::Term::Blank ? "b\x1f" : "u\x1f") + term;
    auto it = rdf_resources_.find(key);
    if (it != rdf_resources_.end()) return it->second;
    NodeId id;
    if (type == Triple::Term::Blank) {
      id = store_.add_node("", NodeKind::Value, ds);
    } else if (policy_.value_nodes == ValuePolicy::PerGraph) {
      if (auto hit = store_.pergraph_value(term)) {
        id = *hit;
      } else {
        id = store_.add_node(term, NodeKind::Uri, ds);
        store_.register_pergraph_value(term, id);
      }
    } else {
      id = store_.add_node(term, NodeKind::Uri, ds);
      store_.register_pergraph_value(term, id);
    }
    rdf_resources_.emplace(std::move(key), id);
    return id;
  };

  for (const Triple& t : triples) {
    NodeId subject = resource(t.subject, t.subject_type);
    NodeId object = t.object_type == Triple::Term::Literal
                        ? resolve_value_node(t.object, t.predicate, ds)
                        : resource(t.object, t.object_type);
    store_.add_edge(subject, object, t.predicate, ds, 1.0);
  }
}

void Ingestor::run_extraction(NodeId first, NodeId end) {
  if (!extractor_) return;
  for (NodeId id = first; id < end; ++id) {
    const Node& n = store_.graph().node(id);
    if (n.label.empty()) continue;
    switch (n.kind) {
      case NodeKind::Numeric:
      case NodeKind::Date:
      case NodeKind::Email:
      case NodeKind::Hashtag:
      case NodeKind::EntityPerson:
      case NodeKind::EntityLocation:
      case NodeKind::EntityOrganization:
        continue;
      default:
        break;
    }
    std::string label = n.label;  // the node reference may be invalidated
    std::vector<Mention> mentions = extractor_->extract(label);
    if (mentions.empty()) continue;
    std::vector<std::optional<std::string>> uris;
    if (policy_.disambiguate && disambiguator_) {
      uris.reserve(mentions.size());
      for (const Mention& m : mentions)
        uris.push_back(disambiguator_->disambiguate(m, label));
    }
    attach_entities(store_, id, mentions, uris);
  }
}

IngestReport Ingestor::ingest(const SourceDescriptor& src) {
  std::ifstream in(src.location, std::ios::binary);
  if (!in) throw TrellisError("cannot open source: " + src.location);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return ingest_content(src, content);
}

IngestReport Ingestor::ingest_content(const SourceDescriptor& src,
                                      std::string_view content) {
  per_path_.clear();
  per_dataset_.clear();
  rdf_resources_.clear();

  // Parse fully before creating anything, so a parse failure leaves the
  // store untouched.
  std::vector<std::vector<std::string>> rows;
  std::vector<Triple> triples;
  XmlNode dom;
  switch (src.format) {
    case SourceFormat::Csv: rows = parse_csv(content, src.csv_delimiter); break;
    case SourceFormat::NTriples: triples = parse_ntriples(content); break;
    case SourceFormat::Xml: dom = parse_xml(content, false); break;
    case SourceFormat::Html: dom = parse_xml(content, true); break;
    default: break;
  }

  std::string label = src.name.empty() ? basename_of(src.location) : src.name;
  Counters before = store_.counters();
  DatasetId ds = store_.begin_dataset(label, src.provenance_uri);
  NodeId ds_node = store_.datasets().back().node;

  try {
    switch (src.format) {
      case SourceFormat::Csv:
        map_relational(rows, src, ds, ds_node);
        break;
      case SourceFormat::Json:
        map_json(content, ds, ds_node);
        break;
      case SourceFormat::Xml:
      case SourceFormat::Html:
        map_xml(dom, ds, ds_node, src.format == SourceFormat::Html);
        break;
      case SourceFormat::NTriples:
        map_ntriples(triples, ds);
        break;
      case SourceFormat::Text:
        if (!content.empty()) map_text(content, label, ds, ds_node);
        break;
    }
    if (policy_.extract_entities) {
      NodeId end = store_.graph().node_count();
      run_extraction(ds_node, end);
    }
    finalize_specificities(store_);
    store_.commit();
  } catch (...) {
    store_.abort();
    throw;
  }

  Counters after = store_.counters();
  IngestReport report;
  report.dataset = ds;
  report.nodes = after.nodes - before.nodes;
  report.edges = after.edges - before.edges;
  report.entities = after.entities - before.entities;
  return report;
}

}  // namespace trellis
