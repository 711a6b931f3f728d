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
#include "trellis/extract.hpp"

#include <algorithm>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

#include "trellis/match.hpp"
#include "trellis/store.hpp"
#include "trellis/text.hpp"

namespace trellis {

using nlohmann::json;

NodeKind entity_kind(EntityType t) {
  switch (t) {
    case EntityType::Person: return NodeKind::EntityPerson;
    case EntityType::Location: return NodeKind::EntityLocation;
    case EntityType::Organization: return NodeKind::EntityOrganization;
  }
  throw TrellisError("bad entity type");
}

const char* extract_edge_label(EntityType t) {
  switch (t) {
    case EntityType::Person: return kExtractPersonLabel;
    case EntityType::Location: return kExtractLocationLabel;
    case EntityType::Organization: return kExtractOrganizationLabel;
  }
  throw TrellisError("bad entity type");
}

const char* entity_type_name(EntityType t) {
  switch (t) {
    case EntityType::Person: return "person";
    case EntityType::Location: return "location";
    case EntityType::Organization: return "organization";
  }
  throw TrellisError("bad entity type");
}

std::optional<EntityType> entity_type_from_name(const std::string& name) {
  std::string n = text::fold(name);
  if (n == "person" || n == "per") return EntityType::Person;
  if (n == "location" || n == "loc") return EntityType::Location;
  if (n == "organization" || n == "org" || n == "organisation")
    return EntityType::Organization;
  return std::nullopt;
}

// --------------------------------------------------------- Gazetteer ----

namespace {

// Lowercase with diacritics intact; whitespace collapsed.
std::string lowercase_only(std::string_view s) {
  std::vector<char32_t> cps = text::decode_utf8(s);
  std::vector<char32_t> out;
  bool pending_space = false;
  for (char32_t c : cps) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c += 32;
    else if (c >= 0xC0 && c <= 0xDE && c != 0xD7) c += 0x20;
    out.push_back(c);
  }
  return text::encode_utf8(out);
}

struct Token {
  std::string folded;
  std::size_t begin;  // codepoint offset of first char
  std::size_t end;    // one past last char
};

std::vector<Token> tokenize_with_offsets(const std::vector<char32_t>& cps) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  auto is_word = [](char32_t c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c >= 0x80;
  };
  while (i < cps.size()) {
    if (!is_word(cps[i])) {
      ++i;
      continue;
    }
    std::size_t b = i;
    while (i < cps.size() && is_word(cps[i])) ++i;
    std::string raw = text::encode_utf8(
        std::vector<char32_t>(cps.begin() + b, cps.begin() + i));
    tokens.push_back({text::fold(raw), b, i});
  }
  return tokens;
}

}  // namespace

void Gazetteer::add(const std::string& surface, EntityType type) {
  Entry e;
  e.folded = text::fold(surface);
  e.lowercased = lowercase_only(surface);
  e.folded_tokens = text::tokenize(e.folded);
  e.type = type;
  if (e.folded_tokens.empty()) return;
  std::size_t idx = entries_.size();
  entries_.push_back(std::move(e));
  auto& bucket = by_first_[entries_[idx].folded_tokens[0]];
  bucket.push_back(idx);
  std::stable_sort(bucket.begin(), bucket.end(), [&](std::size_t a, std::size_t b) {
    return entries_[a].folded_tokens.size() > entries_[b].folded_tokens.size();
  });
}

Gazetteer Gazetteer::from_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrellisError("cannot open lexicon file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return from_tsv_content(content);
}

Gazetteer Gazetteer::from_tsv_content(std::string_view content) {
  Gazetteer g;
  std::size_t lineno = 0, start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError("lexicon line needs surface<TAB>type", lineno, 1);
    std::string surface(line.substr(0, tab));
    auto type = entity_type_from_name(std::string(line.substr(tab + 1)));
    if (!type) throw ParseError("unknown entity type", lineno, tab + 2);
    g.add(surface, *type);
  }
  return g;
}

std::vector<Mention> Gazetteer::extract(const std::string& label) {
  if (label.empty())
    throw TrellisError("extract() requires a non-empty label");
  std::vector<Mention> mentions;
  std::vector<char32_t> cps = text::decode_utf8(label);
  std::vector<Token> tokens = tokenize_with_offsets(cps);
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto bucket = by_first_.find(tokens[i].folded);
    std::size_t matched = 0;
    if (bucket != by_first_.end()) {
      for (std::size_t idx : bucket->second) {
        const Entry& e = entries_[idx];
        std::size_t n = e.folded_tokens.size();
        if (i + n > tokens.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k)
          ok = tokens[i + k].folded == e.folded_tokens[k];
        if (!ok) continue;
        std::size_t b = tokens[i].begin, eoff = tokens[i + n - 1].end;
        std::string span = text::encode_utf8(
            std::vector<char32_t>(cps.begin() + b, cps.begin() + eoff));
        Mention m;
        m.text = span;
        m.type = e.type;
        m.offset = b;
        m.confidence = lowercase_only(span) == e.lowercased ? 1.0 : 0.8;
        mentions.push_back(std::move(m));
        matched = n;
        break;  // bucket is longest-first
      }
    }
    i += matched ? matched : 1;
  }
  return mentions;
}

bool Gazetteer::contains_full_label(const std::string& label) const {
  if (label.empty()) return false;
  std::string folded = text::fold(label);
  auto toks = text::tokenize(folded);
  if (toks.empty()) return false;
  auto bucket = by_first_.find(toks[0]);
  if (bucket == by_first_.end()) return false;
  for (std::size_t idx : bucket->second)
    if (entries_[idx].folded == folded) return true;
  return false;
}

// ------------------------------------------------------- Dictionary -----

void DictionaryDisambiguator::add(const std::string& surface, EntityType type,
                                  const std::string& uri) {
  map_[std::string(entity_type_name(type)) + '\x1f' + surface] = uri;
}

DictionaryDisambiguator DictionaryDisambiguator::from_tsv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TrellisError("cannot open KB dictionary file: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return from_tsv_content(content);
}

DictionaryDisambiguator DictionaryDisambiguator::from_tsv_content(
    std::string_view content) {
  DictionaryDisambiguator d;
  std::size_t lineno = 0, start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos)
      throw ParseError("KB line needs surface<TAB>type<TAB>uri", lineno, 1);
    auto type = entity_type_from_name(std::string(line.substr(t1 + 1, t2 - t1 - 1)));
    if (!type) throw ParseError("unknown entity type", lineno, t1 + 2);
    d.add(std::string(line.substr(0, t1)), *type,
          std::string(line.substr(t2 + 1)));
  }
  return d;
}

std::optional<std::string> DictionaryDisambiguator::disambiguate(
    const Mention& m, const std::string&) {
  auto it = map_.find(std::string(entity_type_name(m.type)) + '\x1f' + m.text);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

// ------------------------------------------------------------- HTTP -----

namespace {

std::pair<std::string, std::string> split_endpoint(const std::string& ep) {
  // scheme://host[:port]/path
  std::size_t scheme = ep.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  std::size_t slash = ep.find('/', host_start);
  if (slash == std::string::npos) return {ep, "/"};
  return {ep.substr(0, slash), ep.substr(slash)};
}

json post_json(const std::string& host, const std::string& path,
               int timeout_ms, const json& body, const char* what) {
  httplib::Client client(host);
  client.set_connection_timeout(0, timeout_ms * 1000);
  client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res)
    throw TrellisError(std::string(what) + " service unreachable at " + host);
  if (res->status != 200)
    throw TrellisError(std::string(what) + " service returned status " +
                       std::to_string(res->status));
  try {
    return json::parse(res->body);
  } catch (const json::exception&) {
    throw TrellisError(std::string(what) + " service returned invalid JSON");
  }
}

std::vector<Mention> parse_mentions(const json& arr) {
  std::vector<Mention> out;
  for (const auto& jm : arr) {
    Mention m;
    m.text = jm.at("text").get<std::string>();
    auto type = entity_type_from_name(jm.at("type").get<std::string>());
    if (!type) continue;  // unsupported entity types are dropped
    m.type = *type;
    m.offset = jm.value("offset", 0);
    m.confidence = jm.value("confidence", 1.0);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

HttpExtractor::HttpExtractor(std::string endpoint, int timeout_ms)
    : timeout_ms_(timeout_ms) {
  std::tie(host_, path_) = split_endpoint(endpoint);
}

std::vector<Mention> HttpExtractor::extract(const std::string& label) {
  if (label.empty())
    throw TrellisError("extract() requires a non-empty label");
  json body = {{"texts", {label}}};
  json res = post_json(host_, path_, timeout_ms_, body, "extractor");
  const auto& groups = res.at("mentions");
  if (!groups.is_array() || groups.empty()) return {};
  return parse_mentions(groups[0]);
}

HttpDisambiguator::HttpDisambiguator(std::string endpoint, int timeout_ms)
    : timeout_ms_(timeout_ms) {
  std::tie(host_, path_) = split_endpoint(endpoint);
}

std::optional<std::string> HttpDisambiguator::disambiguate(
    const Mention& m, const std::string& context) {
  json body = {{"texts", {context}},
               {"mentions",
                {{{{"text", m.text},
                   {"type", entity_type_name(m.type)},
                   {"offset", m.offset},
                   {"confidence", m.confidence}}}}}};
  json res = post_json(host_, path_, timeout_ms_, body, "disambiguator");
  const auto& groups = res.at("mentions");
  if (!groups.is_array() || groups.empty() || groups[0].empty())
    return std::nullopt;
  const auto& jm = groups[0][0];
  if (!jm.contains("uri") || jm["uri"].is_null()) return std::nullopt;
  std::string uri = jm["uri"].get<std::string>();
  if (uri.empty()) return std::nullopt;
  return uri;
}

// ---------------------------------------------------- entity nodes ------

std::vector<EdgeId> attach_entities(
    GraphStore& store, NodeId node, const std::vector<Mention>& mentions,
    const std::vector<std::optional<std::string>>& uris) {
  std::vector<EdgeId> edges;
  const Node& source = store.graph().node(node);
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    const Mention& m = mentions[i];
    NodeKind kind = entity_kind(m.type);
    std::optional<std::string> uri =
        i < uris.size() ? uris[i] : std::nullopt;
    std::optional<NodeId> entity;
    std::string norm;
    if (uri) {
      entity = store.entity_by_uri(kind, *uri);
    } else {
      norm = normalize_label(m.text, kind);
      entity = store.entity_by_norm(kind, norm);
    }
    if (!entity) {
      entity = store.add_node(m.text, kind, source.dataset);
      if (uri) {
        store.register_entity_uri(kind, *uri, *entity);
        store.add_entity_uri(*entity, *uri);
      } else {
        store.register_entity_norm(kind, norm, *entity);
      }
    }
    edges.push_back(store.add_edge(node, *entity, extract_edge_label(m.type),
                                   source.dataset, m.confidence));
  }
  return edges;
}

}  // namespace trellis
