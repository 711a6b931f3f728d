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
#include "trellis/report.hpp"

#include <sstream>

namespace trellis {

using nlohmann::json;

namespace {

const char* edge_kind_name(AnswerEdge::Kind k) {
  switch (k) {
    case AnswerEdge::Kind::Data: return "data";
    case AnswerEdge::Kind::Similar: return "similar";
    case AnswerEdge::Kind::Equivalence: return "equivalence";
  }
  return "?";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

json answer_to_json(const GraphStore& store, const ScoredAnswer& a) {
  const Graph& g = store.graph();
  json nodes = json::array();
  for (NodeId n : a.nodes) {
    const Node& node = g.node(n);
    json jn = {{"id", n},
               {"label", node.label},
               {"kind", node_kind_name(node.kind)},
               {"dataset", node.dataset}};
    if (auto uri = store.entity_uri(n)) jn["uri"] = *uri;
    nodes.push_back(std::move(jn));
  }
  json edges = json::array();
  for (const AnswerEdge& e : a.edges) {
    json je = {{"kind", edge_kind_name(e.kind)},
               {"source", e.source},
               {"target", e.target},
               {"label", e.label},
               {"confidence", e.confidence},
               {"specificity", e.specificity}};
    if (e.kind == AnswerEdge::Kind::Data) {
      je["id"] = e.id;
      je["dataset"] = e.dataset;
    }
    edges.push_back(std::move(je));
  }
  json matched = json::array();
  for (const auto& per_kw : a.matched) matched.push_back(per_kw);
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"matched", std::move(matched)},
          {"score",
           {{"total", a.total},
            {"ms", a.ms},
            {"cs_confidence", a.cs_confidence},
            {"cs_specificity", a.cs_specificity}}}};
}

json result_to_json(const GraphStore& store, const Query& q,
                    const SearchResult& res) {
  json answers = json::array();
  for (const ScoredAnswer& a : res.answers)
    answers.push_back(answer_to_json(store, a));
  return {{"keywords", q.keywords},
          {"answers", std::move(answers)},
          {"stats",
           {{"answers_found", res.stats.answers_found},
            {"trees_explored", res.stats.trees_explored},
            {"time_to_first_ms", res.stats.time_to_first_ms},
            {"total_ms", res.stats.total_ms},
            {"timed_out", res.stats.timed_out},
            {"hit_max_answers", res.stats.hit_max_answers}}}};
}

json match_report_to_json(const MatchReport& r) {
  return {{"pairs_compared", r.pairs_compared},
          {"same_as_created", r.same_as_created},
          {"equivalences_created", r.equivalences_created}};
}

std::string answer_to_dot(const GraphStore& store, const ScoredAnswer& a,
                          const std::string& name) {
  const Graph& g = store.graph();
  std::ostringstream out;
  out << "graph \"" << dot_escape(name) << "\" {\n";
  for (NodeId n : a.nodes) {
    const Node& node = g.node(n);
    out << "  n" << n << " [label=\""
        << dot_escape(node.label.empty() ? node_kind_name(node.kind)
                                         : node.label)
        << "\"];\n";
  }
  for (const AnswerEdge& e : a.edges) {
    out << "  n" << e.source << " -- n" << e.target << " [label=\""
        << dot_escape(e.label) << "\"";
    if (e.kind == AnswerEdge::Kind::Similar)
      out << ", style=dotted, color=red";
    else if (e.kind == AnswerEdge::Kind::Equivalence)
      out << ", style=solid, color=red";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graph_to_dot(const GraphStore& store) {
  const Graph& g = store.graph();
  std::ostringstream out;
  out << "graph trellis {\n";
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Node& node = g.node(n);
    out << "  n" << n << " [label=\""
        << dot_escape(node.label.empty() ? node_kind_name(node.kind)
                                         : node.label)
        << "\"";
    if (g.representative(n) != n || g.class_size(n) > 1)
      out << ", color=red";
    out << "];\n";
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << "  n" << edge.source << " -- n" << edge.target << " [label=\""
        << dot_escape(edge.label) << "\"];\n";
  }
  for (std::size_t i = 0; i < g.similar_count(); ++i) {
    const SimilarRow& r = g.similar(i);
    out << "  n" << r.source << " -- n" << r.target
        << " [style=dotted, color=red, label=\"" << r.similarity << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace trellis
