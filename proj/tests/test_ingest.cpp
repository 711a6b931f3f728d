/*
 * Copyright 2026 The Trellis Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with License.
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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "temp_dir.hpp"
#include "trellis/store.hpp"

using namespace trellis;
using trellis::testing::TempDir;

namespace {

struct Fixture {
  std::unique_ptr<GraphStore> store = GraphStore::open("", OpenMode::Create);

  IngestReport ingest(SourceFormat fmt, const std::string& content,
                      IngestPolicy policy = {},
                      SourceDescriptor base = {}) {
    policy.extract_entities = false;
    base.format = fmt;
    if (base.name.empty() && base.location.empty()) base.name = "fixture";
    Ingestor ing(*store, policy);
    return ing.ingest_content(base, content);
  }

  std::size_t count_kind(NodeKind k) const {
    std::size_t n = 0;
    for (NodeId i = 0; i < store->graph().node_count(); ++i)
      if (store->graph().node(i).kind == k) ++n;
    return n;
  }
  std::size_t count_edges_labeled(const std::string& l) const {
    std::size_t n = 0;
    for (EdgeId e = 0; e < store->graph().edge_count(); ++e)
      if (store->graph().edge(e).label == l) ++n;
    return n;
  }
  std::vector<NodeId> nodes_labeled(const std::string& l) const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < store->graph().node_count(); ++i)
      if (store->graph().node(i).label == l) out.push_back(i);
    return out;
  }
};

// Canonical structural signature, id-independent.
std::multiset<std::string> fragment_signature(const Graph& g) {
  std::multiset<std::string> sig;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    const Node& s = g.node(edge.source);
    const Node& t = g.node(edge.target);
    sig.insert(s.label + "|" + std::to_string(int(s.kind)) + ">" + edge.label +
               ">" + t.label + "|" + std::to_string(int(t.kind)));
  }
  return sig;
}

}  // namespace

TEST_CASE("classify_value recognizers in order") {
  CHECK(classify_value("http://x.org/a") == NodeKind::Uri);
  CHECK(classify_value("https://a.org") == NodeKind::Uri);
  CHECK(classify_value("dbo:partOf") == NodeKind::Value);  // no ://
  CHECK(classify_value("42") == NodeKind::Numeric);
  CHECK(classify_value("+42") == NodeKind::Numeric);
  CHECK(classify_value("-3.14") == NodeKind::Numeric);
  CHECK(classify_value("3,14") == NodeKind::Numeric);
  CHECK(classify_value("2020-03-17") == NodeKind::Date);
  CHECK(classify_value("17/03/2020") == NodeKind::Date);
  CHECK(classify_value("17 mars 2020") == NodeKind::Date);
  CHECK(classify_value("17 March 2020") == NodeKind::Date);
  CHECK(classify_value("99/99/2020") == NodeKind::Value);  // bad day/month
  CHECK(classify_value("a@b.fr") == NodeKind::Email);
  CHECK(classify_value("user.name+tag@mail.example.org") == NodeKind::Email);
  CHECK(classify_value("not@an@email") == NodeKind::Value);
  CHECK(classify_value("#covid") == NodeKind::Hashtag);
  CHECK(classify_value("#covid_19") == NodeKind::Hashtag);
  CHECK(classify_value("# not a tag") == NodeKind::Value);
  CHECK(classify_value("Paris") == NodeKind::Value);
}

TEST_CASE("excluded values") {
  CHECK(is_excluded_value("true"));
  CHECK(is_excluded_value("False"));
  CHECK(is_excluded_value("42"));
  CHECK(is_excluded_value("-12"));
  CHECK(is_excluded_value("999"));
  CHECK_FALSE(is_excluded_value("2020"));  // 4 digits
  CHECK_FALSE(is_excluded_value("1.5"));
  CHECK_FALSE(is_excluded_value("Paris"));
}

TEST_CASE("relational mapping: spec counts") {
  Fixture f;
  IngestPolicy p;
  p.value_nodes = ValuePolicy::PerInstance;
  auto rep = f.ingest(SourceFormat::Csv,
                      "owner,asset,location\n"
                      "P. Balkany,Villa Dar Gyucy,Marrakech\n"
                      "J. Doe,Flat,Paris\n",
                      p);
  // 1 table + 2 tuples + 6 values + dataset node
  CHECK(f.count_kind(NodeKind::Table) == 1);
  CHECK(f.count_kind(NodeKind::Tuple) == 2);
  CHECK(f.count_kind(NodeKind::Value) == 6);
  CHECK(rep.nodes == 10);
  // 6 attribute edges + ds->table + 2 table->tuple
  CHECK(f.count_edges_labeled("owner") == 2);
  CHECK(f.count_edges_labeled("") == 3);
  CHECK(rep.edges == 9);
  // every edge from ingestion is structural: confidence 1.0
  for (EdgeId e = 0; e < f.store->graph().edge_count(); ++e)
    CHECK(f.store->graph().edge(e).confidence == 1.0);
}

TEST_CASE("relational mapping: null cells are skipped") {
  Fixture f;
  auto rep = f.ingest(SourceFormat::Csv, "a,b\nx,\n,y\n");
  CHECK(f.count_kind(NodeKind::Value) == 2);
  CHECK(rep.edges == 1 + 2 + 2);  // ds->table, 2 tuples, 2 attribute edges
  CHECK_THROWS_WITH_AS(f.ingest(SourceFormat::Csv, "a,a\n1,2\n"),
                       doctest::Contains("duplicate column"), TrellisError);
}

TEST_CASE("foreign keys join tuples across tables") {
  Fixture f;
  f.ingest(SourceFormat::Csv, "city,country\nParis,France\nLyon,France\n", {},
           {.name = "cities"});
  SourceDescriptor src;
  src.name = "people";
  src.foreign_keys = {{"people", "home", "cities", "city"}};
  auto before = f.store->graph().edge_count();
  f.ingest(SourceFormat::Csv, "person,home\nAda,Paris\nBob,Paris\nCy,Nantes\n",
           {}, src);
  // Ada->Paris-tuple and Bob->Paris-tuple; Cy matches nothing
  std::size_t tuple_tuple = 0;
  const Graph& g = f.store->graph();
  for (EdgeId e = before; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (g.node(edge.source).kind == NodeKind::Tuple &&
        g.node(edge.target).kind == NodeKind::Tuple)
      ++tuple_tuple;
  }
  CHECK(tuple_tuple == 2);

  SourceDescriptor bad;
  bad.name = "t3";
  bad.foreign_keys = {{"t3", "x", "nosuch", "y"}};
  CHECK_THROWS_WITH_AS(f.ingest(SourceFormat::Csv, "x\n1\n", {}, bad),
                       doctest::Contains("unknown table"), TrellisError);
  SourceDescriptor bad2;
  bad2.name = "t4";
  bad2.foreign_keys = {{"t4", "x", "cities", "nosuchattr"}};
  CHECK_THROWS_WITH_AS(f.ingest(SourceFormat::Csv, "x\n1\n", {}, bad2),
                       doctest::Contains("unknown attribute"), TrellisError);
}

TEST_CASE("json mapping") {
  Fixture f;
  auto rep = f.ingest(SourceFormat::Json, R"({"ville":"Levallois-Perret"})");
  CHECK(f.count_kind(NodeKind::Map) == 1);
  CHECK(f.count_kind(NodeKind::Value) == 1);
  CHECK(f.count_edges_labeled("ville") == 1);
  CHECK(rep.nodes == 3);  // dataset + map + value
  CHECK(rep.edges == 2);  // ds->map + ville

  Fixture f2;
  auto rep2 = f2.ingest(SourceFormat::Json, "[]");
  CHECK(f2.count_kind(NodeKind::Array) == 1);
  CHECK(rep2.nodes == 2);

  Fixture f3;
  f3.ingest(SourceFormat::Json, R"({"a":{"b":1770}})");
  CHECK(f3.count_kind(NodeKind::Map) == 2);
  CHECK(f3.count_kind(NodeKind::Numeric) == 1);  // typed leaf

  // nulls produce nothing; array elements keep epsilon labels
  Fixture f4;
  auto rep4 = f4.ingest(SourceFormat::Json, R"({"xs":[“a”,null],"y":null})");
  (void)rep4;

  Fixture f5;
  auto rep5 = f5.ingest(SourceFormat::Json, R"({"xs":["a", null], "y": null})");
  CHECK(f5.count_kind(NodeKind::Array) == 1);
  CHECK(f5.count_kind(NodeKind::Value) == 1);
  CHECK(rep5.edges == 3);  // ds->map, map-xs->array, array->a

  CHECK_THROWS_AS(f5.ingest(SourceFormat::Json, "{broken"), ParseError);
}

TEST_CASE("xml mapping: attribute nodes and mixed content") {
  Fixture f;
  auto rep = f.ingest(SourceFormat::Xml, "<p a=\"x\">t</p>");
  CHECK(f.count_kind(NodeKind::Element) == 1);
  CHECK(f.count_kind(NodeKind::Attribute) == 1);
  CHECK(f.count_kind(NodeKind::Value) == 2);  // x and t
  // ds->p, p->attr, attr->x, p->t
  CHECK(rep.edges == 4);

  Fixture f2;
  f2.ingest(SourceFormat::Xml, "<p/>");
  CHECK(f2.count_kind(NodeKind::Element) == 1);
  CHECK(f2.store->graph().edge_count() == 1);  // ds->p only

  Fixture f3;
  f3.ingest(SourceFormat::Xml, "<p>one<b>two</b>three</p>");
  CHECK(f3.count_kind(NodeKind::Value) == 3);  // one value per text segment
}

TEST_CASE("html mapping: href URIs unify per-graph across documents") {
  Fixture f;
  IngestPolicy p;
  p.value_nodes = ValuePolicy::PerGraph;
  f.ingest(SourceFormat::Html, "<a href=\"http://a.org\">x</a>", p,
           {.name = "page1"});
  f.ingest(SourceFormat::Html, "<p><a href=\"http://a.org\">y</a></p>", p,
           {.name = "page2"});
  auto uris = f.nodes_labeled("http://a.org");
  REQUIRE(uris.size() == 1);
  CHECK(f.store->graph().node(uris[0]).kind == NodeKind::Uri);
  auto [in, out] = f.store->graph().label_degree(uris[0], "href");
  CHECK(in == 2);  // both pages link the same URI node

  // element -- href --> value, no attribute node in HTML
  CHECK(f.count_kind(NodeKind::Attribute) == 0);
  CHECK(f.count_edges_labeled("href") == 2);

  Fixture f2;
  f2.ingest(SourceFormat::Html, "<a href=\"not a uri\">x</a>");
  CHECK(f2.count_kind(NodeKind::Uri) == 0);
  CHECK(f2.count_kind(NodeKind::Value) == 2);  // the href value and "x"
}

TEST_CASE("text mapping: sentences as segments") {
  Fixture f;
  auto rep = f.ingest(SourceFormat::Text,
                      "First sentence. Second one! Third? Fourth here.");
  CHECK(f.count_kind(NodeKind::TextDoc) == 1);
  CHECK(f.count_kind(NodeKind::TextSegment) == 4);
  CHECK(rep.edges == 5);  // ds->doc + 4 doc->segment

  Fixture f2;
  auto rep2 = f2.ingest(SourceFormat::Text, "");
  CHECK(rep2.nodes == 1);  // dataset node only
  CHECK(rep2.edges == 0);

  Fixture f3;
  f3.ingest(SourceFormat::Text, "A. B. Smith arrived.");
  CHECK(f3.count_kind(NodeKind::TextSegment) == 1);
}

TEST_CASE("ntriples mapping") {
  Fixture f;
  auto rep = f.ingest(SourceFormat::NTriples, "<s:a> <p:x> <s:b> .\n");
  CHECK(rep.nodes == 3);  // dataset + 2 URI nodes
  CHECK(rep.edges == 1);  // the triple only; no dataset edge for RDF
  CHECK(f.count_kind(NodeKind::Uri) == 2);

  // repeated resources share one node per dataset
  Fixture f2;
  IngestPolicy pi;
  pi.value_nodes = ValuePolicy::PerInstance;
  auto rep2 = f2.ingest(SourceFormat::NTriples,
                        "<s:a> <p:x> <s:b> .\n"
                        "<s:a> <p:y> \"lit\" .\n"
                        "<s:a> <p:y> \"lit\" .\n",
                        pi);
  CHECK(f2.nodes_labeled("s:a").size() == 1);
  // per-instance literals stay separate
  CHECK(f2.nodes_labeled("lit").size() == 2);
  CHECK(rep2.edges == 3);

  // blank nodes carry document-scoped identity and an empty label
  Fixture f3;
  f3.ingest(SourceFormat::NTriples, "_:b0 <p:x> _:b1 .\n_:b0 <p:y> _:b1 .\n");
  CHECK(f3.store->graph().edge_count() == 2);
  const Edge& e0 = f3.store->graph().edge(0);
  const Edge& e1 = f3.store->graph().edge(1);
  CHECK(e0.source == e1.source);
  CHECK(f3.store->graph().node(e0.source).label.empty());
}

TEST_CASE("value factorization policies") {
  const char* doc = R"({"a":{"city":"Paris"},"b":{"city":"Paris"},"c":"Paris"})";

  auto nodes_with = [&](ValuePolicy vp) {
    Fixture f;
    IngestPolicy p;
    p.value_nodes = vp;
    f.ingest(SourceFormat::Json, doc, p);
    return f.nodes_labeled("Paris").size();
  };
  CHECK(nodes_with(ValuePolicy::PerInstance) == 3);
  CHECK(nodes_with(ValuePolicy::PerPath) == 3);  // a.city, b.city, c differ
  CHECK(nodes_with(ValuePolicy::PerDataset) == 1);
  CHECK(nodes_with(ValuePolicy::PerGraph) == 1);

  // same path twice -> per-path shares the node
  const char* doc2 = R"([{"city":"Paris"},{"city":"Paris"}])";
  Fixture f2;
  IngestPolicy p2;
  p2.value_nodes = ValuePolicy::PerPath;
  f2.ingest(SourceFormat::Json, doc2, p2);
  CHECK(f2.nodes_labeled("Paris").size() == 1);

  // booleans never factorize
  Fixture f3;
  IngestPolicy p3;
  p3.value_nodes = ValuePolicy::PerGraph;
  f3.ingest(SourceFormat::Json, R"({"a":"true","b":"true"})", p3);
  CHECK(f3.nodes_labeled("true").size() == 2);

  // null codes never factorize
  Fixture f4;
  IngestPolicy p4;
  p4.value_nodes = ValuePolicy::PerGraph;
  p4.null_codes = {"n/a"};
  f4.ingest(SourceFormat::Json, R"({"a":"N/A","b":"N/A"})", p4);
  CHECK(f4.nodes_labeled("N/A").size() == 2);

  // per-graph factorization crosses datasets
  Fixture f5;
  IngestPolicy p5;
  p5.value_nodes = ValuePolicy::PerGraph;
  f5.ingest(SourceFormat::Json, R"({"x":"Paris"})", p5, {.name = "d1"});
  f5.ingest(SourceFormat::Json, R"({"y":"Paris"})", p5, {.name = "d2"});
  CHECK(f5.nodes_labeled("Paris").size() == 1);
}

TEST_CASE("factorization monotonicity; edge counts invariant") {
  const char* json_doc =
      R"({"a":{"city":"Paris","n":"N/A"},"b":{"city":"Paris","n":"N/A"},)"
      R"("c":"Paris","flag":"true","year":"2020","also":"2020"})";
  std::vector<std::size_t> node_counts, edge_counts;
  for (ValuePolicy vp : {ValuePolicy::PerGraph, ValuePolicy::PerDataset,
                         ValuePolicy::PerPath, ValuePolicy::PerInstance}) {
    Fixture f;
    IngestPolicy p;
    p.value_nodes = vp;
    p.null_codes = {"n/a"};
    f.ingest(SourceFormat::Json, json_doc, p);
    node_counts.push_back(f.store->graph().node_count());
    edge_counts.push_back(f.store->graph().edge_count());
  }
  CHECK(node_counts[0] <= node_counts[1]);
  CHECK(node_counts[1] <= node_counts[2]);
  CHECK(node_counts[2] <= node_counts[3]);
  CHECK(node_counts[0] < node_counts[3]);  // strict somewhere
  CHECK(edge_counts[0] == edge_counts[3]);
  CHECK(edge_counts[0] == edge_counts[1]);
  CHECK(edge_counts[1] == edge_counts[2]);
}

TEST_CASE("re-ingesting the same source yields an isomorphic fragment") {
  const char* doc =
      R"({"officials":[{"nom":"P. Balkany","ville":"Levallois-Perret"}]})";
  auto run = [&]() {
    Fixture f;
    IngestPolicy p;
    p.value_nodes = ValuePolicy::PerPath;
    f.ingest(SourceFormat::Json, doc, p);
    return fragment_signature(f.store->graph());
  };
  CHECK(run() == run());
}

TEST_CASE("parse failure leaves the store untouched") {
  TempDir dir;
  auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
  Ingestor ing(*store, {});
  SourceDescriptor ok;
  ok.format = SourceFormat::Json;
  ok.name = "good";
  ing.ingest_content(ok, R"({"a":"b"})");
  Counters before = store->counters();

  SourceDescriptor bad;
  bad.format = SourceFormat::Json;
  bad.name = "bad";
  CHECK_THROWS_AS(ing.ingest_content(bad, "{not json"), ParseError);
  Counters after = store->counters();
  CHECK(after.nodes == before.nodes);
  CHECK(after.edges == before.edges);
  CHECK(store->datasets().size() == 1);

  SourceDescriptor badxml;
  badxml.format = SourceFormat::Xml;
  badxml.name = "badxml";
  CHECK_THROWS_AS(ing.ingest_content(badxml, "<a><b></a>"), ParseError);
  CHECK(store->counters().nodes == before.nodes);
}
