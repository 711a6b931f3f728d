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
#include "trellis/store.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

#include "temp_dir.hpp"
#include "trellis/lru.hpp"
#include "trellis/text.hpp"

using namespace trellis;
using trellis::testing::TempDir;

namespace {

// (label, kind, dataset) node rows and (src label, tgt label, edge label,
// confidence) edge rows, as multisets.
std::multiset<std::string> node_rows(const Graph& g) {
  std::multiset<std::string> rows;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Node& node = g.node(n);
    rows.insert(node.label + "\x1f" + node.norm_label + "\x1f" +
                std::to_string(static_cast<int>(node.kind)) + "\x1f" +
                std::to_string(node.dataset) + "\x1f" +
                std::to_string(g.representative(n)));
  }
  return rows;
}

std::multiset<std::string> edge_rows(const Graph& g) {
  std::multiset<std::string> rows;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    rows.insert(std::to_string(edge.source) + ">" + std::to_string(edge.target) +
                "\x1f" + edge.label + "\x1f" + std::to_string(edge.confidence));
  }
  return rows;
}

}  // namespace

TEST_CASE("create, write, reopen") {
  TempDir dir;
  NodeId a, b;
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
    CHECK(store->graph().node_count() == 0);
    DatasetId ds = store->begin_dataset("fixture", "http://example.org/src");
    a = store->add_node("Africa", NodeKind::Value, ds);
    b = store->add_node("Morocco", NodeKind::Value, ds);
    store->add_edge(b, a, "dbo:partOf", ds, 1.0);
    store->add_similar(a, b, 0.85);
    store->commit();
  }
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Read);
    CHECK(store->graph().node_count() == 4);  // dataset + provenance + 2
    CHECK(store->graph().edge_count() == 2);  // cl:prov + dbo:partOf
    CHECK(store->graph().similar_count() == 1);
    CHECK(store->graph().node(a).label == "Africa");
    CHECK(store->datasets().size() == 1);
    CHECK(store->datasets()[0].provenance_uri == "http://example.org/src");
    // provenance edge labeled cl:prov
    bool found = false;
    for (const auto& [e, other] : store->graph().neighbors(
             store->datasets()[0].node, Direction::Out))
      found = found || e.label == kProvLabel;
    CHECK(found);
    CHECK_THROWS_AS(store->add_node("x", NodeKind::Value, 0), StorageError);
  }
}

TEST_CASE("round-trip preserves node/edge/Similar multisets") {
  TempDir dir;
  std::multiset<std::string> nodes_before, edges_before;
  std::vector<SimilarRow> sim_before;
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
    DatasetId ds = store->begin_dataset("d", "");
    std::mt19937_64 rng(3);
    std::vector<NodeId> ids;
    for (int i = 0; i < 50; ++i)
      ids.push_back(store->add_node("label" + std::to_string(rng() % 20),
                                    rng() % 2 ? NodeKind::Value : NodeKind::Uri,
                                    ds));
    for (int i = 0; i < 80; ++i) {
      NodeId s = ids[rng() % ids.size()], t = ids[rng() % ids.size()];
      if (s == t) continue;
      store->add_edge(s, t, "e" + std::to_string(rng() % 5), ds,
                      (rng() % 100) / 100.0);
    }
    store->union_equivalent(ids[0], ids[5]);
    store->union_equivalent(ids[5], ids[9]);
    store->add_similar(ids[1], ids[2], 0.91);
    store->commit();
    nodes_before = node_rows(store->graph());
    edges_before = edge_rows(store->graph());
    for (std::size_t i = 0; i < store->graph().similar_count(); ++i)
      sim_before.push_back(store->graph().similar(i));
  }
  auto store = GraphStore::open(dir.sub("st"), OpenMode::Read);
  CHECK(node_rows(store->graph()) == nodes_before);
  CHECK(edge_rows(store->graph()) == edges_before);
  REQUIRE(store->graph().similar_count() == sim_before.size());
  for (std::size_t i = 0; i < sim_before.size(); ++i) {
    CHECK(store->graph().similar(i).source == sim_before[i].source);
    CHECK(store->graph().similar(i).similarity ==
          doctest::Approx(sim_before[i].similarity));
  }
}

TEST_CASE("corrupt store detection") {
  TempDir dir;
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
    store->commit();
  }
  {
    std::ofstream bad(dir.sub("st") + "/nodes.log",
                      std::ios::binary | std::ios::trunc);
    bad << "NOTAMAGIC garbage";
  }
  CHECK_THROWS_WITH_AS(GraphStore::open(dir.sub("st"), OpenMode::Read),
                       doctest::Contains("corrupt"), StorageError);
  CHECK_THROWS_AS(GraphStore::open(dir.sub("missing"), OpenMode::Read),
                  StorageError);
}

TEST_CASE("writer lock excludes a second writer") {
  TempDir dir;
  auto writer = GraphStore::open(dir.sub("st"), OpenMode::Create);
  CHECK_THROWS_WITH_AS(GraphStore::open(dir.sub("st"), OpenMode::Create),
                       doctest::Contains("locked"), StorageError);
}

TEST_CASE("uncommitted records are invisible to readers") {
  TempDir dir;
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
    DatasetId ds = store->begin_dataset("d", "");
    store->add_node("committed", NodeKind::Value, ds);
    store->commit();
    store->add_node("uncommitted", NodeKind::Value, ds);
    // no commit
  }
  auto store = GraphStore::open(dir.sub("st"), OpenMode::Read);
  CHECK(store->graph().node_count() == 2);  // dataset node + committed
}

TEST_CASE("abort rolls back to the last commit") {
  auto store = GraphStore::open("", OpenMode::Create);
  DatasetId ds = store->begin_dataset("d", "");
  NodeId a = store->add_node("keep", NodeKind::Value, ds);
  store->register_pergraph_value("keep", a);
  store->commit();
  NodeId b = store->add_node("drop", NodeKind::Value, ds);
  store->register_pergraph_value("drop", b);
  store->abort();
  CHECK(store->graph().node_count() == 2);
  CHECK(store->pergraph_value("keep").has_value());
  CHECK_FALSE(store->pergraph_value("drop").has_value());
  CHECK(store->lookup_keyword("drop", MatchMode::Exact).empty());
  CHECK(store->lookup_keyword("keep", MatchMode::Exact).size() == 1);
}

TEST_CASE("keyword lookup modes") {
  auto store = GraphStore::open("", OpenMode::Create);
  DatasetId ds = store->begin_dataset("d", "");
  NodeId africa = store->add_node("Africa", NodeKind::Value, ds);
  NodeId pb = store->add_node("P. Balkany", NodeKind::EntityPerson, ds);
  NodeId ib = store->add_node("I. Balkany", NodeKind::EntityPerson, ds);
  NodeId lp = store->add_node("Levallois-Perret", NodeKind::Value, ds);
  NodeId estates = store->add_node("estates", NodeKind::Value, ds);

  CHECK(store->lookup_keyword("africa", MatchMode::Exact) ==
        std::vector<NodeId>{africa});
  CHECK(store->lookup_keyword("AFRICA", MatchMode::Exact) ==
        std::vector<NodeId>{africa});
  CHECK(store->lookup_keyword("balkany", MatchMode::Substring) ==
        std::vector<NodeId>{pb, ib});
  CHECK(store->lookup_keyword("balkany", MatchMode::Exact) ==
        std::vector<NodeId>{pb, ib});  // token-level exact
  CHECK(store->lookup_keyword("zzzz-unseen", MatchMode::Exact).empty());
  CHECK(store->lookup_keyword("Levallois-Perret", MatchMode::Exact) ==
        std::vector<NodeId>{lp});
  CHECK(store->lookup_keyword("estate", MatchMode::Stem) ==
        std::vector<NodeId>{estates});
}

TEST_CASE("keyword index is complete for every normalized label token") {
  auto store = GraphStore::open("", OpenMode::Create);
  DatasetId ds = store->begin_dataset("d", "");
  std::mt19937_64 rng(11);
  const char* words[] = {"villa", "Dar", "Gyucy", "conseil", "municipal",
                         "Levallois", "declaration", "2020"};
  for (int i = 0; i < 40; ++i) {
    std::string label;
    int n = 1 + rng() % 3;
    for (int w = 0; w < n; ++w) {
      if (w) label += ' ';
      label += words[rng() % 8];
    }
    NodeId id = store->add_node(label, NodeKind::Value, ds);
    for (const std::string& tok :
         text::tokenize(store->graph().node(id).norm_label)) {
      auto hits = store->lookup_keyword(tok, MatchMode::Exact);
      CHECK(std::find(hits.begin(), hits.end(), id) != hits.end());
    }
  }
}

TEST_CASE("keyword index persists and reloads identically") {
  TempDir dir;
  std::vector<NodeId> before;
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
    DatasetId ds = store->begin_dataset("d", "");
    store->add_node("Villa Dar Gyucy", NodeKind::Value, ds);
    store->add_node("villa moderne", NodeKind::Value, ds);
    store->commit();
    before = store->lookup_keyword("villa", MatchMode::Exact);
  }
  CHECK(std::filesystem::exists(dir.sub("st") + "/keywords.idx"));
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Read);
    CHECK(store->lookup_keyword("villa", MatchMode::Exact) == before);
  }
  // Removing the sidecar forces a rebuild with the same result.
  std::filesystem::remove(dir.sub("st") + "/keywords.idx");
  auto store = GraphStore::open(dir.sub("st"), OpenMode::Read);
  CHECK(store->lookup_keyword("villa", MatchMode::Exact) == before);
}

TEST_CASE("scan_similar thresholds") {
  auto store = GraphStore::open("", OpenMode::Create);
  DatasetId ds = store->begin_dataset("d", "");
  NodeId a = store->add_node("a", NodeKind::Value, ds);
  NodeId b = store->add_node("b", NodeKind::Value, ds);
  NodeId c = store->add_node("c", NodeKind::Value, ds);
  store->add_similar(a, b, 0.85);
  store->add_similar(b, c, 0.6);
  CHECK(store->scan_similar(0.0).size() == 2);
  CHECK(store->scan_similar(0.8).size() == 1);
  CHECK(store->scan_similar(0.8)[0].similarity == doctest::Approx(0.85));
  CHECK(store->scan_similar(1.0).empty());  // 1.0 pairs are equivalences
  // No duplicate rows in either order.
  store->add_similar(b, a, 0.85);
  CHECK(store->scan_similar(0.0).size() == 2);
}

TEST_CASE("LRU cache semantics") {
  LruCache<int, std::string> cache(2);
  cache.put(1, "one");
  cache.put(2, "two");
  CHECK(cache.get(1).has_value());  // 1 becomes most recent
  cache.put(3, "three");            // evicts 2
  CHECK_FALSE(cache.get(2).has_value());
  CHECK(cache.get(1).has_value());
  CHECK(cache.get(3).has_value());
  LruCache<int, int> unbounded(0);
  for (int i = 0; i < 1000; ++i) unbounded.put(i, i);
  CHECK(unbounded.size() == 1000);
}

TEST_CASE("record reads go through the cache and match the graph") {
  TempDir dir;
  {
    auto store = GraphStore::open(dir.sub("st"), OpenMode::Create);
    DatasetId ds = store->begin_dataset("d", "");
    NodeId a = store->add_node("Africa", NodeKind::Value, ds);
    NodeId m = store->add_node("Morocco", NodeKind::Value, ds);
    store->add_edge(m, a, "dbo:partOf", ds, 1.0);
    store->commit();
  }
  CacheConfig cache{2, 2};
  auto store = GraphStore::open(dir.sub("st"), OpenMode::Read, cache);
  for (NodeId n = 0; n < store->graph().node_count(); ++n) {
    Node rec = store->node_record(n);
    CHECK(rec.label == store->graph().node(n).label);
    CHECK(rec.kind == store->graph().node(n).kind);
  }
  CHECK(store->node_cache_size() <= 2);
  Edge e = store->edge_record(0);
  CHECK(e.label == "dbo:partOf");
}
