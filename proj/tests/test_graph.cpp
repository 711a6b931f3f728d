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
#include "trellis/graph.hpp"

#include <doctest.h>

#include <map>
#include <random>
#include <set>

using namespace trellis;

TEST_CASE("nodes get fresh ids and are their own representative") {
  Graph g;
  NodeId a = g.add_node("Africa", NodeKind::Value, 0);
  NodeId t = g.add_node("", NodeKind::Tuple, 0);
  NodeId p = g.add_node("P. Balkany", NodeKind::EntityPerson, 1);
  CHECK(a == 0);
  CHECK(t == 1);
  CHECK(p == 2);
  CHECK(g.node(a).representative == a);
  CHECK(g.node(t).label.empty());
  CHECK(g.node(p).norm_label == "p. balkany");
}

TEST_CASE("edge validation") {
  Graph g;
  NodeId a = g.add_node("a", NodeKind::Value, 0);
  NodeId b = g.add_node("b", NodeKind::Value, 0);
  EdgeId e = g.add_edge(a, b, "owner", 0, 1.0);
  CHECK(g.edge(e).label == "owner");
  CHECK_THROWS_AS(g.add_edge(a, a, "self", 0, 1.0), TrellisError);
  CHECK_THROWS_AS(g.add_edge(a, b, "x", 0, 1.5), TrellisError);
  CHECK_THROWS_AS(g.add_edge(a, 99, "x", 0, 1.0), TrellisError);
}

TEST_CASE("union_equivalent picks the smallest id and is idempotent") {
  Graph g;
  NodeId n0 = g.add_node("x", NodeKind::Value, 0);
  NodeId n1 = g.add_node("x", NodeKind::Value, 0);
  NodeId n2 = g.add_node("x", NodeKind::Value, 0);
  CHECK(g.union_equivalent(n1, n2) == n1);
  CHECK(g.union_equivalent(n2, n1) == n1);  // idempotent, both orders
  CHECK(g.union_equivalent(n2, n0) == n0);  // smallest id wins
  CHECK(g.representative(n2) == n0);
  CHECK(g.class_members(n1) == std::vector<NodeId>{n0, n1, n2});
  CHECK(g.class_size(n0) == 3);
}

TEST_CASE("union-find matches a naive disjoint-set oracle") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 20; ++round) {
    Graph g;
    const std::size_t n = 30;
    for (std::size_t i = 0; i < n; ++i) g.add_node("v", NodeKind::Value, 0);
    // Naive oracle: each class is an explicit set.
    std::vector<std::set<NodeId>> classes(n);
    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < n; ++i) {
      classes[i] = {i};
      cls[i] = i;
    }
    for (int op = 0; op < 40; ++op) {
      NodeId a = rng() % n, b = rng() % n;
      g.union_equivalent(a, b);
      if (cls[a] != cls[b]) {
        std::size_t from = cls[b], to = cls[a];
        for (NodeId m : classes[from]) {
          classes[to].insert(m);
          cls[m] = to;
        }
        classes[from].clear();
      }
    }
    std::size_t total = 0;
    for (NodeId i = 0; i < n; ++i) {
      // Representative is the smallest member of the oracle class.
      CHECK(g.representative(i) == *classes[cls[i]].begin());
      // representative(representative(n)) == representative(n)
      CHECK(g.representative(g.representative(i)) == g.representative(i));
      if (g.representative(i) == i) total += g.class_size(i);
    }
    CHECK(total == n);  // class sizes partition the node set
  }
}

TEST_CASE("neighbors directions") {
  Graph g;
  // line: a - b - c, plus a star hub below
  NodeId a = g.add_node("a", NodeKind::Value, 0);
  NodeId b = g.add_node("b", NodeKind::Value, 0);
  NodeId c = g.add_node("c", NodeKind::Value, 0);
  EdgeId ab = g.add_edge(a, b, "e", 0, 1.0);
  g.add_edge(b, c, "e", 0, 1.0);
  CHECK(g.neighbors(a, Direction::Both).size() == 1);  // line leaf
  CHECK(g.neighbors(b, Direction::Both).size() == 2);
  // in-edge shows up in both() and in()
  auto in_b = g.neighbors(b, Direction::In);
  REQUIRE(in_b.size() == 1);
  CHECK(in_b[0].first.id == ab);
  CHECK(g.neighbors(b, Direction::Out).size() == 1);

  NodeId hub = g.add_node("hub", NodeKind::Value, 0);
  for (int i = 0; i < 5; ++i) {
    NodeId leaf = g.add_node("leaf", NodeKind::Value, 0);
    g.add_edge(hub, leaf, "spoke", 0, 1.0);
  }
  CHECK(g.neighbors(hub, Direction::Both).size() == 5);

  // Similar rows appear as neighbors with the sameAs label.
  g.add_similar(a, c, 0.9);
  auto na = g.neighbors(a, Direction::Both);
  REQUIRE(na.size() == 2);
  CHECK(na[1].first.label == kSameAsLabel);
  CHECK(na[1].first.confidence == doctest::Approx(0.9));
}

TEST_CASE("label_degree aggregates over equivalence classes") {
  Graph g;
  NodeId africa = g.add_node("Africa", NodeKind::Value, 0);
  for (int i = 0; i < 54; ++i) {
    NodeId country = g.add_node("country", NodeKind::Value, 0);
    g.add_edge(country, africa, "dbo:partOf", 0, 1.0);
  }
  auto [in, out] = g.label_degree(africa, "dbo:partOf");
  CHECK(in == 54);
  CHECK(out == 0);

  NodeId isolated = g.add_node("alone", NodeKind::Value, 0);
  CHECK(g.label_degree(isolated, "anything") ==
        std::pair<std::uint64_t, std::uint64_t>{0, 0});

  // Two equivalent nodes with one l-labeled in-edge each.
  NodeId x1 = g.add_node("x", NodeKind::Value, 0);
  NodeId x2 = g.add_node("x", NodeKind::Value, 1);
  NodeId s1 = g.add_node("s1", NodeKind::Value, 0);
  NodeId s2 = g.add_node("s2", NodeKind::Value, 1);
  g.add_edge(s1, x1, "l", 0, 1.0);
  g.add_edge(s2, x2, "l", 1, 1.0);
  g.union_equivalent(x1, x2);
  CHECK(g.label_degree(x1, "l") ==
        std::pair<std::uint64_t, std::uint64_t>{2, 0});
  CHECK(g.label_degree(x2, "l") ==
        std::pair<std::uint64_t, std::uint64_t>{2, 0});
  // The literal per-node reading stays available.
  CHECK(g.label_degree(x1, "l", false) ==
        std::pair<std::uint64_t, std::uint64_t>{1, 0});
}

TEST_CASE("rollback truncates to the mark") {
  Graph g;
  NodeId a = g.add_node("a", NodeKind::Value, 0);
  NodeId b = g.add_node("b", NodeKind::Value, 0);
  g.add_edge(a, b, "e", 0, 1.0);
  Graph::Mark m = g.mark();
  NodeId c = g.add_node("c", NodeKind::Value, 1);
  g.add_edge(b, c, "e2", 1, 1.0);
  g.add_similar(a, b, 0.9);
  g.rollback(m);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.similar_count() == 0);
  CHECK(g.neighbors(b, Direction::Both).size() == 1);
  // Re-adding after rollback works and reuses ids.
  CHECK(g.add_node("c2", NodeKind::Value, 1) == 2);
}
