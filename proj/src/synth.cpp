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
#include "trellis/synth.hpp"

#include <algorithm>
#include <queue>
#include <random>

#include "trellis/specificity.hpp"
#include "trellis/text.hpp"

namespace trellis {

const char* synth_kind_name(SynthKind k) {
  switch (k) {
    case SynthKind::Line: return "line";
    case SynthKind::Chain: return "chain";
    case SynthKind::Star: return "star";
    case SynthKind::Barabasi: return "barabasi";
  }
  return "?";
}

std::optional<SynthKind> synth_kind_from_name(const std::string& name) {
  std::string n = text::fold(name);
  if (n == "line") return SynthKind::Line;
  if (n == "chain") return SynthKind::Chain;
  if (n == "star") return SynthKind::Star;
  if (n == "barabasi" || n == "ba") return SynthKind::Barabasi;
  return std::nullopt;
}

void SynthSpec::validate() const {
  switch (kind) {
    case SynthKind::Line:
    case SynthKind::Chain:
      if (n < 2) throw TrellisError("line/chain graphs need n >= 2");
      break;
    case SynthKind::Star:
      if (branches < 2) throw TrellisError("star graphs need >= 2 branches");
      if (branch_len < 1) throw TrellisError("star branches need >= 1 node");
      break;
    case SynthKind::Barabasi:
      if (m0 < 2) throw TrellisError("barabasi needs m0 >= 2");
      if (n < m0) throw TrellisError("barabasi needs n >= m0");
      break;
  }
}

std::size_t SynthSpec::node_count() const {
  switch (kind) {
    case SynthKind::Line:
    case SynthKind::Chain:
    case SynthKind::Barabasi:
      return n;
    case SynthKind::Star:
      return branches * branch_len + branches;
  }
  return 0;
}

SynthTopology synth_topology(const SynthSpec& spec) {
  spec.validate();
  SynthTopology t;
  t.nodes = spec.node_count();
  switch (spec.kind) {
    case SynthKind::Line:
      for (std::size_t i = 0; i + 1 < spec.n; ++i) t.edges.push_back({i, i + 1});
      break;
    case SynthKind::Chain:
      for (std::size_t i = 0; i + 1 < spec.n; ++i) {
        t.edges.push_back({i, i + 1});
        t.edges.push_back({i, i + 1});
      }
      break;
    case SynthKind::Star: {
      // Branch b occupies [b*len, (b+1)*len); index 0 of each branch is the
      // extremity. Cluster member b sits at branches*len + b.
      std::size_t len = spec.branch_len;
      std::size_t cluster0 = spec.branches * len;
      for (std::size_t b = 0; b < spec.branches; ++b) {
        for (std::size_t j = 0; j + 1 < len; ++j)
          t.edges.push_back({b * len + j, b * len + j + 1});
        t.edges.push_back({b * len + len - 1, cluster0 + b});
      }
      std::vector<std::size_t> cluster;
      for (std::size_t b = 0; b < spec.branches; ++b) {
        cluster.push_back(cluster0 + b);
        for (std::size_t c = b + 1; c < spec.branches; ++c)
          t.edges.push_back({cluster0 + b, cluster0 + c});
      }
      t.equivalences.push_back(std::move(cluster));
      break;
    }
    case SynthKind::Barabasi: {
      std::mt19937_64 rng(spec.seed);
      std::vector<std::size_t> degree(spec.n, 0);
      for (std::size_t i = 0; i < spec.m0; ++i)
        for (std::size_t j = i + 1; j < spec.m0; ++j) {
          t.edges.push_back({i, j});
          ++degree[i];
          ++degree[j];
        }
      // Each second-stage node attaches to exactly one first-stage node,
      // chosen with probability proportional to its current degree.
      for (std::size_t v = spec.m0; v < spec.n; ++v) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < spec.m0; ++i) total += degree[i];
        std::uniform_int_distribution<std::size_t> dist(0, total - 1);
        std::size_t pick = dist(rng);
        std::size_t target = 0;
        for (std::size_t i = 0; i < spec.m0; ++i) {
          if (pick < degree[i]) {
            target = i;
            break;
          }
          pick -= degree[i];
        }
        t.edges.push_back({target, v});
        ++degree[target];
        ++degree[v];
      }
      break;
    }
  }
  return t;
}

DatasetId generate(GraphStore& store, const SynthSpec& spec) {
  SynthTopology topo = synth_topology(spec);
  std::vector<std::string> labels(topo.nodes);
  for (std::size_t i = 0; i < topo.nodes; ++i) labels[i] = "v" + std::to_string(i);
  for (const auto& [idx, label] : spec.relabel) {
    if (idx >= topo.nodes) throw TrellisError("relabel index out of range");
    labels[idx] = label;
  }

  DatasetId ds = store.begin_dataset(
      std::string("synth-") + synth_kind_name(spec.kind), "");
  std::vector<NodeId> ids(topo.nodes);
  for (std::size_t i = 0; i < topo.nodes; ++i)
    ids[i] = store.add_node(labels[i], NodeKind::Value, ds);
  for (const auto& [a, b] : topo.edges)
    store.add_edge(ids[a], ids[b], "e", ds, 1.0);
  for (const auto& cls : topo.equivalences)
    for (std::size_t i = 1; i < cls.size(); ++i)
      store.union_equivalent(ids[cls[0]], ids[cls[i]]);
  finalize_specificities(store);
  store.commit();
  return ds;
}

namespace {

std::vector<std::size_t> bfs_distances(const SynthTopology& t, std::size_t from) {
  std::vector<std::vector<std::size_t>> adj(t.nodes);
  for (const auto& [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> dist(t.nodes, SIZE_MAX);
  std::queue<std::size_t> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    std::size_t n = q.front();
    q.pop();
    for (std::size_t m : adj[n])
      if (dist[m] == SIZE_MAX) {
        dist[m] = dist[n] + 1;
        q.push(m);
      }
  }
  return dist;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const SynthSpec& base, std::size_t param,
                                    const Query& query_template,
                                    std::size_t repetitions) {
  SynthSpec spec = base;
  std::size_t kw_a = 0, kw_b = 0;
  switch (spec.kind) {
    case SynthKind::Line:
    case SynthKind::Chain:
      kw_a = 0;
      kw_b = spec.n - 1;
      break;
    case SynthKind::Star:
      spec.branches = param ? param : spec.branches;
      kw_a = 0;                // extremity of branch 0
      kw_b = spec.branch_len;  // extremity of branch 1
      break;
    case SynthKind::Barabasi: {
      // Pick the first node pair at the requested keyword distance.
      SynthTopology topo = synth_topology(spec);
      bool found = false;
      for (std::size_t u = 0; u < topo.nodes && !found; ++u) {
        std::vector<std::size_t> dist = bfs_distances(topo, u);
        for (std::size_t v = u + 1; v < topo.nodes; ++v) {
          if (dist[v] == param) {
            kw_a = u;
            kw_b = v;
            found = true;
            break;
          }
        }
      }
      if (!found)
        throw TrellisError("no node pair at distance " + std::to_string(param));
      break;
    }
  }
  spec.relabel = {{kw_a, "kwalpha"}, {kw_b, "kwomega"}};

  auto store = GraphStore::open("", OpenMode::Create);
  generate(*store, spec);

  Query q = query_template;
  q.keywords = {"kwalpha", "kwomega"};
  q.keep_all_answers = false;

  std::vector<BenchRow> rows;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    SearchResult res = gam_search(*store, q);
    BenchRow row;
    row.kind = synth_kind_name(spec.kind);
    row.n = spec.kind == SynthKind::Star ? spec.node_count() : spec.n;
    row.param = param;
    row.rep = rep;
    row.time_to_first_ms = res.stats.time_to_first_ms;
    row.total_ms = res.stats.total_ms;
    row.answers = res.stats.answers_found;
    row.trees = res.stats.trees_explored;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "kind,n,param,rep,time_to_first_ms,total_ms,answers,trees\n";
  for (const BenchRow& r : rows) {
    out << r.kind << ',' << r.n << ',' << r.param << ',' << r.rep << ','
        << r.time_to_first_ms << ',' << r.total_ms << ',' << r.answers << ','
        << r.trees << '\n';
  }
}

}  // namespace trellis
