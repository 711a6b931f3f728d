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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "trellis/config.hpp"
#include "trellis/extract.hpp"
#include "trellis/ingest.hpp"
#include "trellis/match.hpp"
#include "trellis/report.hpp"
#include "trellis/search.hpp"
#include "trellis/specificity.hpp"
#include "trellis/store.hpp"
#include "trellis/synth.hpp"

namespace {

using namespace trellis;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoMatch = 2;

std::unique_ptr<GraphStore> open_store(const Config& cfg, OpenMode mode) {
  if (cfg.store_path.empty())
    throw TrellisError("no store path (use --store or TRELLIS_STORE)");
  auto store = GraphStore::open(cfg.store_path, mode, cfg.cache, cfg.language);
  store->set_specificity_aggregate(cfg.specificity_aggregate);
  return store;
}

struct Extraction {
  std::unique_ptr<Gazetteer> gazetteer;
  std::unique_ptr<Extractor> http_extractor;
  std::unique_ptr<Disambiguator> disambiguator;
  Extractor* extractor = nullptr;
};

Extraction build_extraction(const Config& cfg) {
  Extraction ex;
  if (!cfg.lexicon_path.empty())
    ex.gazetteer = std::make_unique<Gazetteer>(Gazetteer::from_tsv(cfg.lexicon_path));
  if (!cfg.extractor_endpoint.empty()) {
    ex.http_extractor = std::make_unique<HttpExtractor>(cfg.extractor_endpoint,
                                                        cfg.extractor_timeout_ms);
    ex.extractor = ex.http_extractor.get();
  } else if (ex.gazetteer) {
    ex.extractor = ex.gazetteer.get();
  }
  if (!cfg.disambiguator_endpoint.empty())
    ex.disambiguator = std::make_unique<HttpDisambiguator>(
        cfg.disambiguator_endpoint, cfg.extractor_timeout_ms);
  else if (!cfg.kb_path.empty())
    ex.disambiguator = std::make_unique<DictionaryDisambiguator>(
        DictionaryDisambiguator::from_tsv(cfg.kb_path));
  return ex;
}

int cmd_ingest(const Config& cfg, const std::vector<std::string>& files,
               const std::string& format_name, const std::string& provenance,
               const std::vector<std::string>& fks, const std::string& name,
               bool as_json) {
  auto store = open_store(cfg, OpenMode::Create);
  Extraction ex = build_extraction(cfg);
  Ingestor ingestor(*store, cfg.ingest_policy(), ex.extractor,
                    ex.disambiguator.get(), ex.gazetteer.get());

  json out = json::array();
  for (const std::string& file : files) {
    SourceDescriptor src;
    src.location = file;
    src.provenance_uri = provenance;
    src.name = name;
    std::string fmt = format_name;
    if (fmt.empty()) {
      std::string e = std::filesystem::path(file).extension().string();
      if (!e.empty()) fmt = e.substr(1);
    }
    auto f = format_from_name(fmt);
    if (!f) throw TrellisError("unsupported format: " + fmt);
    src.format = *f;
    for (const std::string& fk : fks) {
      // from_table.attr=to_table.attr
      std::size_t eq = fk.find('=');
      std::size_t d1 = fk.find('.');
      std::size_t d2 = fk.find('.', eq);
      if (eq == std::string::npos || d1 == std::string::npos || d1 > eq ||
          d2 == std::string::npos)
        throw TrellisError("bad --fk, expected from.attr=to.attr: " + fk);
      src.foreign_keys.push_back({fk.substr(0, d1), fk.substr(d1 + 1, eq - d1 - 1),
                                  fk.substr(eq + 1, d2 - eq - 1),
                                  fk.substr(d2 + 1)});
    }
    IngestReport rep = ingestor.ingest(src);
    Counters c = store->counters();
    json j = {{"dataset", rep.dataset},
              {"file", file},
              {"created", {{"nodes", rep.nodes}, {"edges", rep.edges}, {"entities", rep.entities}}},
              {"counters",
               {{"nodes", c.nodes},
                {"edges", c.edges},
                {"entities", c.entities},
                {"comparisons", c.comparisons}}}};
    if (as_json) {
      out.push_back(std::move(j));
    } else {
      std::cout << "dataset " << rep.dataset << ": " << file << " (+"
                << rep.nodes << " nodes, +" << rep.edges << " edges, +"
                << rep.entities << " entities)\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  else {
    Counters c = store->counters();
    std::cout << "graph: " << c.nodes << " nodes, " << c.edges << " edges, "
              << c.entities << " entities, " << c.comparisons
              << " comparisons\n";
  }
  return kExitOk;
}

int cmd_match(const Config& cfg) {
  auto store = open_store(cfg, OpenMode::Create);
  MatchConfig mc = cfg.matching;
  mc.null_codes = cfg.null_codes;
  MatchReport rep = run_matching(*store, mc);
  finalize_specificities(*store);
  store->commit();
  std::cout << match_report_to_json(rep).dump(2) << "\n";
  return kExitOk;
}

int cmd_query(const Config& cfg, const std::vector<std::string>& keywords,
              std::size_t k, bool as_json, const std::string& dot_dir) {
  auto store = open_store(cfg, OpenMode::Read);
  Query q = cfg.make_query(keywords);
  q.k = k;
  WeightedScore score(cfg.score);
  SearchResult res = gam_search(*store, q, score);

  if (!dot_dir.empty()) {
    std::filesystem::create_directories(dot_dir);
    for (std::size_t i = 0; i < res.answers.size(); ++i) {
      std::ofstream out(dot_dir + "/answer" + std::to_string(i) + ".dot");
      out << answer_to_dot(*store, res.answers[i], "answer" + std::to_string(i));
    }
  }
  if (as_json) {
    std::cout << result_to_json(*store, q, res).dump(2) << "\n";
  } else {
    std::cout << res.stats.answers_found << " answers ("
              << res.stats.trees_explored << " trees, first at "
              << res.stats.time_to_first_ms << " ms, total "
              << res.stats.total_ms << " ms"
              << (res.stats.timed_out ? ", timed out" : "") << ")\n";
    for (std::size_t i = 0; i < res.answers.size(); ++i) {
      const ScoredAnswer& a = res.answers[i];
      std::cout << "#" << i << " score=" << a.total << " edges=" << a.edges.size()
                << " nodes=" << a.nodes.size() << "\n";
      for (const AnswerEdge& e : a.edges) {
        const auto& g = store->graph();
        auto show = [&](NodeId n) {
          const std::string& l = g.node(n).label;
          return l.empty() ? std::string("(") + node_kind_name(g.node(n).kind) + ")"
                           : l;
        };
        std::cout << "    " << show(e.source) << " --" << e.label << "--> "
                  << show(e.target) << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_stats(const Config& cfg, std::size_t top_values, bool as_json) {
  auto store = open_store(cfg, OpenMode::Read);
  const Graph& g = store->graph();
  Counters c = store->counters();

  std::map<DatasetId, std::pair<std::uint64_t, std::uint64_t>> per_dataset;
  for (NodeId n = 0; n < g.node_count(); ++n) ++per_dataset[g.node(n).dataset].first;
  for (EdgeId e = 0; e < g.edge_count(); ++e) ++per_dataset[g.edge(e).dataset].second;

  // Most frequent value labels help users spot null codes.
  std::map<std::string, std::uint64_t> freq;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Node& node = g.node(n);
    if (is_value_kind(node.kind) && !node.label.empty()) ++freq[node.label];
  }
  std::vector<std::pair<std::string, std::uint64_t>> top(freq.begin(), freq.end());
  std::stable_sort(top.begin(), top.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (top.size() > top_values) top.resize(top_values);

  json j = {{"counters",
             {{"nodes", c.nodes},
              {"edges", c.edges},
              {"entities", c.entities},
              {"comparisons", c.comparisons}}},
            {"similar", g.similar_count()},
            {"datasets", json::array()},
            {"top_values", json::array()}};
  for (const Dataset& d : store->datasets()) {
    auto [nn, ne] = per_dataset[d.id];
    j["datasets"].push_back({{"id", d.id},
                             {"label", d.label},
                             {"provenance", d.provenance_uri},
                             {"nodes", nn},
                             {"edges", ne}});
  }
  for (const auto& [label, count] : top)
    j["top_values"].push_back({{"label", label}, {"count", count}});

  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << c.nodes << " nodes, " << c.edges << " edges, " << c.entities
              << " entities, " << g.similar_count() << " similar pairs\n";
    for (const auto& d : j["datasets"])
      std::cout << "  dataset " << d["id"] << " " << d["label"].get<std::string>()
                << ": " << d["nodes"] << " nodes, " << d["edges"] << " edges\n";
    if (!top.empty()) {
      std::cout << "top value labels:\n";
      for (const auto& [label, count] : top)
        std::cout << "  " << count << "\t" << label << "\n";
    }
  }
  return kExitOk;
}

int cmd_export_dot(const Config& cfg, const std::string& out_path) {
  auto store = open_store(cfg, OpenMode::Read);
  std::string dot = graph_to_dot(*store);
  if (out_path.empty() || out_path == "-") {
    std::cout << dot;
  } else {
    std::ofstream out(out_path);
    if (!out) throw TrellisError("cannot write " + out_path);
    out << dot;
  }
  return kExitOk;
}

int cmd_bench(const Config& cfg, const std::string& kind_name, std::size_t n,
              std::size_t param, std::size_t reps, std::uint64_t seed,
              const std::string& out_path, bool max_edges_given) {
  auto kind = synth_kind_from_name(kind_name);
  if (!kind) throw TrellisError("unknown graph kind: " + kind_name);
  SynthSpec spec;
  spec.kind = *kind;
  spec.n = n;
  spec.seed = seed;
  if (*kind == SynthKind::Star) spec.branches = param;

  Query q;
  q.timeout_ms = cfg.timeout_ms;
  q.max_answers = cfg.max_answers == 0 ? SIZE_MAX : cfg.max_answers;
  // Benchmarks run to exhaustion with unbounded answers by default.
  q.max_edges = max_edges_given ? cfg.max_edges : 0;
  q.k = 10;

  std::vector<BenchRow> rows = run_benchmark(spec, param, q, reps);
  if (out_path.empty() || out_path == "-") {
    write_bench_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw TrellisError("cannot write " + out_path);
    write_bench_csv(out, rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trellis: heterogeneous data integration and keyword search"};
  app.require_subcommand(1);

  Config cfg;
  if (const char* env = std::getenv("TRELLIS_STORE")) cfg.store_path = env;

  std::string config_file;
  app.add_option("--config", config_file, "key=value configuration file")
      ->each([&](const std::string& path) { cfg = Config::from_file(path); });

  // Global overrides (applied after --config).
  std::string store_flag, null_codes_file, lexicon, kb, match_mode;
  double threshold = -1, alpha = -1, beta = -1;
  std::int64_t timeout = -1;
  long long max_answers = -1, max_edges = -1;
  app.add_option("--store", store_flag, "store directory");
  app.add_option("--null-codes", null_codes_file, "null codes file, one per line");
  app.add_option("--lexicon", lexicon, "entity lexicon TSV (surface<TAB>type)");
  app.add_option("--kb", kb, "KB dictionary TSV (surface<TAB>type<TAB>uri)");
  app.add_option("--threshold", threshold, "matching similarity threshold");
  app.add_option("--alpha", alpha, "score weight for the matching score");
  app.add_option("--beta", beta, "score weight for the confidence product");
  app.add_option("--timeout", timeout, "search timeout in ms (0 = none)");
  app.add_option("--max-answers", max_answers, "stop after this many answers");
  app.add_option("--max-edges", max_edges, "largest answer developed (0 = unbounded)");
  app.add_option("--match-mode", match_mode, "exact|stem|substring");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "add datasets to the graph");
  std::vector<std::string> files, fks;
  std::string format, provenance, name, policy;
  bool no_extract = false, disambiguate = false, ingest_json = false;
  ingest->add_option("files", files, "source files")->required();
  ingest->add_option("--format", format, "csv|json|xml|html|ntriples|text");
  ingest->add_option("--policy", policy, "per-instance|per-path|per-dataset|per-graph");
  ingest->add_option("--provenance", provenance, "provenance URI");
  ingest->add_option("--fk", fks, "foreign key from.attr=to.attr");
  ingest->add_option("--name", name, "dataset/table name override");
  ingest->add_flag("--no-extract", no_extract, "skip entity extraction");
  ingest->add_flag("--disambiguate", disambiguate, "disambiguate entities");
  ingest->add_flag("--json", ingest_json, "machine-readable output");

  // match
  auto* match = app.add_subcommand("match", "compare node labels, link matches");
  std::string scope;
  bool exhaustive = false;
  match->add_option("--scope", scope, "entities-only|all-leaves");
  match->add_flag("--exhaustive", exhaustive, "compare without blocking");

  // query
  auto* query = app.add_subcommand("query", "top-k answer trees for keywords");
  std::vector<std::string> keywords;
  std::size_t k = 10;
  bool query_json = false;
  std::string dot_dir;
  query->add_option("keywords", keywords, "query keywords")->required();
  query->add_option("-k,--top", k, "answers to return");
  query->add_flag("--json", query_json, "machine-readable output");
  query->add_option("--dot", dot_dir, "write one DOT file per answer");

  // stats
  auto* stats = app.add_subcommand("stats", "dataset counts and frequent labels");
  std::size_t top_values = 20;
  bool stats_json = false;
  stats->add_option("--top-values", top_values, "how many frequent labels");
  stats->add_flag("--json", stats_json, "machine-readable output");

  // export-dot
  auto* exp = app.add_subcommand("export-dot", "DOT rendering of the graph");
  std::string out_path;
  exp->add_option("--out", out_path, "output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "synthetic graph benchmarks");
  std::string bench_kind = "line";
  std::size_t bench_n = 10, bench_param = 0, bench_reps = 3;
  std::uint64_t bench_seed = 1;
  std::string bench_out;
  bench->add_option("--kind", bench_kind, "line|chain|star|barabasi");
  bench->add_option("--n", bench_n, "node count (line/chain/barabasi)");
  bench->add_option("--param", bench_param, "branches (star) / distance (barabasi)");
  bench->add_option("--reps", bench_reps, "repetitions");
  bench->add_option("--seed", bench_seed, "RNG seed");
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!store_flag.empty()) cfg.store_path = store_flag;
    if (!null_codes_file.empty()) cfg.load_null_codes(null_codes_file);
    if (!lexicon.empty()) cfg.lexicon_path = lexicon;
    if (!kb.empty()) cfg.kb_path = kb;
    if (threshold >= 0) cfg.matching.threshold = threshold;
    if (alpha >= 0) cfg.score.alpha = alpha;
    if (beta >= 0) cfg.score.beta = beta;
    if (timeout >= 0) cfg.timeout_ms = timeout;
    if (max_answers >= 0) cfg.max_answers = static_cast<std::size_t>(max_answers);
    if (max_edges >= 0) cfg.max_edges = static_cast<std::size_t>(max_edges);
    if (!match_mode.empty()) {
      auto m = match_mode_from_name(match_mode);
      if (!m) throw TrellisError("unknown match mode: " + match_mode);
      cfg.match_mode = *m;
    }
    if (!policy.empty()) {
      auto p = value_policy_from_name(policy);
      if (!p) throw TrellisError("unknown value policy: " + policy);
      cfg.policy = *p;
    }
    if (no_extract) cfg.extract = false;
    if (disambiguate) cfg.disambiguate = true;
    if (!scope.empty()) {
      std::string f = scope;
      if (f == "entities-only") cfg.matching.scope = CompareScope::EntitiesOnly;
      else if (f == "all-leaves") cfg.matching.scope = CompareScope::AllLeaves;
      else throw TrellisError("unknown matching scope: " + scope);
    }
    if (exhaustive) cfg.matching.exhaustive = true;
    cfg.validate();

    if (ingest->parsed())
      return cmd_ingest(cfg, files, format, provenance, fks, name, ingest_json);
    if (match->parsed()) return cmd_match(cfg);
    if (query->parsed()) return cmd_query(cfg, keywords, k, query_json, dot_dir);
    if (stats->parsed()) return cmd_stats(cfg, top_values, stats_json);
    if (exp->parsed()) return cmd_export_dot(cfg, out_path);
    if (bench->parsed())
      return cmd_bench(cfg, bench_kind, bench_n, bench_param, bench_reps,
                       bench_seed, bench_out, max_edges >= 0);
  } catch (const NoMatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoMatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
