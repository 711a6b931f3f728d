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

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "trellis/match.hpp"
#include "trellis/text.hpp"

namespace trellis {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint32_t kStoreVersion = 1;

struct LogSpec {
  const char* file;
  const char* magic;  // 4 chars
};
constexpr LogSpec kNodesLog{"nodes.log", "TRND"};
constexpr LogSpec kEdgesLog{"edges.log", "TRED"};
constexpr LogSpec kSimilarLog{"similar.log", "TRSM"};
constexpr LogSpec kRepsLog{"reps.log", "TRRP"};
constexpr LogSpec kEntitiesLog{"entities.log", "TRNT"};

void put_u32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
}
void put_u64(std::string& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
}
void put_f64(std::string& b, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(b, bits);
}
void put_str(std::string& b, const std::string& s) {
  put_u32(b, static_cast<std::uint32_t>(s.size()));
  b.append(s);
}

class Reader {
 public:
  Reader(const char* data, std::size_t size) : p_(data), end_(data + size) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(*p_++))
           << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(*p_++))
           << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<unsigned char>(*p_++);
  }
  std::string str() {
    std::uint32_t n = u32();
    need(n);
    std::string s(p_, n);
    p_ += n;
    return s;
  }
  bool done() const { return p_ == end_; }

 private:
  void need(std::size_t n) {
    if (static_cast<std::size_t>(end_ - p_) < n)
      throw StorageError("corrupt store: truncated record");
  }
  const char* p_;
  const char* end_;
};

class LogFile {
 public:
  void open(const std::string& dir, const LogSpec& spec, bool create) {
    path_ = dir + "/" + spec.file;
    magic_ = spec.magic;
    bool exists = fs::exists(path_);
    if (!exists) {
      if (!create) throw StorageError("missing store file: " + path_);
      std::string header(magic_);
      std::string buf = header;
      put_u32(buf, kStoreVersion);
      write_all(buf, /*truncate=*/true);
    }
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw StorageError("cannot open " + path_);
    char m[4];
    std::uint32_t ver = 0;
    in.read(m, 4);
    char vb[4];
    in.read(vb, 4);
    if (!in || std::memcmp(m, magic_.data(), 4) != 0)
      throw StorageError("corrupt store: bad magic in " + path_);
    for (int i = 0; i < 4; ++i)
      ver |= static_cast<std::uint32_t>(static_cast<unsigned char>(vb[i]))
             << (8 * i);
    if (ver != kStoreVersion)
      throw StorageError("store version mismatch in " + path_);
  }

  // Reads `count` records, invoking f(payload, offsetOfRecord).
  template <typename F>
  void scan(std::size_t count, F f) const {
    std::ifstream in(path_, std::ios::binary);
    in.seekg(8);
    std::string payload;
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t off = static_cast<std::uint64_t>(in.tellg());
      char lb[4];
      in.read(lb, 4);
      if (!in) throw StorageError("corrupt store: truncated " + path_);
      std::uint32_t len = 0;
      for (int k = 0; k < 4; ++k)
        len |= static_cast<std::uint32_t>(static_cast<unsigned char>(lb[k]))
               << (8 * k);
      payload.resize(len);
      in.read(payload.data(), len);
      if (!in) throw StorageError("corrupt store: truncated " + path_);
      f(payload, off);
    }
  }

  // Appends records; returns the offset of each appended record.
  std::vector<std::uint64_t> append(const std::vector<std::string>& payloads) {
    std::vector<std::uint64_t> offsets;
    if (payloads.empty()) return offsets;
    int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND);
    if (fd < 0) throw StorageError("cannot append to " + path_);
    std::uint64_t pos = static_cast<std::uint64_t>(::lseek(fd, 0, SEEK_END));
    std::string buf;
    for (const std::string& p : payloads) {
      offsets.push_back(pos + buf.size());
      put_u32(buf, static_cast<std::uint32_t>(p.size()));
      buf.append(p);
    }
    if (::write(fd, buf.data(), buf.size()) !=
        static_cast<ssize_t>(buf.size())) {
      ::close(fd);
      throw StorageError("short write to " + path_);
    }
    ::fsync(fd);
    ::close(fd);
    return offsets;
  }

  std::string read_record(std::uint64_t offset) const {
    int fd = ::open(path_.c_str(), O_RDONLY);
    if (fd < 0) throw StorageError("cannot open " + path_);
    char lb[4];
    if (::pread(fd, lb, 4, offset) != 4) {
      ::close(fd);
      throw StorageError("corrupt store: bad offset in " + path_);
    }
    std::uint32_t len = 0;
    for (int k = 0; k < 4; ++k)
      len |= static_cast<std::uint32_t>(static_cast<unsigned char>(lb[k]))
             << (8 * k);
    std::string payload(len, '\0');
    if (::pread(fd, payload.data(), len, offset + 4) !=
        static_cast<ssize_t>(len)) {
      ::close(fd);
      throw StorageError("corrupt store: truncated record in " + path_);
    }
    ::close(fd);
    return payload;
  }

 private:
  void write_all(const std::string& buf, bool truncate) {
    std::ofstream out(path_, std::ios::binary |
                                 (truncate ? std::ios::trunc : std::ios::app));
    out.write(buf.data(), buf.size());
    if (!out) throw StorageError("cannot write " + path_);
  }
  std::string path_;
  std::string magic_;
};

std::string node_payload(const Node& n) {
  std::string b;
  put_u64(b, n.id);
  b.push_back(static_cast<char>(n.kind));
  put_u32(b, n.dataset);
  put_u64(b, n.representative);
  put_str(b, n.label);
  put_str(b, n.norm_label);
  return b;
}

std::string edge_payload(const Edge& e) {
  std::string b;
  put_u64(b, e.id);
  put_u64(b, e.source);
  put_u64(b, e.target);
  put_u32(b, e.dataset);
  put_f64(b, e.confidence);
  put_str(b, e.label);
  return b;
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), content.size());
    if (!out) throw StorageError("cannot write " + tmp);
  }
  fs::rename(tmp, path);
}

std::string entity_key(NodeKind kind, bool by_uri, const std::string& k) {
  std::string key(1, static_cast<char>('0' + static_cast<int>(kind)));
  key += by_uri ? "u:" : "n:";
  key += k;
  return key;
}

}  // namespace

std::unique_ptr<GraphStore> GraphStore::open(const std::string& path,
                                             OpenMode mode,
                                             const CacheConfig& cache,
                                             const std::string& language) {
  auto store = std::unique_ptr<GraphStore>(new GraphStore());
  store->path_ = path;
  store->mode_ = mode;
  store->language_ = language;
  store->node_cache_ = LruCache<NodeId, Node>(cache.max_nodes);
  store->edge_cache_ = LruCache<EdgeId, Edge>(cache.max_edges);
  if (!path.empty()) store->load();
  store->commit_mark_ = store->graph_.mark();
  store->committed_comparisons_ = store->comparisons_;
  return store;
}

GraphStore::~GraphStore() {
  if (lock_fd_ >= 0) {
    ::flock(lock_fd_, LOCK_UN);
    ::close(lock_fd_);
  }
}

void GraphStore::load() {
  bool exists = fs::exists(path_ + "/meta.json");
  if (mode_ == OpenMode::Read && !exists)
    throw StorageError("no store at " + path_);
  if (!exists) {
    std::error_code ec;
    fs::create_directories(path_, ec);
  }

  // Lock before touching any file.
  std::string lock_path = path_ + "/lock";
  lock_fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
  if (lock_fd_ < 0) throw StorageError("cannot create lock file");
  int op = (mode_ == OpenMode::Read ? LOCK_SH : LOCK_EX) | LOCK_NB;
  if (::flock(lock_fd_, op) != 0) {
    ::close(lock_fd_);
    lock_fd_ = -1;
    throw StorageError("store at " + path_ +
                       " is locked by another process");
  }

  bool create = mode_ == OpenMode::Create;
  json meta;
  if (exists) {
    std::ifstream in(path_ + "/meta.json");
    try {
      meta = json::parse(in);
    } catch (const json::exception&) {
      throw StorageError("corrupt store: unreadable meta.json");
    }
    if (!meta.contains("version") || meta["version"].get<int>() != 1)
      throw StorageError("store version mismatch");
    language_ = meta.value("language", language_);
    committed_nodes_ = meta["committed"]["nodes"].get<std::size_t>();
    committed_edges_ = meta["committed"]["edges"].get<std::size_t>();
    committed_similar_ = meta["committed"]["similar"].get<std::size_t>();
    committed_reps_ = meta["committed"]["reps"].get<std::size_t>();
    committed_entities_ = meta["committed"]["entities"].get<std::size_t>();
    comparisons_ = meta["counters"]["comparisons"].get<std::uint64_t>();
    for (const auto& d : meta["datasets"]) {
      Dataset ds;
      ds.id = d["id"].get<DatasetId>();
      ds.label = d["label"].get<std::string>();
      ds.provenance_uri = d.value("provenance", "");
      ds.node = d["node"].get<NodeId>();
      datasets_.push_back(std::move(ds));
    }
    committed_datasets_ = datasets_.size();
  }

  LogFile nodes, edges, similar, reps, entities;
  nodes.open(path_, kNodesLog, create);
  edges.open(path_, kEdgesLog, create);
  similar.open(path_, kSimilarLog, create);
  reps.open(path_, kRepsLog, create);
  entities.open(path_, kEntitiesLog, create);

  nodes.scan(committed_nodes_, [&](const std::string& p, std::uint64_t off) {
    Reader r(p.data(), p.size());
    std::uint64_t id = r.u64();
    NodeKind kind = static_cast<NodeKind>(r.u8());
    DatasetId ds = r.u32();
    r.u64();  // representative at write time; reps.log replays unions
    std::string label = r.str();
    NodeId got = graph_.add_node(std::move(label), kind, ds);
    if (got != id) throw StorageError("corrupt store: node id sequence");
    node_offsets_.push_back(off);
  });
  edges.scan(committed_edges_, [&](const std::string& p, std::uint64_t off) {
    Reader r(p.data(), p.size());
    std::uint64_t id = r.u64();
    NodeId s = r.u64(), t = r.u64();
    DatasetId ds = r.u32();
    double conf = r.f64();
    std::string label = r.str();
    EdgeId got = graph_.add_edge(s, t, std::move(label), ds, conf);
    if (got != id) throw StorageError("corrupt store: edge id sequence");
    edge_offsets_.push_back(off);
  });
  similar.scan(committed_similar_, [&](const std::string& p, std::uint64_t) {
    Reader r(p.data(), p.size());
    NodeId a = r.u64(), b = r.u64();
    double sim = r.f64();
    graph_.add_similar(a, b, sim);
  });
  reps.scan(committed_reps_, [&](const std::string& p, std::uint64_t) {
    Reader r(p.data(), p.size());
    NodeId a = r.u64(), b = r.u64();
    graph_.union_equivalent(a, b);
  });
  std::unordered_map<NodeId, std::string> uri_of;
  entities.scan(committed_entities_, [&](const std::string& p, std::uint64_t) {
    Reader r(p.data(), p.size());
    NodeId n = r.u64();
    uri_of[n] = r.str();
  });

  // Registries.
  for (NodeId id = 0; id < graph_.node_count(); ++id) {
    const Node& n = graph_.node(id);
    if (is_entity_kind(n.kind)) {
      auto it = uri_of.find(id);
      std::string key = it != uri_of.end()
                            ? entity_key(n.kind, true, it->second)
                            : entity_key(n.kind, false, n.norm_label);
      entity_registry_.emplace(key, id);
    } else if (is_value_kind(n.kind) && !n.label.empty()) {
      value_registry_.emplace(n.label, id);  // first occurrence = min id
    }
  }
  for (auto& [n, uri] : uri_of) entity_uri_persisted_.emplace(n, uri);

  load_spec_table();
  if (!load_keyword_index()) rebuild_indexes();
}

void GraphStore::index_node(NodeId id) {
  const Node& n = graph_.node(id);
  if (n.norm_label.empty()) return;
  std::set<std::string> seen_tokens, seen_stems;
  for (const std::string& tok : text::tokenize(n.norm_label)) {
    if (seen_tokens.insert(tok).second) exact_index_[tok].push_back(id);
    std::string st = text::stem(tok, language_);
    if (seen_stems.insert(st).second) stem_index_[st].push_back(id);
  }
}

void GraphStore::rebuild_indexes() {
  exact_index_.clear();
  stem_index_.clear();
  for (NodeId id = 0; id < graph_.node_count(); ++id) index_node(id);
}

Counters GraphStore::counters() const {
  Counters c;
  c.nodes = graph_.node_count();
  c.edges = graph_.edge_count();
  for (NodeId id = 0; id < graph_.node_count(); ++id)
    if (is_entity_kind(graph_.node(id).kind)) ++c.entities;
  c.comparisons = comparisons_;
  return c;
}

DatasetId GraphStore::begin_dataset(const std::string& label,
                                    const std::string& provenance_uri) {
  DatasetId id = static_cast<DatasetId>(datasets_.size());
  Dataset ds;
  ds.id = id;
  ds.label = label;
  ds.provenance_uri = provenance_uri;
  ds.node = add_node(label, NodeKind::Dataset, id);
  if (!provenance_uri.empty()) {
    NodeId prov = add_node(provenance_uri, NodeKind::Uri, id);
    add_edge(ds.node, prov, kProvLabel, id, 1.0);
  }
  datasets_.push_back(std::move(ds));
  return id;
}

NodeId GraphStore::add_node(std::string label, NodeKind kind,
                            DatasetId dataset) {
  if (mode_ == OpenMode::Read) throw StorageError("store is read-only");
  NodeId id = graph_.add_node(std::move(label), kind, dataset);
  index_node(id);
  return id;
}

EdgeId GraphStore::add_edge(NodeId source, NodeId target, std::string label,
                            DatasetId dataset, double confidence) {
  if (mode_ == OpenMode::Read) throw StorageError("store is read-only");
  return graph_.add_edge(source, target, std::move(label), dataset, confidence);
}

std::size_t GraphStore::add_similar(NodeId a, NodeId b, double similarity) {
  if (mode_ == OpenMode::Read) throw StorageError("store is read-only");
  return graph_.add_similar(a, b, similarity);
}

NodeId GraphStore::union_equivalent(NodeId a, NodeId b) {
  if (mode_ == OpenMode::Read) throw StorageError("store is read-only");
  NodeId before_a = graph_.representative(a);
  NodeId before_b = graph_.representative(b);
  NodeId rep = graph_.union_equivalent(a, b);
  if (before_a != before_b) union_journal_.emplace_back(a, b);
  return rep;
}

void GraphStore::add_entity_uri(NodeId entity, const std::string& uri) {
  entity_uri_journal_.emplace_back(entity, uri);
}

void GraphStore::set_specificities(std::vector<double> by_edge) {
  spec_ = std::move(by_edge);
  spec_dirty_ = true;
}

void GraphStore::commit() {
  if (!path_.empty()) {
    LogFile nodes, edges, similar, reps, entities;
    nodes.open(path_, kNodesLog, false);
    edges.open(path_, kEdgesLog, false);
    similar.open(path_, kSimilarLog, false);
    reps.open(path_, kRepsLog, false);
    entities.open(path_, kEntitiesLog, false);

    std::vector<std::string> batch;
    for (std::size_t i = committed_nodes_; i < graph_.node_count(); ++i)
      batch.push_back(node_payload(graph_.node(i)));
    for (std::uint64_t off : nodes.append(batch)) node_offsets_.push_back(off);

    batch.clear();
    for (std::size_t i = committed_edges_; i < graph_.edge_count(); ++i)
      batch.push_back(edge_payload(graph_.edge(i)));
    for (std::uint64_t off : edges.append(batch)) edge_offsets_.push_back(off);

    batch.clear();
    for (std::size_t i = committed_similar_; i < graph_.similar_count(); ++i) {
      const SimilarRow& r = graph_.similar(i);
      std::string b;
      put_u64(b, r.source);
      put_u64(b, r.target);
      put_f64(b, r.similarity);
      batch.push_back(std::move(b));
    }
    similar.append(batch);

    batch.clear();
    for (const auto& [a, b] : union_journal_) {
      std::string p;
      put_u64(p, a);
      put_u64(p, b);
      batch.push_back(std::move(p));
    }
    reps.append(batch);

    batch.clear();
    for (const auto& [n, uri] : entity_uri_journal_) {
      std::string p;
      put_u64(p, n);
      put_str(p, uri);
      batch.push_back(std::move(p));
    }
    entities.append(batch);

    if (spec_dirty_) write_spec_table();
    write_keyword_index();
  }

  committed_nodes_ = graph_.node_count();
  committed_edges_ = graph_.edge_count();
  committed_similar_ = graph_.similar_count();
  committed_reps_ += union_journal_.size();
  committed_entities_ += entity_uri_journal_.size();
  committed_datasets_ = datasets_.size();
  for (auto& [n, uri] : entity_uri_journal_)
    entity_uri_persisted_.emplace(n, uri);
  union_journal_.clear();
  entity_uri_journal_.clear();
  value_reg_journal_.clear();
  entity_reg_journal_.clear();
  committed_comparisons_ = comparisons_;
  spec_dirty_ = false;

  if (!path_.empty()) write_meta();
  commit_mark_ = graph_.mark();
}

void GraphStore::abort() {
  graph_.rollback(commit_mark_);
  datasets_.resize(committed_datasets_);
  for (const std::string& k : value_reg_journal_) value_registry_.erase(k);
  for (const std::string& k : entity_reg_journal_) entity_registry_.erase(k);
  value_reg_journal_.clear();
  entity_reg_journal_.clear();
  union_journal_.clear();
  entity_uri_journal_.clear();
  comparisons_ = committed_comparisons_;
  if (spec_dirty_) {
    spec_.clear();
    load_spec_table();
    spec_dirty_ = false;
  }
  node_offsets_.resize(committed_nodes_);
  edge_offsets_.resize(committed_edges_);
  rebuild_indexes();
}

std::optional<NodeId> GraphStore::pergraph_value(
    const std::string& label) const {
  auto it = value_registry_.find(label);
  if (it == value_registry_.end()) return std::nullopt;
  return it->second;
}

void GraphStore::register_pergraph_value(const std::string& label, NodeId id) {
  if (value_registry_.emplace(label, id).second)
    value_reg_journal_.push_back(label);
}

std::optional<NodeId> GraphStore::entity_by_norm(
    NodeKind kind, const std::string& norm) const {
  auto it = entity_registry_.find(entity_key(kind, false, norm));
  if (it == entity_registry_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> GraphStore::entity_by_uri(NodeKind kind,
                                                const std::string& uri) const {
  auto it = entity_registry_.find(entity_key(kind, true, uri));
  if (it == entity_registry_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> GraphStore::entity_uri(NodeId entity) const {
  auto it = entity_uri_persisted_.find(entity);
  if (it != entity_uri_persisted_.end()) return it->second;
  for (const auto& [n, uri] : entity_uri_journal_)
    if (n == entity) return uri;
  return std::nullopt;
}

void GraphStore::register_entity_norm(NodeKind kind, const std::string& norm,
                                      NodeId id) {
  std::string key = entity_key(kind, false, norm);
  if (entity_registry_.emplace(key, id).second)
    entity_reg_journal_.push_back(key);
}

void GraphStore::register_entity_uri(NodeKind kind, const std::string& uri,
                                     NodeId id) {
  std::string key = entity_key(kind, true, uri);
  if (entity_registry_.emplace(key, id).second)
    entity_reg_journal_.push_back(key);
}

std::vector<NodeId> GraphStore::lookup_keyword(const std::string& token,
                                               MatchMode mode) const {
  std::string folded = text::fold(token);
  if (mode == MatchMode::Substring) {
    std::vector<NodeId> out;
    for (NodeId id = 0; id < graph_.node_count(); ++id) {
      const std::string& norm = graph_.node(id).norm_label;
      if (!norm.empty() && norm.find(folded) != std::string::npos)
        out.push_back(id);
    }
    return out;
  }
  // Multi-token keywords ("Levallois-Perret") match nodes carrying every
  // token; posting lists are intersected in ascending id order.
  std::vector<std::string> tokens = text::tokenize(folded);
  if (tokens.empty()) return {};
  const auto& index = mode == MatchMode::Exact ? exact_index_ : stem_index_;
  std::vector<NodeId> result;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string key =
        mode == MatchMode::Exact ? tokens[i] : text::stem(tokens[i], language_);
    auto it = index.find(key);
    if (it == index.end()) return {};
    if (i == 0) {
      result = it->second;
      continue;
    }
    std::vector<NodeId> merged;
    std::set_intersection(result.begin(), result.end(), it->second.begin(),
                          it->second.end(), std::back_inserter(merged));
    result = std::move(merged);
    if (result.empty()) return {};
  }
  return result;
}

std::vector<SimilarRow> GraphStore::scan_similar(double threshold) const {
  std::vector<SimilarRow> out;
  for (std::size_t i = 0; i < graph_.similar_count(); ++i) {
    const SimilarRow& r = graph_.similar(i);
    if (r.similarity >= threshold) out.push_back(r);
  }
  return out;
}

Node GraphStore::node_record(NodeId id) const {
  if (path_.empty() || id >= committed_nodes_) return graph_.node(id);
  if (auto hit = node_cache_.get(id)) return *hit;
  LogFile log;
  log.open(path_, kNodesLog, false);
  std::string p = log.read_record(node_offsets_.at(id));
  Reader r(p.data(), p.size());
  Node n;
  n.id = r.u64();
  n.kind = static_cast<NodeKind>(r.u8());
  n.dataset = r.u32();
  n.representative = graph_.representative(id);  // reps column is live
  n.label = r.str();
  n.norm_label = r.str();
  node_cache_.put(id, n);
  return n;
}

Edge GraphStore::edge_record(EdgeId id) const {
  if (path_.empty() || id >= committed_edges_) return graph_.edge(id);
  if (auto hit = edge_cache_.get(id)) return *hit;
  LogFile log;
  log.open(path_, kEdgesLog, false);
  std::string p = log.read_record(edge_offsets_.at(id));
  Reader r(p.data(), p.size());
  Edge e;
  e.id = r.u64();
  e.source = r.u64();
  e.target = r.u64();
  e.dataset = r.u32();
  e.confidence = r.f64();
  e.label = r.str();
  edge_cache_.put(id, e);
  return e;
}

void GraphStore::write_meta() {
  json meta;
  meta["version"] = 1;
  meta["language"] = language_;
  Counters c = counters();
  meta["counters"] = {{"nodes", c.nodes},
                      {"edges", c.edges},
                      {"entities", c.entities},
                      {"comparisons", c.comparisons}};
  meta["committed"] = {{"nodes", committed_nodes_},
                       {"edges", committed_edges_},
                       {"similar", committed_similar_},
                       {"reps", committed_reps_},
                       {"entities", committed_entities_}};
  json dss = json::array();
  for (const Dataset& d : datasets_) {
    dss.push_back({{"id", d.id},
                   {"label", d.label},
                   {"provenance", d.provenance_uri},
                   {"node", d.node}});
  }
  meta["datasets"] = std::move(dss);
  atomic_write(path_ + "/meta.json", meta.dump(2) + "\n");
}

void GraphStore::write_keyword_index() {
  std::string buf = "TRKW";
  put_u32(buf, kStoreVersion);
  put_u64(buf, graph_.node_count());
  std::vector<const std::string*> tokens;
  tokens.reserve(exact_index_.size());
  for (const auto& [tok, ids] : exact_index_) tokens.push_back(&tok);
  std::sort(tokens.begin(), tokens.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  put_u64(buf, tokens.size());
  for (const std::string* tok : tokens) {
    put_str(buf, *tok);
    const auto& ids = exact_index_.at(*tok);
    put_u64(buf, ids.size());
    for (NodeId id : ids) put_u64(buf, id);
  }
  atomic_write(path_ + "/keywords.idx", buf);
}

bool GraphStore::load_keyword_index() {
  if (path_.empty()) return false;
  std::ifstream in(path_ + "/keywords.idx", std::ios::binary);
  if (!in) return false;
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 8 || buf.compare(0, 4, "TRKW") != 0) return false;
  try {
    Reader r(buf.data() + 4, buf.size() - 4);
    if (r.u32() != kStoreVersion) return false;
    if (r.u64() != graph_.node_count()) return false;  // stale
    std::uint64_t ntok = r.u64();
    for (std::uint64_t i = 0; i < ntok; ++i) {
      std::string tok = r.str();
      std::uint64_t nids = r.u64();
      std::vector<NodeId> ids(nids);
      for (auto& id : ids) id = r.u64();
      exact_index_.emplace(std::move(tok), std::move(ids));
    }
  } catch (const StorageError&) {
    exact_index_.clear();
    return false;
  }
  // The stem index is derived from the exact tokens.
  for (const auto& [tok, ids] : exact_index_) {
    auto& bucket = stem_index_[text::stem(tok, language_)];
    bucket.insert(bucket.end(), ids.begin(), ids.end());
  }
  for (auto& [st, ids] : stem_index_) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  return true;
}

void GraphStore::write_spec_table() {
  std::string buf = "TRSP";
  put_u32(buf, kStoreVersion);
  put_u64(buf, spec_.size());
  for (double v : spec_) put_f64(buf, v);
  atomic_write(path_ + "/spec.idx", buf);
}

void GraphStore::load_spec_table() {
  std::ifstream in(path_ + "/spec.idx", std::ios::binary);
  if (!in) return;
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 8 || buf.compare(0, 4, "TRSP") != 0) return;
  try {
    Reader r(buf.data() + 4, buf.size() - 4);
    if (r.u32() != kStoreVersion) return;
    std::uint64_t n = r.u64();
    if (n > graph_.edge_count()) return;  // stale
    spec_.resize(n);
    for (auto& v : spec_) v = r.f64();
  } catch (const StorageError&) {
    spec_.clear();
  }
}

}  // namespace trellis
