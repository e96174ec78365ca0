// Copyright 2026 The PSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSS_REPOSITORY_HPP
#define PSS_REPOSITORY_HPP

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pss/errors.hpp"
#include "pss/features.hpp"
#include "pss/graph.hpp"
#include "pss/metrics.hpp"
#include "pss/spectral.hpp"

namespace pss {

inline constexpr int kRepositorySchemaVersion = 1;

/// One preprocessed program as stored in a repository: its spectral
/// signature, the baseline features all other metrics consume, and the wall
/// time spent preprocessing it.
struct RepositoryRecord {
  std::string program_id;
  SpectralSignature signature;
  BaselineFeatures baseline;
  double preprocess_wall_time = 0.0;  // seconds

  bool operator==(const RepositoryRecord&) const = default;
};

/// Builds the repository record of one program: undirected call graph ->
/// Laplacian -> (full or top-K) spectrum -> normalized v; CFG edge counts ->
/// normalized w; plus all baseline features.
inline RepositoryRecord preprocess(const ProgramFeatures& p, const KMode& mode) {
  if (!mode.full && mode.k < 1) throw InvalidParameter("K must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  RepositoryRecord rec;
  rec.program_id = p.program_id;
  rec.signature.k_mode = mode;

  const UndirectedGraph g = undirected_call_graph(p);
  const SparseLaplacian L(g);
  const Spectrum spec =
      mode.full ? full_spectrum(L) : top_k_spectrum(L, mode.k);
  rec.signature.v = normalize(spec.eigenvalues);

  const auto counts = cfg_edge_vector(p);
  std::vector<double> w(counts.begin(), counts.end());
  rec.signature.w = normalize(std::move(w));

  rec.baseline.file_size_bytes = p.file_size_bytes;
  rec.baseline.disasm_size_bytes = p.disasm_size_bytes;
  rec.baseline.cg_n_vertices = g.n_vertices;
  rec.baseline.cg_n_edges = g.edges.size();
  if (p.mnemonics)
    rec.baseline.ngram_vector = mutantxs_embed(*p.mnemonics);
  else
    rec.baseline.ngram_vector.assign(kNgramDimensions, 0.0);
  if (p.strings) rec.baseline.string_set = *p.strings;
  if (p.external_names) {
    rec.baseline.external_name_set = *p.external_names;
  } else {
    for (const auto& n : p.call_graph.nodes)
      if (n.kind == NodeKind::external && n.name)
        rec.baseline.external_name_set.insert(*n.name);
  }

  rec.preprocess_wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rec;
}

// ---------------------------------------------------------------------------
// Metric dispatch
// ---------------------------------------------------------------------------

/// Evaluates one similarity check between a target and a candidate record.
/// `degenerate` (optional) is incremented when a Jaccard metric hits the
/// both-empty convention. Throws UnknownMetric for unrecognized ids.
inline double evaluate_metric(std::string_view metric,
                              const RepositoryRecord& target,
                              const RepositoryRecord& candidate,
                              std::size_t* degenerate = nullptr) {
  if (metric == "pss" || metric == "psso")
    return pss_similarity(target.signature, candidate.signature);
  if (metric == "simcg") return sim_cg(target.signature.v, candidate.signature.v);
  if (metric == "simcfg")
    return sim_cfg(target.signature.w, candidate.signature.w);
  if (metric == "bsize") return b_size(target.baseline, candidate.baseline);
  if (metric == "dsize") return d_size(target.baseline, candidate.baseline);
  if (metric == "shape")
    return shape_similarity(target.baseline, candidate.baseline);
  if (metric == "ascg")
    return ascg(target.signature.v, candidate.signature.v);
  if (metric == "mutantxs")
    return mutantxs_sim(target.baseline.ngram_vector,
                        candidate.baseline.ngram_vector);
  if (metric == "stringset") {
    if (degenerate != nullptr && target.baseline.string_set.empty() &&
        candidate.baseline.string_set.empty())
      ++*degenerate;
    return string_set_sim(target.baseline.string_set,
                          candidate.baseline.string_set);
  }
  if (metric == "functionset") {
    if (degenerate != nullptr && target.baseline.external_name_set.empty() &&
        candidate.baseline.external_name_set.empty())
      ++*degenerate;
    return function_set_sim(target.baseline.external_name_set,
                            candidate.baseline.external_name_set);
  }
  throw UnknownMetric("unknown metric: " + std::string(metric));
}

// ---------------------------------------------------------------------------
// Query results
// ---------------------------------------------------------------------------

struct RankedEntry {
  std::string program_id;
  double similarity = 0.0;

  bool operator==(const RankedEntry&) const = default;
};

/// Ranking of repository programs by similarity to one target, descending;
/// ties broken by ascending program id. Timing is split so preprocessing
/// and similarity checks can be reported separately.
struct RankedResult {
  std::string target_id;
  std::string metric;
  std::vector<RankedEntry> entries;
  double query_wall_time = 0.0;       // seconds, preprocess + checks
  double preprocess_wall_time = 0.0;  // seconds, target preprocessing
  double checks_wall_time = 0.0;      // seconds, scan + sort
  std::size_t degenerate_jaccard_pairs = 0;
};

using CloneMap = std::map<std::string, std::set<std::string>>;

/// Precision@1 of one clone search: 1 if the top-ranked program is a clone
/// of the target according to the ground truth, else 0.
inline int decide(const RankedResult& result, const CloneMap& clone_map) {
  if (result.entries.empty())
    throw InvalidParameter("decide requires a non-empty ranking");
  auto it = clone_map.find(result.target_id);
  if (it == clone_map.end()) return 0;
  return it->second.count(result.entries.front().program_id) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Repository
// ---------------------------------------------------------------------------

namespace detail {

inline json k_mode_to_json(const KMode& m) {
  json j;
  j["mode"] = m.full ? "full" : "top_k";
  if (!m.full) j["k"] = m.k;
  return j;
}

inline KMode k_mode_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaViolation(path, "expected an object");
  const std::string mode = require_string(require_key(j, "mode", path), path + ".mode");
  if (mode == "full") return KMode::full_mode();
  if (mode == "top_k") {
    const auto k = require_uint(require_key(j, "k", path), path + ".k");
    if (k < 1) throw SchemaViolation(path + ".k", "must be >= 1");
    return KMode::top_k(k);
  }
  throw SchemaViolation(path + ".mode", "expected \"full\" or \"top_k\"");
}

inline json record_to_json(const RepositoryRecord& r) {
  json j;
  j["program_id"] = r.program_id;
  j["preprocess_wall_time"] = r.preprocess_wall_time;
  j["signature"] = {{"v", r.signature.v},
                    {"w", r.signature.w},
                    {"k_mode", k_mode_to_json(r.signature.k_mode)}};
  j["baseline"] = {{"file_size_bytes", r.baseline.file_size_bytes},
                   {"disasm_size_bytes", r.baseline.disasm_size_bytes},
                   {"cg_n_vertices", r.baseline.cg_n_vertices},
                   {"cg_n_edges", r.baseline.cg_n_edges},
                   {"ngram_vector", r.baseline.ngram_vector},
                   {"string_set", r.baseline.string_set},
                   {"external_name_set", r.baseline.external_name_set}};
  return j;
}

inline std::vector<double> double_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaViolation(path, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw SchemaViolation(path + "[" + std::to_string(i) + "]",
                            "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

inline RepositoryRecord record_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaViolation(path, "expected an object");
  RepositoryRecord r;
  r.program_id =
      require_string(require_key(j, "program_id", path), path + ".program_id");
  const auto& w = require_key(j, "preprocess_wall_time", path);
  if (!w.is_number())
    throw SchemaViolation(path + ".preprocess_wall_time", "expected a number");
  r.preprocess_wall_time = w.get<double>();
  const auto& sig = require_key(j, "signature", path);
  r.signature.v = double_array(require_key(sig, "v", path + ".signature"),
                               path + ".signature.v");
  r.signature.w = double_array(require_key(sig, "w", path + ".signature"),
                               path + ".signature.w");
  r.signature.k_mode = k_mode_from_json(
      require_key(sig, "k_mode", path + ".signature"), path + ".signature.k_mode");
  const auto& base = require_key(j, "baseline", path);
  const std::string bp = path + ".baseline";
  r.baseline.file_size_bytes =
      require_uint(require_key(base, "file_size_bytes", bp), bp + ".file_size_bytes");
  r.baseline.disasm_size_bytes = require_uint(
      require_key(base, "disasm_size_bytes", bp), bp + ".disasm_size_bytes");
  r.baseline.cg_n_vertices =
      require_uint(require_key(base, "cg_n_vertices", bp), bp + ".cg_n_vertices");
  r.baseline.cg_n_edges =
      require_uint(require_key(base, "cg_n_edges", bp), bp + ".cg_n_edges");
  r.baseline.ngram_vector = double_array(
      require_key(base, "ngram_vector", bp), bp + ".ngram_vector");
  r.baseline.string_set =
      parse_string_set(require_key(base, "string_set", bp), bp + ".string_set");
  r.baseline.external_name_set = parse_string_set(
      require_key(base, "external_name_set", bp), bp + ".external_name_set");
  return r;
}

// Atomic file replacement: write to a temp sibling, then rename over.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

using MetricFn =
    std::function<double(const RepositoryRecord&, const RepositoryRecord&)>;

/// A collection of preprocessed program records with a uniform signature
/// mode. Optionally bound to an on-disk directory (manifest.json plus
/// records.ndjson, one canonical-JSON record per line); every mutation is
/// then persisted atomically via temp-file rename.
class Repository {
 public:
  /// New in-memory repository.
  static Repository create(const KMode& mode) {
    Repository r;
    r.mode_ = mode;
    return r;
  }

  /// New repository persisted at `dir` (created if missing).
  static Repository create(const std::filesystem::path& dir, const KMode& mode) {
    Repository r = create(mode);
    std::filesystem::create_directories(dir);
    r.dir_ = dir;
    r.persist();
    return r;
  }

  /// Loads an existing on-disk repository.
  static Repository open(const std::filesystem::path& dir) {
    namespace d = detail;
    std::ifstream manifest_in(dir / "manifest.json");
    if (!manifest_in)
      throw MissingProgram("no repository manifest at " + dir.string());
    d::json manifest;
    try {
      manifest = d::json::parse(manifest_in);
    } catch (const d::json::parse_error& e) {
      throw MalformedJson(std::string("manifest: ") + e.what());
    }
    if (d::require_uint(d::require_key(manifest, "schema_version", "manifest"),
                        "manifest.schema_version") != kRepositorySchemaVersion)
      throw SchemaViolation("manifest.schema_version", "unsupported version");
    Repository r;
    r.mode_ = d::k_mode_from_json(
        d::require_key(manifest, "k_mode", "manifest"), "manifest.k_mode");
    const auto count = d::require_uint(
        d::require_key(manifest, "count", "manifest"), "manifest.count");
    r.dir_ = dir;

    std::ifstream in(dir / "records.ndjson");
    if (!in && count > 0)
      throw MissingProgram("no records file at " + dir.string());
    std::string line;
    std::size_t lineno = 0;
    std::set<std::string> ids;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ++lineno;
      d::json j;
      try {
        j = d::json::parse(line);
      } catch (const d::json::parse_error& e) {
        throw MalformedJson("records.ndjson line " + std::to_string(lineno) +
                            ": " + e.what());
      }
      auto rec = d::record_from_json(j, "record");
      if (!(rec.signature.k_mode == r.mode_))
        throw ModeMismatch("record " + rec.program_id +
                           " does not match the repository k_mode");
      if (!ids.insert(rec.program_id).second)
        throw DuplicateId("duplicate program id: " + rec.program_id);
      r.records_.push_back(std::move(rec));
    }
    if (r.records_.size() != count)
      throw SchemaViolation("manifest.count",
                            "record count does not match records.ndjson");
    return r;
  }

  const KMode& k_mode() const { return mode_; }
  std::size_t size() const { return records_.size(); }
  const std::vector<RepositoryRecord>& records() const { return records_; }

  bool contains(std::string_view id) const {
    for (const auto& r : records_)
      if (r.program_id == id) return true;
    return false;
  }

  /// Adds one record. The record's mode must match the repository's and the
  /// id must be new. Persists immediately when directory-bound.
  void add(RepositoryRecord record) {
    if (!(record.signature.k_mode == mode_))
      throw ModeMismatch("record " + record.program_id +
                         " does not match the repository k_mode");
    if (contains(record.program_id))
      throw DuplicateId("duplicate program id: " + record.program_id);
    records_.push_back(std::move(record));
    if (dir_) persist();
  }

  /// Convenience: preprocess + add.
  void add_program(const ProgramFeatures& p) { add(preprocess(p, mode_)); }

  /// Binds the repository to `dir` and writes it out.
  void save(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    dir_ = dir;
    persist();
  }

  /// Ranks every stored program by similarity to the target. The target is
  /// preprocessed once with the repository's signature mode. Deterministic:
  /// ties break by ascending program id.
  RankedResult query(const ProgramFeatures& target, std::string_view metric,
                     std::size_t top_n, unsigned workers = 1) const {
    if (!is_known_metric(metric))
      throw UnknownMetric("unknown metric: " + std::string(metric));
    const auto t0 = std::chrono::steady_clock::now();
    const RepositoryRecord target_record = preprocess(target, mode_);
    const auto t1 = std::chrono::steady_clock::now();
    RankedResult result = scan(
        target_record,
        [&](const RepositoryRecord& a, const RepositoryRecord& b,
            std::size_t* degenerate) {
          return evaluate_metric(metric, a, b, degenerate);
        },
        metric, top_n, workers);
    const auto t2 = std::chrono::steady_clock::now();
    result.preprocess_wall_time = std::chrono::duration<double>(t1 - t0).count();
    result.checks_wall_time = std::chrono::duration<double>(t2 - t1).count();
    result.query_wall_time = std::chrono::duration<double>(t2 - t0).count();
    return result;
  }

  /// Same ranking pipeline with a caller-supplied similarity function;
  /// used by the evaluation harness for control metrics.
  RankedResult query_with(const RepositoryRecord& target_record,
                          const MetricFn& fn, std::string_view label,
                          std::size_t top_n, unsigned workers = 1) const {
    const auto t0 = std::chrono::steady_clock::now();
    RankedResult result =
        scan(target_record,
             [&](const RepositoryRecord& a, const RepositoryRecord& b,
                 std::size_t*) { return fn(a, b); },
             label, top_n, workers);
    const auto t1 = std::chrono::steady_clock::now();
    result.checks_wall_time = std::chrono::duration<double>(t1 - t0).count();
    result.query_wall_time = result.checks_wall_time;
    return result;
  }

 private:
  template <typename Eval>
  RankedResult scan(const RepositoryRecord& target_record, const Eval& eval,
                    std::string_view metric, std::size_t top_n,
                    unsigned workers) const {
    if (records_.empty()) throw EmptyRepository("repository is empty");
    RankedResult result;
    result.target_id = target_record.program_id;
    result.metric = std::string(metric);

    std::vector<double> sims(records_.size());
    std::size_t degenerate = 0;
    if (workers <= 1 || records_.size() < 2 * workers) {
      for (std::size_t i = 0; i < records_.size(); ++i)
        sims[i] = eval(target_record, records_[i], &degenerate);
    } else {
      // Shard the scan; each worker owns a contiguous index range, so the
      // merged result is independent of scheduling.
      std::vector<std::thread> pool;
      std::vector<std::size_t> degenerate_per(workers, 0);
      const std::size_t chunk = (records_.size() + workers - 1) / workers;
      for (unsigned wi = 0; wi < workers; ++wi) {
        const std::size_t lo = wi * chunk;
        const std::size_t hi = std::min(records_.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, wi] {
          for (std::size_t i = lo; i < hi; ++i)
            sims[i] = eval(target_record, records_[i], &degenerate_per[wi]);
        });
      }
      for (auto& th : pool) th.join();
      for (auto c : degenerate_per) degenerate += c;
    }

    std::vector<std::size_t> order(records_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (sims[a] != sims[b]) return sims[a] > sims[b];
      return records_[a].program_id < records_[b].program_id;
    });
    const std::size_t keep = std::min(top_n, order.size());
    result.entries.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
      result.entries.push_back({records_[order[i]].program_id, sims[order[i]]});
    result.degenerate_jaccard_pairs = degenerate;
    return result;
  }

  void persist() const {
    namespace d = detail;
    std::string lines;
    for (const auto& r : records_) {
      lines += d::record_to_json(r).dump();
      lines += '\n';
    }
    d::write_file_atomic(*dir_ / "records.ndjson", lines);
    d::json manifest;
    manifest["schema_version"] = kRepositorySchemaVersion;
    manifest["k_mode"] = d::k_mode_to_json(mode_);
    manifest["count"] = records_.size();
    d::write_file_atomic(*dir_ / "manifest.json", manifest.dump());
  }

  KMode mode_;
  std::vector<RepositoryRecord> records_;
  std::optional<std::filesystem::path> dir_;
};

}  // namespace pss

#endif  // PSS_REPOSITORY_HPP
