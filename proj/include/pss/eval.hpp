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

#ifndef PSS_EVAL_HPP
#define PSS_EVAL_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pss/errors.hpp"
#include "pss/repository.hpp"

namespace pss {

// ---------------------------------------------------------------------------
// Test fields
// ---------------------------------------------------------------------------

/// A (targets, repository) evaluation pair with clone ground truth. Targets
/// are feature files on disk; the repository is a preprocessed directory.
/// `rank_biserial_groups` optionally names, per target, the candidate ids
/// sharing the attribute under study (e.g. an optimization level).
struct TestField {
  std::string name;
  std::vector<std::filesystem::path> targets;
  std::filesystem::path repository;
  CloneMap clone_map;
  std::map<std::string, std::set<std::string>> rank_biserial_groups;
};

/// Reads a test-field config. Relative paths resolve against the config
/// file's directory.
inline TestField load_test_field(const std::filesystem::path& config_path) {
  namespace d = detail;
  std::ifstream in(config_path);
  if (!in) throw MissingProgram("no test-field config at " + config_path.string());
  d::json root;
  try {
    root = d::json::parse(in);
  } catch (const d::json::parse_error& e) {
    throw MalformedJson(std::string("test-field config: ") + e.what());
  }
  if (!root.is_object()) throw SchemaViolation("$", "expected an object");
  d::reject_unknown_keys(
      root, {"name", "targets", "repository", "clone_map", "rank_biserial"}, "$");

  const auto base = config_path.has_parent_path()
                        ? config_path.parent_path()
                        : std::filesystem::path(".");
  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  TestField tf;
  tf.name = d::require_string(d::require_key(root, "name", "$"), "$.name");
  const auto& targets = d::require_key(root, "targets", "$");
  if (!targets.is_array()) throw SchemaViolation("$.targets", "expected an array");
  for (std::size_t i = 0; i < targets.size(); ++i)
    tf.targets.push_back(resolve(d::require_string(
        targets[i], "$.targets[" + std::to_string(i) + "]")));
  tf.repository = resolve(
      d::require_string(d::require_key(root, "repository", "$"), "$.repository"));
  const auto& cm = d::require_key(root, "clone_map", "$");
  if (!cm.is_object()) throw SchemaViolation("$.clone_map", "expected an object");
  for (auto it = cm.begin(); it != cm.end(); ++it)
    tf.clone_map[it.key()] =
        d::parse_string_set(it.value(), "$.clone_map." + it.key());
  if (auto it = root.find("rank_biserial"); it != root.end()) {
    if (!it->is_object())
      throw SchemaViolation("$.rank_biserial", "expected an object");
    for (auto gi = it->begin(); gi != it->end(); ++gi)
      tf.rank_biserial_groups[gi.key()] =
          d::parse_string_set(gi.value(), "$.rank_biserial." + gi.key());
  }
  return tf;
}

// ---------------------------------------------------------------------------
// Rank-biserial correlation
// ---------------------------------------------------------------------------

/// Mann-Whitney rank-biserial correlation r = 1 - 2U/(n1*n2), with midranks
/// for ties. `ranks` are rank values (smaller is better); `flags` marks the
/// group of interest. r = 1 when the flagged group holds all the best
/// ranks, -1 when it holds all the worst.
inline double rank_biserial(const std::vector<bool>& flags,
                            const std::vector<double>& ranks) {
  if (flags.size() != ranks.size())
    throw InvalidParameter("flags and ranks must have equal length");
  const std::size_t n = flags.size();
  if (n < 2) throw InvalidParameter("need at least two observations");
  std::size_t n1 = 0;
  for (bool f : flags) n1 += f ? 1 : 0;
  const std::size_t n2 = n - n1;
  if (n1 == 0 || n2 == 0)
    throw DegenerateGroups("both groups must be non-empty");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
  std::vector<double> midrank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && ranks[order[j + 1]] == ranks[order[i]]) ++j;
    const double mr = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) midrank[order[k]] = mr;
    i = j + 1;
  }
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (flags[k]) rank_sum += midrank[k];
  const double u = rank_sum - static_cast<double>(n1) *
                                  (static_cast<double>(n1) + 1.0) / 2.0;
  const double pairs = static_cast<double>(n1) * static_cast<double>(n2);
  return (pairs - 2.0 * u) / pairs;  // == 1 - 2U/(n1*n2)
}

// ---------------------------------------------------------------------------
// Evaluation runs
// ---------------------------------------------------------------------------

struct MetricEvalResult {
  std::string metric;
  double precision = 0.0;
  double preprocess_s = 0.0;  // total target preprocessing
  double checks_s = 0.0;      // total similarity checks
  double per_search_s = 0.0;  // mean wall time per clone search
  std::optional<double> rank_biserial;
};

struct EvalReport {
  std::string field_name;
  std::size_t n_targets = 0;
  std::size_t repository_size = 0;
  std::vector<MetricEvalResult> metrics;
};

namespace detail {

inline ProgramFeatures parse_feature_path(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingProgram("no feature file at " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_feature_file(buf.str());
}

}  // namespace detail

/// Runs every requested metric over one test field: mean precision@1 across
/// targets, with preprocessing and check times recorded separately.
/// `extra_metrics` supplies ids outside the built-in table (control or
/// oracle metrics for harness checks); targets for those are preprocessed
/// with the repository's mode as usual.
inline EvalReport run_test_field(
    const TestField& tf, std::span<const std::string> metrics,
    const std::map<std::string, MetricFn>& extra_metrics = {},
    unsigned workers = 1) {
  for (const auto& m : metrics)
    if (!is_known_metric(m) && extra_metrics.find(m) == extra_metrics.end())
      throw UnknownMetric("unknown metric: " + m);

  const Repository repo = Repository::open(tf.repository);
  if (repo.size() == 0) throw EmptyRepository("repository is empty");

  std::vector<ProgramFeatures> targets;
  targets.reserve(tf.targets.size());
  for (const auto& path : tf.targets)
    targets.push_back(detail::parse_feature_path(path));
  if (targets.empty()) throw InvalidParameter("test field has no targets");

  for (const auto& t : targets) {
    if (repo.contains(t.program_id))
      throw InvalidParameter("target " + t.program_id +
                             " is literally present in the repository");
    auto it = tf.clone_map.find(t.program_id);
    bool has_clone = false;
    if (it != tf.clone_map.end())
      for (const auto& id : it->second)
        if (repo.contains(id)) has_clone = true;
    if (!has_clone)
      throw InvalidParameter("target " + t.program_id +
                             " has no clone in the repository");
  }

  EvalReport report;
  report.field_name = tf.name;
  report.n_targets = targets.size();
  report.repository_size = repo.size();

  for (const auto& metric : metrics) {
    MetricEvalResult mr;
    mr.metric = metric;
    int successes = 0;
    std::vector<double> correlations;
    const bool builtin = is_known_metric(metric);
    const MetricFn* fn =
        builtin ? nullptr : &extra_metrics.at(metric);
    for (const auto& target : targets) {
      RankedResult result;
      if (builtin) {
        result = repo.query(target, metric, repo.size(), workers);
      } else {
        const auto t0 = std::chrono::steady_clock::now();
        const RepositoryRecord target_record = preprocess(target, repo.k_mode());
        const auto t1 = std::chrono::steady_clock::now();
        result = repo.query_with(target_record, *fn, metric, repo.size(), workers);
        result.preprocess_wall_time =
            std::chrono::duration<double>(t1 - t0).count();
        result.query_wall_time += result.preprocess_wall_time;
      }
      successes += decide(result, tf.clone_map);
      mr.preprocess_s += result.preprocess_wall_time;
      mr.checks_s += result.checks_wall_time;

      auto groups = tf.rank_biserial_groups.find(target.program_id);
      if (groups != tf.rank_biserial_groups.end()) {
        std::vector<bool> flags;
        std::vector<double> neg_sims;  // smaller is better, ties share ranks
        flags.reserve(result.entries.size());
        neg_sims.reserve(result.entries.size());
        for (const auto& e : result.entries) {
          flags.push_back(groups->second.count(e.program_id) > 0);
          neg_sims.push_back(-e.similarity);
        }
        const bool degenerate =
            std::all_of(flags.begin(), flags.end(), [](bool f) { return f; }) ||
            std::none_of(flags.begin(), flags.end(), [](bool f) { return f; });
        if (!degenerate) correlations.push_back(rank_biserial(flags, neg_sims));
      }
    }
    mr.precision = static_cast<double>(successes) /
                   static_cast<double>(targets.size());
    mr.per_search_s =
        (mr.preprocess_s + mr.checks_s) / static_cast<double>(targets.size());
    if (!correlations.empty())
      mr.rank_biserial =
          std::accumulate(correlations.begin(), correlations.end(), 0.0) /
          static_cast<double>(correlations.size());
    report.metrics.push_back(std::move(mr));
  }
  return report;
}

// ---------------------------------------------------------------------------
// K sweep
// ---------------------------------------------------------------------------

struct KSweepPoint {
  std::size_t k = 0;
  double precision = 0.0;
  double mean_preprocess_s = 0.0;
};

/// Rebuilds signatures in top_k(K) mode for each K and evaluates clone
/// search precision. Programs named in the clone map are the targets; the
/// rest of the dataset forms the repository.
inline std::vector<KSweepPoint> k_sweep(
    const std::vector<ProgramFeatures>& dataset, const CloneMap& clone_map,
    std::span<const std::size_t> k_values, unsigned workers = 1) {
  if (k_values.empty()) throw InvalidParameter("k_values must be non-empty");
  std::vector<const ProgramFeatures*> targets;
  std::vector<const ProgramFeatures*> members;
  for (const auto& p : dataset) {
    if (clone_map.count(p.program_id))
      targets.push_back(&p);
    else
      members.push_back(&p);
  }
  if (targets.empty()) throw InvalidParameter("clone map names no target in the dataset");
  if (members.empty()) throw EmptyRepository("no repository programs in the dataset");

  std::vector<KSweepPoint> curve;
  for (std::size_t k : k_values) {
    Repository repo = Repository::create(KMode::top_k(k));
    double prep_total = 0.0;
    std::size_t prep_count = 0;
    for (const auto* p : members) {
      auto rec = preprocess(*p, repo.k_mode());
      prep_total += rec.preprocess_wall_time;
      ++prep_count;
      repo.add(std::move(rec));
    }
    int successes = 0;
    for (const auto* t : targets) {
      RankedResult r = repo.query(*t, "psso", 1, workers);
      prep_total += r.preprocess_wall_time;
      ++prep_count;
      successes += decide(r, clone_map);
    }
    KSweepPoint pt;
    pt.k = k;
    pt.precision =
        static_cast<double>(successes) / static_cast<double>(targets.size());
    pt.mean_preprocess_s = prep_total / static_cast<double>(prep_count);
    curve.push_back(pt);
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

inline nlohmann::json eval_report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["name"] = r.field_name;
  j["targets"] = r.n_targets;
  j["repository_size"] = r.repository_size;
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& m : r.metrics) {
    nlohmann::json mj;
    mj["precision"] = m.precision;
    mj["preprocess_s"] = m.preprocess_s;
    mj["checks_s"] = m.checks_s;
    mj["per_search_s"] = m.per_search_s;
    if (m.rank_biserial) mj["rank_biserial"] = *m.rank_biserial;
    metrics[m.metric] = std::move(mj);
  }
  j["metrics"] = std::move(metrics);
  return j;
}

inline std::string render_eval_report(const EvalReport& r) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "test field %s: %zu targets, %zu records\n",
                r.field_name.c_str(), r.n_targets, r.repository_size);
  out += line;
  std::snprintf(line, sizeof(line), "%-12s %10s %12s %12s %14s %14s\n", "metric",
                "precision", "preproc(s)", "checks(s)", "per-search(s)",
                "rank-biserial");
  out += line;
  for (const auto& m : r.metrics) {
    std::string rb = "-";
    if (m.rank_biserial) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", *m.rank_biserial);
      rb = buf;
    }
    std::snprintf(line, sizeof(line), "%-12s %10.4f %12.4f %12.4f %14.6f %14s\n",
                  m.metric.c_str(), m.precision, m.preprocess_s, m.checks_s,
                  m.per_search_s, rb.c_str());
    out += line;
  }
  return out;
}

inline nlohmann::json k_sweep_to_json(std::span<const KSweepPoint> curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : curve)
    arr.push_back({{"k", p.k},
                   {"precision", p.precision},
                   {"mean_preprocess_s", p.mean_preprocess_s}});
  return arr;
}

inline std::string render_k_sweep(std::span<const KSweepPoint> curve) {
  std::string out;
  char line[96];
  std::snprintf(line, sizeof(line), "%8s %12s %20s\n", "K", "precision",
                "mean preproc (s)");
  out += line;
  for (const auto& p : curve) {
    std::snprintf(line, sizeof(line), "%8zu %12.4f %20.6f\n", p.k, p.precision,
                  p.mean_preprocess_s);
    out += line;
  }
  return out;
}

}  // namespace pss

#endif  // PSS_EVAL_HPP
