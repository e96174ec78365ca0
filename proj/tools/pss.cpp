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
//
// Command-line front end: synthetic dataset generation, repository
// preprocessing, clone-search queries, test-field evaluation and the
// top-K sweep.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <locale>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pss/eval.hpp"
#include "pss/features.hpp"
#include "pss/repository.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> collect_feature_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> dir_files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          dir_files.push_back(entry.path());
      std::sort(dir_files.begin(), dir_files.end());
      files.insert(files.end(), dir_files.begin(), dir_files.end());
    } else if (fs::is_regular_file(p)) {
      files.push_back(p);
    } else {
      throw pss::MissingProgram("no such file or directory: " + in);
    }
  }
  return files;
}

void write_text_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw pss::Error("cannot write " + path.string());
  out << contents;
}

struct GenOptions {
  std::string out;
  std::size_t programs = 10;
  std::uint64_t seed = 1;
  std::size_t clones = 1;
  std::size_t functions_min = 20;
  std::size_t functions_max = 120;
  double avg_degree_min = 1.5;
  double avg_degree_max = 4.0;
  double edge_edit_rate = 0.05;
  double cfg_jitter = 0.10;
};

int run_gen(const GenOptions& opt) {
  if (opt.programs < 1) throw pss::InvalidParameter("--programs must be >= 1");
  if (opt.functions_min < 1 || opt.functions_max < opt.functions_min)
    throw pss::InvalidParameter("invalid --functions-min/--functions-max range");
  if (!(opt.avg_degree_min > 0.0) || opt.avg_degree_max < opt.avg_degree_min)
    throw pss::InvalidParameter("invalid --avg-degree range");

  const fs::path out(opt.out);
  fs::create_directories(out / "repo");
  fs::create_directories(out / "targets");

  std::mt19937_64 meta(opt.seed);
  nlohmann::json clone_map = nlohmann::json::object();
  nlohmann::json target_paths = nlohmann::json::array();
  for (std::size_t i = 0; i < opt.programs; ++i) {
    const std::size_t span = opt.functions_max - opt.functions_min + 1;
    const std::size_t n = opt.functions_min + pss::detail::rng_below(meta, span);
    const double d = opt.avg_degree_min +
                     pss::detail::rng_unit(meta) *
                         (opt.avg_degree_max - opt.avg_degree_min);
    const auto base = pss::generate_synthetic_program(opt.seed + 1 + i, n, d);
    write_text_file(out / "repo" / (base.program_id + ".json"),
                    pss::serialize_feature_file(base));
    for (std::size_t c = 0; c < opt.clones; ++c) {
      const std::uint64_t clone_seed = opt.seed + 100000 + i * opt.clones + c;
      const auto clone = pss::perturb_program(base, clone_seed,
                                              opt.edge_edit_rate, opt.cfg_jitter);
      write_text_file(out / "targets" / (clone.program_id + ".json"),
                      pss::serialize_feature_file(clone));
      clone_map[clone.program_id] = {base.program_id};
      target_paths.push_back("targets/" + clone.program_id + ".json");
    }
  }
  write_text_file(out / "clone_map.json", clone_map.dump());
  nlohmann::json field;
  field["name"] = "synth-s" + std::to_string(opt.seed) + "-p" +
                  std::to_string(opt.programs);
  field["repository"] = "repo.db";
  field["targets"] = std::move(target_paths);
  field["clone_map"] = std::move(clone_map);
  write_text_file(out / "testfield.json", field.dump());

  std::printf("generated %zu programs and %zu clone targets under %s\n",
              opt.programs, opt.programs * opt.clones, out.string().c_str());
  std::printf("next: pss preprocess --inputs %s --out %s [--full | --k N]\n",
              (out / "repo").string().c_str(), (out / "repo.db").string().c_str());
  return 0;
}

struct PreprocessOptions {
  std::vector<std::string> inputs;
  std::string out;
  bool full = false;
  std::size_t k = 0;  // 0 = not set
  unsigned workers = 1;
};

int run_preprocess(const PreprocessOptions& opt) {
  const pss::KMode mode =
      opt.k > 0 ? pss::KMode::top_k(opt.k) : pss::KMode::full_mode();
  const auto files = collect_feature_files(opt.inputs);
  if (files.empty()) throw pss::MissingProgram("no feature files found");

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<pss::RepositoryRecord> records(files.size());
  std::vector<std::string> failures(files.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        const auto p = pss::detail::parse_feature_path(files[i]);
        records[i] = pss::preprocess(p, mode);
      } catch (const std::exception& e) {
        failures[i] = files[i].string() + ": " + e.what();
      }
    }
  };
  const unsigned workers = std::max(1u, opt.workers);
  if (workers == 1 || files.size() < 2) {
    work(0, files.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (files.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(files.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& f : failures)
    if (!f.empty()) throw pss::Error(f);

  pss::Repository repo = pss::Repository::create(mode);
  for (auto& rec : records) repo.add(std::move(rec));
  repo.save(opt.out);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string mode_desc =
      mode.full ? "full spectrum" : "top-" + std::to_string(mode.k);
  std::printf("preprocessed %zu programs into %s (%s) in %.3fs\n", repo.size(),
              opt.out.c_str(), mode_desc.c_str(), total);
  return 0;
}

struct QueryOptions {
  std::string repo;
  std::string target;
  std::string metric = "pss";
  std::size_t top_n = 10;
  std::string format = "table";
  unsigned workers = 1;
};

int run_query(const QueryOptions& opt) {
  const pss::Repository repo = pss::Repository::open(opt.repo);
  const auto target = pss::detail::parse_feature_path(opt.target);
  const auto result = repo.query(target, opt.metric, opt.top_n, opt.workers);
  if (opt.format == "json") {
    nlohmann::json j;
    j["target"] = result.target_id;
    j["metric"] = result.metric;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : result.entries)
      entries.push_back({{"program_id", e.program_id},
                         {"similarity", e.similarity}});
    j["results"] = std::move(entries);
    j["preprocess_s"] = result.preprocess_wall_time;
    j["checks_s"] = result.checks_wall_time;
    j["total_s"] = result.query_wall_time;
    j["degenerate_jaccard_pairs"] = result.degenerate_jaccard_pairs;
    std::printf("%s\n", j.dump().c_str());
  } else {
    for (std::size_t i = 0; i < result.entries.size(); ++i)
      std::printf("%zu. %s %.6f\n", i + 1, result.entries[i].program_id.c_str(),
                  result.entries[i].similarity);
    std::fprintf(stderr, "# %s over %zu records: preprocess %.4fs, checks %.4fs\n",
                 result.metric.c_str(), repo.size(), result.preprocess_wall_time,
                 result.checks_wall_time);
    if (result.degenerate_jaccard_pairs > 0)
      std::fprintf(stderr,
                   "# note: %zu comparisons had both feature sets empty "
                   "(similarity 1.0 by convention)\n",
                   result.degenerate_jaccard_pairs);
  }
  return 0;
}

struct EvalOptions {
  std::string config;
  std::vector<std::string> metrics = {"pss"};
  std::string format = "table";
  unsigned workers = 1;
};

int run_eval(const EvalOptions& opt) {
  const pss::TestField tf = pss::load_test_field(opt.config);
  const auto report = pss::run_test_field(tf, opt.metrics, {}, opt.workers);
  if (opt.format == "json")
    std::printf("%s\n", pss::eval_report_to_json(report).dump().c_str());
  else
    std::fputs(pss::render_eval_report(report).c_str(), stdout);
  return 0;
}

struct KSweepOptions {
  std::string config;
  std::vector<std::size_t> k_values;
  std::string format = "table";
  unsigned workers = 1;
};

int run_ksweep(const KSweepOptions& opt) {
  const pss::TestField tf = pss::load_test_field(opt.config);
  // For a sweep the config's repository entry must point at a directory of
  // raw feature files; signatures are rebuilt per K.
  std::vector<pss::ProgramFeatures> dataset;
  for (const auto& path : collect_feature_files({tf.repository.string()}))
    dataset.push_back(pss::detail::parse_feature_path(path));
  for (const auto& path : tf.targets)
    dataset.push_back(pss::detail::parse_feature_path(path));
  const auto curve = pss::k_sweep(dataset, tf.clone_map, opt.k_values, opt.workers);
  if (opt.format == "json")
    std::printf("%s\n", pss::k_sweep_to_json(curve).dump().c_str());
  else
    std::fputs(pss::render_k_sweep(curve).c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::locale::global(std::locale::classic());
  CLI::App app{"program clone search by spectral similarity"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset with clone ground truth");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--programs", gen.programs, "number of base programs")->required();
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--clones", gen.clones, "clones per base program");
  gen_cmd->add_option("--functions-min", gen.functions_min, "min local functions");
  gen_cmd->add_option("--functions-max", gen.functions_max, "max local functions");
  gen_cmd->add_option("--avg-degree-min", gen.avg_degree_min, "min average call degree");
  gen_cmd->add_option("--avg-degree-max", gen.avg_degree_max, "max average call degree");
  gen_cmd->add_option("--edge-edit-rate", gen.edge_edit_rate, "clone edge edit rate");
  gen_cmd->add_option("--cfg-jitter", gen.cfg_jitter, "clone CFG count jitter");

  PreprocessOptions pre;
  auto* pre_cmd = app.add_subcommand("preprocess", "build a repository from feature files");
  pre_cmd->add_option("--inputs", pre.inputs, "feature files or directories")->required();
  pre_cmd->add_option("--out", pre.out, "repository directory")->required();
  auto* full_flag = pre_cmd->add_flag("--full", pre.full, "store full spectra (default)");
  pre_cmd->add_option("--k", pre.k, "store only the K largest eigenvalues")
      ->excludes(full_flag);
  pre_cmd->add_option("--workers", pre.workers, "parallel preprocessing workers");

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "rank repository programs against a target");
  query_cmd->add_option("--repo", query.repo, "repository directory")->required();
  query_cmd->add_option("--target", query.target, "target feature file")->required();
  query_cmd->add_option("--metric", query.metric, "similarity metric id");
  query_cmd->add_option("--top", query.top_n, "number of results");
  query_cmd->add_option("--format", query.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  query_cmd->add_option("--workers", query.workers, "parallel scan workers");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "run a test field and report precision scores");
  eval_cmd->add_option("--config", eval.config, "test-field config file")->required();
  eval_cmd->add_option("--metrics", eval.metrics, "metric ids")->delimiter(',');
  eval_cmd->add_option("--format", eval.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  eval_cmd->add_option("--workers", eval.workers, "parallel scan workers");

  KSweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("ksweep", "precision/runtime curve over top-K sizes");
  sweep_cmd->add_option("--config", sweep.config, "test-field config (repository = raw feature dir)")
      ->required();
  sweep_cmd->add_option("--k-values", sweep.k_values, "K values")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--format", sweep.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
  sweep_cmd->add_option("--workers", sweep.workers, "parallel scan workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(gen_cmd)) return run_gen(gen);
    if (app.got_subcommand(pre_cmd)) return run_preprocess(pre);
    if (app.got_subcommand(query_cmd)) return run_query(query);
    if (app.got_subcommand(eval_cmd)) return run_eval(eval);
    if (app.got_subcommand(sweep_cmd)) return run_ksweep(sweep);
  } catch (const pss::ConvergenceFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
