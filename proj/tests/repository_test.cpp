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

#include "pss/repository.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstring>
#include <filesystem>
#include <random>

#include "pss/features.hpp"

using namespace pss;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path = fs::temp_directory_path() /
           ("pss-repo-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ProgramFeatures k2_program() {
  ProgramFeatures p;
  p.program_id = "k2";
  p.file_size_bytes = 100;
  p.disasm_size_bytes = 400;
  p.call_graph.nodes = {{0, NodeKind::local, "main"},
                        {1, NodeKind::external, "printf"}};
  p.call_graph.edges = {{0, 1}};
  p.functions = {{0, 3}};
  return p;
}

bool ranking_equal(const RankedResult& a, const RankedResult& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].program_id != b.entries[i].program_id) return false;
    if (std::memcmp(&a.entries[i].similarity, &b.entries[i].similarity,
                    sizeof(double)) != 0)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("preprocess composes graph, spectrum and normalization",
          "[repository]") {
  const auto rec = preprocess(k2_program(), KMode::full_mode());
  REQUIRE(rec.program_id == "k2");
  REQUIRE(rec.signature.v.size() == 2);
  REQUIRE(rec.signature.v[0] == Catch::Approx(1.0).margin(1e-9));
  REQUIRE(rec.signature.v[1] == Catch::Approx(0.0).margin(1e-9));
  REQUIRE(rec.signature.w == std::vector<double>{1.0});
  REQUIRE(rec.baseline.cg_n_vertices == 2);
  REQUIRE(rec.baseline.cg_n_edges == 1);
  REQUIRE(rec.baseline.external_name_set == std::set<std::string>{"printf"});
  REQUIRE(rec.preprocess_wall_time >= 0.0);
}

TEST_CASE("preprocess of an empty program hits the zero-norm guard",
          "[repository]") {
  ProgramFeatures p;
  p.program_id = "empty";
  p.call_graph.nodes = {{0, NodeKind::local, {}}};
  const auto rec = preprocess(p, KMode::full_mode());
  REQUIRE(rec.signature.v == std::vector<double>{0.0});
  REQUIRE(rec.signature.w.empty());
}

TEST_CASE("top-k preprocessing equals full mode on small call graphs",
          "[repository]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = generate_synthetic_program(rng(), 10 + rng() % 70, 2.5);
    REQUIRE(p.call_graph.nodes.size() <= 100);
    const auto full = preprocess(p, KMode::full_mode());
    const auto topk = preprocess(p, KMode::top_k(100));
    REQUIRE(full.signature.v.size() == topk.signature.v.size());
    for (std::size_t i = 0; i < full.signature.v.size(); ++i)
      REQUIRE(full.signature.v[i] ==
              Catch::Approx(topk.signature.v[i]).margin(1e-9));
    REQUIRE(full.signature.w == topk.signature.w);
  }
}

TEST_CASE("mnemonic-free programs embed to the zero vector", "[repository]") {
  const auto rec = preprocess(k2_program(), KMode::full_mode());
  for (double v : rec.baseline.ngram_vector) REQUIRE(v == 0.0);
}

TEST_CASE("add rejects duplicates and mode mismatches", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  repo.add(preprocess(k2_program(), KMode::full_mode()));
  REQUIRE_THROWS_AS(repo.add(preprocess(k2_program(), KMode::full_mode())),
                    DuplicateId);
  auto other = k2_program();
  other.program_id = "k2b";
  REQUIRE_THROWS_AS(repo.add(preprocess(other, KMode::top_k(10))), ModeMismatch);
}

TEST_CASE("persistence round-trips records exactly", "[repository]") {
  TempDir dir;
  std::mt19937_64 rng(33);
  auto repo = Repository::create(dir.path / "db", KMode::full_mode());
  for (int i = 0; i < 5; ++i)
    repo.add(preprocess(generate_synthetic_program(rng(), 5 + rng() % 40, 2.0),
                        KMode::full_mode()));
  const auto loaded = Repository::open(dir.path / "db");
  REQUIRE(loaded.k_mode() == repo.k_mode());
  REQUIRE(loaded.records() == repo.records());
}

TEST_CASE("reloaded repositories rank bit-identically", "[repository]") {
  TempDir dir;
  std::mt19937_64 rng(34);
  auto repo = Repository::create(KMode::full_mode());
  for (int i = 0; i < 12; ++i)
    repo.add(preprocess(generate_synthetic_program(rng(), 5 + rng() % 60, 2.5),
                        KMode::full_mode()));
  repo.save(dir.path / "db");
  const auto loaded = Repository::open(dir.path / "db");

  const auto target = generate_synthetic_program(999, 30, 2.5);
  for (const char* metric : {"pss", "simcg", "simcfg", "bsize", "shape",
                             "ascg", "mutantxs", "stringset", "functionset"}) {
    const auto a = repo.query(target, metric, 12);
    const auto b = loaded.query(target, metric, 12);
    REQUIRE(ranking_equal(a, b));
  }
}

TEST_CASE("query finds an exact duplicate first", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  const auto p = generate_synthetic_program(5, 30, 2.5);
  auto q = generate_synthetic_program(6, 25, 2.0);
  repo.add(preprocess(p, KMode::full_mode()));
  repo.add(preprocess(q, KMode::full_mode()));

  auto copy = p;
  copy.program_id = "copy-of-p";
  const auto result = repo.query(copy, "pss", 2);
  REQUIRE(result.target_id == "copy-of-p");
  REQUIRE(result.entries.front().program_id == p.program_id);
  REQUIRE(result.entries.front().similarity == 1.0);
}

TEST_CASE("query truncates to top_n", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  std::mt19937_64 rng(35);
  for (int i = 0; i < 30; ++i)
    repo.add(preprocess(generate_synthetic_program(rng(), 4 + rng() % 30, 2.0),
                        KMode::full_mode()));
  const auto target = generate_synthetic_program(2024, 20, 2.0);
  REQUIRE(repo.query(target, "pss", 1).entries.size() == 1);
  REQUIRE(repo.query(target, "pss", 100).entries.size() == 30);
}

TEST_CASE("ties break by ascending program id", "[repository]") {
  // Identical programs except for the id: every similarity ties.
  auto repo = Repository::create(KMode::full_mode());
  const auto base = generate_synthetic_program(77, 15, 2.0);
  for (const char* id : {"zeta", "alpha", "mid"}) {
    auto p = base;
    p.program_id = id;
    repo.add(preprocess(p, KMode::full_mode()));
  }
  const auto target = generate_synthetic_program(78, 15, 2.0);
  const auto result = repo.query(target, "pss", 3);
  REQUIRE(result.entries[0].program_id == "alpha");
  REQUIRE(result.entries[1].program_id == "mid");
  REQUIRE(result.entries[2].program_id == "zeta");
}

TEST_CASE("parallel scans merge deterministically", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  std::mt19937_64 rng(36);
  for (int i = 0; i < 25; ++i)
    repo.add(preprocess(generate_synthetic_program(rng(), 4 + rng() % 40, 2.0),
                        KMode::full_mode()));
  const auto target = generate_synthetic_program(4096, 25, 2.5);
  const auto serial = repo.query(target, "pss", 25, 1);
  const auto parallel = repo.query(target, "pss", 25, 4);
  REQUIRE(ranking_equal(serial, parallel));
}

TEST_CASE("query error paths", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  const auto target = k2_program();
  REQUIRE_THROWS_AS(repo.query(target, "pss", 5), EmptyRepository);
  repo.add(preprocess(generate_synthetic_program(1, 10, 2.0), KMode::full_mode()));
  REQUIRE_THROWS_AS(repo.query(target, "nope", 5), UnknownMetric);
}

TEST_CASE("query does not mutate the repository", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  repo.add(preprocess(generate_synthetic_program(9, 12, 2.0), KMode::full_mode()));
  const auto before = repo.records();
  (void)repo.query(k2_program(), "pss", 1);
  REQUIRE(repo.records() == before);
}

TEST_CASE("degenerate jaccard comparisons are counted", "[repository]") {
  auto repo = Repository::create(KMode::full_mode());
  ProgramFeatures bare;
  bare.program_id = "bare";
  bare.call_graph.nodes = {{0, NodeKind::local, {}}};
  repo.add(preprocess(bare, KMode::full_mode()));
  auto t = bare;
  t.program_id = "bare-target";
  const auto result = repo.query(t, "stringset", 1);
  REQUIRE(result.degenerate_jaccard_pairs == 1);
  REQUIRE(result.entries.front().similarity == 1.0);
}

TEST_CASE("decide checks the top entry against the clone map", "[repository]") {
  RankedResult r;
  r.target_id = "t";
  r.entries = {{"a", 0.9}, {"b", 0.8}};
  REQUIRE(decide(r, CloneMap{{"t", {"a"}}}) == 1);
  REQUIRE(decide(r, CloneMap{{"t", {"b"}}}) == 0);  // clone only at rank 2
  REQUIRE(decide(r, CloneMap{}) == 0);
  RankedResult empty;
  empty.target_id = "t";
  REQUIRE_THROWS_AS(decide(empty, CloneMap{{"t", {"a"}}}), InvalidParameter);
}

TEST_CASE("external names fall back to external node names", "[repository]") {
  ProgramFeatures p;
  p.program_id = "derive";
  p.call_graph.nodes = {{0, NodeKind::local, "main"},
                        {1, NodeKind::external, "socket"},
                        {2, NodeKind::external, {}}};
  p.call_graph.edges = {{0, 1}, {0, 2}};
  const auto rec = preprocess(p, KMode::full_mode());
  REQUIRE(rec.baseline.external_name_set == std::set<std::string>{"socket"});
}

TEST_CASE("opening a missing repository fails cleanly", "[repository]") {
  REQUIRE_THROWS_AS(Repository::open("/nonexistent/pss-db"), MissingProgram);
}
