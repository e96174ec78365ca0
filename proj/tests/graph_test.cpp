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

#include "pss/graph.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "pss/features.hpp"
#include "support/test_util.hpp"

using namespace pss;

namespace {

ProgramFeatures two_node_program(
    std::vector<std::pair<std::int64_t, std::int64_t>> edges) {
  ProgramFeatures p;
  p.program_id = "two-node";
  p.call_graph.nodes = {{0, NodeKind::local, "a"}, {1, NodeKind::local, "b"}};
  p.call_graph.edges = std::move(edges);
  return p;
}

}  // namespace

TEST_CASE("undirected call graph symmetrizes directed edges", "[graph]") {
  const auto g = undirected_call_graph(two_node_program({{0, 1}, {1, 0}}));
  REQUIRE(g.n_vertices == 2);
  REQUIRE(g.edges == decltype(g.edges){{0, 1}});
}

TEST_CASE("undirected call graph drops self-calls", "[graph]") {
  ProgramFeatures p;
  p.program_id = "self-loop";
  p.call_graph.nodes = {{0, NodeKind::local, {}}, {1, NodeKind::local, {}},
                        {2, NodeKind::local, {}}};
  p.call_graph.edges = {{2, 2}};
  const auto g = undirected_call_graph(p);
  REQUIRE(g.n_vertices == 3);
  REQUIRE(g.edges.empty());
}

TEST_CASE("external call-graph nodes become vertices", "[graph]") {
  ProgramFeatures p;
  p.program_id = "with-external";
  p.call_graph.nodes = {{0, NodeKind::local, "sub_403780"},
                        {7, NodeKind::external, "mempcpy"}};
  p.call_graph.edges = {{0, 7}};
  const auto g = undirected_call_graph(p);
  REQUIRE(g.n_vertices == 2);
  REQUIRE(g.edges == decltype(g.edges){{0, 1}});
}

TEST_CASE("node ids need not be contiguous", "[graph]") {
  ProgramFeatures p;
  p.program_id = "sparse-ids";
  p.call_graph.nodes = {{10, NodeKind::local, {}},
                        {-3, NodeKind::local, {}},
                        {400, NodeKind::external, {}}};
  p.call_graph.edges = {{10, -3}, {-3, 400}, {10, -3}};
  const auto g = undirected_call_graph(p);
  REQUIRE(g.n_vertices == 3);
  REQUIRE(g.edges.size() == 2);  // duplicate collapsed
}

TEST_CASE("laplacian of a single edge", "[graph]") {
  const auto g = pss_test::graph_from_edges(2, {{0, 1}});
  const SparseLaplacian L(g);
  REQUIRE(L.entry(0, 0) == 1.0);
  REQUIRE(L.entry(1, 1) == 1.0);
  REQUIRE(L.entry(0, 1) == -1.0);
  REQUIRE(L.entry(1, 0) == -1.0);
}

TEST_CASE("laplacian of an empty graph is the zero matrix", "[graph]") {
  const auto g = pss_test::graph_from_edges(3, {});
  const SparseLaplacian L(g);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(L.entry(i, j) == 0.0);
}

TEST_CASE("laplacian of the path 0-1-2", "[graph]") {
  const auto g = pss_test::graph_from_edges(3, {{0, 1}, {1, 2}});
  const SparseLaplacian L(g);
  REQUIRE(L.entry(0, 0) == 1.0);
  REQUIRE(L.entry(1, 1) == 2.0);
  REQUIRE(L.entry(2, 2) == 1.0);
  REQUIRE(L.entry(0, 1) == -1.0);
  REQUIRE(L.entry(1, 2) == -1.0);
  REQUIRE(L.entry(0, 2) == 0.0);
}

TEST_CASE("laplacian rows sum to zero and trace counts edges twice", "[graph]") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = pss_test::er_graph(rng, 2 + trial * 5, 0.2);
    const SparseLaplacian L(g);
    REQUIRE(L.trace() == 2.0 * static_cast<double>(g.edges.size()));
    for (std::size_t i = 0; i < g.n_vertices; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < g.n_vertices; ++j) row += L.entry(i, j);
      REQUIRE(row == 0.0);
    }
  }
}

TEST_CASE("laplacian apply matches the dense matrix", "[graph]") {
  std::mt19937_64 rng(77);
  const auto g = pss_test::er_graph(rng, 40, 0.2);
  const SparseLaplacian L(g);
  const auto dense = L.dense();
  std::vector<double> x(g.n_vertices), y(g.n_vertices);
  for (auto& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  L.apply(x, y);
  for (std::size_t i = 0; i < g.n_vertices; ++i) {
    double want = 0.0;
    for (std::size_t j = 0; j < g.n_vertices; ++j) want += dense[i][j] * x[j];
    REQUIRE(y[i] == Catch::Approx(want).margin(1e-12));
  }
}

TEST_CASE("cfg edge vector sorts counts descending", "[graph]") {
  ProgramFeatures p;
  p.program_id = "cfg";
  p.call_graph.nodes = {{0, NodeKind::local, {}}, {1, NodeKind::local, {}},
                        {2, NodeKind::local, {}}};
  p.functions = {{0, 2}, {1, 5}, {2, 2}};
  REQUIRE(cfg_edge_vector(p) == std::vector<std::uint64_t>{5, 2, 2});
}

TEST_CASE("cfg edge vector of a program without local functions", "[graph]") {
  ProgramFeatures p;
  p.program_id = "no-functions";
  p.call_graph.nodes = {{0, NodeKind::local, {}}};
  REQUIRE(cfg_edge_vector(p).empty());
}

TEST_CASE("cfg edge vector composes with edge-list parsing", "[graph]") {
  const char* text = R"({
    "schema_version": 1, "program_id": "p", "file_size_bytes": 1,
    "disasm_size_bytes": 1,
    "call_graph": {"nodes": [{"id": 0, "kind": "local"},
                             {"id": 1, "kind": "local"}], "edges": []},
    "functions": [{"node_id": 0, "cfg_edges": [[0,1],[0,1],[1,2]]},
                  {"node_id": 1, "cfg_edge_count": 7}]
  })";
  const auto p = parse_feature_file(text);
  REQUIRE(cfg_edge_vector(p) == std::vector<std::uint64_t>{7, 2});
}
