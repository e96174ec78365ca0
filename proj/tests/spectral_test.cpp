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

#include "pss/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <random>

#include "support/dense_oracle.hpp"
#include "support/test_util.hpp"

using namespace pss;
using pss_test::er_graph;
using pss_test::graph_from_edges;
using pss_test::jacobi_eigenvalues;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("full spectrum of a single edge", "[spectral]") {
  const SparseLaplacian L(graph_from_edges(2, {{0, 1}}));
  const auto s = full_spectrum(L);
  REQUIRE(s.kind == SpectrumKind::full);
  REQUIRE(s.eigenvalues.size() == 2);
  REQUIRE(s.eigenvalues[0] == Catch::Approx(2.0).margin(1e-10));
  REQUIRE(s.eigenvalues[1] == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("full spectrum of the path on three vertices", "[spectral]") {
  const SparseLaplacian L(graph_from_edges(3, {{0, 1}, {1, 2}}));
  const auto oracle = jacobi_eigenvalues(L.dense());
  const auto s = full_spectrum(L);
  REQUIRE(max_abs_diff(s.eigenvalues, oracle) < 1e-10);
  REQUIRE(s.eigenvalues[0] == Catch::Approx(3.0).margin(1e-10));
  REQUIRE(s.eigenvalues[1] == Catch::Approx(1.0).margin(1e-10));
  REQUIRE(s.eigenvalues[2] == Catch::Approx(0.0).margin(1e-10));
}

TEST_CASE("full spectrum of the star with three leaves", "[spectral]") {
  const SparseLaplacian L(graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
  const auto oracle = jacobi_eigenvalues(L.dense());
  const auto s = full_spectrum(L);
  REQUIRE(max_abs_diff(s.eigenvalues, oracle) < 1e-10);
  const std::vector<double> want = {4.0, 1.0, 1.0, 0.0};
  REQUIRE(max_abs_diff(s.eigenvalues, want) < 1e-10);
}

TEST_CASE("degenerate sizes", "[spectral]") {
  REQUIRE(full_spectrum(SparseLaplacian(graph_from_edges(0, {}))).eigenvalues.empty());
  const auto one = full_spectrum(SparseLaplacian(graph_from_edges(1, {})));
  REQUIRE(one.eigenvalues == std::vector<double>{0.0});
}

TEST_CASE("full spectrum matches the dense oracle on small random graphs",
          "[spectral][property]") {
  std::mt19937_64 rng(20260809);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    const auto g = er_graph(rng, n, 0.15);
    const SparseLaplacian L(g);
    const auto s = full_spectrum(L);
    const auto oracle = jacobi_eigenvalues(L.dense());
    REQUIRE(max_abs_diff(s.eigenvalues, oracle) < 1e-8);
  }
}

TEST_CASE("full spectrum matches the oracle through the Lanczos path",
          "[spectral][property]") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {64, 80, 120, 200}) {
    const auto g = er_graph(rng, n, 0.05);
    const SparseLaplacian L(g);
    const auto s = full_spectrum(L);
    const auto oracle = jacobi_eigenvalues(L.dense());
    REQUIRE(max_abs_diff(s.eigenvalues, oracle) < 1e-8);
  }
}

TEST_CASE("Lanczos path preserves multiplicities on disconnected graphs",
          "[spectral]") {
  // 70 isolated vertices force repeated zero eigenvalues and early
  // invariant-subspace breakdowns.
  std::mt19937_64 rng(5);
  auto g = er_graph(rng, 10, 0.6);
  g.n_vertices = 80;
  const SparseLaplacian L(g);
  const auto s = full_spectrum(L);
  const auto oracle = jacobi_eigenvalues(L.dense());
  REQUIRE(max_abs_diff(s.eigenvalues, oracle) < 1e-8);
}

TEST_CASE("spectrum sum equals the Laplacian trace", "[spectral][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 120;
    const auto g = er_graph(rng, n, 0.1);
    const SparseLaplacian L(g);
    const auto s = full_spectrum(L);
    double sum = 0.0;
    for (double v : s.eigenvalues) sum += v;
    REQUIRE(sum == Catch::Approx(L.trace()).margin(static_cast<double>(n) * 1e-8));
    REQUIRE(sum == Catch::Approx(2.0 * static_cast<double>(g.edges.size()))
                       .margin(static_cast<double>(n) * 1e-8));
  }
}

TEST_CASE("relabeling vertices leaves the spectrum unchanged",
          "[spectral][property]") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 10 + rng() % 90;
    const auto g = er_graph(rng, n, 0.12);
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng() % i]);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> relabeled;
    for (auto [a, b] : g.edges) relabeled.emplace_back(perm[a], perm[b]);
    const auto h = graph_from_edges(n, relabeled);
    const auto sg = full_spectrum(SparseLaplacian(g));
    const auto sh = full_spectrum(SparseLaplacian(h));
    REQUIRE(max_abs_diff(sg.eigenvalues, sh.eigenvalues) < 1e-9);
  }
}

TEST_CASE("top-k of a single edge", "[spectral]") {
  const SparseLaplacian L(graph_from_edges(2, {{0, 1}}));
  const auto s = top_k_spectrum(L, 1);
  REQUIRE(s.kind == SpectrumKind::top_k);
  REQUIRE(s.k == 1);
  REQUIRE(s.eigenvalues.size() == 1);
  REQUIRE(s.eigenvalues[0] == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("top-k prefix of the path spectrum", "[spectral]") {
  const SparseLaplacian L(graph_from_edges(3, {{0, 1}, {1, 2}}));
  const auto s = top_k_spectrum(L, 2);
  REQUIRE(s.eigenvalues.size() == 2);
  REQUIRE(s.eigenvalues[0] == Catch::Approx(3.0).margin(1e-9));
  REQUIRE(s.eigenvalues[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("top-k falls back to the full solve when n <= K", "[spectral]") {
  std::mt19937_64 rng(11);
  const auto g = er_graph(rng, 30, 0.2);
  const SparseLaplacian L(g);
  const auto full = full_spectrum(L);
  const auto topk = top_k_spectrum(L, 64);
  REQUIRE(topk.eigenvalues.size() == 30);
  REQUIRE(max_abs_diff(topk.eigenvalues, full.eigenvalues) < 1e-9);
}

TEST_CASE("top-k matches the full spectrum prefix on random graphs",
          "[spectral][property]") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 11 + rng() % 190;
    const auto g = er_graph(rng, n, 0.08);
    const SparseLaplacian L(g);
    const auto full = full_spectrum(L);
    const auto topk = top_k_spectrum(L, 10);
    REQUIRE(topk.eigenvalues.size() == std::min<std::size_t>(10, n));
    for (std::size_t i = 0; i < topk.eigenvalues.size(); ++i)
      REQUIRE(topk.eigenvalues[i] ==
              Catch::Approx(full.eigenvalues[i]).margin(1e-6));
  }
}

TEST_CASE("top-k handles graphs with heavy top multiplicity", "[spectral]") {
  // Two identical 40-cliques: the largest eigenvalue has multiplicity 78.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t c = 0; c < 2; ++c)
    for (std::uint32_t a = 0; a < 40; ++a)
      for (std::uint32_t b = a + 1; b < 40; ++b)
        edges.emplace_back(c * 40 + a, c * 40 + b);
  const SparseLaplacian L(graph_from_edges(80, edges));
  const auto s = top_k_spectrum(L, 10);
  for (double v : s.eigenvalues) REQUIRE(v == Catch::Approx(40.0).margin(1e-6));
}

TEST_CASE("parameter validation", "[spectral]") {
  const SparseLaplacian L(graph_from_edges(2, {{0, 1}}));
  REQUIRE_THROWS_AS(top_k_spectrum(L, 0), InvalidParameter);
  REQUIRE_THROWS_AS(full_spectrum(L, 0.0), InvalidParameter);
  REQUIRE_THROWS_AS(top_k_spectrum(L, 1, -1.0), InvalidParameter);
}

TEST_CASE("normalize scales to unit norm", "[spectral]") {
  REQUIRE(normalize({2.0, 0.0}) == std::vector<double>{1.0, 0.0});
  REQUIRE(normalize({0.0, 0.0, 0.0}) == std::vector<double>{0.0, 0.0, 0.0});
  REQUIRE(normalize({}).empty());
  const auto v = normalize({3.0, 1.0, 0.0});
  REQUIRE(v[0] == Catch::Approx(0.948683).margin(1e-6));
  REQUIRE(v[1] == Catch::Approx(0.316228).margin(1e-6));
  REQUIRE(v[2] == 0.0);
}

TEST_CASE("normalize output norm is zero or one", "[spectral][property]") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(rng() % 20);
    for (auto& v : x)
      v = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 100.0;
    const auto y = normalize(x);
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    if (norm != 0.0) REQUIRE(norm == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("eigenvalues are clamped to be non-negative", "[spectral][property]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = er_graph(rng, 5 + rng() % 80, 0.15);
    const auto s = full_spectrum(SparseLaplacian(g));
    for (double v : s.eigenvalues) REQUIRE(v >= 0.0);
    REQUIRE(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
  }
}
