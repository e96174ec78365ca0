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

#ifndef PSS_TESTS_TEST_UTIL_HPP
#define PSS_TESTS_TEST_UTIL_HPP

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pss/graph.hpp"

namespace pss_test {

inline pss::UndirectedGraph graph_from_edges(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  pss::UndirectedGraph g;
  g.n_vertices = n;
  std::set<std::pair<std::uint32_t, std::uint32_t>> unique;
  for (auto [a, b] : edges)
    if (a != b) unique.emplace(std::min(a, b), std::max(a, b));
  g.edges.assign(unique.begin(), unique.end());
  return g;
}

/// Erdos-Renyi G(n, p) on vertex set 0..n-1.
inline pss::UndirectedGraph er_graph(std::mt19937_64& rng, std::size_t n,
                                     double p) {
  pss::UndirectedGraph g;
  g.n_vertices = n;
  const double scale = 0x1.0p-53;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (static_cast<double>(rng() >> 11) * scale < p) g.edges.emplace_back(a, b);
  return g;
}

}  // namespace pss_test

#endif  // PSS_TESTS_TEST_UTIL_HPP
