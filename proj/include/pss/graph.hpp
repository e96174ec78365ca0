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

#ifndef PSS_GRAPH_HPP
#define PSS_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "pss/features.hpp"

namespace pss {

/// Simple undirected graph on vertices 0..n_vertices-1. Edges are stored as
/// sorted unique pairs with first < second; self-loops are excluded by
/// construction.
struct UndirectedGraph {
  std::size_t n_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// Symmetrized simple view of a program's call graph. Every call-graph node
/// (local and external) becomes a vertex, indexed in declaration order.
/// Parallel edges and the two orientations of a call collapse to one
/// undirected edge; self-calls are dropped.
inline UndirectedGraph undirected_call_graph(const ProgramFeatures& p) {
  UndirectedGraph g;
  g.n_vertices = p.call_graph.nodes.size();
  std::map<std::int64_t, std::uint32_t> index_of;
  for (std::size_t i = 0; i < p.call_graph.nodes.size(); ++i)
    index_of.emplace(p.call_graph.nodes[i].id, static_cast<std::uint32_t>(i));
  std::set<std::pair<std::uint32_t, std::uint32_t>> undirected;
  for (const auto& [s, t] : p.call_graph.edges) {
    const std::uint32_t a = index_of.at(s);
    const std::uint32_t b = index_of.at(t);
    if (a == b) continue;
    undirected.emplace(std::min(a, b), std::max(a, b));
  }
  g.edges.assign(undirected.begin(), undirected.end());
  return g;
}

/// Combinatorial Laplacian L = D - A of an undirected simple graph, stored
/// as degrees plus a CSR adjacency structure. Rows sum to zero, the diagonal
/// carries vertex degrees and off-diagonal entries are 0 or -1.
class SparseLaplacian {
 public:
  SparseLaplacian() = default;

  explicit SparseLaplacian(const UndirectedGraph& g)
      : n_(g.n_vertices), n_edges_(g.edges.size()) {
    std::vector<std::uint32_t> deg(n_, 0);
    for (const auto& [a, b] : g.edges) {
      ++deg[a];
      ++deg[b];
    }
    offsets_.resize(n_ + 1, 0);
    for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
    neighbors_.resize(offsets_[n_]);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [a, b] : g.edges) {
      neighbors_[fill[a]++] = b;
      neighbors_[fill[b]++] = a;
    }
    for (std::size_t i = 0; i < n_; ++i)
      std::sort(neighbors_.begin() + offsets_[i],
                neighbors_.begin() + offsets_[i + 1]);
    degrees_.assign(deg.begin(), deg.end());
  }

  std::size_t dimension() const { return n_; }
  std::size_t edge_count() const { return n_edges_; }
  double degree(std::size_t i) const { return degrees_[i]; }

  std::span<const std::uint32_t> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  double trace() const {
    double t = 0.0;
    for (double d : degrees_) t += d;
    return t;
  }

  /// L[i][j]: degree on the diagonal, -1 for adjacent pairs, 0 otherwise.
  double entry(std::size_t i, std::size_t j) const {
    if (i == j) return degrees_[i];
    const auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(),
                              static_cast<std::uint32_t>(j))
               ? -1.0
               : 0.0;
  }

  /// y = L x.
  void apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
      double acc = degrees_[i] * x[i];
      for (std::uint32_t j : neighbors(i)) acc -= x[j];
      y[i] = acc;
    }
  }

  std::vector<std::vector<double>> dense() const {
    std::vector<std::vector<double>> a(n_, std::vector<double>(n_, 0.0));
    for (std::size_t i = 0; i < n_; ++i) {
      a[i][i] = degrees_[i];
      for (std::uint32_t j : neighbors(i)) a[i][j] = -1.0;
    }
    return a;
  }

 private:
  std::size_t n_ = 0;
  std::size_t n_edges_ = 0;
  std::vector<double> degrees_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> neighbors_;
};

inline SparseLaplacian laplacian(const UndirectedGraph& g) {
  return SparseLaplacian(g);
}

/// CFG edge counts of local functions, sorted descending. External functions
/// carry no CFG and contribute nothing; a program without local functions
/// yields the empty vector.
inline std::vector<std::uint64_t> cfg_edge_vector(const ProgramFeatures& p) {
  std::vector<std::uint64_t> counts;
  counts.reserve(p.functions.size());
  for (const auto& f : p.functions) counts.push_back(f.cfg_edge_count);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  return counts;
}

}  // namespace pss

#endif  // PSS_GRAPH_HPP
