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

#ifndef PSS_METRICS_HPP
#define PSS_METRICS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pss/features.hpp"
#include "pss/spectral.hpp"

namespace pss {

inline constexpr double kSqrt2 = 1.4142135623730951;

/// Signature storage mode: the full call-graph spectrum or only its K
/// largest eigenvalues.
struct KMode {
  bool full = true;
  std::size_t k = 0;

  static KMode full_mode() { return {true, 0}; }
  static KMode top_k(std::size_t k) { return {false, k}; }

  bool operator==(const KMode&) const = default;
};

/// The pair of preprocessed vector features of one program: v is the
/// normalized descending call-graph Laplacian spectrum, w the normalized
/// descending CFG edge-count vector. Both have unit or zero Euclidean norm.
struct SpectralSignature {
  std::vector<double> v;
  std::vector<double> w;
  KMode k_mode;

  bool operator==(const SpectralSignature&) const = default;
};

/// Everything the fast baseline metrics consume, extracted once per
/// program and stored alongside the spectral signature.
struct BaselineFeatures {
  std::uint64_t file_size_bytes = 0;
  std::uint64_t disasm_size_bytes = 0;
  std::uint64_t cg_n_vertices = 0;
  std::uint64_t cg_n_edges = 0;  // undirected simple edges
  std::vector<double> ngram_vector;  // 4096 hashed 4-gram frequencies
  std::set<std::string> string_set;
  std::set<std::string> external_name_set;

  bool operator==(const BaselineFeatures&) const = default;
};

inline constexpr std::size_t kNgramDimensions = 4096;
inline constexpr std::size_t kNgramWidth = 4;

// ---------------------------------------------------------------------------
// Spectral similarity
// ---------------------------------------------------------------------------

namespace detail {

// Euclidean distance over the first min(|a|, |b|) components. An empty
// truncation yields distance zero.
inline double truncated_distance(std::span<const double> a,
                                 std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace detail

/// Call-graph similarity: sqrt(2) minus the truncated Euclidean distance
/// between the normalized spectra. In [0, sqrt(2)] for unit-or-zero
/// non-negative inputs; an empty input gives exactly sqrt(2).
inline double sim_cg(std::span<const double> v0, std::span<const double> v1) {
  return kSqrt2 - detail::truncated_distance(v0, v1);
}

/// CFG similarity: the same measure applied to the normalized descending
/// edge-count vectors.
inline double sim_cfg(std::span<const double> w0, std::span<const double> w1) {
  return kSqrt2 - detail::truncated_distance(w0, w1);
}

/// Program spectral similarity: the average of sim_cg and sim_cfg scaled to
/// [0, 1]. Symmetric; exactly 1 for identical signatures.
inline double pss_similarity(const SpectralSignature& s0,
                             const SpectralSignature& s1) {
  return (sim_cg(s0.v, s1.v) + sim_cfg(s0.w, s1.w)) / (2.0 * kSqrt2);
}

/// Spectral distance between two descending spectra, truncated to the
/// shorter one. Zero iff the truncated spectra coincide.
inline double spectral_distance(const Spectrum& a, const Spectrum& b) {
  return detail::truncated_distance(a.eigenvalues, b.eigenvalues);
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

inline double b_size(const BaselineFeatures& a, const BaselineFeatures& b) {
  const double x = static_cast<double>(a.file_size_bytes);
  const double y = static_cast<double>(b.file_size_bytes);
  return -std::fabs(x - y);
}

inline double d_size(const BaselineFeatures& a, const BaselineFeatures& b) {
  const double x = static_cast<double>(a.disasm_size_bytes);
  const double y = static_cast<double>(b.disasm_size_bytes);
  return -std::fabs(x - y);
}

/// Crude call-graph shape: (min n / max n) * (min e / max e), with the
/// convention 0/0 := 1 so a pair of empty graphs is maximally similar.
inline double shape_similarity(const BaselineFeatures& a,
                               const BaselineFeatures& b) {
  auto ratio = [](std::uint64_t x, std::uint64_t y) {
    const std::uint64_t lo = std::min(x, y), hi = std::max(x, y);
    if (hi == 0) return 1.0;
    return static_cast<double>(lo) / static_cast<double>(hi);
  };
  return ratio(a.cg_n_vertices, b.cg_n_vertices) *
         ratio(a.cg_n_edges, b.cg_n_edges);
}

/// Spectral baseline over leading-eigenvalue-normalized spectra:
/// -sum |X_i/X_0 - Y_i/Y_0| over the common prefix. A zero leading
/// eigenvalue (edgeless graph) normalizes to the all-zero vector.
inline double ascg(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  const double x0 = x.empty() ? 0.0 : x[0];
  const double y0 = y.empty() ? 0.0 : y[0];
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xn = x0 == 0.0 ? 0.0 : x[i] / x0;
    const double yn = y0 == 0.0 ? 0.0 : y[i] / y0;
    acc += std::fabs(xn - yn);
  }
  return -acc;
}

/// Hashed 4-gram frequency embedding of an opcode-mnemonic sequence.
/// Sequences shorter than the window yield the zero vector; otherwise the
/// entries are non-negative and sum to one.
inline std::vector<double> mutantxs_embed(
    std::span<const std::string> mnemonics) {
  std::vector<double> vec(kNgramDimensions, 0.0);
  if (mnemonics.size() < kNgramWidth) return vec;
  const std::size_t windows = mnemonics.size() - kNgramWidth + 1;
  const double freq = 1.0 / static_cast<double>(windows);
  for (std::size_t i = 0; i < windows; ++i) {
    // FNV-1a over the 4-gram's mnemonics joined with a separator byte.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t j = 0; j < kNgramWidth; ++j) {
      if (j > 0) h = detail::fnv1a64(std::string_view("\x1f", 1), h);
      h = detail::fnv1a64(mnemonics[i + j], h);
    }
    vec[h % kNgramDimensions] += freq;
  }
  return vec;
}

/// Negative Euclidean distance between two n-gram embeddings.
inline double mutantxs_sim(std::span<const double> x,
                           std::span<const double> y) {
  double s = 0.0;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  for (std::size_t i = n; i < x.size(); ++i) s += x[i] * x[i];
  for (std::size_t i = n; i < y.size(); ++i) s += y[i] * y[i];
  return -std::sqrt(s);
}

/// Jaccard index |a intersect b| / |a union b|, with both-empty mapped
/// to 1 so featureless programs compare as maximally similar rather than
/// failing. Callers may want to surface that degenerate case.
inline double jaccard_similarity(const std::set<std::string>& a,
                                 const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double string_set_sim(const std::set<std::string>& a,
                             const std::set<std::string>& b) {
  return jaccard_similarity(a, b);
}

inline double function_set_sim(const std::set<std::string>& a,
                               const std::set<std::string>& b) {
  return jaccard_similarity(a, b);
}

// ---------------------------------------------------------------------------
// Metric identifiers
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 11> kMetricIds = {
    "pss",  "psso",     "simcg",     "simcfg",      "bsize",   "dsize",
    "shape", "ascg",    "mutantxs",  "stringset",   "functionset"};

inline bool is_known_metric(std::string_view id) {
  for (auto m : kMetricIds)
    if (m == id) return true;
  return false;
}

}  // namespace pss

#endif  // PSS_METRICS_HPP
