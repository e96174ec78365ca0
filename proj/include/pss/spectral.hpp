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

#ifndef PSS_SPECTRAL_HPP
#define PSS_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "pss/errors.hpp"
#include "pss/graph.hpp"

namespace pss {

enum class SpectrumKind { full, top_k };

/// Laplacian eigenvalues in descending order. Entries are clamped to be
/// non-negative (the Laplacian is positive semidefinite; tiny negative
/// values are pure round-off).
struct Spectrum {
  std::vector<double> eigenvalues;
  SpectrumKind kind = SpectrumKind::full;
  std::size_t k = 0;  // requested K, meaningful for kind == top_k
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void axpy(double c, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

// Householder reduction of a symmetric matrix (row-major, destroyed) to
// tridiagonal form. On exit d holds the diagonal and e[i] (i >= 1) the
// subdiagonal coupling rows i-1 and i. When `vectors` is set, `a` is
// replaced by the accumulated orthogonal transform so that a subsequent QL
// pass yields eigenvectors of the original matrix.
inline void householder_tridiagonalize(std::vector<double>& a, std::size_t n,
                                       std::vector<double>& d,
                                       std::vector<double>& e, bool vectors) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  auto A = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(A(i, k));
      if (scale == 0.0) {
        e[i] = A(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          A(i, k) /= scale;
          h += A(i, k) * A(i, k);
        }
        double f = A(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        A(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (vectors) A(j, i) = A(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
          e[j] = g / h;
          f += e[j] * A(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = A(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k)
            A(j, k) -= f * e[k] + g * A(i, k);
        }
      }
    } else {
      e[i] = A(i, l);
    }
    d[i] = h;
  }
  if (n > 0) {
    d[0] = 0.0;
    e[0] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += A(i, k) * A(k, j);
          for (std::size_t k = 0; k < i; ++k) A(k, j) -= g * A(k, i);
        }
      }
      d[i] = A(i, i);
      A(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) A(j, i) = A(i, j) = 0.0;
    } else {
      d[i] = A(i, i);
    }
  }
}

// QL iteration with implicit shifts on a tridiagonal matrix. d is the
// diagonal, e the subdiagonal with e[i] coupling d[i] and d[i+1]. When z is
// non-null it must point at a row-major n x n transform matrix whose
// columns, on exit, are the eigenvectors.
inline void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e,
                              double* z, std::size_t n) {
  if (n == 0) return;
  e.resize(n);
  e[n - 1] = 0.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 64)
          throw ConvergenceFailure("tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        std::size_t i = m;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z != nullptr) {
            for (std::size_t k = 0; k < n; ++k) {
              f = z[k * n + i + 1];
              z[k * n + i + 1] = s * z[k * n + i] + c * f;
              z[k * n + i] = c * z[k * n + i] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Eigenvalues (and optionally eigenvectors as columns of `vectors`) of a
// dense symmetric matrix given in row-major order. `a` is destroyed.
inline void symmetric_eigensystem(std::vector<double>& a, std::size_t n,
                                  std::vector<double>& values,
                                  std::vector<double>* vectors) {
  std::vector<double> e;
  householder_tridiagonalize(a, n, values, e, vectors != nullptr);
  // Shift subdiagonal to the e[i] ~ (d[i], d[i+1]) convention.
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
  if (n > 0) e[n - 1] = 0.0;
  ql_implicit_shift(values, e, vectors != nullptr ? a.data() : nullptr, n);
  if (vectors != nullptr) *vectors = a;
}

inline std::vector<double> random_unit_vector(std::mt19937_64& rng,
                                              std::size_t n) {
  std::vector<double> v(n);
  double norm = 0.0;
  while (norm == 0.0) {
    for (auto& x : v)
      x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    norm = norm2(v);
  }
  for (auto& x : v) x /= norm;
  return v;
}

// Two-pass classical Gram-Schmidt of w against the first `count` rows of
// the row-major basis Q.
inline void reorthogonalize(std::span<double> w, const std::vector<double>& q,
                            std::size_t count, std::size_t n) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < count; ++i) {
      std::span<const double> qi(q.data() + i * n, n);
      axpy(-dot(w, qi), qi, w);
    }
  }
}

// Full Lanczos tridiagonalization with complete reorthogonalization. Runs n
// steps, replacing the Krylov vector with a fresh random direction whenever
// the recurrence breaks down (invariant subspace), which keeps eigenvalue
// multiplicities intact. Returns all n eigenvalues, unordered.
inline std::vector<double> lanczos_full_eigenvalues(const SparseLaplacian& L) {
  const std::size_t n = L.dimension();
  double max_deg = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_deg = std::max(max_deg, L.degree(i));
  const double breakdown_tol = 1e-10 * std::max(1.0, 2.0 * max_deg);

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n);
  std::vector<double> q(n * n);
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  {
    auto q0 = random_unit_vector(rng, n);
    std::copy(q0.begin(), q0.end(), q.begin());
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::span<const double> qj(q.data() + j * n, n);
    L.apply(qj, w);
    if (j > 0)
      axpy(-beta[j - 1], std::span<const double>(q.data() + (j - 1) * n, n), w);
    alpha[j] = dot(w, qj);
    axpy(-alpha[j], qj, w);
    reorthogonalize(w, q, j + 1, n);
    if (j + 1 == n) break;
    double b = norm2(w);
    if (b <= breakdown_tol) {
      // Invariant subspace: decouple and continue from a fresh direction.
      beta[j] = 0.0;
      for (int attempt = 0; attempt < 8; ++attempt) {
        w = random_unit_vector(rng, n);
        reorthogonalize(w, q, j + 1, n);
        b = norm2(w);
        if (b > 1e-4) break;
      }
      if (b <= 1e-4)
        throw ConvergenceFailure("Lanczos could not extend the basis");
      for (std::size_t i = 0; i < n; ++i) q[(j + 1) * n + i] = w[i] / b;
    } else {
      beta[j] = b;
      for (std::size_t i = 0; i < n; ++i) q[(j + 1) * n + i] = w[i] / b;
    }
  }
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = beta[i];
  ql_implicit_shift(alpha, e, nullptr, n);
  return alpha;
}

inline Spectrum finalize_spectrum(std::vector<double> values, SpectrumKind kind,
                                  std::size_t k) {
  std::sort(values.begin(), values.end(), std::greater<>());
  for (auto& v : values) v = std::max(v, 0.0);
  Spectrum s;
  s.eigenvalues = std::move(values);
  s.kind = kind;
  s.k = k;
  return s;
}

}  // namespace detail

/// All n Laplacian eigenvalues, descending. Dense Householder+QL for small
/// matrices, fully reorthogonalized Lanczos above that. Each eigenvalue is
/// accurate to well within `tol` absolute error.
inline Spectrum full_spectrum(const SparseLaplacian& L, double tol = 1e-8) {
  if (!(tol > 0.0)) throw InvalidParameter("tol must be > 0");
  const std::size_t n = L.dimension();
  if (n == 0) return {{}, SpectrumKind::full, 0};
  if (n == 1) return {{0.0}, SpectrumKind::full, 0};
  constexpr std::size_t kDenseCutoff = 64;
  std::vector<double> values;
  if (n < kDenseCutoff) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i * n + i] = L.degree(i);
      for (std::uint32_t j : L.neighbors(i)) a[i * n + j] = -1.0;
    }
    std::vector<double> e;
    detail::householder_tridiagonalize(a, n, values, e, false);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
    e[n - 1] = 0.0;
    detail::ql_implicit_shift(values, e, nullptr, n);
  } else {
    values = detail::lanczos_full_eigenvalues(L);
  }
  return detail::finalize_spectrum(std::move(values), SpectrumKind::full, 0);
}

/// The min(K, n) largest Laplacian eigenvalues, descending, each within
/// `tol` of the corresponding full-spectrum value. Falls back to the exact
/// full solve for small matrices (n <= K or n < 64); otherwise runs a
/// thick-restart Lanczos iteration with subspace dimension max(2K, K+16)
/// and a budget of 300*K matrix-vector products.
inline Spectrum top_k_spectrum(const SparseLaplacian& L, std::size_t K,
                               double tol = 1e-6) {
  if (K < 1) throw InvalidParameter("K must be >= 1");
  if (!(tol > 0.0)) throw InvalidParameter("tol must be > 0");
  const std::size_t n = L.dimension();
  const std::size_t m = std::max(2 * K, K + 16);
  if (n <= K || n < 64 || m >= n) {
    Spectrum full = full_spectrum(L, std::min(tol, 1e-8));
    if (full.eigenvalues.size() > K) full.eigenvalues.resize(K);
    full.kind = SpectrumKind::top_k;
    full.k = K;
    return full;
  }

  double max_deg = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_deg = std::max(max_deg, L.degree(i));
  const double breakdown_tol = 1e-10 * std::max(1.0, 2.0 * max_deg);
  const double resid_tol = 0.5 * tol;
  const std::size_t budget = 300 * K;

  std::mt19937_64 rng(0xd1b54a32d192ed03ULL ^ n);
  std::vector<double> q((m + 1) * n);       // basis rows 0..m-1 plus residual
  std::vector<double> t(m * m, 0.0);        // projected matrix, symmetric
  std::vector<double> w(n);
  std::size_t matvecs = 0;

  auto basis_row = [&](std::size_t i) {
    return std::span<double>(q.data() + i * n, n);
  };

  // Extends the factorization from column j0 to m columns. Columns below j0
  // and the projected matrix t are assumed consistent; the vector occupying
  // row j0 must already be unit length. Returns the final residual coupling
  // beta_m (row m of q holds the unit residual direction when beta_m > 0).
  auto extend = [&](std::size_t j0, std::span<const double> lock_coupling)
      -> double {
    double beta_prev = 0.0;
    for (std::size_t j = j0; j < m; ++j) {
      std::span<const double> qj(q.data() + j * n, n);
      L.apply(qj, w);
      ++matvecs;
      if (j == j0 && !lock_coupling.empty()) {
        // First column after a thick restart couples to every locked Ritz
        // vector, not just its predecessor.
        for (std::size_t i = 0; i < lock_coupling.size(); ++i)
          detail::axpy(-lock_coupling[i],
                       std::span<const double>(q.data() + i * n, n), w);
      } else if (j > 0) {
        detail::axpy(-beta_prev,
                     std::span<const double>(q.data() + (j - 1) * n, n), w);
      }
      const double a = detail::dot(w, qj);
      detail::axpy(-a, qj, w);
      detail::reorthogonalize(w, q, j + 1, n);
      t[j * m + j] = a;
      double b = detail::norm2(w);
      if (b <= breakdown_tol) {
        b = 0.0;
        double nb = 0.0;
        for (int attempt = 0; attempt < 8 && nb <= 1e-4; ++attempt) {
          w = detail::random_unit_vector(rng, n);
          detail::reorthogonalize(w, q, j + 1, n);
          nb = detail::norm2(w);
        }
        if (nb <= 1e-4)
          throw ConvergenceFailure("top-k Lanczos could not extend the basis");
        for (std::size_t i = 0; i < n; ++i) q[(j + 1) * n + i] = w[i] / nb;
      } else {
        for (std::size_t i = 0; i < n; ++i) q[(j + 1) * n + i] = w[i] / b;
      }
      if (j + 1 < m) {
        t[j * m + (j + 1)] = b;
        t[(j + 1) * m + j] = b;
      }
      beta_prev = b;
    }
    return beta_prev;
  };

  {
    auto q0 = detail::random_unit_vector(rng, n);
    std::copy(q0.begin(), q0.end(), basis_row(0).begin());
  }
  double beta_m = extend(0, {});

  std::vector<double> theta, s;
  std::vector<std::size_t> order(m);
  while (true) {
    std::vector<double> tc = t;
    detail::symmetric_eigensystem(tc, m, theta, &s);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return theta[x] > theta[y]; });

    bool converged = true;
    for (std::size_t i = 0; i < K; ++i) {
      const double resid = std::fabs(beta_m * s[(m - 1) * m + order[i]]);
      if (resid > resid_tol) {
        converged = false;
        break;
      }
    }
    if (converged) {
      std::vector<double> values(K);
      for (std::size_t i = 0; i < K; ++i) values[i] = theta[order[i]];
      return detail::finalize_spectrum(std::move(values), SpectrumKind::top_k,
                                       K);
    }
    if (matvecs >= budget)
      throw ConvergenceFailure(
          "top-k Lanczos exhausted its iteration budget (" +
          std::to_string(budget) + " matrix-vector products)");

    // Thick restart: keep the best Ritz vectors plus the residual direction.
    const std::size_t keep = std::min(m - 1, K + (m - K) / 2);
    std::vector<double> locked(keep * n, 0.0);
    std::vector<double> coupling(keep);
    for (std::size_t i = 0; i < keep; ++i) {
      const std::size_t col = order[i];
      for (std::size_t row = 0; row < m; ++row) {
        const double c = s[row * m + col];
        if (c != 0.0)
          detail::axpy(c, std::span<const double>(q.data() + row * n, n),
                       std::span<double>(locked.data() + i * n, n));
      }
      coupling[i] = beta_m * s[(m - 1) * m + col];
    }
    std::copy(basis_row(m).begin(), basis_row(m).end(), basis_row(keep).begin());
    std::copy(locked.begin(), locked.end(), q.begin());
    std::fill(t.begin(), t.end(), 0.0);
    for (std::size_t i = 0; i < keep; ++i) {
      t[i * m + i] = theta[order[i]];
      t[i * m + keep] = coupling[i];
      t[keep * m + i] = coupling[i];
    }
    if (beta_m <= breakdown_tol) {
      // The residual vanished without convergence (should not happen, but
      // keep the restart well defined): continue from a fresh direction.
      w = detail::random_unit_vector(rng, n);
      detail::reorthogonalize(w, q, keep, n);
      const double nb = detail::norm2(w);
      if (nb <= 1e-4)
        throw ConvergenceFailure("top-k Lanczos could not restart");
      for (std::size_t i = 0; i < n; ++i) q[keep * n + i] = w[i] / nb;
      std::fill(coupling.begin(), coupling.end(), 0.0);
      for (std::size_t i = 0; i < keep; ++i) {
        t[i * m + keep] = 0.0;
        t[keep * m + i] = 0.0;
      }
    }
    beta_m = extend(keep, coupling);
  }
}

/// Scales a vector to unit Euclidean norm. Zero vectors (including the
/// empty vector) are returned unchanged.
inline std::vector<double> normalize(std::vector<double> x) {
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  if (norm == 0.0) return x;
  for (auto& v : x) v /= norm;
  return x;
}

}  // namespace pss

#endif  // PSS_SPECTRAL_HPP
