// Independent brute-force oracles for the test suite. Everything here
// uses its own arithmetic (no library code under test) so agreement is
// meaningful.
#ifndef NECSIM_TESTS_ORACLES_HPP
#define NECSIM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

// ---------------------------------------------------------------------
// Prime-field vectors encoded as base-p integers, digitwise arithmetic.

inline int vec_add(int a, int b, int p, int n) {
  int out = 0, mul = 1;
  for (int i = 0; i < n; ++i) {
    out += ((a % p + b % p) % p) * mul;
    a /= p;
    b /= p;
    mul *= p;
  }
  return out;
}

inline int vec_scale(int c, int a, int p, int n) {
  int out = 0, mul = 1;
  for (int i = 0; i < n; ++i) {
    out += (c * (a % p) % p) * mul;
    a /= p;
    mul *= p;
  }
  return out;
}

using VecSet = std::vector<int>;  // sorted list of vector codes, 0 included

// Closure of `base` (already a subspace) extended by vector v.
inline VecSet extend_span(const VecSet& base, int v, int p, int n) {
  std::set<int> out(base.begin(), base.end());
  for (int u : base)
    for (int c = 1; c < p; ++c) out.insert(vec_add(u, vec_scale(c, v, p, n), p, n));
  return VecSet(out.begin(), out.end());
}

/// All k-dimensional subspaces of F_p^n as explicit sorted vector sets,
/// built by repeated one-vector extension with deduplication.
inline std::vector<VecSet> all_subspaces(int p, int n, int k) {
  int total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  std::set<VecSet> layer{VecSet{0}};
  for (int d = 0; d < k; ++d) {
    std::set<VecSet> next;
    for (const auto& s : layer)
      for (int v = 1; v < total; ++v) {
        if (std::binary_search(s.begin(), s.end(), v)) continue;
        next.insert(extend_span(s, v, p, n));
      }
    layer = std::move(next);
  }
  return std::vector<VecSet>(layer.begin(), layer.end());
}

/// Span of a list of row vectors (codes), as a sorted vector set.
inline VecSet span_of(const std::vector<int>& rows, int p, int n) {
  VecSet s{0};
  for (int r : rows) s = extend_span(s, r, p, n);
  return s;
}

inline int dim_of(const VecSet& s, int p) {
  int d = 0;
  std::size_t size = s.size();
  while (size > 1) {
    size /= p;
    ++d;
  }
  return d;
}

// ---------------------------------------------------------------------
// Extension-field multiplication by schoolbook polynomial arithmetic.

/// Product of field elements a, b (coefficient codes, base p) reduced by
/// the monic degree-e polynomial `poly` (coefficients c_0..c_e).
inline std::uint32_t poly_field_mul(std::uint32_t a, std::uint32_t b, int p,
                                    const std::vector<int>& poly) {
  const int e = static_cast<int>(poly.size()) - 1;
  std::vector<int> da(e, 0), db(e, 0);
  for (int i = 0; i < e; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  std::vector<int> prod(2 * e - 1, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int d = 2 * e - 2; d >= e; --d) {
    const int lead = prod[d];
    if (lead == 0) continue;
    // prod -= lead * x^{d-e} * poly  (poly is monic)
    for (int i = 0; i <= e; ++i) {
      int& cell = prod[d - e + i];
      cell = ((cell - lead * poly[i]) % p + p * p) % p;
    }
  }
  std::uint32_t out = 0, mul = 1;
  for (int i = 0; i < e; ++i) {
    out += prod[i] * mul;
    mul *= p;
  }
  return out;
}

// ---------------------------------------------------------------------
// Min-cut by exhaustive edge-subset enumeration (<= ~2^16 subsets).

inline bool connects(int nodes, const std::vector<std::pair<int, int>>& edges,
                     int source, int sink, unsigned removed_mask) {
  std::vector<bool> seen(nodes, false);
  std::deque<int> bfs{source};
  seen[source] = true;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop_front();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (removed_mask & (1u << e)) continue;
      if (edges[e].first == u && !seen[edges[e].second]) {
        seen[edges[e].second] = true;
        bfs.push_back(edges[e].second);
      }
    }
  }
  return seen[sink];
}

inline int min_cut_exhaustive(int nodes, const std::vector<std::pair<int, int>>& edges,
                              int source, int sink) {
  const std::size_t m = edges.size();
  int best = static_cast<int>(m) + 1;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (connects(nodes, edges, source, sink, mask)) continue;
    best = std::min(best, __builtin_popcount(mask));
  }
  return best == static_cast<int>(m) + 1 ? 0 : best;
}

// ---------------------------------------------------------------------
// Chi-square goodness-of-fit p-value for uniform cells.

inline double chi_square_uniform_p(const std::vector<std::size_t>& counts,
                                   std::size_t samples) {
  const double expected =
      static_cast<double>(samples) / static_cast<double>(counts.size());
  double stat = 0;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace oracle

#endif
