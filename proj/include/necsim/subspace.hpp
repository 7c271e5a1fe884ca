#ifndef NECSIM_SUBSPACE_HPP
#define NECSIM_SUBSPACE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "necsim/matrix.hpp"

namespace necsim {

using BigInt = boost::multiprecision::cpp_int;

/// A subspace of F_q^n held as its canonical RREF basis (zero rows
/// dropped). Two Subspace values are equal iff their bases are identical.
class Subspace {
 public:
  static Subspace from_matrix(const Matrix& m) {
    return Subspace(rref(m).reduced);
  }

  static Subspace zero(const Field& f, std::size_t n) {
    return Subspace(Matrix(f, 0, n));
  }

  static Subspace full(const Field& f, std::size_t n) {
    return Subspace(Matrix::identity(f, n));
  }

  std::size_t ambient() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const Field& field() const { return basis_.field(); }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  bool operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < ambient(); ++j) {
        if (basis_.at(i, j) != o.basis_.at(i, j))
          return basis_.at(i, j) < o.basis_.at(i, j);
      }
    return false;
  }

  bool contains_vector(const std::vector<std::uint32_t>& v) const {
    Matrix row = Matrix::from_rows(field(), {v});
    return rank(stack_rows(basis_, row)) == dim();
  }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// Injection distance: max(dim V, dim W) − dim(V ∩ W).
inline int injection_distance(const Subspace& v, const Subspace& w) {
  if (v.ambient() != w.ambient())
    throw std::invalid_argument("injection_distance: ambient mismatch");
  const int dv = static_cast<int>(v.dim()), dw = static_cast<int>(w.dim());
  const int joint = static_cast<int>(rank(stack_rows(v.basis(), w.basis())));
  const int inter = dv + dw - joint;
  return (dv > dw ? dv : dw) - inter;
}

/// Gaussian coefficient [n,k]_q = |G_q(n,k)|, exact.
inline BigInt gaussian_coeff(int n, int k, int q) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("gaussian_coeff: need 0 <= k <= n");
  if (q < 2) throw std::invalid_argument("gaussian_coeff: q >= 2");
  BigInt num = 1, den = 1;
  BigInt qn = boost::multiprecision::pow(BigInt(q), n);
  BigInt qk = boost::multiprecision::pow(BigInt(q), k);
  BigInt qi = 1;
  for (int i = 0; i < k; ++i) {
    num *= qn - qi;
    den *= qk - qi;
    qi *= q;
  }
  return num / den;  // exact
}

/// q^{k(n−k)} <= [n,k]_q <= 4 q^{k(n−k)}.
inline bool gaussian_coeff_bounds_check(int n, int k, int q) {
  const BigInt g = gaussian_coeff(n, k, q);
  const BigInt lower = boost::multiprecision::pow(BigInt(q), k * (n - k));
  return lower <= g && g <= 4 * lower;
}

/// Uniform over G_q(n,k): rejection-sample a full-rank k×n matrix and
/// canonicalize. Each subspace is the row space of equally many
/// full-rank matrices, so uniformity carries over.
inline Subspace sample_uniform_subspace(const Field& f, std::size_t n,
                                        std::size_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("sample_uniform_subspace: k > n");
  if (k == 0) return Subspace::zero(f, n);
  return Subspace::from_matrix(random_full_rank(f, k, n, rng));
}

/// All k-dimensional subspaces of F_q^n, by direct RREF enumeration.
inline std::vector<Subspace> enumerate_grassmannian(const Field& f, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("enumerate_grassmannian: need 0 <= k <= n");
  std::vector<Subspace> out;
  if (k == 0) {
    out.push_back(Subspace::zero(f, n));
    return out;
  }
  const std::uint64_t q = f.q();
  // Iterate pivot-column combinations in lexicographic order.
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  for (;;) {
    // Free positions: (i, j) with j > piv[i] and j not a pivot column.
    std::vector<std::pair<int, int>> free_pos;
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free_pos.push_back({i, j});
    std::uint64_t combos = 1;
    bool overflow = false;
    for (std::size_t t = 0; t < free_pos.size(); ++t) {
      if (combos > (1ULL << 40) / q) {
        overflow = true;
        break;
      }
      combos *= q;
    }
    if (overflow)
      throw std::invalid_argument("enumerate_grassmannian: instance too large");
    for (std::uint64_t code = 0; code < combos; ++code) {
      Matrix m(f, k, n);
      for (int i = 0; i < k; ++i) m.set(i, piv[i], 1);
      std::uint64_t c = code;
      for (auto [i, j] : free_pos) {
        m.set(i, j, static_cast<std::uint32_t>(c % q));
        c /= q;
      }
      out.push_back(Subspace::from_matrix(m));
    }
    // Next combination.
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

/// All subspaces of F_q^n of every dimension.
inline std::vector<Subspace> enumerate_all_subspaces(const Field& f, int n) {
  std::vector<Subspace> out;
  for (int k = 0; k <= n; ++k) {
    auto layer = enumerate_grassmannian(f, n, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// Σ_{i=1}^{z_w} [C,i]_q [n,i]_q — the decoding-region cardinality
/// expression. Enumeration shows the true count of C-dim subspaces
/// within radius z_w of a C-dim center never exceeds this plus one
/// (the distance-0 term).
inline BigInt decoding_region_bound(int C, int n, int z_w, int q) {
  if (z_w < 1) throw std::invalid_argument("decoding_region_bound: z_w >= 1");
  if (C > n) throw std::invalid_argument("decoding_region_bound: C <= n");
  BigInt sum = 0;
  for (int i = 1; i <= z_w; ++i)
    sum += gaussian_coeff(C, i, q) * gaussian_coeff(n, i, q);
  return sum;
}

}  // namespace necsim

#endif
