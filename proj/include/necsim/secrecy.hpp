#ifndef NECSIM_SECRECY_HPP
#define NECSIM_SECRECY_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "necsim/common.hpp"
#include "necsim/matrix.hpp"

namespace necsim {

/// Coset-code secrecy layer. The ambient space F^L over the symbol field
/// is partitioned by an MDS parity-check H into q_sym^{L−z_r} cosets of
/// size q_sym^{z_r}; the message is the coset label m = Hs.
class CosetCode {
 public:
  /// Vandermonde parity-check on the first L field elements as
  /// evaluation points; every (L−z_r)×(L−z_r) minor is invertible.
  static CosetCode build_mds_parity(const Field& symbol_field, int L, int z_r) {
    if (z_r < 0 || z_r >= L) throw std::invalid_argument("CosetCode: need 0 <= z_r < L");
    if (static_cast<std::uint32_t>(L) > symbol_field.q())
      throw budget_error("CosetCode: field too small for L evaluation points");
    const int rows = L - z_r;
    Matrix h(symbol_field, rows, L);
    for (int j = 0; j < L; ++j) {
      std::uint32_t point = static_cast<std::uint32_t>(j);
      std::uint32_t power = 1;
      for (int i = 0; i < rows; ++i) {
        h.set(i, j, power);
        power = symbol_field.mul(power, point);
      }
    }
    CosetCode code(symbol_field, L, z_r, h);
    if (L <= 8) code.check_all_minors();
    return code;
  }

  const Field& symbol_field() const { return *sym_; }
  int length() const { return L_; }
  int observation_budget() const { return z_r_; }
  const Matrix& parity() const { return h_; }

  /// Uniform vector s of the coset with Hs = m.
  std::vector<std::uint32_t> secret_encode(const std::vector<std::uint32_t>& m,
                                           Rng& rng) const {
    if (static_cast<int>(m.size()) != L_ - z_r_)
      throw std::invalid_argument("secret_encode: message length must be L - z_r");
    std::vector<std::uint32_t> s(L_, 0);
    // Particular solution from the RREF of H, then a uniform kernel element.
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      std::uint32_t acc = 0;
      for (int k = 0; k < L_ - z_r_; ++k)
        acc = sym_->add(acc, sym_->mul(solve_.at(i, k), m[k]));
      s[pivots_[i]] = acc;
    }
    for (std::size_t t = 0; t < kernel_.size(); ++t) {
      const std::uint32_t c = sym_->sample(rng);
      if (c == 0) continue;
      for (int j = 0; j < L_; ++j) s[j] = sym_->add(s[j], sym_->mul(c, kernel_[t][j]));
    }
    return s;
  }

  /// m = Hs.
  std::vector<std::uint32_t> secret_decode(const std::vector<std::uint32_t>& s) const {
    if (static_cast<int>(s.size()) != L_)
      throw std::invalid_argument("secret_decode: vector length must be L");
    std::vector<std::uint32_t> m(L_ - z_r_, 0);
    for (int i = 0; i < L_ - z_r_; ++i)
      for (int j = 0; j < L_; ++j)
        m[i] = sym_->add(m[i], sym_->mul(h_.at(i, j), s[j]));
    return m;
  }

  const std::vector<std::vector<std::uint32_t>>& kernel_basis() const { return kernel_; }

 private:
  /// Every maximal square minor of H must be invertible (MDS dual
  /// property); exhaustive over column subsets, intended for small L.
  void check_all_minors() const {
    const int rows = L_ - z_r_;
    std::vector<int> cols(rows);
    std::function<void(int, int)> walk = [&](int pos, int start) {
      if (pos == rows) {
        Matrix square(*sym_, rows, rows);
        for (int i = 0; i < rows; ++i)
          for (int k = 0; k < rows; ++k) square.set(i, k, h_.at(i, cols[k]));
        if (static_cast<int>(rank(square)) != rows)
          throw std::logic_error("CosetCode: singular maximal minor");
        return;
      }
      for (int c = start; c < L_; ++c) {
        cols[pos] = c;
        walk(pos + 1, c + 1);
      }
    };
    if (rows > 0) walk(0, 0);
  }

  CosetCode(const Field& sym, int L, int z_r, Matrix h)
      : sym_(&sym), L_(L), z_r_(z_r), h_(std::move(h)), solve_(sym, 0, 0) {
    const RrefResult rr = rref(h_);
    if (static_cast<int>(rr.rank) != L_ - z_r_)
      throw std::logic_error("CosetCode: parity check is rank deficient");
    pivots_ = rr.pivot_columns;
    // Setting the free coordinates to zero, H s = m restricts to
    // H[:, pivots] s[pivots] = m; invert that square block.
    Matrix block(*sym_, L_ - z_r_, L_ - z_r_);
    for (int i = 0; i < L_ - z_r_; ++i)
      for (int k = 0; k < L_ - z_r_; ++k) block.set(i, k, h_.at(i, pivots_[k]));
    solve_ = invert(block);
    // Kernel basis: one vector per free column.
    std::vector<bool> is_piv(L_, false);
    for (auto c : pivots_) is_piv[c] = true;
    for (int free_col = 0; free_col < L_; ++free_col) {
      if (is_piv[free_col]) continue;
      std::vector<std::uint32_t> v(L_, 0);
      v[free_col] = 1;
      for (std::size_t i = 0; i < pivots_.size(); ++i)
        v[pivots_[i]] = sym_->neg(rr.reduced.at(i, free_col));
      kernel_.push_back(v);
    }
  }

  static Matrix invert(const Matrix& a) {
    const Field& f = a.field();
    const std::size_t n = a.rows();
    Matrix aug(f, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a.at(i, j));
      aug.set(i, n + i, 1);
    }
    const Matrix red = rref(aug).reduced;
    if (red.rows() != n) throw std::invalid_argument("invert: singular matrix");
    Matrix inv(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv.set(i, j, red.at(i, n + j));
    return inv;
  }

  const Field* sym_;
  int L_, z_r_;
  Matrix h_;
  Matrix solve_;  // inverse of the pivot block, maps m to pivot coords
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::uint32_t>> kernel_;
};

/// Re-layout of L extension-field symbols into an L×ell base-field
/// matrix; row i is the coefficient vector of symbol i. Requires a prime
/// base field so representative digits are the coefficients.
inline Matrix flatten(const Field& base, const Field& symbol_field,
                      const std::vector<std::uint32_t>& s) {
  if (base.e() != 1 || base.p() != symbol_field.p())
    throw std::invalid_argument("flatten: base field must be the prime subfield");
  const std::size_t ell = symbol_field.e();
  Matrix m(base, s.size(), ell);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::uint32_t rep = s[i];
    if (rep >= symbol_field.q()) throw std::invalid_argument("flatten: symbol out of range");
    for (std::size_t j = 0; j < ell; ++j) {
      m.set(i, j, rep % base.p());
      rep /= base.p();
    }
  }
  return m;
}

inline std::vector<std::uint32_t> unflatten(const Field& base,
                                            const Field& symbol_field,
                                            const Matrix& m) {
  if (base.e() != 1 || base.p() != symbol_field.p())
    throw std::invalid_argument("unflatten: base field must be the prime subfield");
  if (m.cols() != symbol_field.e())
    throw std::invalid_argument("unflatten: column count must equal extension degree");
  std::vector<std::uint32_t> s(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::uint32_t rep = 0, mul = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rep += m.at(i, j) * mul;
      mul *= base.p();
    }
    s[i] = rep;
  }
  return s;
}

struct LeakageReport {
  double h_m = 0;          // entropy of m, base q_sym
  double h_m_given_z = 0;  // conditional entropy, base q_sym
  bool perfect = false;    // exact equality, decided on integer counts
};

namespace detail {

inline LeakageReport leakage_from_observation(
    const CosetCode& code,
    const std::function<std::uint64_t(const std::vector<std::uint32_t>&)>& observe) {
  const Field& f = code.symbol_field();
  const int L = code.length();
  double states_d = std::pow(static_cast<double>(f.q()), L);
  if (states_d > static_cast<double>(1ULL << 24))
    throw budget_error("leakage_entropy: state space exceeds 2^24");
  const std::uint64_t states = static_cast<std::uint64_t>(states_d + 0.5);
  // Uniform s over F^L induces uniform m over cosets with uniform
  // in-coset sampling; enumerate the joint (z, m) counts exactly.
  std::map<std::uint64_t, std::map<std::uint64_t, std::uint64_t>> joint;
  std::map<std::uint64_t, std::uint64_t> marginal_m;
  std::vector<std::uint32_t> s(L, 0);
  for (std::uint64_t code_s = 0; code_s < states; ++code_s) {
    std::uint64_t c = code_s;
    for (int i = 0; i < L; ++i) {
      s[i] = static_cast<std::uint32_t>(c % f.q());
      c /= f.q();
    }
    const auto m = code.secret_decode(s);
    std::uint64_t m_key = 0;
    for (std::size_t i = 0; i < m.size(); ++i) m_key = m_key * f.q() + m[i];
    const std::uint64_t z_key = observe(s);
    ++joint[z_key][m_key];
    ++marginal_m[m_key];
  }
  const double logq = std::log(static_cast<double>(f.q()));
  LeakageReport r;
  for (auto& [mk, cnt] : marginal_m) {
    const double pm = static_cast<double>(cnt) / static_cast<double>(states);
    r.h_m -= pm * std::log(pm) / logq;
  }
  r.perfect = true;
  for (auto& [zk, dist] : joint) {
    std::uint64_t z_total = 0;
    for (auto& [mk, cnt] : dist) z_total += cnt;
    const double pz = static_cast<double>(z_total) / static_cast<double>(states);
    double h_cond = 0;
    for (auto& [mk, cnt] : dist) {
      const double pmz = static_cast<double>(cnt) / static_cast<double>(z_total);
      h_cond -= pmz * std::log(pmz) / logq;
    }
    r.h_m_given_z += pz * h_cond;
    // Exact secrecy check: within this observation the message counts
    // must be proportional to the marginal counts.
    if (dist.size() != marginal_m.size()) r.perfect = false;
    for (auto& [mk, cnt] : dist)
      if (cnt * static_cast<std::uint64_t>(states) !=
          marginal_m.at(mk) * z_total)
        r.perfect = false;
  }
  return r;
}

}  // namespace detail

/// Exact leakage of the coordinates in `observed` about the message m,
/// under uniform m and uniform coset sampling.
inline LeakageReport leakage_entropy(const CosetCode& code,
                                     const std::vector<int>& observed) {
  const Field& f = code.symbol_field();
  for (int i : observed)
    if (i < 0 || i >= code.length())
      throw std::invalid_argument("leakage_entropy: coordinate out of range");
  return detail::leakage_from_observation(
      code, [&](const std::vector<std::uint32_t>& s) {
        std::uint64_t key = 0;
        for (int i : observed) key = key * f.q() + s[i];
        return key;
      });
}

/// Leakage of linear-combination observations z = T·s (network mixing).
inline LeakageReport leakage_entropy_linear(const CosetCode& code, const Matrix& t) {
  const Field& f = code.symbol_field();
  if (t.field() != f || t.cols() != static_cast<std::size_t>(code.length()))
    throw std::invalid_argument("leakage_entropy_linear: T shape mismatch");
  return detail::leakage_from_observation(
      code, [&](const std::vector<std::uint32_t>& s) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < t.rows(); ++i) {
          std::uint32_t acc = 0;
          for (std::size_t j = 0; j < t.cols(); ++j)
            acc = f.add(acc, f.mul(t.at(i, j), s[j]));
          key = key * f.q() + acc;
        }
        return key;
      });
}

/// True iff no nonzero vector of rowspace(candidate) lies in rowspace(H).
inline bool check_transfer_condition(const Matrix& h, const Matrix& candidate) {
  if (h.field() != candidate.field() || h.cols() != candidate.cols())
    throw std::invalid_argument("check_transfer_condition: shape mismatch");
  return intersection_dim(h, candidate) == 0;
}

}  // namespace necsim

#endif
