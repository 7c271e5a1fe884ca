#ifndef NECSIM_FIELD_HPP
#define NECSIM_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "necsim/rng.hpp"

namespace necsim {

namespace detail {

// Polynomials over GF(p) as coefficient vectors, low degree first.
// Used for field construction and kept free of the table-based fast path.

inline void poly_trim(std::vector<std::uint32_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint32_t> poly_mul(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>(
          (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  poly_trim(r);
  return r;
}

// Remainder of a by monic b.
inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                           const std::vector<std::uint32_t>& b,
                                           std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  poly_trim(a);
  return a;
}

inline bool poly_is_zero(const std::vector<std::uint32_t>& a) { return a.empty(); }

}  // namespace detail

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// A finite field GF(p^e), q = p^e <= 2^16. Elements are represented by
/// integers in [0, q): the base-p digits of the representative are the
/// coefficients of the polynomial representation (low degree first).
/// Immutable after construction and safe to share across threads.
class Field {
 public:
  /// Constructs GF(p^e). For e > 1 an explicit reduction polynomial
  /// (length e+1, monic, irreducible over GF(p)) may be given; by default
  /// the irreducible monic polynomial with the smallest integer encoding
  /// is chosen.
  explicit Field(std::uint32_t p, std::uint32_t e = 1,
                 std::vector<std::uint32_t> poly = {})
      : p_(p), e_(e) {
    if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
    if (e < 1) throw std::invalid_argument("Field: e must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      q *= p;
      if (q > (1ULL << 16))
        throw std::invalid_argument("Field: q = p^e exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (e_ == 1) {
      if (!poly.empty()) throw std::invalid_argument("Field: poly only for e > 1");
      poly_ = {0, 1};  // x, by convention
      return;
    }
    if (poly.empty())
      poly = smallest_irreducible(p, e);
    else {
      if (poly.size() != e + 1 || poly.back() != 1)
        throw std::invalid_argument("Field: reduction polynomial must be monic of degree e");
      for (auto c : poly)
        if (c >= p) throw std::invalid_argument("Field: polynomial coefficient out of range");
      if (!is_irreducible(poly, p))
        throw std::invalid_argument("Field: reduction polynomial is reducible");
    }
    poly_ = poly;
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& reduction_poly() const { return poly_; }

  bool operator==(const Field& o) const {
    return p_ == o.p_ && e_ == o.e_ && (e_ == 1 || poly_ == o.poly_);
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    check_rep(a);
    check_rep(b);
    if (e_ == 1) return (a + b) % p_;
    if (p_ == 2) return a ^ b;
    std::uint32_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      r += (a % p_ + b % p_) % p_ * mul;
      a /= p_;
      b /= p_;
      mul *= p_;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    check_rep(a);
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    std::uint32_t r = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
      std::uint32_t d = a % p_;
      r += (d == 0 ? 0 : p_ - d) * mul;
      a /= p_;
      mul *= p_;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    check_rep(a);
    check_rep(b);
    if (e_ == 1)
      return static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  std::uint32_t inv(std::uint32_t a) const {
    check_rep(a);
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    if (e_ == 1) return pow_mod(a, p_ - 2);
    return exp_[q_ - 1 - log_[a]];
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const {
    check_rep(a);
    std::uint32_t r = 1;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  /// Uniform element; each of the q elements with probability 1/q.
  std::uint32_t sample(Rng& rng) const {
    return static_cast<std::uint32_t>(rng.below(q_));
  }

  static bool is_irreducible(const std::vector<std::uint32_t>& poly,
                             std::uint32_t p) {
    const std::uint32_t e = static_cast<std::uint32_t>(poly.size()) - 1;
    if (e == 0) return false;
    if (e == 1) return true;
    // Trial division against every monic polynomial of degree <= e/2.
    for (std::uint32_t d = 1; 2 * d <= e; ++d) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < d; ++i) count *= p;
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> div(d + 1);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < d; ++i) {
          div[i] = static_cast<std::uint32_t>(c % p);
          c /= p;
        }
        div[d] = 1;
        if (detail::poly_is_zero(detail::poly_mod(poly, div, p))) return false;
      }
    }
    return true;
  }

  static std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p,
                                                         std::uint32_t e) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < e; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint32_t> poly(e + 1);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < e; ++i) {
        poly[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      poly[e] = 1;
      if (is_irreducible(poly, p)) return poly;
    }
    throw std::logic_error("Field: no irreducible polynomial found");
  }

 private:
  std::uint32_t pow_mod(std::uint64_t a, std::uint64_t k) const {
    std::uint64_t r = 1;
    a %= p_;
    while (k) {
      if (k & 1) r = r * a % p_;
      a = a * a % p_;
      k >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }

  void check_rep(std::uint32_t a) const {
    if (a >= q_) throw std::invalid_argument("Field: representative out of range");
  }

  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    std::vector<std::uint32_t> pa, pb;
    for (std::uint32_t x = a; x; x /= p_) pa.push_back(x % p_);
    for (std::uint32_t x = b; x; x /= p_) pb.push_back(x % p_);
    auto pr = detail::poly_mod(detail::poly_mul(pa, pb, p_), poly_, p_);
    std::uint32_t r = 0, mul = 1;
    for (auto c : pr) {
      r += c * mul;
      mul *= p_;
    }
    return r;
  }

  void build_tables() {
    // Find a generator of the multiplicative group and fill exp/log.
    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::uint32_t x = 1;
      std::uint32_t order = 0;
      bool ok = true;
      std::vector<std::uint32_t> seen;
      seen.reserve(q_ - 1);
      do {
        seen.push_back(x);
        x = mul_slow(x, g);
        ++order;
        if (order > q_ - 1) {
          ok = false;
          break;
        }
      } while (x != 1);
      if (!ok || order != q_ - 1) continue;
      for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = seen[i];
        exp_[i + q_ - 1] = seen[i];
        log_[seen[i]] = i;
      }
      return;
    }
    throw std::logic_error("Field: no generator found");
  }

  std::uint32_t p_, e_, q_;
  std::vector<std::uint32_t> poly_;
  std::vector<std::uint32_t> exp_, log_;
};

/// A single field element bound to its field. Plain data, freely copyable.
struct FieldElement {
  const Field* field = nullptr;
  std::uint32_t rep = 0;

  FieldElement() = default;
  FieldElement(const Field& f, std::uint32_t r) : field(&f), rep(r) {
    if (r >= f.q()) throw std::invalid_argument("FieldElement: rep out of range");
  }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    require_same(a, b);
    return FieldElement(*a.field, a.field->add(a.rep, b.rep));
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    require_same(a, b);
    return FieldElement(*a.field, a.field->sub(a.rep, b.rep));
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    require_same(a, b);
    return FieldElement(*a.field, a.field->mul(a.rep, b.rep));
  }
  FieldElement inverse() const { return FieldElement(*field, field->inv(rep)); }
  friend bool operator==(FieldElement a, FieldElement b) {
    require_same(a, b);
    return a.rep == b.rep;
  }

 private:
  static void require_same(const FieldElement& a, const FieldElement& b) {
    if (!a.field || !b.field || *a.field != *b.field)
      throw std::invalid_argument("FieldElement: mismatched fields");
  }
};

}  // namespace necsim

#endif
