#ifndef NECSIM_ADVERSARY_HPP
#define NECSIM_ADVERSARY_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "necsim/codebook.hpp"
#include "necsim/common.hpp"
#include "necsim/network.hpp"
#include "necsim/subspace.hpp"

namespace necsim {

/// The (z_ro, z_wo, z_rw) power tuple.
struct AdversaryPower {
  int z_ro = 0, z_wo = 0, z_rw = 0;

  int z_r() const { return z_ro + z_rw; }
  int z_w() const { return z_wo + z_rw; }
  int z_total() const { return z_ro + z_wo + z_rw; }

  void validate() const {
    if (z_ro < 0 || z_wo < 0 || z_rw < 0)
      throw std::invalid_argument("AdversaryPower: counts must be nonnegative");
  }
};

enum class Regime { Weak, Strong };

inline const char* regime_name(Regime r) { return r == Regime::Weak ? "weak" : "strong"; }

/// Weak iff C > z_ro + 2 z_w; the boundary is strict.
inline Regime classify_regime(int C, const AdversaryPower& p) {
  if (C < 1) throw std::invalid_argument("classify_regime: C >= 1");
  return C > p.z_ro + 2 * p.z_w() ? Regime::Weak : Regime::Strong;
}

/// C − z_w in the weak regime, (C − 2 z_w)^+ in the strong regime.
inline long capacity(int C, const AdversaryPower& p) {
  if (classify_regime(C, p) == Regime::Weak) return C - p.z_w();
  return std::max(C - 2 * p.z_w(), 0);
}

/// C − z_w − z_r in the weak regime, 0 in the strong regime.
inline long secrecy_capacity(int C, const AdversaryPower& p) {
  if (classify_regime(C, p) == Regime::Weak)
    return std::max<long>(C - p.z_w() - p.z_r(), 0);
  return 0;
}

/// Indices m with T · encode(m) = Z, exact matrix equality.
inline std::vector<int> enumerate_compatible(const Codebook& cb, const Matrix& t,
                                             const Matrix& z) {
  if (t.cols() != cb.dim())
    throw std::invalid_argument("enumerate_compatible: T columns must equal codeword dim");
  if (z.rows() != t.rows() || z.cols() != cb.n())
    throw std::invalid_argument("enumerate_compatible: Z shape mismatch");
  std::vector<int> out;
  if (t.rows() == 0) {
    out.resize(cb.size());
    for (std::size_t m = 0; m < cb.size(); ++m) out[m] = static_cast<int>(m);
    return out;
  }
  for (std::size_t m = 0; m < cb.size(); ++m)
    if (t * cb.encode(m).basis() == z) out.push_back(static_cast<int>(m));
  return out;
}

struct CompatibleProbability {
  BigInt compatible;  // subspaces V in G_q(n,C) with T·rref(V) = Z
  BigInt total;       // |G_q(n,C)|
  // The two candidate closed forms, recorded for comparison only.
  BigInt ratio_paper_num, ratio_paper_den;          // [n,C−z_r]_q / [n,C]_q
  BigInt ratio_classical_num, ratio_classical_den;  // [n−z_r,C−z_r]_q / [n,C]_q

  double value() const {
    return compatible.convert_to<double>() / total.convert_to<double>();
  }
};

/// Exact probability that a uniform C-dim subspace of F_q^n, observed
/// through the fixed full-rank transform T = [I_{z_r} | 0], reproduces
/// the observation generated by the canonical subspace [I_C | 0].
/// Computed by exhaustive enumeration of the Grassmannian.
inline CompatibleProbability compatible_probability(const Field& f, int n, int C,
                                                    int z_r) {
  if (z_r < 0 || z_r > C || C > n)
    throw std::invalid_argument("compatible_probability: need z_r <= C <= n");
  const BigInt total = gaussian_coeff(n, C, f.q());
  if (total > BigInt(1) << 22)
    throw budget_error("compatible_probability: Grassmannian too large to enumerate");
  CompatibleProbability r;
  r.total = total;
  r.ratio_paper_num = gaussian_coeff(n, C - z_r, f.q());
  r.ratio_paper_den = total;
  r.ratio_classical_num = gaussian_coeff(n - z_r, C - z_r, f.q());
  r.ratio_classical_den = total;
  if (z_r == 0) {
    r.compatible = total;
    return r;
  }
  Matrix t(f, z_r, C);
  for (int i = 0; i < z_r; ++i) t.set(i, i, 1);
  Matrix x0(f, C, n);
  for (int i = 0; i < C; ++i) x0.set(i, i, 1);
  const Matrix z = t * x0;
  std::uint64_t count = 0;
  for (const auto& v : enumerate_grassmannian(f, n, C))
    if (t * v.basis() == z) ++count;
  r.compatible = count;
  return r;
}

enum class StrategyKind { NoAttack, RandomNoise, Symmetrization, PushTowardCompatible };

inline const char* strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::NoAttack: return "none";
    case StrategyKind::RandomNoise: return "random-noise";
    case StrategyKind::Symmetrization: return "symmetrization";
    case StrategyKind::PushTowardCompatible: return "push";
  }
  return "?";
}

inline StrategyKind strategy_from_name(const std::string& s) {
  if (s == "none") return StrategyKind::NoAttack;
  if (s == "random-noise") return StrategyKind::RandomNoise;
  if (s == "symmetrization") return StrategyKind::Symmetrization;
  if (s == "push") return StrategyKind::PushTowardCompatible;
  throw std::invalid_argument("unknown attack strategy '" + s + "'");
}

struct AttackStrategy {
  StrategyKind kind = StrategyKind::NoAttack;
};

/// Everything the adversary is allowed to see: the codebook, the network
/// transforms onto the edges he taps, and his observations.
struct AdversaryView {
  const Codebook* codebook = nullptr;
  Matrix t_read_only;  // z_ro x C
  Matrix z_read_only;  // z_ro x n
  Matrix t_full;       // z_r x C (read-only rows then read-write rows)
  Matrix z_full;       // z_r x n
  std::vector<std::vector<std::uint32_t>> write_gvecs;  // per write edge, length C
  std::size_t packet_len = 0;
};

/// Content the write edges would carry if the source had transmitted X'.
inline Matrix consistent_jam_rows(const AdversaryView& view, const Matrix& x_prime) {
  const Field& f = x_prime.field();
  Matrix jam(f, view.write_gvecs.size(), view.packet_len);
  for (std::size_t w = 0; w < view.write_gvecs.size(); ++w) {
    const auto& g = view.write_gvecs[w];
    for (std::size_t j = 0; j < view.packet_len; ++j) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < g.size(); ++k)
        acc = f.add(acc, f.mul(g[k], x_prime.at(k, j)));
      jam.set(w, j, acc);
    }
  }
  return jam;
}

/// Produces the jamming rows for the write edges (write-only first, then
/// read-write), or nothing for NoAttack.
///
/// Symmetrization is the converse's myopic attack: the compatible set is
/// taken against the read-only observations alone, a codeword X' is
/// drawn uniformly from it, and the write edges carry the content X'
/// would have produced. PushTowardCompatible conditions on the full z_r
/// observation and picks the compatible codeword closest (in injection
/// distance) to another compatible codeword, lowest index on ties.
inline std::optional<Matrix> jam(const AttackStrategy& strategy,
                                 const AdversaryView& view, Rng& rng) {
  if (strategy.kind == StrategyKind::NoAttack) return std::nullopt;
  const Codebook& cb = *view.codebook;
  const Field& f = cb.field();
  const std::size_t z_w = view.write_gvecs.size();
  if (strategy.kind == StrategyKind::RandomNoise)
    return random_matrix(f, z_w, view.packet_len, rng);
  if (strategy.kind == StrategyKind::Symmetrization) {
    const auto compat = enumerate_compatible(cb, view.t_read_only, view.z_read_only);
    if (compat.empty())
      throw std::logic_error("jam: symmetrization with inconsistent observation");
    const int pick = compat[rng.below(compat.size())];
    return consistent_jam_rows(view, cb.encode(pick).basis());
  }
  // PushTowardCompatible
  const auto compat = enumerate_compatible(cb, view.t_full, view.z_full);
  if (compat.empty())
    throw std::logic_error("jam: push with inconsistent observation");
  int best = compat[0];
  if (compat.size() > 1) {
    int best_score = std::numeric_limits<int>::max();
    for (int i : compat) {
      int score = std::numeric_limits<int>::max();
      for (int j : compat) {
        if (j == i) continue;
        score = std::min(score, injection_distance(cb.encode(i), cb.encode(j)));
      }
      if (score < best_score) {
        best_score = score;
        best = i;
      }
    }
  }
  return consistent_jam_rows(view, cb.encode(best).basis());
}

/// Diagnostic split of dim V(Y) into the parts seen by the adversary,
/// unseen, and injected.
struct ReceivedDecomposition {
  int dim_ro = 0, dim_u = 0, dim_jam = 0;
};

inline ReceivedDecomposition decompose_received(const Subspace& x, const Subspace& y,
                                                const Subspace& z_span,
                                                const Subspace& jam_span) {
  const std::size_t n = x.ambient();
  if (y.ambient() != n || z_span.ambient() != n || jam_span.ambient() != n)
    throw std::invalid_argument("decompose_received: ambient mismatch");
  ReceivedDecomposition d;
  d.dim_jam = intersection_dim(y.basis(), jam_span.basis());
  const Matrix y_and_z = intersection_basis(y.basis(), z_span.basis());
  d.dim_ro = intersection_dim(y_and_z, x.basis());
  d.dim_u = static_cast<int>(y.dim()) - d.dim_ro - d.dim_jam;
  return d;
}

/// Validates list sizes against the power tuple and membership in the
/// topology.
inline void validate_assignment(const Topology& t, const AdversaryPower& p,
                                const EdgeAssignment& a) {
  p.validate();
  a.validate(t);
  if (static_cast<int>(a.read_only.size()) != p.z_ro ||
      static_cast<int>(a.write_only.size()) != p.z_wo ||
      static_cast<int>(a.read_write.size()) != p.z_rw)
    throw std::invalid_argument("EdgeAssignment: list sizes do not match power tuple");
  if (p.z_total() > static_cast<int>(t.edges().size()))
    throw std::invalid_argument("EdgeAssignment: more adversarial edges than edges");
}

/// All ways to place the power tuple on the edges of one minimum cut.
inline std::vector<EdgeAssignment> enumerate_assignments(const Topology& t,
                                                         const AdversaryPower& p) {
  p.validate();
  const std::vector<int> pool = t.min_cut_edges();
  const int total = p.z_total();
  if (total > static_cast<int>(pool.size())) return {};
  std::vector<EdgeAssignment> out;
  // Choose z_ro, then z_wo, then z_rw edges from the pool, all disjoint.
  auto choose = [&](auto&& self, int stage, std::size_t start,
                    std::vector<int>& ro, std::vector<int>& wo,
                    std::vector<int>& rw) -> void {
    const int want = stage == 0 ? p.z_ro : stage == 1 ? p.z_wo : p.z_rw;
    std::vector<int>& dst = stage == 0 ? ro : stage == 1 ? wo : rw;
    if (static_cast<int>(dst.size()) == want) {
      if (stage == 2) {
        out.push_back(EdgeAssignment{ro, wo, rw});
        return;
      }
      self(self, stage + 1, 0, ro, wo, rw);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      const int e = pool[i];
      bool used = false;
      for (int x : ro)
        if (x == e) used = true;
      for (int x : wo)
        if (x == e) used = true;
      for (int x : rw)
        if (x == e) used = true;
      if (used) continue;
      dst.push_back(e);
      self(self, stage, i + 1, ro, wo, rw);
      dst.pop_back();
    }
  };
  std::vector<int> ro, wo, rw;
  choose(choose, 0, 0, ro, wo, rw);
  return out;
}

}  // namespace necsim

#endif
