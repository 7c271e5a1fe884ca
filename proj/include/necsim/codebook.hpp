#ifndef NECSIM_CODEBOOK_HPP
#define NECSIM_CODEBOOK_HPP

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "necsim/subspace.hpp"

namespace necsim {

enum class DecodeStatus { Decoded, Ambiguous, NoneWithinRadius };

struct DecodeResult {
  DecodeStatus status;
  int index = -1;  // valid only when status == Decoded
};

/// Ordered collection of M constant-dimension-C subspaces of F_q^n with
/// the brute-force minimum-injection-distance decoder. Immutable after
/// construction.
class Codebook {
 public:
  /// M codewords i.i.d. uniform from G_q(n,C). With `distinct` set,
  /// collisions are resampled until all codewords differ; otherwise
  /// duplicates are retained and counted.
  static Codebook random(const Field& f, std::size_t n, std::size_t C,
                         std::size_t M, Rng& rng, bool distinct = false) {
    if (M == 0) throw std::invalid_argument("Codebook: M >= 1");
    if (C > n) throw std::invalid_argument("Codebook: C <= n");
    if (distinct && BigInt(M) > gaussian_coeff(static_cast<int>(n),
                                               static_cast<int>(C), f.q()))
      throw std::invalid_argument("Codebook: M exceeds Grassmannian size");
    std::vector<Subspace> words;
    words.reserve(M);
    std::map<Subspace, int> seen;
    std::size_t collisions = 0;
    while (words.size() < M) {
      Subspace s = sample_uniform_subspace(f, n, C, rng);
      auto it = seen.find(s);
      if (it != seen.end()) {
        ++collisions;
        if (distinct) continue;
      } else {
        seen.emplace(s, 1);
      }
      words.push_back(std::move(s));
    }
    return Codebook(f, n, C, std::move(words), distinct ? 0 : collisions);
  }

  static Codebook from_words(const Field& f, std::vector<Subspace> words) {
    if (words.empty()) throw std::invalid_argument("Codebook: M >= 1");
    const std::size_t n = words[0].ambient();
    const std::size_t C = words[0].dim();
    std::map<Subspace, int> seen;
    std::size_t collisions = 0;
    for (const auto& w : words) {
      if (w.ambient() != n || w.dim() != C)
        throw std::invalid_argument("Codebook: inconsistent codeword shape");
      if (!seen.emplace(w, 1).second) ++collisions;
    }
    return Codebook(f, n, C, std::move(words), collisions);
  }

  const Field& field() const { return *f_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return c_; }
  std::size_t size() const { return words_.size(); }
  std::size_t collision_count() const { return collisions_; }

  /// Effective rate log_q(M) / n.
  double rate() const {
    return std::log(static_cast<double>(size())) /
           (std::log(static_cast<double>(f_->q())) * static_cast<double>(n_));
  }

  const Subspace& encode(std::size_t m) const {
    if (m >= words_.size()) throw std::invalid_argument("Codebook::encode: index out of range");
    return words_[m];
  }

  const std::vector<Subspace>& codewords() const { return words_; }

  /// Indices within injection distance <= radius of Y, ascending.
  std::vector<int> list_decode(const Subspace& y, int radius) const {
    if (y.ambient() != n_) throw std::invalid_argument("Codebook: ambient mismatch");
    std::vector<int> hits;
    for (std::size_t m = 0; m < words_.size(); ++m)
      if (injection_distance(words_[m], y) <= radius)
        hits.push_back(static_cast<int>(m));
    return hits;
  }

  /// Unique codeword within the radius, or a failure verdict. Duplicated
  /// codewords count as separate candidates, so a duplicated transmission
  /// is Ambiguous.
  DecodeResult decode(const Subspace& y, int radius) const {
    if (y.ambient() != n_) throw std::invalid_argument("Codebook: ambient mismatch");
    int found = -1;
    for (std::size_t m = 0; m < words_.size(); ++m) {
      if (injection_distance(words_[m], y) <= radius) {
        if (found >= 0) return DecodeResult{DecodeStatus::Ambiguous, -1};
        found = static_cast<int>(m);
      }
    }
    if (found < 0) return DecodeResult{DecodeStatus::NoneWithinRadius, -1};
    return DecodeResult{DecodeStatus::Decoded, found};
  }

  nlohmann::json to_json() const {
    nlohmann::json codewords = nlohmann::json::array();
    for (const auto& w : words_) codewords.push_back(w.basis().to_rows());
    return nlohmann::json{{"p", f_->p()},
                          {"e", f_->e()},
                          {"poly", f_->reduction_poly()},
                          {"n", n_},
                          {"C", c_},
                          {"codewords", codewords}};
  }

  /// Loads a codebook exported by to_json. The field is owned by the
  /// returned codebook.
  static Codebook from_json(const nlohmann::json& j) {
    auto f = std::make_shared<Field>(
        j.at("p").get<std::uint32_t>(), j.at("e").get<std::uint32_t>(),
        j.at("e").get<std::uint32_t>() > 1
            ? j.at("poly").get<std::vector<std::uint32_t>>()
            : std::vector<std::uint32_t>{});
    std::vector<Subspace> words;
    for (const auto& cw : j.at("codewords"))
      words.push_back(Subspace::from_matrix(Matrix::from_rows(
          *f, cw.get<std::vector<std::vector<std::uint32_t>>>())));
    Codebook cb = from_words(*f, std::move(words));
    cb.owned_field_ = f;
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t C = j.at("C").get<std::size_t>();
    if (cb.n() != n || cb.dim() != C)
      throw std::invalid_argument("Codebook::from_json: shape mismatch");
    return cb;
  }

 private:
  Codebook(const Field& f, std::size_t n, std::size_t C,
           std::vector<Subspace> words, std::size_t collisions)
      : f_(&f), n_(n), c_(C), words_(std::move(words)), collisions_(collisions) {}

  const Field* f_;
  std::size_t n_, c_;
  std::vector<Subspace> words_;
  std::size_t collisions_;
  std::shared_ptr<Field> owned_field_;
};

}  // namespace necsim

#endif
