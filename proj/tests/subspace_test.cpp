#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "necsim/codebook.hpp"
#include "necsim/subspace.hpp"
#include "oracles.hpp"

using namespace necsim;

TEST_CASE("gaussian_coeff matches exhaustive subspace counts (n <= 5, q in {2,3})") {
  for (int p : {2, 3})
    for (int n = 1; n <= 5; ++n)
      for (int k = 0; k <= n; ++k) {
        const BigInt expected(oracle::all_subspaces(p, n, k).size());
        CHECK(gaussian_coeff(n, k, p) == expected);
      }
}

TEST_CASE("gaussian_coeff pinned values and errors") {
  CHECK(gaussian_coeff(7, 0, 5) == 1);
  CHECK(gaussian_coeff(2, 1, 2) == 3);
  CHECK(gaussian_coeff(4, 2, 2) == 35);
  CHECK_THROWS_AS(gaussian_coeff(2, 3, 2), std::invalid_argument);
}

TEST_CASE("gaussian_coeff bounds hold for n <= 8, q in {2,3,4}") {
  for (int q : {2, 3, 4})
    for (int n = 0; n <= 8; ++n)
      for (int k = 0; k <= n; ++k) CHECK(gaussian_coeff_bounds_check(n, k, q));
}

TEST_CASE("injection distance pinned examples") {
  const Field f2(2);
  const Subspace v =
      Subspace::from_matrix(Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}}));
  const Subspace line = Subspace::from_matrix(Matrix::from_rows(f2, {{1, 0, 0}}));
  const Subspace e1 = Subspace::from_matrix(Matrix::from_rows(f2, {{1, 0}}));
  const Subspace e2 = Subspace::from_matrix(Matrix::from_rows(f2, {{0, 1}}));
  CHECK(injection_distance(v, v) == 0);
  CHECK(injection_distance(line, v) == 1);  // nested, dims 1 and 2
  CHECK(injection_distance(e1, e2) == 1);   // distinct lines in F_2^2
  CHECK_THROWS_AS(injection_distance(v, e1), std::invalid_argument);
}

TEST_CASE("injection distance is a metric on all subspaces of F_2^4") {
  const Field f2(2);
  const auto all = enumerate_all_subspaces(f2, 4);
  REQUIRE(all.size() == 67);
  std::vector<std::vector<int>> d(all.size(), std::vector<int>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      d[i][j] = injection_distance(all[i], all[j]);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      CHECK(d[i][j] >= 0);
      CHECK((d[i][j] == 0) == (all[i] == all[j]));
      CHECK(d[i][j] == d[j][i]);
    }
  bool triangle = true;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      for (std::size_t k = 0; k < all.size(); ++k)
        if (d[i][k] > d[i][j] + d[j][k]) triangle = false;
  CHECK(triangle);
}

TEST_CASE("Grassmannian enumeration is complete and duplicate-free") {
  const Field f3(3);
  const auto g = enumerate_grassmannian(f3, 4, 2);
  CHECK(BigInt(g.size()) == gaussian_coeff(4, 2, 3));
  std::set<Subspace> dedup(g.begin(), g.end());
  CHECK(dedup.size() == g.size());
  for (const auto& s : g) {
    CHECK(s.dim() == 2);
    CHECK(s.ambient() == 4);
  }
}

TEST_CASE("subspace sampling: degenerate dimensions and uniformity") {
  const Field f2(2);
  Rng rng(404);
  CHECK(sample_uniform_subspace(f2, 3, 3, rng) == Subspace::full(f2, 3));
  CHECK(sample_uniform_subspace(f2, 3, 0, rng) == Subspace::zero(f2, 3));

  auto cells = enumerate_grassmannian(f2, 4, 2);
  std::sort(cells.begin(), cells.end());
  std::vector<std::size_t> counts(cells.size(), 0);
  const std::size_t draws = 35000;
  for (std::size_t t = 0; t < draws; ++t) {
    const Subspace s = sample_uniform_subspace(f2, 4, 2, rng);
    const auto it = std::lower_bound(cells.begin(), cells.end(), s);
    REQUIRE(it != cells.end());
    REQUIRE(*it == s);
    ++counts[static_cast<std::size_t>(it - cells.begin())];
  }
  CHECK(oracle::chi_square_uniform_p(counts, draws) > 0.001);
}

TEST_CASE("random codebooks: distinct mode, determinism, full Grassmannian") {
  const Field f2(2);
  Rng rng(21);
  const Codebook cb = Codebook::random(f2, 4, 2, 35, rng, true);
  std::set<Subspace> words(cb.codewords().begin(), cb.codewords().end());
  CHECK(words.size() == 35);
  const auto g = enumerate_grassmannian(f2, 4, 2);
  CHECK(words == std::set<Subspace>(g.begin(), g.end()));
  CHECK(cb.collision_count() == 0);

  Rng a(9), b(9);
  const Codebook c1 = Codebook::random(f2, 5, 2, 8, a);
  const Codebook c2 = Codebook::random(f2, 5, 2, 8, b);
  for (std::size_t m = 0; m < 8; ++m) CHECK(c1.encode(m) == c2.encode(m));

  CHECK_THROWS_AS(Codebook::random(f2, 4, 2, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(Codebook::random(f2, 4, 2, 36, rng, true), std::invalid_argument);
}

TEST_CASE("decode and list_decode") {
  const Field f2(2);
  const auto g = enumerate_grassmannian(f2, 4, 2);
  const Codebook full = Codebook::from_words(f2, g);
  // Radius 0 over the full Grassmannian: every codeword decodes to itself.
  for (std::size_t m = 0; m < full.size(); ++m) {
    const auto r = full.decode(full.encode(m), 0);
    CHECK(r.status == DecodeStatus::Decoded);
    CHECK(r.index == static_cast<int>(m));
    CHECK(full.list_decode(full.encode(m), 0) ==
          std::vector<int>{static_cast<int>(m)});
  }
  // Radius >= n returns every index.
  CHECK(full.list_decode(full.encode(0), 4).size() == full.size());
  // Radius 1 over the full Grassmannian is ambiguous everywhere.
  CHECK(full.decode(full.encode(0), 1).status == DecodeStatus::Ambiguous);
  // decode == unique element of list_decode when the list is a singleton.
  Rng rng(3);
  const Codebook cb = Codebook::random(f2, 6, 2, 8, rng, true);
  for (std::size_t m = 0; m < cb.size(); ++m) {
    const auto list = cb.list_decode(cb.encode(m), 1);
    const auto r = cb.decode(cb.encode(m), 1);
    if (list.size() == 1) {
      CHECK(r.status == DecodeStatus::Decoded);
      CHECK(r.index == list[0]);
    } else {
      CHECK(r.status == DecodeStatus::Ambiguous);
    }
  }
}

TEST_CASE("decode is permutation-equivariant") {
  const Field f2(2);
  Rng rng(17);
  const Codebook cb = Codebook::random(f2, 5, 2, 10, rng, true);
  std::vector<Subspace> reversed(cb.codewords().rbegin(), cb.codewords().rend());
  const Codebook rcb = Codebook::from_words(f2, reversed);
  for (std::size_t m = 0; m < cb.size(); ++m) {
    const auto a = cb.decode(cb.encode(m), 1);
    const auto b = rcb.decode(cb.encode(m), 1);
    CHECK(a.status == b.status);
    if (a.status == DecodeStatus::Decoded)
      CHECK(b.index == static_cast<int>(cb.size()) - 1 - a.index);
  }
}

TEST_CASE("duplicate codewords force Ambiguous") {
  const Field f2(2);
  const Subspace s = Subspace::from_matrix(Matrix::from_rows(f2, {{1, 0, 0}}));
  const Codebook cb = Codebook::from_words(f2, {s, s});
  CHECK(cb.collision_count() == 1);
  CHECK(cb.decode(s, 0).status == DecodeStatus::Ambiguous);
}

TEST_CASE("decoding_region_bound formula and enumeration bound") {
  CHECK(decoding_region_bound(2, 3, 1, 2) == 21);  // 3 * 7
  CHECK(decoding_region_bound(2, 4, 1, 2) <= decoding_region_bound(2, 4, 2, 2));
  CHECK_THROWS_AS(decoding_region_bound(2, 3, 0, 2), std::invalid_argument);
}

TEST_CASE("codebook JSON roundtrip") {
  const Field f4(2, 2);
  Rng rng(8);
  const Codebook cb = Codebook::random(f4, 4, 2, 6, rng);
  const Codebook back = Codebook::from_json(cb.to_json());
  REQUIRE(back.size() == cb.size());
  for (std::size_t m = 0; m < cb.size(); ++m)
    CHECK(back.encode(m).basis().to_rows() == cb.encode(m).basis().to_rows());
}
