#include <doctest.h>

#include <algorithm>
#include <iterator>
#include <vector>

#include "necsim/matrix.hpp"
#include "oracles.hpp"

using namespace necsim;

namespace {

// Base-p integer code of a matrix row, digits in column order, for
// comparison against the vector-set oracle.
int row_code(const Matrix& m, std::size_t i, int p) {
  int code = 0, mul = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    code += static_cast<int>(m.at(i, j)) * mul;
    mul *= p;
  }
  return code;
}

std::vector<int> row_codes(const Matrix& m, int p) {
  std::vector<int> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(row_code(m, i, p));
  return out;
}

}  // namespace

TEST_CASE("rref pinned examples") {
  const Field f2(2), f3(3);
  {
    const auto r = rref(Matrix::identity(f2, 3));
    CHECK(r.reduced == Matrix::identity(f2, 3));
    CHECK(r.rank == 3);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0, 1, 2});
  }
  {
    const auto r = rref(Matrix::from_rows(f2, {{1, 1}, {1, 1}}));
    CHECK(r.reduced == Matrix::from_rows(f2, {{1, 1}}));
    CHECK(r.rank == 1);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0});
  }
  {
    const auto r = rref(Matrix::from_rows(f3, {{0, 2}, {1, 1}}));
    CHECK(r.reduced == Matrix::identity(f3, 2));
    CHECK(r.rank == 2);
    CHECK(r.pivot_columns == std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("rref is idempotent and canonical on random matrices") {
  const Field f2(2), f3(3), f4(2, 2);
  for (const Field* f : {&f2, &f3, &f4}) {
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
      const Matrix m = random_matrix(*f, 1 + rng.below(4), 1 + rng.below(5), rng);
      const Matrix once = rref(m).reduced;
      CHECK(rref(once).reduced == once);
    }
  }
}

TEST_CASE("matrix product pinned examples") {
  const Field f2(2);
  const Matrix x = Matrix::from_rows(f2, {{1, 0, 1}, {0, 1, 1}});
  CHECK(Matrix::identity(f2, 2) * x == x);
  CHECK(Matrix(f2, 2, 2) * x == Matrix(f2, 2, 3));
  CHECK(Matrix::from_rows(f2, {{1, 1}}) * Matrix::identity(f2, 2) ==
        Matrix::from_rows(f2, {{1, 1}}));
  CHECK_THROWS_AS(x * x, std::invalid_argument);
}

TEST_CASE("stack_rows shape, neutrality, and rank subadditivity") {
  const Field f3(3);
  const Matrix a = Matrix::from_rows(f3, {{1, 2, 0}});
  const Matrix b = Matrix::from_rows(f3, {{0, 1, 1}});
  CHECK(stack_rows(a, Matrix(f3, 0, 3)) == a);
  CHECK(stack_rows(a, b).rows() == 2);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Matrix x = random_matrix(f3, 1 + rng.below(3), 4, rng);
    const Matrix y = random_matrix(f3, 1 + rng.below(3), 4, rng);
    CHECK(rank(stack_rows(x, y)) <= rank(x) + rank(y));
    CHECK(rank(stack_rows(x, x)) == rank(x));
  }
}

TEST_CASE("intersection_dim pinned examples") {
  const Field f2(2);
  const Matrix a = Matrix::from_rows(f2, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  const Matrix b = Matrix::from_rows(f2, {{0, 1, 0, 0}, {0, 0, 1, 0}});
  const Matrix c = Matrix::from_rows(f2, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(intersection_dim(a, a) == 2);
  CHECK(intersection_dim(a, c) == 0);
  CHECK(intersection_dim(a, b) == 1);
}

TEST_CASE("intersection agrees with exhaustive row-space enumeration") {
  for (int p : {2, 3}) {
    const Field f(p);
    Rng rng(31 + p);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 2 + rng.below(3);  // c <= 4
      const Matrix a = random_matrix(f, 1 + rng.below(3), n, rng);
      const Matrix b = random_matrix(f, 1 + rng.below(3), n, rng);
      const auto sa = oracle::span_of(row_codes(a, p), p, static_cast<int>(n));
      const auto sb = oracle::span_of(row_codes(b, p), p, static_cast<int>(n));
      oracle::VecSet both;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(both));
      CHECK(intersection_dim(a, b) == oracle::dim_of(both, p));
      // The Zassenhaus basis spans exactly the intersection.
      const Matrix basis = intersection_basis(a, b);
      const auto sbasis =
          oracle::span_of(row_codes(basis, p), p, static_cast<int>(n));
      CHECK(sbasis == both);
    }
  }
}

TEST_CASE("random_full_rank always full rank, acceptance rate near 6/16") {
  const Field f2(2);
  Rng rng(11);
  for (int t = 0; t < 50; ++t) CHECK(rank(random_full_rank(f2, 2, 2, rng)) == 2);
  // Count invertible draws among raw 2x2 samples.
  Rng raw(12);
  int ok = 0;
  const int draws = 4000;
  for (int t = 0; t < draws; ++t)
    if (rank(random_matrix(f2, 2, 2, raw)) == 2) ++ok;
  const double rate = static_cast<double>(ok) / draws;
  CHECK(rate > 6.0 / 16.0 - 0.03);
  CHECK(rate < 6.0 / 16.0 + 0.03);
  CHECK_THROWS_AS(random_full_rank(f2, 3, 2, rng), std::invalid_argument);
}

TEST_CASE("random matrices are seed-deterministic") {
  const Field f(3);
  Rng a(77), b(77);
  CHECK(random_matrix(f, 3, 4, a) == random_matrix(f, 3, 4, b));
}
