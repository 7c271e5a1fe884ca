#ifndef NECSIM_MATRIX_HPP
#define NECSIM_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "necsim/field.hpp"
#include "necsim/rng.hpp"

namespace necsim {

/// Dense matrix over GF(q). Row-major, entries stored as canonical
/// representatives. Zero-row matrices are permitted (basis of the zero
/// subspace). Value semantics; all operations are pure.
class Matrix {
 public:
  Matrix(const Field& f, std::size_t rows, std::size_t cols)
      : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static Matrix from_rows(const Field& f,
                          const std::vector<std::vector<std::uint32_t>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c)
        throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  const Field& field() const { return *f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint32_t v) {
    if (v >= f_->q()) throw std::invalid_argument("Matrix::set: value out of range");
    a_[i * cols_ + j] = v;
  }
  FieldElement elem(std::size_t i, std::size_t j) const {
    return FieldElement(*f_, at(i, j));
  }

  bool operator==(const Matrix& o) const {
    return *f_ == *o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator*(const Matrix& o) const {
    require_field(o);
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix r(*f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::uint32_t aik = at(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const std::uint32_t v = f_->mul(aik, o.at(k, j));
          r.a_[i * o.cols_ + j] = f_->add(r.a_[i * o.cols_ + j], v);
        }
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    require_field(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("Matrix: dimension mismatch in sum");
    Matrix r(*f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
    return r;
  }

  Matrix scaled(std::uint32_t c) const {
    Matrix r(*f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], c);
    return r;
  }

  Matrix row(std::size_t i) const {
    Matrix r(*f_, 1, cols_);
    for (std::size_t j = 0; j < cols_; ++j) r.set(0, j, at(i, j));
    return r;
  }

  std::vector<std::uint32_t> row_vector(std::size_t i) const {
    return std::vector<std::uint32_t>(a_.begin() + i * cols_,
                                      a_.begin() + (i + 1) * cols_);
  }

  std::vector<std::vector<std::uint32_t>> to_rows() const {
    std::vector<std::vector<std::uint32_t>> r;
    r.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row_vector(i));
    return r;
  }

 private:
  void require_field(const Matrix& o) const {
    if (*f_ != *o.f_) throw std::invalid_argument("Matrix: mismatched fields");
  }

  const Field* f_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> a_;
};

struct RrefResult {
  Matrix reduced;  // RREF with zero rows removed; canonical per row space
  std::size_t rank;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form. Pivots are chosen leftmost-column-first and
/// leading entries are normalized to 1, so equal row spaces give
/// identical outputs.
inline RrefResult rref(const Matrix& m) {
  const Field& f = m.field();
  auto rows = m.to_rows();
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < nc && r < nr; ++col) {
    std::size_t sel = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (rows[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel == nr) continue;
    std::swap(rows[r], rows[sel]);
    const std::uint32_t inv = f.inv(rows[r][col]);
    for (std::size_t j = col; j < nc; ++j) rows[r][j] = f.mul(rows[r][j], inv);
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const std::uint32_t c = rows[i][col];
      for (std::size_t j = col; j < nc; ++j)
        rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[r][j]));
    }
    pivots.push_back(col);
    ++r;
  }
  std::vector<std::vector<std::uint32_t>> kept(rows.begin(), rows.begin() + r);
  Matrix reduced = kept.empty() ? Matrix(f, 0, nc) : Matrix::from_rows(f, kept);
  return RrefResult{reduced, r, pivots};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline Matrix stack_rows(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw std::invalid_argument("stack_rows: mismatched fields");
  if (a.cols() != b.cols()) throw std::invalid_argument("stack_rows: column mismatch");
  auto rows = a.to_rows();
  for (auto& r : b.to_rows()) rows.push_back(r);
  return rows.empty() ? Matrix(a.field(), 0, a.cols())
                      : Matrix::from_rows(a.field(), rows);
}

/// dim(rowspace(A) ∩ rowspace(B)) via rank(A) + rank(B) − rank([A;B]).
inline int intersection_dim(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("intersection_dim: column mismatch");
  return static_cast<int>(rank(a)) + static_cast<int>(rank(b)) -
         static_cast<int>(rank(stack_rows(a, b)));
}

/// Basis of rowspace(A) ∩ rowspace(B) (Zassenhaus). May have zero rows.
inline Matrix intersection_basis(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field())
    throw std::invalid_argument("intersection_basis: mismatched fields");
  if (a.cols() != b.cols())
    throw std::invalid_argument("intersection_basis: column mismatch");
  const Field& f = a.field();
  const std::size_t n = a.cols();
  // Block matrix [[A A],[B 0]]; after elimination, rows with zero left
  // half carry an intersection basis in the right half.
  Matrix block(f, a.rows() + b.rows(), 2 * n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      block.set(i, j, a.at(i, j));
      block.set(i, j + n, a.at(i, j));
    }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) block.set(a.rows() + i, j, b.at(i, j));
  const Matrix red = rref(block).reduced;
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t i = 0; i < red.rows(); ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n; ++j)
      if (red.at(i, j) != 0) {
        left_zero = false;
        break;
      }
    if (left_zero) {
      std::vector<std::uint32_t> r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = red.at(i, j + n);
      rows.push_back(r);
    }
  }
  Matrix result = rows.empty() ? Matrix(f, 0, n) : Matrix::from_rows(f, rows);
  return rref(result).reduced;
}

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, f.sample(rng));
  return m;
}

/// Uniform over rank-r r×c matrices (rejection sampling).
inline Matrix random_full_rank(const Field& f, std::size_t r, std::size_t c, Rng& rng) {
  if (r > c) throw std::invalid_argument("random_full_rank: r > c");
  for (;;) {
    Matrix m = random_matrix(f, r, c, rng);
    if (rank(m) == r) return m;
  }
}

}  // namespace necsim

#endif
