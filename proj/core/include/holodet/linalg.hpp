#pragma once

// Dense matrices over any scalar type, and the determinant and
// characteristic-polynomial oracles every identity is checked against.

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "holodet/error.hpp"
#include "holodet/multipoly.hpp"
#include "holodet/ring.hpp"
#include "holodet/walks.hpp"

namespace holodet {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, ScalarTraits<S>::zero()) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw ValidationError("matrix entry count " + std::to_string(entries_.size()) + " does not match shape " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ValidationError("ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
    return m;
  }
  static Matrix scalar(std::size_t n, const S& value) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<S>& entries() const { return entries_; }

  S& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  S trace() const {
    S t = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = t + (*this)(i, i);
    return t;
  }

  Matrix submatrix(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
    Matrix m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
      for (std::size_t j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
    }
    return m;
  }

  Matrix scaled(const S& factor) const {
    Matrix m = *this;
    for (auto& e : m.entries_) e = e * factor;
    return m;
  }

  Matrix conjugate_transpose() const
    requires std::is_same_v<S, ComplexFloat>
  {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    }
    return m;
  }

  template <class T, class F>
  Matrix<T> map(F&& f) const {
    std::vector<T> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(f(e));
    return Matrix<T>(rows_, cols_, std::move(out));
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& e : m.entries_) e = -e;
    return m;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] = m.entries_[k] + b.entries_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] = m.entries_[k] - b.entries_[k];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw ValidationError("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                            std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
                            std::to_string(b.cols_));
    }
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (ScalarTraits<S>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) = m(i, j) + aik * b(k, j);
      }
    }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
      if (!ScalarTraits<S>::equal(a.entries_[k], b.entries_[k])) return false;
    }
    return true;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix sum shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> entries_;
};

// A square matrix together with a partition of its index range into blocks.
template <class S>
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(Matrix<S> base, std::vector<int> partition) : base_(std::move(base)), partition_(std::move(partition)) {
    if (!base_.is_square()) throw ValidationError("block matrix base must be square");
    int total = 0;
    for (int n : partition_) {
      if (n < 1) throw ValidationError("block sizes must be positive");
      offsets_.push_back(total);
      total += n;
    }
    if (static_cast<std::size_t>(total) != base_.rows()) {
      throw ValidationError("block sizes sum to " + std::to_string(total) + " but matrix has size " +
                            std::to_string(base_.rows()));
    }
    block_of_.reserve(base_.rows());
    for (std::size_t a = 0; a < partition_.size(); ++a) {
      for (int k = 0; k < partition_[a]; ++k) block_of_.push_back(static_cast<int>(a));
    }
  }

  const Matrix<S>& base() const { return base_; }
  const std::vector<int>& partition() const { return partition_; }
  int block_count() const { return static_cast<int>(partition_.size()); }
  int size() const { return static_cast<int>(base_.rows()); }
  int block_size(int a) const { return partition_[static_cast<std::size_t>(a)]; }
  int offset(int a) const { return offsets_[static_cast<std::size_t>(a)]; }
  // Block index of a scalar index.
  int bl(int i) const { return block_of_[static_cast<std::size_t>(i)]; }

  Matrix<S> block(int a, int b) const {
    return base_.submatrix(static_cast<std::size_t>(offset(a)), static_cast<std::size_t>(offset(b)),
                           static_cast<std::size_t>(block_size(a)), static_cast<std::size_t>(block_size(b)));
  }

  BlockMatrix operator-() const { return BlockMatrix(-base_, partition_); }

 private:
  Matrix<S> base_;
  std::vector<int> partition_;
  std::vector<int> offsets_;
  std::vector<int> block_of_;
};

namespace detail {

template <class S>
S det_lu(Matrix<S> m) {
  const std::size_t n = m.rows();
  S det = ScalarTraits<S>::one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return ScalarTraits<S>::zero();
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      det = -det;
    }
    det = det * m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      S factor = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = m(i, j) - factor * m(k, j);
    }
  }
  return det;
}

// Fraction-free elimination: after step k every entry of the trailing block
// is a (k+1)x(k+1) minor of the input, so the division by the previous pivot
// is exact (Sylvester's identity).
template <class S>
S det_bareiss(Matrix<S> m) {
  const std::size_t n = m.rows();
  if (n == 0) return ScalarTraits<S>::one();
  bool negate = false;
  S previous = ScalarTraits<S>::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (ScalarTraits<S>::is_zero(m(k, k))) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && ScalarTraits<S>::is_zero(m(swap_row, k))) ++swap_row;
      if (swap_row == n) return ScalarTraits<S>::zero();
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap_row, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  S det = m(n - 1, n - 1);
  return negate ? -det : det;
}

// Laplace expansion along rows with memoisation on the set of columns used.
template <class S>
S det_cofactor(const Matrix<S>& m) {
  const std::size_t n = m.rows();
  std::vector<S> memo(std::size_t{1} << n, ScalarTraits<S>::zero());
  memo[0] = ScalarTraits<S>::one();
  for (std::size_t mask = 1; mask < memo.size(); ++mask) {
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    S acc = ScalarTraits<S>::zero();
    int higher = 0;  // columns in mask above j
    for (std::size_t jj = n; jj-- > 0;) {
      if (!(mask & (std::size_t{1} << jj))) continue;
      const S& entry = m(row, jj);
      const S& minor = memo[mask ^ (std::size_t{1} << jj)];
      if (!ScalarTraits<S>::is_zero(entry) && !ScalarTraits<S>::is_zero(minor)) {
        S term = entry * minor;
        acc = (higher % 2 == 0) ? acc + term : acc - term;
      }
      ++higher;
    }
    memo[mask] = std::move(acc);
  }
  return memo.back();
}

}  // namespace detail

inline constexpr std::size_t kCofactorMaxSize = 8;

// Independent determinant: LU with partial pivoting for floats, Bareiss for
// exact fields, memoised cofactor expansion for polynomials (n <= 8).
template <class S>
S det_oracle(const Matrix<S>& m) {
  if (!m.is_square()) {
    throw ValidationError("determinant of a non-square " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                          " matrix");
  }
  if (m.rows() == 0) return ScalarTraits<S>::one();
  if constexpr (ScalarTraits<S>::kind == ScalarKind::Float) {
    return detail::det_lu(m);
  } else if constexpr (ScalarTraits<S>::kind == ScalarKind::Field) {
    return detail::det_bareiss(m);
  } else {
    if (m.rows() > kCofactorMaxSize) {
      throw RefusalError("symbolic determinant oracle limited to size " + std::to_string(kCofactorMaxSize) +
                         ", got " + std::to_string(m.rows()));
    }
    return detail::det_cofactor(m);
  }
}

// Coefficients of det(tI + M), ascending in t, by Faddeev-LeVerrier.
template <class S>
std::vector<S> charpoly_oracle(const Matrix<S>& m) {
  if (!m.is_square()) throw ValidationError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  // det(tI + M) = det(tI - A) with A = -M.
  const Matrix<S> a = -m;
  std::vector<S> coeffs(n + 1, ScalarTraits<S>::zero());
  coeffs[n] = ScalarTraits<S>::one();
  Matrix<S> mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) = mk(i, i) + coeffs[n - k + 1];
    S tr = (a * mk).trace();
    coeffs[n - k] = -int_div(tr, static_cast<long long>(k));
  }
  return coeffs;
}

// Inverse over an exact field by Gauss-Jordan elimination.
template <class S>
  requires(ScalarTraits<S>::kind != ScalarKind::Polynomial)
Matrix<S> inverse(const Matrix<S>& m) {
  if (!m.is_square()) throw ValidationError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<S> a = m;
  Matrix<S> inv = Matrix<S>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    if constexpr (ScalarTraits<S>::kind == ScalarKind::Float) {
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
      }
    } else {
      while (pivot < n && ScalarTraits<S>::is_zero(a(pivot, k))) ++pivot;
    }
    if (pivot == n || ScalarTraits<S>::is_zero(a(pivot, k))) throw ValidationError("matrix is singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(k, j), a(pivot, j));
      std::swap(inv(k, j), inv(pivot, j));
    }
    S piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) = a(k, j) / piv;
      inv(k, j) = inv(k, j) / piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || ScalarTraits<S>::is_zero(a(i, k))) continue;
      S f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = a(i, j) - f * a(k, j);
        inv(i, j) = inv(i, j) - f * inv(k, j);
      }
    }
  }
  return inv;
}

// Product A[b0 b1] A[b1 b2] ... A[b_{k-1} b0] taken from the first entry.
template <class S>
Matrix<S> block_holonomy(const BlockMatrix<S>& a, std::span<const int> blocks) {
  Matrix<S> prod = a.block(blocks[0], blocks[1 % blocks.size()]);
  for (std::size_t i = 1; i < blocks.size(); ++i) prod = prod * a.block(blocks[i], blocks[(i + 1) % blocks.size()]);
  return prod;
}

// W(A, c) = Tr(A[a1 a2] ... A[ak a1]); independent of the base point.
template <class S>
S walk_trace(const BlockMatrix<S>& a, const CyclicWalk& walk) {
  for (int v : walk.seq()) {
    if (v < 0 || v >= a.block_count()) throw ValidationError("walk visits a block outside the matrix");
  }
  return block_holonomy(a, std::span<const int>(walk.seq())).trace();
}

// Largest singular value by power iteration on M*M.
double operator_norm2(const Matrix<ComplexFloat>& m, int iterations = 200);

}  // namespace holodet
