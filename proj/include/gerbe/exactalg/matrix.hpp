#pragma once

#include "gerbe/exactalg/number.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace gerbe {

template <class T>
struct Entry {
  std::size_t index;
  T value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sorted by index, no stored zeros.
template <class T>
using SparseVec = std::vector<Entry<T>>;

using IntVector = std::vector<Int>;
using QVector = std::vector<Rat>;

template <class T>
SparseVec<T> sparse_from_dense(std::span<const T> dense) {
  SparseVec<T> out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) out.push_back({i, dense[i]});
  return out;
}

template <class T>
std::vector<T> dense_from_sparse(const SparseVec<T>& v, std::size_t n) {
  std::vector<T> out(n);
  for (const auto& e : v) out[e.index] = e.value;
  return out;
}

// y + a*x, merged; zeros dropped.
template <class T>
SparseVec<T> sparse_axpy(const SparseVec<T>& y, const T& a, const SparseVec<T>& x) {
  SparseVec<T> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].index < y[i].index) {
      out.push_back({x[j].index, a * x[j].value});
      ++j;
    } else {
      T s = y[i].value + a * x[j].value;
      if (s != 0) out.push_back({y[i].index, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

template <class T>
void sparse_scale(SparseVec<T>& v, const T& a) {
  if (a == 0) {
    v.clear();
    return;
  }
  for (auto& e : v) e.value *= a;
}

template <class T>
T sparse_get(const SparseVec<T>& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const Entry<T>& e, std::size_t k) { return e.index < k; });
  if (it != v.end() && it->index == index) return it->value;
  return T(0);
}

// Column-major sparse matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, T(1)});
    return m;
  }

  static Matrix from_rows(std::size_t rows, std::size_t cols,
                          std::initializer_list<std::initializer_list<long>> values) {
    Matrix m(rows, cols);
    std::size_t i = 0;
    for (const auto& row : values) {
      std::size_t j = 0;
      for (long v : row) {
        if (v != 0) m.data_[j].push_back({i, T(v)});
        ++j;
      }
      if (j != cols) throw std::invalid_argument("row length mismatch");
      ++i;
    }
    if (i != rows) throw std::invalid_argument("row count mismatch");
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const SparseVec<T>& col(std::size_t j) const { return data_[j]; }

  void set_col(std::size_t j, SparseVec<T> v) {
    std::sort(v.begin(), v.end(), [](const Entry<T>& a, const Entry<T>& b) { return a.index < b.index; });
    std::erase_if(v, [](const Entry<T>& e) { return e.value == 0; });
    assert(v.empty() || v.back().index < rows_);
    data_[j] = std::move(v);
  }

  T at(std::size_t i, std::size_t j) const { return sparse_get(data_[j], i); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : data_) n += c.size();
    return n;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const SparseVec<T>& c) { return c.empty(); });
  }

  std::vector<T> apply(std::span<const T> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] == 0) continue;
      for (const auto& e : data_[j]) y[e.index] += e.value * x[j];
    }
    return y;
  }

  SparseVec<T> apply_sparse(const SparseVec<T>& x) const {
    std::vector<T> acc(rows_);
    std::vector<std::size_t> touched;
    std::vector<char> mark(rows_, 0);
    for (const auto& xe : x) {
      for (const auto& e : data_[xe.index]) {
        if (!mark[e.index]) {
          mark[e.index] = 1;
          touched.push_back(e.index);
        }
        acc[e.index] += e.value * xe.value;
      }
    }
    std::sort(touched.begin(), touched.end());
    SparseVec<T> out;
    for (std::size_t i : touched)
      if (acc[i] != 0) out.push_back({i, acc[i]});
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : data_[j]) t.data_[e.index].push_back({j, e.value});
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) c.data_[j] = a.apply_sparse(b.data_[j]);
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) c.data_[j] = sparse_axpy(a.data_[j], T(1), b.data_[j]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) c.data_[j] = sparse_axpy(a.data_[j], T(-1), b.data_[j]);
    return c;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& col : c.data_)
      for (auto& e : col) e.value = -e.value;
    return c;
  }

  Matrix scaled(const T& s) const {
    Matrix c = *this;
    for (auto& col : c.data_) sparse_scale(col, s);
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      SparseVec<U> c;
      c.reserve(data_[j].size());
      for (const auto& e : data_[j]) c.push_back({e.index, convert<U>(e.value)});
      out.set_col(j, std::move(c));
    }
    return out;
  }

  // Columns [first, first + count).
  Matrix column_block(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t j = 0; j < count; ++j) out.data_[j] = data_[first + j];
    return out;
  }

  // Rows [first, first + count), reindexed from 0.
  Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix out(count, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : data_[j])
        if (e.index >= first && e.index < first + count) out.data_[j].push_back({e.index - first, e.value});
    return out;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) out.data_[j] = a.data_[j];
    for (std::size_t j = 0; j < b.cols_; ++j) out.data_[a.cols_ + j] = b.data_[j];
    return out;
  }

  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
    Matrix out(a.rows_ + b.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) {
      out.data_[j] = a.data_[j];
      for (const auto& e : b.data_[j]) out.data_[j].push_back({a.rows_ + e.index, e.value});
    }
    return out;
  }

 private:
  template <class U, class V>
  static U convert(const V& v) {
    if constexpr (std::is_same_v<U, V>) {
      return v;
    } else if constexpr (std::is_same_v<U, Int> && std::is_same_v<V, Rat>) {
      if (v.get_den() != 1) throw std::domain_error("non-integral entry in integer cast");
      return v.get_num();
    } else {
      return U(v);
    }
  }

  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec<T>> data_;
};

using IntMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

// Accumulates (row, col, value) triplets; duplicates are summed.
template <class T>
class MatrixBuilder {
 public:
  MatrixBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cols_data_(cols) {}

  void add(std::size_t i, std::size_t j, const T& v) {
    assert(i < rows_ && j < cols_);
    if (v != 0) cols_data_[j].push_back({i, v});
  }

  Matrix<T> build() {
    Matrix<T> m(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      auto& c = cols_data_[j];
      std::sort(c.begin(), c.end(), [](const Entry<T>& a, const Entry<T>& b) { return a.index < b.index; });
      SparseVec<T> merged;
      for (auto& e : c) {
        if (!merged.empty() && merged.back().index == e.index)
          merged.back().value += e.value;
        else
          merged.push_back(std::move(e));
      }
      m.set_col(j, std::move(merged));
    }
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<SparseVec<T>> cols_data_;
};

// Row-major dense matrix, used by the normal-form routines.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static DenseMatrix from_sparse(const Matrix<T>& s) {
    DenseMatrix m(s.rows(), s.cols());
    for (std::size_t j = 0; j < s.cols(); ++j)
      for (const auto& e : s.col(j)) m(e.index, j) = e.value;
    return m;
  }

  Matrix<T> to_sparse() const {
    MatrixBuilder<T> b(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) b.add(i, j, (*this)(i, j));
    return b.build();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  // row_i += c * row_k
  void add_row(std::size_t i, std::size_t k, const T& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(k, j) != 0) (*this)(i, j) += c * (*this)(k, j);
  }
  // col_j += c * col_k
  void add_col(std::size_t j, std::size_t k, const T& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, k) != 0) (*this)(i, j) += c * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dense product shape mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using DenseInt = DenseMatrix<Int>;
using DenseQ = DenseMatrix<Rat>;

}  // namespace gerbe
