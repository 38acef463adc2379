#pragma once

#include "gerbe/exactalg/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gerbe {

// Incrementally built semi-echelon basis of a subspace of Q^dim. Each basis vector has a
// leading (lowest-index) pivot normalized to 1. With tracking enabled, every basis vector
// remembers its expression in terms of the inserted vectors.
class Echelon {
 public:
  explicit Echelon(std::size_t dim, bool track = false);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  std::size_t inserted() const { return inserted_; }
  bool tracking() const { return track_; }

  // Residual of v with a zero at every pivot; linear in v. If coeffs is non-null (requires
  // tracking) it receives c with v = residual + sum_j c_j * inserted_j.
  SparseVec<Rat> reduce(SparseVec<Rat> v, SparseVec<Rat>* coeffs = nullptr) const;

  bool contains(const SparseVec<Rat>& v) const { return reduce(v).empty(); }

  // Adds v. Returns nullopt when v was independent; otherwise the linear relation among the
  // inserted vectors (coefficient 1 on v itself) when tracking, or an empty vector.
  std::optional<SparseVec<Rat>> insert(SparseVec<Rat> v);

  std::vector<std::size_t> pivots() const;
  bool is_pivot(std::size_t index) const { return owner_[index] >= 0; }

  // Basis in reduced row echelon form, sorted by pivot.
  std::vector<SparseVec<Rat>> reduced_basis() const;

 private:
  struct Row {
    SparseVec<Rat> v;
    SparseVec<Rat> combo;
  };

  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<Row> basis_;
  std::vector<std::int64_t> owner_;
};

std::size_t rank_of(const QMatrix& A);

// Canonical basis of {x : A x = 0}: one vector per non-pivot column of the RREF of A, equal to
// 1 on that column and 0 on the other non-pivot columns.
std::vector<QVector> q_kernel_basis(const QMatrix& A);

struct KernelRref {
  std::vector<std::size_t> free_columns;
  std::vector<SparseVec<Rat>> basis;  // same order as free_columns
};
KernelRref kernel_rref(const QMatrix& A);

// Factorization of the column space of A for repeated solves.
class ColumnSolver {
 public:
  explicit ColumnSolver(const QMatrix& A);

  std::size_t rank() const { return echelon_.rank(); }
  std::size_t rows() const { return echelon_.dim(); }
  std::size_t cols() const { return cols_; }

  std::optional<SparseVec<Rat>> solve(const SparseVec<Rat>& y) const;
  std::optional<QVector> solve(const QVector& y) const;
  bool contains(const SparseVec<Rat>& y) const { return echelon_.contains(y); }
  SparseVec<Rat> reduce(const SparseVec<Rat>& y) const { return echelon_.reduce(y); }

  // Kernel relations found while inserting the columns (a basis of ker A, not canonical).
  const std::vector<SparseVec<Rat>>& kernel() const { return kernel_; }
  const Echelon& echelon() const { return echelon_; }

 private:
  std::size_t cols_;
  Echelon echelon_;
  std::vector<SparseVec<Rat>> kernel_;
};

// Coordinates with respect to a list of integer lattice generators (columns), which must be
// linearly independent.
class LatticeCoordinates {
 public:
  LatticeCoordinates(std::size_t dim, const std::vector<IntVector>& basis);
  std::size_t size() const { return size_; }
  // Rational coordinates, or none if v is outside the Q-span.
  std::optional<QVector> rational(const IntVector& v) const;
  // Integral coordinates, or none if v is outside the lattice.
  std::optional<IntVector> integral(const IntVector& v) const;

 private:
  std::size_t size_;
  ColumnSolver solver_;
};

SparseVec<Rat> to_rat(const SparseVec<Int>& v);
SparseVec<Rat> sparse_q(const QVector& v);
SparseVec<Rat> sparse_q(const IntVector& v);

}  // namespace gerbe
