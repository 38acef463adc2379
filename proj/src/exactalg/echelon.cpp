#include "gerbe/exactalg/echelon.hpp"

#include <stdexcept>

namespace gerbe {

Echelon::Echelon(std::size_t dim, bool track) : dim_(dim), track_(track), owner_(dim, -1) {}

SparseVec<Rat> Echelon::reduce(SparseVec<Rat> v, SparseVec<Rat>* coeffs) const {
  if (coeffs != nullptr) {
    if (!track_) throw std::logic_error("Echelon::reduce: coefficients require tracking");
    coeffs->clear();
  }
  std::size_t pos = 0;
  while (pos < v.size()) {
    const std::int64_t owner = owner_[v[pos].index];
    if (owner < 0) {
      ++pos;
      continue;
    }
    const Row& row = basis_[static_cast<std::size_t>(owner)];
    const Rat alpha = v[pos].value;
    if (coeffs != nullptr) *coeffs = sparse_axpy(*coeffs, alpha, row.combo);
    v = sparse_axpy(v, Rat(-alpha), row.v);
  }
  return v;
}

std::optional<SparseVec<Rat>> Echelon::insert(SparseVec<Rat> v) {
  const std::size_t label = inserted_++;
  SparseVec<Rat> coeffs;
  SparseVec<Rat> r = reduce(std::move(v), track_ ? &coeffs : nullptr);
  if (r.empty()) {
    if (!track_) return SparseVec<Rat>{};
    // v - sum coeffs_j * inserted_j = 0
    SparseVec<Rat> rel;
    for (auto& e : coeffs) rel.push_back({e.index, -e.value});
    rel.push_back({label, Rat(1)});
    return rel;
  }
  const Rat inv = 1 / r.front().value;
  sparse_scale(r, inv);
  Row row;
  row.v = std::move(r);
  if (track_) {
    SparseVec<Rat> combo;
    for (auto& e : coeffs) combo.push_back({e.index, -e.value});
    combo.push_back({label, Rat(1)});
    sparse_scale(combo, inv);
    row.combo = std::move(combo);
  }
  owner_[row.v.front().index] = static_cast<std::int64_t>(basis_.size());
  basis_.push_back(std::move(row));
  return std::nullopt;
}

std::vector<std::size_t> Echelon::pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i)
    if (owner_[i] >= 0) out.push_back(i);
  return out;
}

std::vector<SparseVec<Rat>> Echelon::reduced_basis() const {
  // Back-substitution from the highest pivot down.
  std::vector<std::size_t> piv = pivots();
  std::vector<SparseVec<Rat>> rows(piv.size());
  std::vector<std::int64_t> slot(dim_, -1);
  for (std::size_t k = 0; k < piv.size(); ++k) slot[piv[k]] = static_cast<std::int64_t>(k);
  for (std::size_t k = piv.size(); k-- > 0;) {
    SparseVec<Rat> v = basis_[static_cast<std::size_t>(owner_[piv[k]])].v;
    std::size_t pos = 1;
    while (pos < v.size()) {
      const std::int64_t s = slot[v[pos].index];
      if (s < 0) {
        ++pos;
        continue;
      }
      const Rat alpha = v[pos].value;
      v = sparse_axpy(v, Rat(-alpha), rows[static_cast<std::size_t>(s)]);
    }
    rows[k] = std::move(v);
  }
  return rows;
}

std::size_t rank_of(const QMatrix& A) {
  // Insert along the smaller dimension.
  if (A.rows() < A.cols()) {
    QMatrix T = A.transpose();
    Echelon e(T.rows());
    for (std::size_t j = 0; j < T.cols(); ++j) e.insert(T.col(j));
    return e.rank();
  }
  Echelon e(A.rows());
  for (std::size_t j = 0; j < A.cols(); ++j) e.insert(A.col(j));
  return e.rank();
}

KernelRref kernel_rref(const QMatrix& A) {
  const std::size_t n = A.cols();
  QMatrix T = A.transpose();  // columns of T are the rows of A
  Echelon e(n);
  for (std::size_t j = 0; j < T.cols(); ++j) e.insert(T.col(j));
  const auto rows = e.reduced_basis();
  std::vector<std::int64_t> pivot_row(n, -1);
  for (std::size_t k = 0; k < rows.size(); ++k) pivot_row[rows[k].front().index] = static_cast<std::int64_t>(k);
  KernelRref out;
  std::vector<std::int64_t> free_slot(n, -1);
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_row[c] < 0) {
      free_slot[c] = static_cast<std::int64_t>(out.free_columns.size());
      out.free_columns.push_back(c);
    }
  std::vector<SparseVec<Rat>> basis(out.free_columns.size());
  for (std::size_t f = 0; f < out.free_columns.size(); ++f) basis[f].push_back({out.free_columns[f], Rat(1)});
  // x_f = 1 and x_{pivot(r)} = -R_r[f].
  for (const auto& row : rows) {
    const std::size_t p = row.front().index;
    for (std::size_t t = 1; t < row.size(); ++t) {
      const std::int64_t f = free_slot[row[t].index];
      if (f >= 0) basis[static_cast<std::size_t>(f)].push_back({p, -row[t].value});
    }
  }
  for (auto& b : basis)
    std::sort(b.begin(), b.end(), [](const Entry<Rat>& x, const Entry<Rat>& y) { return x.index < y.index; });
  out.basis = std::move(basis);
  return out;
}

std::vector<QVector> q_kernel_basis(const QMatrix& A) {
  std::vector<QVector> out;
  for (const auto& b : kernel_rref(A).basis) out.push_back(dense_from_sparse(b, A.cols()));
  return out;
}

ColumnSolver::ColumnSolver(const QMatrix& A) : cols_(A.cols()), echelon_(A.rows(), true) {
  for (std::size_t j = 0; j < A.cols(); ++j) {
    auto rel = echelon_.insert(A.col(j));
    if (rel) kernel_.push_back(std::move(*rel));
  }
}

std::optional<SparseVec<Rat>> ColumnSolver::solve(const SparseVec<Rat>& y) const {
  SparseVec<Rat> coeffs;
  if (!echelon_.reduce(y, &coeffs).empty()) return std::nullopt;
  return coeffs;
}

std::optional<QVector> ColumnSolver::solve(const QVector& y) const {
  auto x = solve(sparse_q(y));
  if (!x) return std::nullopt;
  return dense_from_sparse(*x, cols_);
}

namespace {

QMatrix matrix_of_columns(std::size_t dim, const std::vector<IntVector>& basis) {
  QMatrix M(dim, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) M.set_col(j, sparse_q(basis[j]));
  return M;
}

}  // namespace

LatticeCoordinates::LatticeCoordinates(std::size_t dim, const std::vector<IntVector>& basis)
    : size_(basis.size()), solver_(matrix_of_columns(dim, basis)) {
  if (solver_.rank() != size_) throw std::invalid_argument("lattice generators are linearly dependent");
}

std::optional<QVector> LatticeCoordinates::rational(const IntVector& v) const {
  auto s = solver_.solve(sparse_q(v));
  if (!s) return std::nullopt;
  return dense_from_sparse(*s, size_);
}

std::optional<IntVector> LatticeCoordinates::integral(const IntVector& v) const {
  auto q = rational(v);
  if (!q) return std::nullopt;
  IntVector out(q->size());
  for (std::size_t i = 0; i < q->size(); ++i) {
    if (!is_integral((*q)[i])) return std::nullopt;
    out[i] = (*q)[i].get_num();
  }
  return out;
}

SparseVec<Rat> to_rat(const SparseVec<Int>& v) {
  SparseVec<Rat> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({e.index, Rat(e.value)});
  return out;
}

SparseVec<Rat> sparse_q(const QVector& v) { return sparse_from_dense<Rat>(v); }

SparseVec<Rat> sparse_q(const IntVector& v) {
  SparseVec<Rat> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.push_back({i, Rat(v[i])});
  return out;
}

}  // namespace gerbe
