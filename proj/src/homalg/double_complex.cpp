#include "gerbe/homalg/double_complex.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gerbe {

namespace {

std::string bidegree(int r, std::size_t i) { return "(" + std::to_string(r) + ", " + std::to_string(i) + ")"; }

bool integral_matrix(const QMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.col(j))
      if (!is_integral(e.value)) return false;
  return true;
}

}  // namespace

DoubleComplexZQ::DoubleComplexZQ(std::vector<Row> rows) : rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.degree > b.degree; });
  for (std::size_t k = 1; k < rows_.size(); ++k)
    if (rows_[k].degree == rows_[k - 1].degree) throw std::invalid_argument("duplicate row degree");
  for (const auto& r : rows_) {
    delta_.emplace_back(r.dims.size());
    vertical_.emplace_back(r.dims.size());
  }
}

std::optional<std::size_t> DoubleComplexZQ::row_of_degree(int degree) const {
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (rows_[k].degree == degree) return k;
  return std::nullopt;
}

std::size_t DoubleComplexZQ::cell_dim(std::size_t row, std::size_t i) const {
  return i < rows_[row].dims.size() ? rows_[row].dims[i] : 0;
}

std::size_t DoubleComplexZQ::columns() const {
  std::size_t c = 0;
  for (const auto& r : rows_) c = std::max(c, r.dims.size());
  return c;
}

void DoubleComplexZQ::set_delta(std::size_t row, std::size_t i, QMatrix m) {
  if (m.cols() != cell_dim(row, i) || m.rows() != cell_dim(row, i + 1))
    throw std::invalid_argument("δ at " + bidegree(rows_[row].degree, i) + " has the wrong shape");
  delta_[row][i] = std::move(m);
}

void DoubleComplexZQ::set_vertical(std::size_t row, std::size_t i, QMatrix m) {
  const auto below = row_of_degree(rows_[row].degree - 1);
  if (!below) throw std::invalid_argument("no row below degree " + std::to_string(rows_[row].degree));
  if (rows_[row].coeff == Coeff::Q && rows_[*below].coeff == Coeff::Z)
    throw std::invalid_argument("vertical map from a Q-row to a Z-row");
  if (m.cols() != cell_dim(row, i) || m.rows() != cell_dim(*below, i))
    throw std::invalid_argument("vertical map at " + bidegree(rows_[row].degree, i) + " has the wrong shape");
  vertical_[row][i] = std::move(m);
}

QMatrix DoubleComplexZQ::delta(std::size_t row, std::size_t i) const {
  if (i < delta_[row].size() && delta_[row][i]) return *delta_[row][i];
  return QMatrix(cell_dim(row, i + 1), cell_dim(row, i));
}

QMatrix DoubleComplexZQ::vertical(std::size_t row, std::size_t i) const {
  if (i < vertical_[row].size() && vertical_[row][i]) return *vertical_[row][i];
  const auto below = row_of_degree(rows_[row].degree - 1);
  return QMatrix(below ? cell_dim(*below, i) : 0, cell_dim(row, i));
}

void DoubleComplexZQ::validate() const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const int r = rows_[k].degree;
    const auto below = row_of_degree(r - 1);
    const auto below2 = row_of_degree(r - 2);
    for (std::size_t i = 0; i < rows_[k].dims.size(); ++i) {
      if (rows_[k].coeff == Coeff::Z && !integral_matrix(delta(k, i)))
        throw std::domain_error("non-integral δ in a Z-row at " + bidegree(r, i));
      if (below && rows_[*below].coeff == Coeff::Z && !integral_matrix(vertical(k, i)))
        throw std::domain_error("non-integral vertical map into a Z-row at " + bidegree(r, i));
      if (!(delta(k, i + 1) * delta(k, i)).is_zero()) throw std::domain_error("δδ != 0 at " + bidegree(r, i));
      if (!below) continue;
      if (below2 && !(vertical(*below, i) * vertical(k, i)).is_zero())
        throw std::domain_error("vertical maps do not compose to zero at " + bidegree(r, i));
      if (!(vertical(k, i + 1) * delta(k, i) == delta(*below, i) * vertical(k, i)))
        throw std::domain_error("commutation failure at bidegree " + bidegree(r, i));
    }
  }
}

const TotalBlock* TotalComplex::block(int t, std::size_t row, std::size_t cech) const {
  if (!complex.in_range(t)) return nullptr;
  for (const auto& b : layout[static_cast<std::size_t>(t - complex.lowest())])
    if (b.row == row && b.cech == cech) return &b;
  return nullptr;
}

TotalComplex total_complex(const DoubleComplexZQ& D) {
  D.validate();
  const auto& rows = D.rows();
  TotalComplex T;
  if (rows.empty()) return T;
  int lo = rows.front().degree, hi = rows.front().degree;
  for (const auto& r : rows) {
    hi = std::max(hi, r.degree);
    const int span = r.dims.empty() ? 0 : static_cast<int>(r.dims.size()) - 1;
    lo = std::min(lo, r.degree - span);
  }
  std::vector<ZQComplex::Dims> dims;
  for (int t = lo; t <= hi; ++t) {
    std::vector<TotalBlock> blocks;
    std::size_t zoff = 0, qoff = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const int i = rows[k].degree - t;
      if (i < 0 || static_cast<std::size_t>(i) >= rows[k].dims.size()) continue;
      TotalBlock b{k, static_cast<std::size_t>(i), rows[k].coeff, 0, rows[k].dims[static_cast<std::size_t>(i)]};
      b.offset = b.coeff == Coeff::Z ? zoff : qoff;
      (b.coeff == Coeff::Z ? zoff : qoff) += b.size;
      blocks.push_back(b);
    }
    dims.push_back({zoff, qoff});
    T.layout.push_back(std::move(blocks));
  }
  T.complex = ZQComplex(lo, std::move(dims));

  for (int t = lo + 1; t <= hi; ++t) {
    const auto src = T.complex.dims(t), dst = T.complex.dims(t - 1);
    MatrixBuilder<Int> zz(dst.z, src.z);
    MatrixBuilder<Rat> qz(dst.q, src.z), qq(dst.q, src.q);
    auto place = [&](const TotalBlock& from, const TotalBlock& to, const QMatrix& m, int sign) {
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.col(j)) {
          const Rat v = sign > 0 ? e.value : Rat(-e.value);
          const std::size_t r = to.offset + e.index, c = from.offset + j;
          if (from.coeff == Coeff::Z && to.coeff == Coeff::Z)
            zz.add(r, c, v.get_num());
          else if (from.coeff == Coeff::Z)
            qz.add(r, c, v);
          else
            qq.add(r, c, v);
        }
    };
    for (const auto& from : T.layout[static_cast<std::size_t>(t - lo)]) {
      const int r = rows[from.row].degree;
      if (const TotalBlock* to = T.block(t - 1, from.row, from.cech + 1)) place(from, *to, D.delta(from.row, from.cech), 1);
      if (const auto below = D.row_of_degree(r - 1))
        if (const TotalBlock* to = T.block(t - 1, *below, from.cech))
          place(from, *to, D.vertical(from.row, from.cech), from.cech % 2 == 0 ? 1 : -1);
    }
    T.complex.set_d(t, ZQMap{zz.build(), qz.build(), qq.build()});
  }
  return T;
}

}  // namespace gerbe
