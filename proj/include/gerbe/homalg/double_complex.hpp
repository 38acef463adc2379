#pragma once

#include "gerbe/homalg/complex.hpp"

#include <optional>
#include <vector>

namespace gerbe {

enum class Coeff { Z, Q };

// Rows indexed by sheaf degree r (each row purely Z or purely Q), columns by Čech degree
// i >= 0. The horizontal map δ goes (r, i) -> (r, i+1); the vertical map goes (r, i) -> (r-1, i)
// and is an inclusion ι for Z -> Q rows or a coboundary d for Q -> Q rows.
class DoubleComplexZQ {
 public:
  struct Row {
    int degree = 0;
    Coeff coeff = Coeff::Q;
    std::vector<std::size_t> dims;  // dims[i] = rank of the cell in Čech degree i
  };

  explicit DoubleComplexZQ(std::vector<Row> rows);

  const std::vector<Row>& rows() const { return rows_; }
  // Index of the row with the given degree, if present.
  std::optional<std::size_t> row_of_degree(int degree) const;
  std::size_t cell_dim(std::size_t row, std::size_t i) const;
  std::size_t columns() const;

  void set_delta(std::size_t row, std::size_t i, QMatrix m);
  void set_vertical(std::size_t row, std::size_t i, QMatrix m);
  // Zero matrices of the right shape when unset.
  QMatrix delta(std::size_t row, std::size_t i) const;
  QMatrix vertical(std::size_t row, std::size_t i) const;

  // Throws std::domain_error naming the offending bidegree if δδ, vv or δv - vδ is nonzero, or
  // if a Z-row map is not integral.
  void validate() const;

 private:
  std::vector<Row> rows_;  // sorted by decreasing degree
  std::vector<std::vector<std::optional<QMatrix>>> delta_, vertical_;
};

// Placement of the cell (row, i) inside level t = degree - i of the total complex.
struct TotalBlock {
  std::size_t row = 0;
  std::size_t cech = 0;
  Coeff coeff = Coeff::Q;
  std::size_t offset = 0;  // into the Z-part or the Q-part of the level
  std::size_t size = 0;
};

struct TotalComplex {
  ZQComplex complex;
  std::vector<std::vector<TotalBlock>> layout;  // layout[t - complex.lowest()]

  const TotalBlock* block(int t, std::size_t row, std::size_t cech) const;
};

// Level t = ⊕_{r - i = t} D_{r,i}; on a column-i component the differential is δ + (-1)^i v.
TotalComplex total_complex(const DoubleComplexZQ& D);

}  // namespace gerbe
