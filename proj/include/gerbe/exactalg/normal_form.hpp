#pragma once

#include "gerbe/exactalg/matrix.hpp"

#include <optional>
#include <vector>

namespace gerbe {

// U * A * V = D with U, V unimodular, D diagonal with d1 | d2 | ... | dr > 0.
struct SmithForm {
  DenseInt U, D, V;
  DenseInt U_inv, V_inv;
  std::size_t rank = 0;

  // Nonzero diagonal entries, in order.
  std::vector<Int> invariant_factors() const;
};

struct SmithOptions {
  bool left = true;   // track U and U_inv
  bool right = true;  // track V and V_inv
};

SmithForm smith_form(DenseInt A, SmithOptions options = {});

struct SmithTriple {
  IntMatrix U, D, V;
};
SmithTriple smith_normal_form(const IntMatrix& A);

std::vector<Int> invariant_factors(const IntMatrix& A);

// Column Hermite form: G * T = [H | 0] with T unimodular, H in column echelon form with
// strictly increasing pivot rows, positive pivots and entries left of a pivot reduced into
// [0, pivot).
struct HermiteForm {
  DenseInt H;
  DenseInt T;
  std::vector<std::size_t> pivot_rows;
};

HermiteForm column_hermite(const DenseInt& G, bool track_transform = true);

// Saturated lattice {x in Z^cols : A x = 0}, basis in column Hermite form.
std::vector<IntVector> integral_kernel(const QMatrix& A);

// Some x with A x = b over Z, or none.
std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b);

// Scales a rational vector by the lcm of its denominators and divides out the content.
IntVector primitive_integral(const QVector& v);

DenseInt dense_from_columns(std::size_t rows, const std::vector<IntVector>& cols);
std::vector<IntVector> columns_of(const DenseInt& M);

}  // namespace gerbe
