#include "gerbe/exactalg/normal_form.hpp"

#include "gerbe/exactalg/echelon.hpp"

#include <stdexcept>

namespace gerbe {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const Int& d, const Int& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }

class SmithWorker {
 public:
  SmithWorker(DenseInt A, SmithOptions opt) : A_(std::move(A)), opt_(opt) {
    if (opt_.left) {
      U_ = DenseInt::identity(A_.rows());
      U_inv_ = U_;
    }
    if (opt_.right) {
      V_ = DenseInt::identity(A_.cols());
      V_inv_ = V_;
    }
  }

  SmithForm run() {
    const std::size_t m = A_.rows(), n = A_.cols();
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (A_(i, j) != 0 && (pi == m || abs(A_(i, j)) < abs(A_(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      row_swap(t, pi);
      col_swap(t, pj);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (A_(i, t) == 0) continue;
          row_add(i, t, -floor_div(A_(i, t), A_(t, t)));
          if (A_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (A_(t, j) == 0) continue;
          col_add(j, t, -floor_div(A_(t, j), A_(t, t)));
          if (A_(t, j) != 0) clean = false;
        }
        if (!clean) {
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (A_(i, t) != 0 && abs(A_(i, t)) < abs(A_(bi, bj))) {
              bi = i;
              bj = t;
            }
          for (std::size_t j = t + 1; j < n; ++j)
            if (A_(t, j) != 0 && abs(A_(t, j)) < abs(A_(bi, bj))) {
              bi = t;
              bj = j;
            }
          row_swap(t, bi);
          col_swap(t, bj);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (!divides(A_(t, t), A_(i, j))) {
              row_add(t, i, Int(1));
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (A_(t, t) < 0) row_negate(t);
    }
    SmithForm s;
    s.rank = t;
    s.D = std::move(A_);
    s.U = std::move(U_);
    s.U_inv = std::move(U_inv_);
    s.V = std::move(V_);
    s.V_inv = std::move(V_inv_);
    return s;
  }

 private:
  void row_swap(std::size_t i, std::size_t k) {
    if (i == k) return;
    A_.swap_rows(i, k);
    if (opt_.left) {
      U_.swap_rows(i, k);
      U_inv_.swap_cols(i, k);
    }
  }
  // row_i += c * row_k
  void row_add(std::size_t i, std::size_t k, const Int& c) {
    if (c == 0) return;
    A_.add_row(i, k, c);
    if (opt_.left) {
      U_.add_row(i, k, c);
      U_inv_.add_col(k, i, -c);
    }
  }
  void row_negate(std::size_t i) {
    A_.negate_row(i);
    if (opt_.left) {
      U_.negate_row(i);
      U_inv_.negate_col(i);
    }
  }
  void col_swap(std::size_t j, std::size_t k) {
    if (j == k) return;
    A_.swap_cols(j, k);
    if (opt_.right) {
      V_.swap_cols(j, k);
      V_inv_.swap_rows(j, k);
    }
  }
  // col_j += c * col_k
  void col_add(std::size_t j, std::size_t k, const Int& c) {
    if (c == 0) return;
    A_.add_col(j, k, c);
    if (opt_.right) {
      V_.add_col(j, k, c);
      V_inv_.add_row(k, j, -c);
    }
  }

  DenseInt A_;
  SmithOptions opt_;
  DenseInt U_, U_inv_, V_, V_inv_;
};

}  // namespace

std::vector<Int> SmithForm::invariant_factors() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_form(DenseInt A, SmithOptions options) { return SmithWorker(std::move(A), options).run(); }

SmithTriple smith_normal_form(const IntMatrix& A) {
  SmithForm s = smith_form(DenseInt::from_sparse(A));
  return {s.U.to_sparse(), s.D.to_sparse(), s.V.to_sparse()};
}

std::vector<Int> invariant_factors(const IntMatrix& A) {
  return smith_form(DenseInt::from_sparse(A), {false, false}).invariant_factors();
}

HermiteForm column_hermite(const DenseInt& G, bool track_transform) {
  const std::size_t s = G.rows(), r = G.cols();
  DenseInt H = G;
  DenseInt T = track_transform ? DenseInt::identity(r) : DenseInt();
  auto col_add = [&](std::size_t j, std::size_t k, const Int& c) {
    if (c == 0) return;
    H.add_col(j, k, c);
    if (track_transform) T.add_col(j, k, c);
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    H.swap_cols(j, k);
    if (track_transform) T.swap_cols(j, k);
  };
  std::vector<std::size_t> pivots;
  std::size_t c = 0;
  for (std::size_t p = 0; p < s && c < r; ++p) {
    while (true) {
      std::size_t best = r;
      for (std::size_t j = c; j < r; ++j)
        if (H(p, j) != 0 && (best == r || abs(H(p, j)) < abs(H(p, best)))) best = j;
      if (best == r) break;
      if (best != c) col_swap(c, best);
      bool others = false;
      for (std::size_t j = c + 1; j < r; ++j) {
        if (H(p, j) == 0) continue;
        col_add(j, c, -floor_div(H(p, j), H(p, c)));
        if (H(p, j) != 0) others = true;
      }
      if (!others) break;
    }
    if (H(p, c) == 0) continue;
    if (H(p, c) < 0) {
      H.negate_col(c);
      if (track_transform) T.negate_col(c);
    }
    for (std::size_t j = 0; j < c; ++j) col_add(j, c, -floor_div(H(p, j), H(p, c)));
    pivots.push_back(p);
    ++c;
  }
  HermiteForm out;
  out.H = DenseInt(s, c);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < c; ++j) out.H(i, j) = H(i, j);
  out.T = std::move(T);
  out.pivot_rows = std::move(pivots);
  return out;
}

IntVector primitive_integral(const QVector& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm_of(l, x.get_den());
  IntVector out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * l;
    out[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

DenseInt dense_from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
  DenseInt M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = cols[j][i];
  }
  return M;
}

std::vector<IntVector> columns_of(const DenseInt& M) {
  std::vector<IntVector> out(M.cols(), IntVector(M.rows()));
  for (std::size_t j = 0; j < M.cols(); ++j)
    for (std::size_t i = 0; i < M.rows(); ++i) out[j][i] = M(i, j);
  return out;
}

std::vector<IntVector> integral_kernel(const QMatrix& A) {
  const auto K = q_kernel_basis(A);
  if (K.empty()) return {};
  const std::size_t n = A.cols(), k = K.size();
  DenseInt M(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    IntVector col = primitive_integral(K[j]);
    for (std::size_t i = 0; i < n; ++i) M(i, j) = col[i];
  }
  SmithForm s = smith_form(std::move(M), {true, false});
  DenseInt sat(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) sat(i, j) = s.U_inv(i, j);
  return columns_of(column_hermite(sat, false).H);
}

std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b) {
  const std::size_t m = A.rows(), n = A.cols();
  if (b.size() != m) throw std::invalid_argument("solve_integer: right-hand side has wrong length");
  SmithForm s = smith_form(DenseInt::from_sparse(A));
  IntVector c(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (s.U(i, j) != 0 && b[j] != 0) c[i] += s.U(i, j) * b[j];
  IntVector y(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (!divides(s.D(i, i), c[i])) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.V(i, j) != 0 && y[j] != 0) x[i] += s.V(i, j) * y[j];
  return x;
}

}  // namespace gerbe
