#include <catch_amalgamated.hpp>

#include "gerbe/exactalg/echelon.hpp"
#include "gerbe/exactalg/modp.hpp"
#include "gerbe/exactalg/normal_form.hpp"

#include <functional>
#include <numeric>
#include <random>

using namespace gerbe;

namespace {

// Laplace expansion; independent of the library's elimination code.
Int det_oracle(const std::vector<std::vector<Int>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Int>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Int term = a[0][j] * det_oracle(minor);
    total += (j % 2 == 0) ? term : Int(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// gcd of all k x k minors.
Int minor_gcd(const DenseInt& A, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs, cs;
  subsets(A.rows(), k, rs);
  subsets(A.cols(), k, cs);
  Int g = 0;
  for (const auto& r : rs)
    for (const auto& c : cs) {
      std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = A(r[i], c[j]);
      Int d = det_oracle(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  return g;
}

DenseInt random_int_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  DenseInt A(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = dist(rng);
  return A;
}

std::vector<std::vector<Int>> rows_of(const DenseInt& A) {
  std::vector<std::vector<Int>> out(A.rows(), std::vector<Int>(A.cols()));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) out[i][j] = A(i, j);
  return out;
}

bool is_diagonal(const DenseInt& D) {
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (i != j && D(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("Smith form of a 2x2 example matches the minor-gcd oracle", "[exactalg][snf]") {
  const IntMatrix A = IntMatrix::from_rows(2, 2, {{2, 4}, {6, 8}});
  const auto [U, D, V] = smith_normal_form(A);
  CHECK(U * A * V == D);
  const DenseInt dA = DenseInt::from_sparse(A);
  const Int d1 = minor_gcd(dA, 1);
  const Int d2 = minor_gcd(dA, 2) / d1;
  CHECK(D == IntMatrix::from_rows(2, 2, {{d1.get_si(), 0}, {0, d2.get_si()}}));
  CHECK(D == IntMatrix::from_rows(2, 2, {{2, 0}, {0, 4}}));
}

TEST_CASE("Smith form of identity and zero", "[exactalg][snf]") {
  const auto id = IntMatrix::identity(4);
  const auto [U, D, V] = smith_normal_form(id);
  CHECK(D == id);
  CHECK(U == id);
  CHECK(V == id);
  const IntMatrix zero(3, 2);
  CHECK(smith_normal_form(zero).D.is_zero());
}

TEST_CASE("Smith form properties on random small matrices", "[exactalg][snf][property]") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    const DenseInt A = random_int_matrix(rng, m, n, -9, 9);
    const SmithForm s = smith_form(A);
    INFO("trial " << trial);
    REQUIRE(s.U * A * s.V == s.D);
    REQUIRE(is_diagonal(s.D));
    REQUIRE(abs(det_oracle(rows_of(s.U))) == 1);
    REQUIRE(abs(det_oracle(rows_of(s.V))) == 1);
    REQUIRE(s.U * s.U_inv == DenseInt::identity(m));
    REQUIRE(s.V * s.V_inv == DenseInt::identity(n));
    const auto f = s.invariant_factors();
    for (std::size_t i = 0; i < f.size(); ++i) {
      REQUIRE(f[i] > 0);
      if (i + 1 < f.size()) REQUIRE(f[i + 1] % f[i] == 0);
    }
    Int prod = 1;
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
      const Int g = minor_gcd(A, k);
      if (k <= f.size()) {
        prod *= f[k - 1];
        REQUIRE(prod == g);
      } else {
        REQUIRE(g == 0);
      }
    }
  }
}

TEST_CASE("q_kernel_basis examples", "[exactalg][kernel]") {
  auto k = q_kernel_basis(QMatrix::from_rows(1, 2, {{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -k[0][1]);
  CHECK(k[0][0] != 0);
  CHECK(q_kernel_basis(QMatrix::identity(2)).empty());
  auto z = q_kernel_basis(QMatrix(2, 2));
  REQUIRE(z.size() == 2);
  CHECK(z[0] == QVector{1, 0});
  CHECK(z[1] == QVector{0, 1});
}

TEST_CASE("q_kernel_basis rank-nullity and independence", "[exactalg][kernel][property]") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> dim(1, 7), val(-3, 3), den(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    MatrixBuilder<Rat> b(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (val(rng) > 0) b.add(i, j, make_rat(val(rng), den(rng)));
    QMatrix A = b.build();
    auto K = q_kernel_basis(A);
    REQUIRE(K.size() + rank_of(A) == n);
    for (const auto& v : K)
      for (const auto& x : A.apply(v)) REQUIRE(x == 0);
    QMatrix KM(n, K.size());
    for (std::size_t j = 0; j < K.size(); ++j) KM.set_col(j, sparse_q(K[j]));
    REQUIRE(rank_of(KM) == K.size());
  }
}

TEST_CASE("integral_kernel examples", "[exactalg][lattice]") {
  QMatrix A(1, 2);
  A.set_col(0, {{0, make_rat(1, 2)}});
  A.set_col(1, {{0, make_rat(-1, 2)}});
  auto L = integral_kernel(A);
  REQUIRE(L.size() == 1);
  CHECK(L[0] == IntVector{1, 1});
  CHECK(integral_kernel(QMatrix::identity(3)).empty());
  auto Z = integral_kernel(QMatrix(1, 2));
  REQUIRE(Z.size() == 2);
  CHECK(Z[0] == IntVector{1, 0});
  CHECK(Z[1] == IntVector{0, 1});
}

TEST_CASE("integral_kernel is saturated (brute-force box oracle)", "[exactalg][lattice][property]") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> rows(1, 2), val(-3, 3), den(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = rows(rng), n = 3;
    MatrixBuilder<Rat> b(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) b.add(i, j, make_rat(val(rng), den(rng)));
    const QMatrix A = b.build();
    const auto L = integral_kernel(A);
    REQUIRE(L.size() == n - rank_of(A));
    for (const auto& v : L)
      for (const auto& x : A.apply(QVector(v.begin(), v.end()))) REQUIRE(x == 0);
    if (L.empty()) continue;
    LatticeCoordinates coords(n, L);
    const int B = 6;
    for (int x = -B; x <= B; ++x)
      for (int y = -B; y <= B; ++y)
        for (int z = -B; z <= B; ++z) {
          const QVector q{x, y, z};
          bool zero = true;
          for (const auto& e : A.apply(q)) zero = zero && e == 0;
          if (!zero) continue;
          INFO("trial " << trial << " point " << x << "," << y << "," << z);
          REQUIRE(coords.integral(IntVector{x, y, z}).has_value());
        }
  }
}

TEST_CASE("solve_integer examples", "[exactalg][solve]") {
  auto x = solve_integer(IntMatrix::from_rows(1, 1, {{2}}), IntVector{4});
  REQUIRE(x);
  CHECK(*x == IntVector{2});
  CHECK_FALSE(solve_integer(IntMatrix::from_rows(1, 1, {{2}}), IntVector{3}));
  auto y = solve_integer(IntMatrix::from_rows(2, 2, {{1, 0}, {0, 2}}), IntVector{5, 6});
  REQUIRE(y);
  CHECK(*y == IntVector{5, 3});
}

TEST_CASE("solve_integer agrees with a brute-force box search", "[exactalg][solve][property]") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> val(-3, 3), rhs(-6, 6);
  for (int trial = 0; trial < 80; ++trial) {
    const DenseInt A = random_int_matrix(rng, 2, 2, -3, 3);
    const IntVector b{rhs(rng), rhs(rng)};
    const IntMatrix S = A.to_sparse();
    auto x = solve_integer(S, b);
    bool found = false;
    const int B = 40;
    for (int u = -B; u <= B && !found; ++u)
      for (int v = -B; v <= B && !found; ++v)
        found = A(0, 0) * u + A(0, 1) * v == b[0] && A(1, 0) * u + A(1, 1) * v == b[1];
    INFO("trial " << trial);
    if (found) REQUIRE(x.has_value());
    if (x) {
      const auto Ax = S.apply(*x);
      REQUIRE(Ax == b);
    }
  }
}

TEST_CASE("column Hermite form is canonical for a lattice", "[exactalg][hermite]") {
  DenseInt G(3, 3);
  G(0, 0) = 2; G(0, 1) = 4; G(0, 2) = 6;
  G(1, 0) = 1; G(1, 1) = 3; G(1, 2) = 5;
  G(2, 0) = 0; G(2, 1) = 1; G(2, 2) = 2;
  const auto h = column_hermite(G);
  CHECK(G * h.T == [&] {
    DenseInt full(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < h.H.cols(); ++j) full(i, j) = h.H(i, j);
    return full;
  }());
  CHECK(abs(det_oracle(rows_of(h.T))) == 1);
  // Same lattice from permuted, recombined generators gives the same form.
  DenseInt G2(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    G2(i, 0) = G(i, 2) + G(i, 0);
    G2(i, 1) = G(i, 1);
    G2(i, 2) = G(i, 0);
  }
  CHECK(column_hermite(G2).H == h.H);
}

TEST_CASE("modular axpy kernels agree across instruction sets", "[exactalg][simd]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> val(0, modp::kPrime - 1);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
    std::vector<std::uint64_t> src(n), a(n);
    for (std::size_t i = 0; i < n; ++i) {
      src[i] = val(rng);
      a[i] = val(rng);
    }
    auto b = a;
    const std::uint64_t c = val(rng);
    modp::axpy_scalar(a.data(), src.data(), c, n);
    modp::axpy_avx2(b.data(), src.data(), c, n);
    REQUIRE(a == b);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] < modp::kPrime);
  }
  // Extreme operands.
  std::vector<std::uint64_t> src(9, modp::kPrime - 1), a(9, modp::kPrime - 1);
  auto b = a;
  modp::axpy_scalar(a.data(), src.data(), modp::kPrime - 1, 9);
  modp::axpy_avx2(b.data(), src.data(), modp::kPrime - 1, 9);
  REQUIRE(a == b);
  // (p-1) + (p-1)^2 = (p-1) + 1 = 0 mod p.
  REQUIRE(a[0] == 0);
}

TEST_CASE("modular rank bounds the exact rank and certifies full rank", "[exactalg][simd][property]") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 12), val(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    MatrixBuilder<Rat> b(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (val(rng) > 0) b.add(i, j, make_rat(val(rng), 1 + (trial % 3)));
    const QMatrix A = b.build();
    const auto rs = modp::rank_mod_p(A, modp::Isa::scalar);
    const auto rv = modp::rank_mod_p(A, modp::Isa::avx2);
    REQUIRE(rs == rv);
    REQUIRE(rs.has_value());
    const std::size_t exact = rank_of(A);
    REQUIRE(*rs <= exact);
    REQUIRE(rank_fast(A) == exact);
  }
}
