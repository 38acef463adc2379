#include <catch_amalgamated.hpp>

#include "gerbe/doldkan/gamma.hpp"
#include "gerbe/exactalg/echelon.hpp"
#include "gerbe/homalg/homology.hpp"
#include "gerbe/homalg/random.hpp"
#include "support/oracle_complex.hpp"

using namespace gerbe;

namespace {

// Z -> Z multiplication by m, degrees 1 -> 0.
ZQComplex times(long m) {
  ZQComplex C(0, {{1, 0}, {1, 0}});
  C.set_d(1, ZQMap{IntMatrix::from_rows(1, 1, {{m}}), QMatrix(0, 1), QMatrix(0, 0)});
  return C;
}

ZQVector z1(long v) { return {IntVector{Int(v)}, QVector{}}; }

Surjection surj(int t, std::vector<int> v) { return Surjection(t, std::move(v)); }

long binomial(int n, int k) {
  long b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

ZQComplex random_nonneg(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> levels(1, 4);
  return random_complex(rng, {.lowest = 0, .levels = levels(rng), .max_z = 3, .max_q = 3, .max_entry = 3});
}

// All monotone maps [s] -> [r].
std::vector<MonotoneMap> monotone_maps(int s, int r) {
  std::vector<MonotoneMap> out;
  std::vector<int> v(static_cast<std::size_t>(s) + 1);
  auto rec = [&](auto&& self, int i, int lo) -> void {
    if (i > s) {
      out.emplace_back(r, v);
      return;
    }
    for (int x = lo; x <= r; ++x) {
      v[static_cast<std::size_t>(i)] = x;
      self(self, i + 1, x);
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

TEST_CASE("monotone maps: surjection counts and epi-mono factorization", "[doldkan]") {
  for (int r = 0; r <= 6; ++r)
    for (int t = 0; t <= r; ++t) {
      const auto S = surjections(r, t);
      CHECK(static_cast<long>(S.size()) == binomial(r, t));
      for (const auto& s : S) CHECK(s.is_surjective());
    }
  for (int s = 0; s <= 3; ++s)
    for (int r = 0; r <= 3; ++r)
      for (const auto& f : monotone_maps(s, r)) {
        const EpiMono em = factorize(f);
        CHECK(em.epi.is_surjective());
        CHECK(em.mono.is_injective());
        CHECK(compose(em.mono, em.epi) == f);
      }
  CHECK_THROWS_AS(MonotoneMap(2, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(MonotoneMap(1, {0, 2}), std::invalid_argument);
}

TEST_CASE("level summands of Γ", "[doldkan]") {
  const ZQComplex C(0, {{1, 0}, {1, 1}, {0, 2}});
  const auto L2 = gamma_level_summands(C, 2);
  REQUIRE(L2.size() == 4);
  CHECK(L2[0].second == 0);
  CHECK(L2[1].second == 1);
  CHECK(L2[2].second == 1);
  CHECK(L2[3].second == 2);
  CHECK(L2[3].first == Surjection::identity(2));
  CHECK(gamma_level_summands(C, 0).size() == 1);

  const ZQComplex point(0, {{2, 1}});
  for (int r = 0; r <= 5; ++r) {
    const auto L = gamma_level_summands(point, r);
    REQUIRE(L.size() == 1);
    CHECK(L[0].second == 0);
  }
}

TEST_CASE("faces and degeneracy on low levels", "[doldkan]") {
  const ZQComplex C = times(2);
  const Surjection to0 = surj(0, {0, 0}), id1 = Surjection::identity(1), id0 = Surjection::identity(0);
  GammaSimplex x(1);
  x.add(to0, z1(5));  // x_0
  x.add(id1, z1(3));  // x_01

  GammaSimplex d0 = face(C, 0, x), d1 = face(C, 1, x);
  CHECK(d0.component(id0, C) == z1(5 + 2 * 3));
  CHECK(d1.component(id0, C) == z1(5));

  GammaSimplex v(0);
  v.add(id0, z1(7));
  const GammaSimplex s0 = degeneracy(C, 0, v);
  CHECK(s0.component(to0, C) == z1(7));
  CHECK(s0.component(id1, C) == z1(0));
  CHECK(s0.components().size() == 1);

  CHECK_THROWS_AS(apply_simplicial(C, MonotoneMap::face(3, 0), x), std::invalid_argument);
}

TEST_CASE("simplicial identities through level 5", "[doldkan]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const ZQComplex C = random_nonneg(rng);
    for (int n = 1; n <= 5; ++n) {
      const GammaSimplex x = random_simplex(rng, C, n);
      for (int j = 1; j <= n && n >= 2; ++j)
        for (int i = 0; i < j; ++i)
          CHECK(face(C, i, face(C, j, x)) == face(C, j - 1, face(C, i, x)));
      for (int j = 0; j <= n; ++j) {
        const GammaSimplex sx = degeneracy(C, j, x);
        CHECK(face(C, j, sx) == x);
        CHECK(face(C, j + 1, sx) == x);
        for (int i = 0; i < j; ++i) CHECK(face(C, i, sx) == degeneracy(C, j - 1, face(C, i, x)));
        for (int i = j + 2; i <= n + 1; ++i) CHECK(face(C, i, sx) == degeneracy(C, j, face(C, i - 1, x)));
        for (int i = 0; i <= j; ++i) CHECK(degeneracy(C, i, sx) == degeneracy(C, j + 1, degeneracy(C, i, x)));
      }
    }
  }
}

TEST_CASE("contravariant functoriality and the matrix form", "[doldkan]") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 6; ++trial) {
    const ZQComplex C = random_nonneg(rng);
    for (int r = 0; r <= 4; ++r) {
      const GammaSimplex x = random_simplex(rng, C, r);
      const GammaLevel Lr = gamma_level(C, r);
      CHECK(Lr.unflatten(Lr.flatten(x, C)) == x);
      for (int s = 0; s <= 3; ++s) {
        const auto thetas = monotone_maps(s, r);
        const GammaLevel Ls = gamma_level(C, s);
        for (const auto& theta : thetas) {
          const GammaSimplex y = apply_simplicial(C, theta, x);
          CHECK(Ls.flatten(y, C) == simplicial_matrix(C, theta).apply(Lr.flatten(x, C)));
          for (int s2 = 0; s2 <= 2; ++s2)
            for (const auto& theta2 : monotone_maps(s2, s))
              CHECK(apply_simplicial(C, compose(theta, theta2), x) == apply_simplicial(C, theta2, y));
        }
      }
    }
  }
}

TEST_CASE("normalized chains recover the complex", "[doldkan]") {
  const ZQComplex Z0(0, {{1, 0}});
  CHECK(normalized_chains(Z0) == Z0);
  const ZQComplex m2 = times(2);
  CHECK(normalized_chains(m2) == m2);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const ZQComplex C = random_nonneg(rng);
    const ZQComplex N = normalized_chains(C);
    CHECK(N == C);
    // Independent count: the joint kernel of d_1..d_r over Q has dimension a_r + b_r.
    for (int r = 1; r <= C.highest(); ++r) {
      const GammaLevel L = gamma_level(C, r);
      QMatrix stacked(0, L.z + L.q);
      for (int i = 1; i <= r; ++i) {
        const ZQMap f = simplicial_matrix(C, MonotoneMap::face(r, i));
        const QMatrix top = QMatrix::hstack(f.zz.cast<Rat>(), QMatrix(f.dst_z(), f.src_q()));
        const QMatrix bottom = QMatrix::hstack(f.qz, f.qq);
        stacked = QMatrix::vstack(stacked, QMatrix::vstack(top, bottom));
      }
      CHECK(L.z + L.q - rank_of(stacked) == C.z_rank(r) + C.q_dim(r));
    }
  }
}

TEST_CASE("horn fillers", "[doldkan]") {
  const ZQComplex C = times(3);
  const Surjection to0 = surj(0, {0, 0}), id1 = Surjection::identity(1), id0 = Surjection::identity(0);

  SECTION("zero horn") {
    Horn h{3, 1, {}};
    for (int i : {0, 2, 3}) h.faces.emplace(i, GammaSimplex(2));
    CHECK(horn_filler(C, h).is_zero());
  }
  SECTION("inner horn composes edges") {
    const long x0 = 4, a = 2, b = -1;
    GammaSimplex e01(1), e12(1);
    e01.add(to0, z1(x0));
    e01.add(id1, z1(a));
    e12.add(to0, z1(x0 + 3 * a));
    e12.add(id1, z1(b));
    const GammaSimplex u = horn_filler(C, Horn{2, 1, {{0, e12}, {2, e01}}});
    GammaSimplex expected(1);
    expected.add(to0, z1(x0));
    expected.add(id1, z1(a + b));
    CHECK(face(C, 1, u) == expected);
  }
  SECTION("Λ¹₀ horn on a vertex is degenerate") {
    GammaSimplex v(0);
    v.add(id0, z1(5));
    const GammaSimplex u = horn_filler(C, Horn{1, 0, {{1, v}}});
    CHECK(u == degeneracy(C, 0, v));
  }
  SECTION("incompatible horn names the identity") {
    GammaSimplex e01(1), e12(1);
    e01.add(to0, z1(1));
    e12.add(to0, z1(2));
    try {
      horn_filler(C, Horn{2, 1, {{0, e12}, {2, e01}}});
      FAIL("expected an incompatible horn error");
    } catch (const std::domain_error& e) {
      CHECK(std::string(e.what()).find("d_0 y_2 = d_1 y_0") != std::string::npos);
    }
  }
  SECTION("random horns through dimension 4") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 6; ++trial) {
      const ZQComplex X = random_nonneg(rng);
      for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) {
          const Horn h = random_horn(rng, X, n, k);
          const GammaSimplex u = horn_filler(X, h);
          for (const auto& [i, y] : h.faces) CHECK(face(X, i, u) == y);
        }
    }
  }
}

TEST_CASE("homotopy groups of Γ", "[doldkan]") {
  const ZQComplex Z1(0, {{0, 0}, {1, 0}});
  CHECK(homotopy_group(Z1, 1) == MixedGroup::free(1));
  CHECK(homotopy_group(Z1, 0).is_zero());
  CHECK(homotopy_group(times(2), 0) == MixedGroup::with_torsion({Int(2)}));

  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::Known K = oracle::random_known(rng, 0, 3, 4);
    for (int i = 0; i <= 2; ++i) CHECK(homotopy_group(K.complex, i) == K.homology.at(i));
  }
}
