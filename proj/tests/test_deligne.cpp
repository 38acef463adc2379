#include <catch_amalgamated.hpp>

#include "gerbe/deligne/cocycle.hpp"
#include "gerbe/deligne/io.hpp"
#include "support/oracle_cohomology.hpp"

#include <algorithm>
#include <random>

using namespace gerbe;
using oracle::oracle_cohomology;

namespace {

std::vector<SimplicialComplex> test_set() { return {circle(3), sphere(2), torus2(), rp2(), klein()}; }

// H^j(M; Q/Z) = (Q/Z)^{b_j} ⊕ tors H^{j+1}(M; Z), from the integral oracle.
MixedGroup oracle_circle_coefficients(const SimplicialComplex& M, int j) {
  if (j < 0) return {};
  MixedGroup g = torsion_part(oracle_cohomology(M, j + 1));
  g.torus_rank = oracle_cohomology(M, j).free_rank;
  return g;
}

QVector apply_q(const IntMatrix& m, const QVector& x) { return m.cast<Rat>().apply(x); }

QVector combine(const QVector& a, int s, const QVector& b) {
  QVector out = a;
  for (std::size_t r = 0; r < out.size(); ++r) out[r] += s * b[r];
  return out;
}

int sgn(int e) { return e % 2 == 0 ? 1 : -1; }

// Integer (n+2)-cocycles: the homology generators with small random coefficients.
IntVector sample_class(std::mt19937& rng, const StarSite& site, int n) {
  const Homology H = class_homology(site, n);
  IntVector c(site.base().count(n + 2));
  std::uniform_int_distribution<int> coef(-2, 2);
  auto add = [&](const std::vector<ZQVector>& gens) {
    for (const auto& g : gens) {
      const int a = coef(rng);
      for (std::size_t r = 0; r < c.size(); ++r) c[r] += a * g.z[r];
    }
  };
  add(H.free_generators());
  add(H.torsion_generators());
  // plus a coboundary
  if (n + 1 >= 0) {
    IntVector b(site.base().count(n + 1));
    for (auto& v : b) v = coef(rng);
    const IntVector db = coboundary(site.base(), whole(site.base()), n + 1).apply(b);
    for (std::size_t r = 0; r < c.size(); ++r) c[r] += db[r];
  }
  return c;
}

QVector random_q(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-4, 4);
  QVector v(n);
  for (auto& x : v) x = make_rat(num(rng), 2);
  return v;
}

}  // namespace

TEST_CASE("pars range checks", "[deligne]") {
  CHECK_NOTHROW(DelignePars{0, 1, false}.validate());
  CHECK_THROWS_AS((DelignePars{0, 2, false}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DelignePars{-1, 0, false}.validate()), std::invalid_argument);
  CHECK_NOTHROW(DelignePars::flat_marker(1).validate());
  CHECK(DelignePars::flat_marker(1).top() == 2);
}

TEST_CASE("total differential reproduces the cocycle equations", "[deligne]") {
  std::mt19937 rng(5);
  for (const auto& M : {circle(3), torus2(), rp2()}) {
    const StarSite site(M);
    for (int n = 0; n <= 1; ++n)
      for (int k = 0; k <= n + 1; ++k) {
        const DeligneComplex A(site, {n, k, false});
        RowComponents x = A.zero_components(0);
        std::uniform_int_distribution<int> zi(-3, 3);
        for (auto& v : x.z) v = zi(rng);
        for (int j = 0; j <= k; ++j) x.forms[static_cast<std::size_t>(j)] = random_q(rng, A.form_size(j, 0));
        const RowComponents Dx = A.unpack(-1, A.total().complex.d(0).apply(A.pack(0, x)));

        RowComponents expect = A.zero_components(-1);
        expect.z = coboundary(M, whole(M), n + 2).apply(x.z);
        expect.forms[0] = combine(apply_q(site.cech_delta(n + 1, 0), x.forms[0]), sgn(n + 2),
                                  apply_q(site.constant_inclusion(n + 2), to_q(x.z)));
        for (int j = 0; j < k; ++j)
          expect.forms[static_cast<std::size_t>(j + 1)] =
              combine(apply_q(site.cech_delta(n - j, j + 1), x.forms[static_cast<std::size_t>(j + 1)]), sgn(n + 1 - j),
                      apply_q(site.patch_coboundary(n + 1 - j, j), x.forms[static_cast<std::size_t>(j)]));
        CHECK(Dx == expect);
      }
  }
}

TEST_CASE("gerbe homotopy groups on small examples", "[deligne]") {
  const StarSite c3(circle(3)), t2(torus2()), p2(rp2());
  CHECK(gerbe_pi(c3, {0, 0, false}, 0) == MixedGroup{});
  CHECK(gerbe_pi(t2, {0, 0, false}, 0) == MixedGroup::free(1));
  CHECK(gerbe_pi(c3, {0, 1, false}, 0) == MixedGroup::torus(1));
  CHECK(gerbe_pi(p2, {0, 0, false}, 0) == MixedGroup::with_torsion({Int(2)}));
  CHECK(gerbe_pi(t2, {1, 1, false}, 5) == MixedGroup{});
}

TEST_CASE("connected components are classified by the integral class", "[deligne][slow]") {
  for (const auto& M : test_set()) {
    const StarSite site(M);
    for (int n = 0; n <= 2; ++n)
      for (int k = 0; k <= n; ++k) {
        INFO(M.vertex_count() << " vertices, n = " << n << ", k = " << k);
        const ProjectionReport r = class_comparison(site, {n, k, false}, 0);
        CHECK(r.source == oracle_cohomology(M, n + 2));
        CHECK(r.map.iso());
      }
  }
}

TEST_CASE("higher groups of full connections are flat gerbes", "[deligne]") {
  for (const auto& M : {circle(3), torus2(), rp2()}) {
    const StarSite site(M);
    for (int n = 0; n <= 1; ++n)
      for (int i = 1; i <= n + 2; ++i) {
        INFO("n = " << n << ", i = " << i);
        CHECK(gerbe_pi(site, {n, n + 1, false}, i) == oracle_circle_coefficients(M, n + 1 - i));
      }
  }
}

TEST_CASE("projections on connected components", "[deligne]") {
  const StarSite c3(circle(3)), t2(torus2()), p2(rp2());
  const ProjectionReport a = pi0_projection_check(t2, 1, 1, 0);
  CHECK(a.map.iso());
  CHECK(pi0_projection_check(p2, 1, 1, 0).map.iso());
  CHECK(pi0_projection_check(p2, 0, 0, 0).map.iso());
  const ProjectionReport b = pi0_projection_check(c3, 0, 1, 0);
  CHECK(b.map.surjective);
  CHECK_FALSE(b.map.injective);
  CHECK(b.map.kernel == MixedGroup::torus(1));
  CHECK_THROWS_AS(pi0_projection_check(c3, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("cocycles from classes", "[deligne]") {
  std::mt19937 rng(11);
  const StarSite t2(torus2()), p2(rp2());
  const DeligneCocycle zero = cocycle_from_class(t2, {0, 1, false}, IntVector(t2.base().count(2)));
  CHECK(zero == DeligneCocycle::zero(t2, {0, 1, false}));

  const Homology H = class_homology(t2, 0);
  REQUIRE(H.free_generators().size() == 1);
  const DeligneCocycle X = cocycle_from_class(t2, {0, 1, false}, H.free_generators()[0].z);
  CHECK(validate_cocycle(t2, X).ok);
  CHECK(cocycle_class(t2, X).free == IntVector{Int(1)});

  const Homology Hp = class_homology(p2, 0);
  REQUIRE(Hp.torsion_generators().size() == 1);
  const DeligneCocycle Y = cocycle_from_class(p2, {0, 0, false}, Hp.torsion_generators()[0].z);
  CHECK(validate_cocycle(p2, Y).ok);
  CHECK(cocycle_class(p2, Y).torsion == IntVector{Int(1)});

  for (const auto& M : {torus2(), rp2(), klein()}) {
    const StarSite site(M);
    for (int n = 0; n <= 1; ++n)
      for (int k = 0; k <= n + 1; ++k) {
        const IntVector c = sample_class(rng, site, n);
        const DeligneCocycle Z = cocycle_from_class(site, {n, k, false}, c);
        CHECK(Z.z == c);
        CHECK(validate_cocycle(site, Z).ok);
        const DeligneComplex A(site, {n, k, false});
        CHECK(A.total().complex.d(0).apply(A.pack(0, Z.components())).is_zero());
      }
  }

  const StarSite s3(sphere(3));
  IntVector open(s3.base().count(2));
  open[0] = 1;
  CHECK_THROWS_AS(cocycle_from_class(s3, {0, 0, false}, open), std::domain_error);
}

TEST_CASE("validation names the failing tuple", "[deligne]") {
  const StarSite c3(circle(3));
  const DelignePars pars{0, 1, false};
  DeligneCocycle X = DeligneCocycle::zero(c3, pars);
  CHECK(validate_cocycle(c3, X).ok);
  // A_1 lives on vertex stars; perturb the entry of vertex 0 on its edge {0,1}.
  X.A[1][0] += 1;
  const CochainEntry e = locate_entry(c3, 0, 1, 0);
  const CocycleReport r = validate_cocycle(c3, X);
  CHECK_FALSE(r.ok);
  CHECK(r.equation == "δA_1 - dA_0 = 0");
  const Simplex t = parse_simplex(c3.base(), r.tuple);
  CHECK(std::includes(t.begin(), t.end(), e.tuple.begin(), e.tuple.end()));
  CHECK(r.message().find(r.tuple) != std::string::npos);

  DeligneCocycle Y = DeligneCocycle::zero(c3, pars);
  Y.z.push_back(Int(1));
  CHECK_FALSE(validate_cocycle(c3, Y).ok);
}

TEST_CASE("projection of cocycles", "[deligne]") {
  std::mt19937 rng(3);
  const StarSite site(torus2());
  const DeligneCocycle X = cocycle_from_class(site, {1, 2, false}, sample_class(rng, site, 1));
  CHECK(projection_p(X, 2) == X);
  const DeligneCocycle P0 = projection_p(X, 0);
  CHECK(P0.A.size() == 1);
  CHECK(P0.z == X.z);
  for (int l = 0; l <= 2; ++l) CHECK(validate_cocycle(site, projection_p(X, l)).ok);
  CHECK_THROWS_AS(projection_p(X, 3), std::invalid_argument);
}

TEST_CASE("curvature represents the rational class", "[deligne]") {
  std::mt19937 rng(19);
  const StarSite t2(torus2());
  const CurvatureForm F0 = curvature(t2, DeligneCocycle::zero(t2, {0, 1, false}));
  CHECK(F0.H == QVector(t2.base().count(2)));
  CHECK_THROWS_AS(curvature(t2, DeligneCocycle::zero(t2, {0, 0, false})), std::invalid_argument);

  // The sign: on the torus and on the 3-sphere the curvature class is (-1)^n times the class of z,
  // compared through an explicit evaluation on the fundamental cycle.
  auto pairing = [](const SimplicialComplex& M, int p, const QVector& v) {
    const Homology top(cochain_complex(M, whole(M), Coeff::Q), -p);
    return top.coordinates(ZQVector{{}, v}).q;
  };
  for (auto [M, n] : {std::pair{torus2(), 0}, std::pair{sphere(3), 1}}) {
    const StarSite site(M);
    const Homology H = class_homology(site, n);
    REQUIRE(H.free_generators().size() == 1);
    const IntVector c = H.free_generators()[0].z;
    const DeligneCocycle X = cocycle_from_class(site, {n, n + 1, false}, c);
    const CurvatureForm F = curvature(site, X);
    QVector cq = to_q(c);
    for (auto& v : cq) v *= curvature_sign(n);
    CHECK(pairing(M, n + 2, F.H) == pairing(M, n + 2, cq));
    CHECK(curvature_integrality_check(site, X));
    for (auto& v : cq) v = -v;
    CHECK(pairing(M, n + 2, F.H) != pairing(M, n + 2, cq));
  }

  for (const auto& M : {torus2(), rp2(), klein()}) {
    const StarSite site(M);
    for (int n = 0; n <= 1; ++n) {
      const DeligneCocycle X = cocycle_from_class(site, {n, n + 1, false}, sample_class(rng, site, n));
      CHECK(curvature_integrality_check(site, X));
    }
  }
}

TEST_CASE("flat connections exist exactly on torsion classes", "[deligne]") {
  const StarSite site(product(rp2(), circle(3)));
  const Homology H = class_homology(site, 1);
  REQUIRE(H.torsion_generators().size() == 1);
  const DeligneCocycle X = cocycle_from_class(site, DelignePars::flat_marker(1), H.torsion_generators()[0].z);
  CHECK(validate_cocycle(site, X).ok);
  CHECK(curvature(site, X).H == QVector(site.base().count(3)));
  CHECK(cocycle_class(site, X).torsion == IntVector{Int(1)});
  CHECK(curvature_integrality_check(site, X));
  const DeligneComplex A(site, DelignePars::flat_marker(1));
  CHECK(A.total().complex.d(0).apply(A.pack(0, X.components())).is_zero());

  const StarSite t2(torus2());
  const Homology Ht = class_homology(t2, 0);
  CHECK_THROWS_AS(cocycle_from_class(t2, DelignePars::flat_marker(0), Ht.free_generators()[0].z), std::domain_error);

  // a flat cocycle projects to a full connection with zero curvature
  const DeligneCocycle P = projection_p(X, 2);
  CHECK(validate_cocycle(site, P).ok);
  CHECK(curvature(site, P).H == QVector(site.base().count(3)));
}

TEST_CASE("flat gerbes: the closed top row", "[deligne]") {
  const StarSite c3(circle(3)), t2(torus2());
  CHECK(gerbe_pi(c3, DelignePars::flat_marker(0), 0) == MixedGroup::torus(1));
  CHECK(gerbe_pi(t2, DelignePars::flat_marker(0), 0) == oracle_circle_coefficients(torus2(), 1));
  CHECK(gerbe_pi(t2, DelignePars::flat_marker(1), 0) == oracle_circle_coefficients(torus2(), 2));
  const DeligneComplex A(c3, DelignePars::flat_marker(0));
  const DeligneComplex C(c3, {0, 1, false});
  projection_map(A, C).check(A.total().complex, C.total().complex);
  const DeligneComplex B(t2, DelignePars::flat_marker(0));
  RowComponents x = B.zero_components(0);
  x.forms[1][0] = 1;  // not closed on the star of vertex 0
  CHECK_THROWS_AS(B.pack(0, x), std::domain_error);
}

TEST_CASE("U(1)-model import", "[deligne]") {
  std::mt19937 rng(23);
  const StarSite p2(rp2()), t2(torus2());
  U1Data zero{0, 0, QVector(p2.cech_dim(1, 0)), {}};
  CHECK(u1_to_z_model(p2, zero) == DeligneCocycle::zero(p2, {0, 0, false}));

  // g = y/2 with δy = 2c for the generator c of H^2(RP^2; Z) = Z/2.
  const Homology H = class_homology(p2, 0);
  const IntVector c = H.torsion_generators()[0].z;
  IntVector twice = c;
  for (auto& v : twice) v *= 2;
  const auto y = solve_integer(coboundary(p2.base(), whole(p2.base()), 1), twice);
  REQUIRE(y);
  U1Data half{0, 0, QVector(p2.cech_dim(1, 0)), {}};
  for (std::size_t s = 0; s < p2.base().count(1); ++s)
    for (std::size_t r = p2.cech_offset(1, s, 0); r < p2.cech_offset(1, s + 1, 0); ++r)
      half.g[r] = make_rat((*y)[s], 2);
  const DeligneCocycle X = u1_to_z_model(p2, half);
  CHECK(validate_cocycle(p2, X).ok);
  CHECK(cocycle_class(p2, X).torsion == IntVector{Int(1)});

  for (int k = 0; k <= 1; ++k) {
    const DeligneCocycle Z = cocycle_from_class(t2, {0, k, false}, sample_class(rng, t2, 0));
    U1Data d = z_to_u1_model(Z);
    for (auto& v : d.g) v += std::uniform_int_distribution<int>(-2, 2)(rng);
    const DeligneCocycle back = u1_to_z_model(t2, d);
    CHECK(validate_cocycle(t2, back).ok);
    CHECK(cocycle_class(t2, back) == cocycle_class(t2, Z));
  }

  U1Data bad{0, 0, QVector(p2.cech_dim(1, 0)), {}};
  bad.g[0] = make_rat(1, 3);
  CHECK_THROWS_AS(u1_to_z_model(p2, bad), std::invalid_argument);
}

TEST_CASE("cocycle JSON round trip", "[deligne]") {
  std::mt19937 rng(29);
  const StarSite site(torus2());
  const DeligneCocycle X = cocycle_from_class(site, {0, 1, false}, sample_class(rng, site, 0));
  const nlohmann::json j = cocycle_to_json(site, X);
  CHECK(j["n"] == 0);
  CHECK(j["A"].size() == 2);
  CHECK(cocycle_from_json(site, j) == X);
  CHECK(cocycle_from_json(site, nlohmann::json::parse(j.dump())) == X);
  nlohmann::json broken = j;
  broken["A"].erase(1);
  CHECK_THROWS_AS(cocycle_from_json(site, broken), std::invalid_argument);
  CHECK_THROWS_AS(parse_simplex(site.base(), "{0,9}"), std::invalid_argument);
}

TEST_CASE("complex cache", "[deligne]") {
  const StarSite site(circle(3));
  const DeligneCache cache(site);
  const auto a = cache.get({0, 1, false});
  CHECK(a == cache.get({0, 1, false}));
  CHECK(a != cache.get({0, 0, false}));
  CHECK(homology(a->truncated(), 0) == MixedGroup::torus(1));
}
