#include <catch_amalgamated.hpp>

#include "gerbe/exactalg/normal_form.hpp"
#include "gerbe/site/cochains.hpp"
#include "gerbe/site/io.hpp"
#include "support/oracle_cohomology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace gerbe;
using oracle::oracle_coboundary;
using oracle::oracle_cohomology;

namespace {

std::set<Simplex> star_simplices(const SimplicialComplex& M, const Subcomplex& L) {
  std::set<Simplex> out;
  for (std::size_t p = 0; p < L.cells.size(); ++p)
    for (std::size_t g : L.cells[p]) out.insert(M.simplices(static_cast<int>(p))[g]);
  return out;
}

std::vector<SimplicialComplex> test_set() { return {circle(3), sphere(2), torus2(), rp2(), klein()}; }

}  // namespace

TEST_CASE("building complexes", "[site]") {
  const SimplicialComplex S1({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK(S1.count(0) == 3);
  CHECK(S1.count(1) == 3);
  CHECK(S1.dimension() == 1);
  const SimplicialComplex S2 = sphere(2);
  CHECK(S2.count(0) == 4);
  CHECK(S2.count(1) == 6);
  CHECK(S2.count(2) == 4);
  const SimplicialComplex T = torus2();
  CHECK(T.count(0) == 7);
  CHECK(T.count(1) == 21);
  CHECK(T.count(2) == 14);
  CHECK_THROWS_AS(SimplicialComplex({"a"}, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex({"a"}, {{"a", "z"}}), std::invalid_argument);
  CHECK_THROWS_AS(SimplicialComplex({"a", "a"}, {{"a"}}), std::invalid_argument);
  // Non-maximal listed faces are absorbed.
  const SimplicialComplex D({"a", "b", "c"}, {{"a", "b", "c"}, {"a", "b"}});
  CHECK(D.facets().size() == 1);
}

TEST_CASE("builders", "[site]") {
  CHECK(sphere(2) == SimplicialComplex::from_indices(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
  const SimplicialComplex sd = barycentric(circle(3));
  CHECK(sd.count(0) == 6);
  CHECK(sd.count(1) == 6);
  CHECK(automorphisms(sd).size() == 12);
  const SimplicialComplex TT = product(circle(3), circle(3));
  CHECK(TT.count(0) == 9);
  CHECK(TT.count(2) == 18);
  CHECK(product(simplex(1), simplex(2)).facets().size() == 3);
  CHECK(product(simplex(2), simplex(2)).facets().size() == 6);
  const SimplicialComplex K = klein();
  CHECK(K.count(0) == 9);
  CHECK(K.count(1) == 27);
  CHECK(K.count(2) == 18);
  // Closed surfaces: every edge lies in exactly two triangles.
  for (const auto& M : {torus2(), rp2(), klein()})
    for (const auto& e : M.simplices(1)) {
      const auto n = std::count_if(M.simplices(2).begin(), M.simplices(2).end(), [&](const Simplex& t) {
        return std::includes(t.begin(), t.end(), e.begin(), e.end());
      });
      CHECK(n == 2);
    }
  CHECK(named_complex("sd(circle3)").has_value());
  CHECK(named_complex("rp2xS1")->dimension() == 3);
  CHECK_FALSE(named_complex("circle2").has_value());
  CHECK_FALSE(named_complex("nonsense").has_value());
}

TEST_CASE("closed stars", "[site]") {
  const SimplicialComplex C3 = circle(3);
  const Subcomplex st = closed_star(C3, {0});
  CHECK(star_simplices(C3, st) == std::set<Simplex>{{0}, {1}, {2}, {0, 1}, {0, 2}});
  const SimplicialComplex T = torus2();
  for (int v = 0; v < 7; ++v) CHECK(closed_star(T, {v}).count(2) == 6);
  const Subcomplex facet_star = closed_star(T, T.facets()[0]);
  CHECK(facet_star.count(2) == 1);
  CHECK(facet_star.count(0) == 3);
  CHECK(closed_star(circle(4), {0, 2}).empty());

  for (const auto& M : test_set())
    for (int p = 0; p <= M.dimension(); ++p)
      for (const auto& tau : M.simplices(p)) {
        const Subcomplex S = closed_star(M, tau);
        // {σ : σ ∪ τ ∈ M} is the simplex set of St(τ).
        std::set<Simplex> joinable;
        for (int q = 0; q <= M.dimension(); ++q)
          for (const auto& s : M.simplices(q)) {
            Simplex u;
            std::set_union(s.begin(), s.end(), tau.begin(), tau.end(), std::back_inserter(u));
            if (M.contains(u)) joinable.insert(s);
          }
        CHECK(joinable == star_simplices(M, S));
        // Larger simplices have smaller stars.
        for (std::size_t k = 0; k < tau.size() && tau.size() > 1; ++k) {
          Simplex face = tau;
          face.erase(face.begin() + static_cast<long>(k));
          CHECK(S.is_subset_of(closed_star(M, face)));
        }
      }
}

TEST_CASE("cochain complexes", "[site]") {
  const SimplicialComplex I = simplex(1);
  const IntMatrix d0 = coboundary(I, whole(I), 0);
  // δ(indicator of vertex 0) = -[01], δ(indicator of vertex 1) = +[01].
  CHECK(d0.at(0, 0) == -1);
  CHECK(d0.at(0, 1) == 1);

  for (const auto& M : test_set()) {
    const Subcomplex all = whole(M);
    for (int p = 0; p + 2 <= M.dimension(); ++p)
      CHECK((coboundary(M, all, p + 1) * coboundary(M, all, p)).is_zero());
    for (int p = 0; p <= M.dimension(); ++p) CHECK(coboundary(M, all, p) == oracle_coboundary(M, p));
    CHECK(simplicial_cohomology(M, Coeff::Z, 0) == MixedGroup::free(1));
    CHECK(simplicial_cohomology(M, Coeff::Q, 0) == MixedGroup::rational(1));
    // Restriction to a star commutes with the coboundary.
    const Subcomplex S = closed_star(M, {0});
    for (int p = 0; p < M.dimension(); ++p)
      CHECK(restriction(all, S, p + 1) * coboundary(M, all, p) == coboundary(M, S, p) * restriction(all, S, p));
  }
  CHECK(simplicial_cohomology(circle(3), Coeff::Z, 1) == MixedGroup::free(1));
  CHECK(simplicial_cohomology(rp2(), Coeff::Z, 2) == MixedGroup::with_torsion({Int(2)}));
  CHECK(simplicial_cohomology(rp2(), Coeff::Z, 1).is_zero());
  CHECK(simplicial_cohomology(rp2(), Coeff::Q, 2).is_zero());
  CHECK(simplicial_cohomology(torus2(), Coeff::Z, 1) == MixedGroup::free(2));
  CHECK(simplicial_cohomology(torus2(), Coeff::Z, 2) == MixedGroup::free(1));
  CHECK(simplicial_cohomology(klein(), Coeff::Z, 1) == MixedGroup::free(1));
  CHECK(simplicial_cohomology(klein(), Coeff::Z, 2) == MixedGroup::with_torsion({Int(2)}));
  const SimplicialComplex P = product(rp2(), circle(3));
  CHECK(simplicial_cohomology(P, Coeff::Z, 3) == MixedGroup::with_torsion({Int(2)}));
  // Künneth: H^2(RP² x S¹) = H^2(RP²) ⊕ H^1(RP²) ⊗ H^1(S¹) = Z/2.
  CHECK(simplicial_cohomology(P, Coeff::Z, 2) == MixedGroup::with_torsion({Int(2)}));
  CHECK(simplicial_cohomology(P, Coeff::Z, 1) == MixedGroup::free(1));
}

TEST_CASE("cohomology agrees with the Smith form oracle and is subdivision invariant", "[site]") {
  for (const auto& M : test_set()) {
    const SimplicialComplex sd = barycentric(M);
    for (int j = 0; j <= M.dimension(); ++j) {
      CHECK(simplicial_cohomology(M, Coeff::Z, j) == oracle_cohomology(M, j));
      CHECK(simplicial_cohomology(sd, Coeff::Z, j) == simplicial_cohomology(M, Coeff::Z, j));
      CHECK(simplicial_cohomology(sd, Coeff::Q, j) == simplicial_cohomology(M, Coeff::Q, j));
    }
  }
}

TEST_CASE("star site: Čech maps and acyclicity", "[site]") {
  for (const auto& M : test_set()) {
    const StarSite site(M);
    const int dim = M.dimension();
    for (int i = 0; i + 1 <= dim; ++i)
      for (int j = 0; j <= dim; ++j) {
        if (i + 2 <= dim) CHECK((site.cech_delta(i + 1, j) * site.cech_delta(i, j)).is_zero());
        // δ and the patchwise coboundary commute.
        if (j + 1 <= dim)
          CHECK(site.cech_delta(i, j + 1) * site.patch_coboundary(i, j) ==
                site.patch_coboundary(i + 1, j) * site.cech_delta(i, j));
      }
    // Constants over the nerve reproduce the simplicial cochains of M.
    for (int i = 0; i < dim; ++i)
      CHECK(site.cech_delta(i, 0) * site.constant_inclusion(i) ==
            site.constant_inclusion(i + 1) * coboundary(M, whole(M), i));
    for (int i = 0; i <= dim; ++i) CHECK((site.patch_coboundary(i, 0) * site.constant_inclusion(i)).is_zero());
    // Global cochains restrict to Čech cocycles.
    for (int j = 0; j <= dim; ++j) CHECK((site.cech_delta(0, j) * site.global_restriction(j)).is_zero());

    const AcyclicityReport r = star_acyclicity_check(M);
    CHECK(r.ok);
    CHECK(r.failure.empty());
  }
}

TEST_CASE("automorphism groups", "[site]") {
  CHECK(automorphisms(circle(3)).size() == 6);
  CHECK(automorphisms(simplex(2)).size() == 6);
  const auto G = automorphisms(torus2());
  REQUIRE(G.size() == 42);
  const std::set<std::vector<int>> group(G.begin(), G.end());
  for (const auto& a : G)
    for (const auto& b : G) {
      std::vector<int> ab(a.size());
      for (std::size_t v = 0; v < a.size(); ++v) ab[v] = a[static_cast<std::size_t>(b[v])];
      CHECK(group.contains(ab));
    }
  const auto [img, sign] = permute_simplex({1, 0, 2}, {0, 1});
  CHECK(img == Simplex{0, 1});
  CHECK(sign == -1);
}

TEST_CASE("complex file formats", "[site]") {
  const SimplicialComplex T = torus2();
  std::istringstream json(write_complex_json(T));
  CHECK(read_complex_json(json) == T);

  std::istringstream named(R"({"vertices":["a","b","c"],"facets":[["a","b"],["b","c"],["a","c"]]})");
  CHECK(read_complex_json(named).count(1) == 3);
  std::istringstream bad(R"({"vertices":["a"]})");
  CHECK_THROWS_AS(read_complex_json(bad), std::invalid_argument);

  std::istringstream off("OFF\n# tetrahedron\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n");
  CHECK(read_off(off) == sphere(2));
  std::istringstream truncated("OFF\n4 4 6\n0 0 0\n");
  CHECK_THROWS_AS(read_off(truncated), std::invalid_argument);
  CHECK_THROWS_AS(load_complex("/nonexistent/file.json"), std::invalid_argument);
}
