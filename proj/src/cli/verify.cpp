#include "gerbe/cli/verify.hpp"

#include "gerbe/courant/courant.hpp"
#include "gerbe/doldkan/gamma.hpp"
#include "gerbe/homalg/random.hpp"
#include "gerbe/moduli/moduli.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gerbe {

namespace {

// Collects the first failure of a battery item.
class Checker {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++cases_;
    if (!ok && first_.empty()) first_ = what();
  }
  bool ok() const { return first_.empty(); }
  std::string detail() const { return ok() ? std::to_string(cases_) + " cases" : first_; }

 private:
  std::size_t cases_ = 0;
  std::string first_;
};

std::vector<std::pair<std::string, SimplicialComplex>> test_set() {
  return {{"circle3", circle(3)}, {"sphere2", sphere(2)}, {"torus2", torus2()}, {"rp2", rp2()}, {"klein", klein()}};
}

std::string show(const MixedGroup& g) { return g.to_string(); }

ZQComplex random_nonneg(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> levels(1, 4);
  return random_complex(rng, {.lowest = 0, .levels = levels(rng), .max_z = 3, .max_q = 3, .max_entry = 3});
}

Checker dold_kan_round_trip(std::uint32_t seed) {
  Checker c;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 50; ++trial) {
    const ZQComplex C = random_nonneg(rng);
    c.check(normalized_chains(C) == C, [&] { return "N(ΓC) differs from C in trial " + std::to_string(trial); });
    for (int n = 1; n <= 5; ++n) {
      const GammaSimplex x = random_simplex(rng, C, n);
      auto where = [&](const char* rule) {
        return std::string(rule) + " fails at level " + std::to_string(n) + " in trial " + std::to_string(trial);
      };
      for (int j = 1; j <= n && n >= 2; ++j)
        for (int i = 0; i < j; ++i)
          c.check(face(C, i, face(C, j, x)) == face(C, j - 1, face(C, i, x)), [&] { return where("d_i d_j = d_{j-1} d_i"); });
      for (int j = 0; j <= n; ++j) {
        const GammaSimplex sx = degeneracy(C, j, x);
        c.check(face(C, j, sx) == x && face(C, j + 1, sx) == x, [&] { return where("d_j s_j = d_{j+1} s_j = id"); });
        for (int i = 0; i < j; ++i)
          c.check(face(C, i, sx) == degeneracy(C, j - 1, face(C, i, x)), [&] { return where("d_i s_j = s_{j-1} d_i"); });
        for (int i = j + 2; i <= n + 1; ++i)
          c.check(face(C, i, sx) == degeneracy(C, j, face(C, i - 1, x)), [&] { return where("d_i s_j = s_j d_{i-1}"); });
        for (int i = 0; i <= j; ++i)
          c.check(degeneracy(C, i, sx) == degeneracy(C, j + 1, degeneracy(C, i, x)),
                  [&] { return where("s_i s_j = s_{j+1} s_i"); });
      }
    }
  }
  return c;
}

Checker kan_property(std::uint32_t seed) {
  Checker c;
  std::mt19937_64 rng(seed + 1);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const ZQComplex C = random_nonneg(rng);
    const int n = dim(rng);
    const int k = std::uniform_int_distribution<int>(0, n)(rng);
    const Horn h = random_horn(rng, C, n, k);
    const GammaSimplex u = horn_filler(C, h);
    for (const auto& [i, y] : h.faces)
      c.check(face(C, i, u) == y, [&] {
        return "filler face " + std::to_string(i) + " of Λ^" + std::to_string(n) + "_" + std::to_string(k) +
               " differs in trial " + std::to_string(trial);
      });
  }
  return c;
}

Checker pi0_classification() {
  Checker c;
  for (const auto& [name, M] : test_set()) {
    const StarSite site(M);
    for (int n = 0; n <= 2; ++n)
      for (int k = 0; k <= n; ++k) {
        const MixedGroup got = gerbe_pi(site, {n, k, false}, 0);
        const MixedGroup want = simplicial_cohomology(M, Coeff::Z, n + 2);
        c.check(got == want && class_comparison(site, {n, k, false}, 0).map.iso(), [&] {
          return name + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + "): π_0 = " + show(got) +
                 ", H^" + std::to_string(n + 2) + "(M;Z) = " + show(want);
        });
      }
  }
  return c;
}

Checker kappa_iso() {
  Checker c;
  for (const auto& [name, M] : test_set()) {
    const StarSite site(M);
    for (int n = 0; n <= 2; ++n) {
      const DelignePars pars{n, n + 1, false};
      c.check(class_comparison(site, pars, 0).map.surjective,
              [&] { return name + " n=" + std::to_string(n) + ": π_0 comparison is not surjective"; });
      for (int i = 1; i <= n + 2; ++i) {
        const MixedGroup got = gerbe_pi(site, pars, i);
        const MixedGroup want = simplicial_cohomology(M, Coeff::Z, n + 2 - i);
        c.check(got == want, [&] {
          return name + " (n=" + std::to_string(n) + ", full) π_" + std::to_string(i) + " = " + show(got) + ", H^" +
                 std::to_string(n + 2 - i) + "(M;Z) = " + show(want);
        });
      }
    }
  }
  return c;
}

Checker top_level_failure() {
  Checker c;
  const ProjectionReport r = pi0_projection_check(StarSite(circle(3)), 0, 1, 0);
  c.check(r.map.surjective && !r.map.injective && r.map.kernel == MixedGroup::torus(1),
          [&] { return "circle3 (n=0) p^1_0 on π_0: " + r.to_string(); });
  return c;
}

Checker refinement() {
  Checker c;
  for (const auto& [name, M] : {std::pair{std::string("circle3"), circle(3)}, std::pair{std::string("sphere2"), sphere(2)}}) {
    const StarSite coarse(M), fine(barycentric(M));
    for (int n = 0; n <= 1; ++n)
      for (int k = 0; k <= n + 1; ++k)
        for (int i = 0; i <= n + 2; ++i) {
          const MixedGroup a = gerbe_pi(coarse, {n, k, false}, i), b = gerbe_pi(fine, {n, k, false}, i);
          c.check(a == b, [&] {
            return name + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ") π_" + std::to_string(i) + ": " +
                   show(a) + " vs " + show(b) + " after subdivision";
          });
        }
  }
  return c;
}

Checker gauge_soundness(std::uint32_t seed) {
  Checker c;
  std::mt19937 rng(seed + 7);
  const StarSite sites[] = {StarSite(torus2()), StarSite(rp2())};
  const char* names[] = {"torus2", "rp2"};
  for (int pair = 0; pair < 100; ++pair) {
    const StarSite& site = sites[pair % 2];
    const int n = std::uniform_int_distribution<int>(0, 2)(rng);
    const int k = std::uniform_int_distribution<int>(0, n + 1)(rng);
    const int l = std::uniform_int_distribution<int>(0, k)(rng);
    const DeligneCocycle X = cocycle_from_class(site, {n, k, false}, random_class(rng, site, n));
    const GaugeChain Y = random_gauge_chain(rng, DeligneComplex(site, {n, l, false}));
    const DeligneCocycle Xy = gauge_act(site, X, Y);
    auto where = [&](const std::string& what) {
      return std::string(names[pair % 2]) + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) +
             ", l=" + std::to_string(l) + "): " + what;
    };
    const CocycleReport v = validate_cocycle(site, Xy);
    c.check(v.ok, [&] { return where(v.message()); });
    c.check(projection_p(Xy, l) == projection_p(X, l), [&] { return where("the l-truncation moved"); });
    const auto w = are_gauge_equivalent(site, X, Xy, l);
    c.check(w && check_witness(site, X, Xy, *w), [&] { return where("no gauge witness"); });
    DeligneCocycle expect = X;
    if (l < k) {
      const QVector da = site.patch_coboundary(n - l, l).cast<Rat>().apply(Y.a[static_cast<std::size_t>(l)]);
      auto& slot = expect.A[static_cast<std::size_t>(l + 1)];
      for (std::size_t r = 0; r < slot.size(); ++r) slot[r] += ((n - l) % 2 == 0 ? 1 : -1) * da[r];
    }
    c.check(Xy == expect, [&] { return where("A_{l+1} + (-1)^{n-l} d a_l is not reproduced"); });
  }
  return c;
}

Checker moduli_equivalence(std::uint32_t seed) {
  Checker c;
  std::mt19937 rng(seed + 8);
  for (const auto& [name, M] : test_set()) {
    const StarSite site(M);
    for (int n = 0; n <= 2; ++n)
      for (const bool flat : {false, true}) {
        const DelignePars target = flat ? DelignePars::flat_marker(n) : DelignePars{n, n + 1, false};
        const DeligneCocycle G = cocycle_from_class(site, {n, 0, false}, random_class(rng, site, n, flat));
        for (int l = 0; l <= n; ++l)
          for (int lp = l + 1; lp <= n; ++lp) {
            const EquivalenceReport e = equivalence_check(site, G, target, l, lp);
            c.check(e.equivalent, [&] {
              return name + " " + target.to_string() + ": l=" + std::to_string(l) + " vs l'=" + std::to_string(lp);
            });
          }
      }
  }
  return c;
}

Checker flat_moduli() {
  Checker c;
  auto flat0 = [](const StarSite& site, int n) {
    return moduli_pi(site, DeligneCocycle::zero(site, {n, 0, false}), DelignePars::flat_marker(n)).pi.at(0);
  };
  const MixedGroup a = flat0(StarSite(circle(3)), 0), b = flat0(StarSite(torus2()), 1);
  c.check(a == MixedGroup::torus(1), [&] { return "circle3 n=0: " + show(a); });
  c.check(b == MixedGroup::torus(1), [&] { return "torus2 n=1: " + show(b); });
  for (const auto& [name, M] : test_set()) {
    const StarSite site(M);
    for (int n = 0; n <= 2; ++n) {
      // coker(H^{n+1}(M;Z) -> H^{n+1}(M;Q)) ⊕ torsion H^{n+1}(M;Z)
      const MixedGroup h = simplicial_cohomology(M, Coeff::Z, n + 1);
      MixedGroup want = torsion_part(h);
      want.torus_rank = h.free_rank;
      const MixedGroup got = flat0(site, n);
      c.check(got == want,
              [&] { return name + " n=" + std::to_string(n) + ": " + show(got) + ", formula " + show(want); });
    }
  }
  return c;
}

Checker aut_delooping() {
  Checker c;
  for (const auto& [name, M] : test_set()) {
    const StarSite site(M);
    for (int n = 1; n <= 2; ++n)
      for (int l = 0; l <= n; ++l)
        for (int i = 0; i <= n + 1; ++i) {
          const MixedGroup got = aut_pi(site, {n, l, false}, i).group;
          const MixedGroup want = gerbe_pi(site, {n - 1, l, false}, i);
          c.check(got == want, [&] {
            return name + " (n=" + std::to_string(n) + ", l=" + std::to_string(l) + ") i=" + std::to_string(i) + ": " +
                   show(got) + " vs " + show(want);
          });
        }
  }
  return c;
}

Checker courant(std::uint32_t seed) {
  Checker c;
  auto all = test_set();
  all.emplace_back("rp2xS1", product(rp2(), circle(3)));
  for (const auto& [name, M] : all) {
    const MixedGroup got = eca_pi(StarSite(M), 0);
    const MixedGroup want = MixedGroup::rational(simplicial_cohomology(M, Coeff::Q, 3).q_dim);
    c.check(got == want, [&] { return name + ": π_0 ECA = " + show(got) + ", H^3(M;Q) = " + show(want); });
  }
  const StarSite rc(all.back().second), t2(torus2());
  const SquareReport sq = dd_severa_square(rc, seed);
  bool torsion_zero = !sq.entries.empty();
  for (const auto& e : sq.entries)
    for (const auto& x : e.severa) torsion_zero = torsion_zero && x == 0;
  c.check(sq.ok() && torsion_zero, [] { return std::string("rp2xS1: the DD/Ševera square fails"); });
  c.check(dd_severa_square(t2, seed).ok(), [] { return std::string("torus2: the DD/Ševera square fails"); });
  std::mt19937 rng(seed + 11);
  for (int g = 0; g < 20; ++g) {
    const StarSite& site = g % 2 ? rc : t2;
    const DeligneCocycle X = cocycle_from_class(site, {1, 1, false}, random_class(rng, site, 1));
    c.check(splittings_vs_curvings(site, X).ok, [&] { return "splittings differ from curvings for gerbe " + std::to_string(g); });
  }
  return c;
}

Checker symmetry_extension() {
  Checker c;
  const StarSite t2(torus2());
  const IntVector gen = class_homology(t2, 0).free_generators().at(0).z;
  const auto all = symmetries(t2.base());
  const auto H = diff_preserving_class(t2, cocycle_from_class(t2, {0, 0, false}, gen));
  c.check(all.size() == 42 && 2 * H.size() == all.size(), [&] {
    return "torus2: " + std::to_string(H.size()) + " of " + std::to_string(all.size()) +
           " symmetries preserve the generator class, expected index 2";
  });
  const StarSite c3(circle(3));
  c.check(sym_pi0(c3, DeligneCocycle::zero(c3, {0, 0, false}), symmetries(c3.base())).ok(),
          [] { return std::string("circle3: fibers are not torsors"); });
  const StarSite p2(rp2());
  const DeligneCocycle T = cocycle_from_class(p2, {0, 0, false}, class_homology(p2, 0).torsion_generators().at(0).z);
  const auto HT = diff_preserving_class(p2, T);
  c.check(sym_pi0(p2, T, HT).ok(), [] { return std::string("rp2: fibers are not torsors"); });
  return c;
}

struct Item {
  std::string title;
  std::string module;
  double limit;
  std::function<Checker(std::uint32_t)> run;
};

const std::map<int, Item>& items() {
  static const std::map<int, Item> table = {
      {1, {"Dold-Kan round trip", "doldkan", 10, dold_kan_round_trip}},
      {2, {"Kan property", "doldkan", 10, kan_property}},
      {3, {"π_0 classification", "deligne", 120, [](std::uint32_t) { return pi0_classification(); }}},
      {4, {"κ-isomorphism", "deligne", 120, [](std::uint32_t) { return kappa_iso(); }}},
      {5, {"k = n+1 failure", "deligne", 5, [](std::uint32_t) { return top_level_failure(); }}},
      {6, {"refinement invariance", "deligne", 120, [](std::uint32_t) { return refinement(); }}},
      {7, {"gauge soundness", "gauge", 60, gauge_soundness}},
      {8, {"moduli equivalence", "moduli", 180, moduli_equivalence}},
      {9, {"flat moduli", "moduli", 60, [](std::uint32_t) { return flat_moduli(); }}},
      {10, {"Aut delooping", "gauge", 120, [](std::uint32_t) { return aut_delooping(); }}},
      {11, {"Courant algebroids", "courant", 120, courant}},
      {12, {"symmetry extension", "moduli", 60, [](std::uint32_t) { return symmetry_extension(); }}},
  };
  return table;
}

}  // namespace

std::vector<int> battery_ids() {
  std::vector<int> out;
  for (const auto& [id, item] : items()) out.push_back(id);
  return out;
}

std::string criterion_module(int id) {
  const auto it = items().find(id);
  if (it == items().end()) throw std::invalid_argument("unknown criterion " + std::to_string(id));
  return it->second.module;
}

CriterionResult run_criterion(int id, std::uint32_t seed) {
  const auto it = items().find(id);
  if (it == items().end()) throw std::invalid_argument("unknown criterion " + std::to_string(id));
  const Item& item = it->second;
  CriterionResult r{id, item.title, item.module, false, {}, 0, item.limit};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Checker c = item.run(seed);
    r.pass = c.ok();
    r.detail = c.detail();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.pass && r.seconds > r.limit) {
    r.pass = false;
    r.detail = "over the time budget";
  }
  return r;
}

std::vector<CriterionResult> run_battery(std::uint32_t seed, const std::string& only) {
  bool known = only.empty();
  for (const auto& [id, item] : items()) known = known || item.module == only;
  if (!known) throw std::invalid_argument("unknown module \"" + only + "\"");
  std::vector<CriterionResult> out;
  for (const auto& [id, item] : items())
    if (only.empty() || item.module == only) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_result(const CriterionResult& r, bool with_time) {
  std::ostringstream s;
  s << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.module << ": " << r.title << ' ';
  if (with_time) {
    s.setf(std::ios::fixed);
    s.precision(2);
    s << '(' << r.seconds << " s of " << r.limit << " s) ";
  }
  s << r.detail;
  return s.str();
}

}  // namespace gerbe
