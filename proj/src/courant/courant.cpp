#include "gerbe/courant/courant.hpp"

#include "gerbe/deligne/io.hpp"
#include "gerbe/exactalg/echelon.hpp"
#include "gerbe/exactalg/modp.hpp"
#include "gerbe/homalg/homology.hpp"

#include <stdexcept>

namespace gerbe {

namespace {

QVector act(const IntMatrix& m, const QVector& x) { return m.cast<Rat>().apply(x); }

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

QVector minus(QVector a, const QVector& b) {
  for (std::size_t r = 0; r < a.size(); ++r) a[r] -= b[r];
  return a;
}

// Columns spanning the closed 2-cochains in Čech degree i.
QMatrix closed_basis(const StarSite& site, int i) {
  const std::size_t dim = site.cech_dim(i, 2);
  const QMatrix d = site.patch_coboundary(i, 2).cast<Rat>();
  if (d.rows() == 0) return QMatrix::identity(dim);
  const KernelRref k = kernel_rref(d);
  QMatrix out(dim, k.basis.size());
  for (std::size_t c = 0; c < k.basis.size(); ++c) out.set_col(c, k.basis[c]);
  return out;
}

// The global p-cochain whose restriction to every vertex star is v; throws std::logic_error if
// v is not global.
QVector global_from_stars(const StarSite& site, int p, const QVector& v) {
  const SimplicialComplex& M = site.base();
  QVector out(M.count(p));
  for (std::size_t g = 0; g < out.size(); ++g) {
    const auto vertex = static_cast<std::size_t>(M.simplices(p)[g].front());
    out[g] = v[site.cech_offset(0, vertex, p) + *site.patch(0, vertex).local_index(p, g)];
  }
  if (act(site.global_restriction(p), out) != v) throw std::logic_error("star cochains do not glue");
  return out;
}

void require_connective(const StarSite& site, const DeligneCocycle& X) {
  if (X.pars != DelignePars{1, 1, false})
    throw std::invalid_argument("expected a 1-gerbe with connective structure (n = 1, k = 1), got " +
                                X.pars.to_string());
  const CocycleReport r = validate_cocycle(site, X);
  if (!r.ok) throw std::invalid_argument(r.message());
}

}  // namespace

bool is_eca_object(const StarSite& site, const ECAObject& E) {
  if (E.F.size() != site.cech_dim(1, 2)) return false;
  return is_zero(act(site.cech_delta(1, 2), E.F)) && is_zero(act(site.patch_coboundary(1, 2), E.F));
}

bool is_eca_morphism(const StarSite& site, const ECAObject& E0, const ECAObject& E1, const ECAMorphism& m) {
  if (m.b.size() != site.cech_dim(0, 2) || !is_eca_object(site, E0) || !is_eca_object(site, E1)) return false;
  return is_zero(act(site.patch_coboundary(0, 2), m.b)) && act(site.cech_delta(0, 2), m.b) == minus(E1.F, E0.F);
}

bool is_split_object(const StarSite& site, const ECASplitObject& S) {
  if (S.B.size() != site.cech_dim(0, 2) || !is_eca_object(site, {S.F})) return false;
  return act(site.cech_delta(0, 2), S.B) == S.F;
}

std::optional<ECAMorphism> split_morphism(const StarSite& site, const ECASplitObject& S0, const ECASplitObject& S1) {
  if (!is_split_object(site, S0) || !is_split_object(site, S1)) throw std::invalid_argument("not a split object");
  const ECAMorphism m{minus(S1.B, S0.B)};
  if (!is_eca_morphism(site, {S0.F}, {S1.F}, m)) return std::nullopt;
  return m;
}

MixedGroup eca_pi(const StarSite& site, int i) {
  if (i != 0 && i != 1) throw std::invalid_argument("eca_pi is defined for i = 0, 1");
  const QMatrix K0 = closed_basis(site, 0), K1 = closed_basis(site, 1);
  const std::size_t r0 = rank_fast(site.cech_delta(0, 2).cast<Rat>() * K0);
  if (i == 1) return MixedGroup::rational(K0.cols() - r0);
  const std::size_t r1 = rank_fast(site.cech_delta(1, 2).cast<Rat>() * K1);
  return MixedGroup::rational(K1.cols() - r1 - r0);
}

ECAObject atca(const StarSite& site, const DeligneCocycle& X) {
  require_connective(site, X);
  return ECAObject{act(site.patch_coboundary(1, 1), X.A[1])};
}

QVector rational_class_3(const StarSite& site, const QVector& h) {
  const SimplicialComplex& M = site.base();
  if (M.dimension() < 3) return {};
  const Homology H(cochain_complex(M, whole(M), Coeff::Q), -3);
  return H.coordinates({IntVector{}, h}).q;
}

QVector rational_image(const StarSite& site, const IntVector& c) {
  QVector h;
  for (const auto& x : c) h.push_back(Rat(x));
  return rational_class_3(site, h);
}

SeveraClass severa_class(const StarSite& site, const ECAObject& E) {
  if (!is_eca_object(site, E)) throw std::invalid_argument("F is not δ- and d-closed");
  SeveraClass s;
  s.B = solve_cech(site, 0, 2, E.F);
  s.H = global_from_stars(site, 3, act(site.patch_coboundary(0, 2), s.B));
  QVector minus_h = s.H;
  for (auto& x : minus_h) x = -x;
  s.coordinates = rational_class_3(site, minus_h);
  return s;
}

bool SquareReport::ok() const {
  if (!additive || !kills_exactly_torsion) return false;
  for (const auto& e : entries)
    if (!e.ok) return false;
  return true;
}

SquareReport dd_severa_square(const StarSite& site, std::uint32_t seed, int pairs) {
  const Homology H = class_homology(site, 1);
  const DelignePars pars{1, 1, false};
  SquareReport r;
  std::vector<QVector> free_images;
  auto run = [&](const ZQVector& g, std::string name, bool torsion) {
    const SeveraClass s = severa_class(site, atca(site, cocycle_from_class(site, pars, g.z)));
    SquareEntry e{std::move(name), s.coordinates, rational_image(site, g.z), false};
    e.ok = e.severa == e.expected;
    if (torsion)
      r.kills_exactly_torsion = r.kills_exactly_torsion && is_zero(e.expected);
    else
      free_images.push_back(e.expected);
    r.entries.push_back(std::move(e));
  };
  for (std::size_t s = 0; s < H.free_generators().size(); ++s)
    run(H.free_generators()[s], "free " + std::to_string(s), false);
  for (std::size_t s = 0; s < H.torsion_generators().size(); ++s)
    run(H.torsion_generators()[s], "torsion " + std::to_string(s) + " (Z/" + H.torsion_orders()[s].get_str() + ")",
        true);
  if (!free_images.empty()) {
    QMatrix m(free_images.front().size(), free_images.size());
    for (std::size_t c = 0; c < free_images.size(); ++c) m.set_col(c, sparse_from_dense<Rat>(free_images[c]));
    r.kills_exactly_torsion = r.kills_exactly_torsion && rank_fast(m) == free_images.size();
  }

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto random_cocycle = [&] {
    IntVector c(site.base().count(3));
    for (const auto* gens : {&H.free_generators(), &H.torsion_generators()})
      for (const auto& g : *gens) {
        const int a = coef(rng);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] += a * g.z[k];
      }
    IntVector b(site.base().count(2));
    for (auto& v : b) v = coef(rng);
    const IntVector db = coboundary(site.base(), whole(site.base()), 2).apply(b);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += db[k];
    return cocycle_from_class(site, pars, c);
  };
  for (int p = 0; p < pairs; ++p) {
    const DeligneCocycle X = random_cocycle(), Y = random_cocycle();
    const ECAObject ex = atca(site, X), ey = atca(site, Y), exy = atca(site, X + Y);
    QVector sum = ex.F;
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += ey.F[k];
    QVector ssum = severa_class(site, ex).coordinates;
    const QVector sy = severa_class(site, ey).coordinates;
    for (std::size_t k = 0; k < ssum.size(); ++k) ssum[k] += sy[k];
    r.additive = r.additive && exy.F == sum && severa_class(site, exy).coordinates == ssum;
  }
  return r;
}

SplittingReport splittings_vs_curvings(const StarSite& site, const DeligneCocycle& X) {
  require_connective(site, X);
  const ECAObject E = atca(site, X);
  const IntMatrix delta0 = site.cech_delta(0, 2);
  SplittingReport r;
  r.curving = extend_cocycle(site, X, {1, 2, false}).A[2];
  r.splitting = solve_cech(site, 0, 2, E.F);
  r.torsor_dim = site.cech_dim(0, 2) - rank_fast(delta0.cast<Rat>());

  // The splitting is a curving and the curving is a splitting.
  DeligneCocycle curved = X;
  curved.pars = {1, 2, false};
  curved.A.push_back(r.splitting);
  const bool swap_ok = validate_cocycle(site, curved).ok && act(delta0, r.curving) == E.F;
  // Both are torsors over ker δ, which is C^2(M;Q) restricted to the stars.
  const QVector diff = minus(r.splitting, r.curving);
  const bool torsor_ok = r.torsor_dim == site.base().count(2) &&
                         rank_fast(site.global_restriction(2).cast<Rat>()) == site.base().count(2) &&
                         is_zero(act(delta0, diff));
  r.ok = swap_ok && torsor_ok && is_split_object(site, {E.F, r.splitting});
  return r;
}

nlohmann::json eca_to_json(const StarSite& site, const ECAObject& E) {
  nlohmann::json out;
  out["F"] = patch_cochain_to_json(site, 1, 2, E.F);
  return out;
}

nlohmann::json eca_to_json(const StarSite& site, const ECASplitObject& S) {
  nlohmann::json out = eca_to_json(site, ECAObject{S.F});
  out["B"] = patch_cochain_to_json(site, 0, 2, S.B);
  return out;
}

ECASplitObject eca_from_json(const StarSite& site, const nlohmann::json& j) {
  try {
    ECASplitObject S{patch_cochain_from_json(site, 1, 2, j.at("F")), {}};
    if (j.contains("B")) S.B = patch_cochain_from_json(site, 0, 2, j.at("B"));
    return S;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed ECA JSON: ") + e.what());
  }
}

}  // namespace gerbe
