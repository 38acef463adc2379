#include "gerbe/moduli/moduli.hpp"

#include "gerbe/deligne/io.hpp"
#include "gerbe/homalg/homology.hpp"

#include <set>
#include <stdexcept>

namespace gerbe {

namespace {

// Some other extension of the same data: base plus a random element of Z_0 of the fiber.
DeligneCocycle shifted_extension(std::mt19937& rng, const FiberComplex& E, const DeligneCocycle& base) {
  const DeligneComplex& A = E.source();
  const MixedSubmodule Z0 = mixed_kernel(E.complex().d(0));
  std::uniform_int_distribution<int> coef(-2, 2);
  ZQVector c = ZQVector::zero(Z0.z_rank(), Z0.q_dim());
  for (auto& v : c.z) v = coef(rng);
  for (auto& v : c.q) v = make_rat(coef(rng), 3);
  const ZQVector x = A.pack(0, base.components()) + E.embed(0, Z0.embedding().apply(c));
  return DeligneCocycle::from_components(base.pars, A.unpack(0, x));
}

std::optional<DeligneCocycle> try_extend(const StarSite& site, const DeligneCocycle& G, const DelignePars& target) {
  try {
    return extend_cocycle(site, G, target);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

void check_target(const DeligneCocycle& G, const DelignePars& target) {
  target.validate();
  if (target.n != G.pars.n || G.pars.flat || target.top() < G.pars.k)
    throw std::invalid_argument("cannot extend " + G.pars.to_string() + " to " + target.to_string());
}

}  // namespace

ZQComplex pure_forms_complex(const DeligneComplex& A, const DeligneComplex& C) {
  const ZQComplex& X = A.total().complex;
  const ZQComplex& Y = C.total().complex;
  const ChainMap p = projection_map(A, C);
  std::map<int, MixedSubmodule> subs;
  for (int t = X.lowest(); t <= X.highest(); ++t) subs.emplace(t, mixed_kernel(p.at(t, X, Y)));
  return subcomplex(X, subs);
}

ConReport con_pi(const StarSite& site, const DeligneCocycle& G, const DelignePars& target, int i) {
  check_target(G, target);
  const DeligneComplex A(site, target), C(site, G.pars);
  ConReport r{homology(truncate_nonneg(pure_forms_complex(A, C)), i), std::nullopt};
  if (i == 0) r.basepoint = try_extend(site, G, target);
  return r;
}

ModuliReport moduli_pi(const StarSite& site, const DeligneCocycle& G, const DelignePars& target, std::uint32_t seed) {
  check_target(G, target);
  ModuliReport r;
  r.basepoint = try_extend(site, G, target);
  if (!r.basepoint) return r;
  const FiberComplex E(site, target, G.pars.k);
  for (int i = 0; i <= target.n + 2; ++i) r.pi.push_back(homology(E.truncated(), i));

  // A second extension: both must extend G, and they differ by a 0-cycle of the fiber, so the
  // based complexes at either point are translates of E.
  std::mt19937 rng(seed);
  const DeligneCocycle other = shifted_extension(rng, E, *r.basepoint);
  const ZQVector diff = E.source().pack(0, other.components()) - E.source().pack(0, r.basepoint->components());
  const MixedSubmodule* s0 = E.submodule(0);
  r.basepoint_independent = validate_cocycle(site, *r.basepoint).ok && validate_cocycle(site, other).ok &&
                            projection_p(*r.basepoint, G.pars.k) == G && projection_p(other, G.pars.k) == G &&
                            (!s0 || s0->contains(diff)) &&
                            E.complex().d(0).apply(E.coordinates(0, diff)).is_zero();
  return r;
}

EquivalenceReport equivalence_check(const StarSite& site, const DeligneCocycle& G, const DelignePars& target, int l,
                                    int lp) {
  const int n = target.n;
  if (l < 0 || lp < 0 || l > n || lp > n) throw std::invalid_argument("levels must lie in 0 ... n");
  EquivalenceReport r{l, lp, {}, {}, false};
  const auto X = try_extend(site, G, target);
  if (!X) {
    // Neither truncation extends: both moduli are empty.
    r.equivalent = true;
    return r;
  }
  r.low = moduli_pi(site, projection_p(*X, l), target);
  r.high = moduli_pi(site, projection_p(*X, lp), target);
  r.equivalent = r.low.pi == r.high.pi && r.low.basepoint_independent && r.high.basepoint_independent;
  return r;
}

nlohmann::json moduli_report_to_json(const StarSite& site, const ModuliReport& r, std::optional<bool> equivalence) {
  nlohmann::json out;
  out["pi"] = nlohmann::json::array();
  for (const auto& g : r.pi) out["pi"].push_back(g.to_string());
  out["basepoint"] = r.basepoint ? cocycle_to_json(site, *r.basepoint) : nlohmann::json(nullptr);
  if (equivalence) out["equivalence"] = *equivalence;
  return out;
}

SimplicialSymmetry SimplicialSymmetry::identity(std::size_t n) {
  SimplicialSymmetry f;
  for (std::size_t v = 0; v < n; ++v) f.image.push_back(static_cast<int>(v));
  return f;
}

bool SimplicialSymmetry::is_identity() const { return *this == identity(image.size()); }

SimplicialSymmetry compose(const SimplicialSymmetry& f, const SimplicialSymmetry& g) {
  SimplicialSymmetry h;
  for (const int v : g.image) h.image.push_back(f.image.at(static_cast<std::size_t>(v)));
  return h;
}

SimplicialSymmetry inverse(const SimplicialSymmetry& f) {
  SimplicialSymmetry h{std::vector<int>(f.image.size())};
  for (std::size_t v = 0; v < f.image.size(); ++v) h.image[static_cast<std::size_t>(f.image[v])] = static_cast<int>(v);
  return h;
}

std::vector<SimplicialSymmetry> symmetries(const SimplicialComplex& M) {
  std::vector<SimplicialSymmetry> out;
  for (auto& p : automorphisms(M)) out.push_back({std::move(p)});
  return out;
}

namespace {

void require_automorphism(const SimplicialComplex& M, const SimplicialSymmetry& f) {
  if (f.image.size() != M.vertex_count()) throw std::invalid_argument("symmetry has the wrong vertex count");
  std::set<Simplex> facets(M.facets().begin(), M.facets().end());
  for (const auto& s : M.facets())
    if (!facets.contains(permute_simplex(f.image, s).first))
      throw std::invalid_argument("vertex map is not an automorphism of the complex");
}

// Index and sign of f σ for every p-simplex σ.
std::vector<std::pair<std::size_t, int>> simplex_images(const SimplicialComplex& M, const SimplicialSymmetry& f, int p) {
  std::vector<std::pair<std::size_t, int>> out;
  for (const auto& s : M.simplices(p)) {
    const auto [t, sign] = permute_simplex(f.image, s);
    out.emplace_back(*M.index_of(t), sign);
  }
  return out;
}

template <class V>
V pull(const SimplicialComplex& M, const SimplicialSymmetry& f, int p, const V& c) {
  if (c.size() != M.count(p)) throw std::invalid_argument("cochain has the wrong size");
  V out(c.size());
  const auto img = simplex_images(M, f, p);
  for (std::size_t s = 0; s < img.size(); ++s) out[s] = img[s].second * c[img[s].first];
  return out;
}

}  // namespace

IntVector pullback_cochain(const SimplicialComplex& M, const SimplicialSymmetry& f, int p, const IntVector& c) {
  return pull(M, f, p, c);
}

QVector pullback_cochain(const SimplicialComplex& M, const SimplicialSymmetry& f, int p, const QVector& c) {
  return pull(M, f, p, c);
}

QVector pullback_patch_cochain(const StarSite& site, const SimplicialSymmetry& f, int cech, int form, const QVector& v) {
  const SimplicialComplex& M = site.base();
  if (v.size() != site.cech_dim(cech, form)) throw std::invalid_argument("patch cochain has the wrong size");
  QVector out(v.size());
  const auto tuples = simplex_images(M, f, cech);
  const auto forms = simplex_images(M, f, form);
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    const auto [s2, sign1] = tuples[s];
    const auto& cells = site.patch(cech, s).cells[static_cast<std::size_t>(form)];
    const Subcomplex& target = site.patch(cech, s2);
    for (std::size_t r = 0; r < cells.size(); ++r) {
      const auto [g2, sign2] = forms[cells[r]];
      const std::size_t r2 = *target.local_index(form, g2);
      out[site.cech_offset(cech, s, form) + r] = sign1 * sign2 * v[site.cech_offset(cech, s2, form) + r2];
    }
  }
  return out;
}

DeligneCocycle pullback_cocycle(const StarSite& site, const SimplicialSymmetry& f, const DeligneCocycle& X) {
  require_automorphism(site.base(), f);
  const int n = X.pars.n;
  DeligneCocycle Y{X.pars, pullback_cochain(site.base(), f, n + 2, X.z), {}};
  for (std::size_t j = 0; j < X.A.size(); ++j) {
    const int q = static_cast<int>(j);
    Y.A.push_back(pullback_patch_cochain(site, f, n + 1 - q, q, X.A[j]));
  }
  return Y;
}

GaugeChain pullback_gauge_chain(const StarSite& site, const SimplicialSymmetry& f, const GaugeChain& Y) {
  require_automorphism(site.base(), f);
  const int n = Y.base.n;
  GaugeChain out{Y.base, pullback_cochain(site.base(), f, n + 1, Y.h), {}};
  for (std::size_t j = 0; j < Y.a.size(); ++j) {
    const int q = static_cast<int>(j);
    out.a.push_back(n - q < 0 ? Y.a[j] : pullback_patch_cochain(site, f, n - q, q, Y.a[j]));
  }
  return out;
}

namespace {

// Some w with D w = G - f*G, or none when f*G is not isomorphic to G.
std::optional<ZQVector> identification(const DeligneComplex& A, const Homology& H0, const DeligneCocycle& G,
                                       const DeligneCocycle& fG) {
  return H0.boundary_preimage(A.pack(0, G.components()) - A.pack(0, fG.components()));
}

}  // namespace

std::vector<SimplicialSymmetry> diff_preserving_class(const StarSite& site, const DeligneCocycle& G) {
  const DeligneComplex A(site, G.pars);
  const Homology H0(A.total().complex, 0);
  std::vector<SimplicialSymmetry> out;
  for (const auto& f : symmetries(site.base()))
    if (identification(A, H0, G, pullback_cocycle(site, f, G))) out.push_back(f);
  const std::set<SimplicialSymmetry> members(out.begin(), out.end());
  for (const auto& f : out) {
    if (!members.contains(inverse(f))) throw std::logic_error("class-preserving set is not closed under inverses");
    for (const auto& g : out)
      if (!members.contains(compose(f, g)))
        throw std::logic_error("class-preserving set is not closed under composition");
  }
  return out;
}

bool SymReport::ok() const {
  if (fibers.size() != symmetries) return false;
  for (const auto& f : fibers)
    if (!f.torsor) return false;
  return true;
}

SymReport sym_pi0(const StarSite& site, const DeligneCocycle& G, const std::vector<SimplicialSymmetry>& H) {
  const DeligneComplex A(site, G.pars);
  const ZQComplex& T = A.total().complex;
  const Homology H0(T, 0), H1(T, 1);
  SymReport r{H1.group(), H.size(), std::nullopt, {}};
  if (r.aut.is_finite()) r.order = Int(static_cast<unsigned long>(H.size())) * r.aut.order();

  // One unit coordinate per generator slot; torus slots use 1/2 since 1 is trivial mod Z.
  std::vector<Homology::Coordinates> units;
  const Homology::Coordinates none{IntVector(H1.free_generators().size()), IntVector(H1.torsion_generators().size()),
                                   QVector(H1.q_generators().size()), QVector(H1.torus_generators().size())};
  for (std::size_t s = 0; s < none.free.size(); ++s) units.push_back(none), units.back().free[s] = 1;
  for (std::size_t s = 0; s < none.torsion.size(); ++s) units.push_back(none), units.back().torsion[s] = 1;
  for (std::size_t s = 0; s < none.q.size(); ++s) units.push_back(none), units.back().q[s] = 1;
  for (std::size_t s = 0; s < none.torus.size(); ++s) units.push_back(none), units.back().torus[s] = make_rat(1, 2);

  for (const auto& f : H) {
    const DeligneCocycle fG = pullback_cocycle(site, f, G);
    const auto w = identification(A, H0, G, fG);
    if (!w) throw std::invalid_argument("symmetry does not preserve the class of the gerbe");
    const ZQVector target = T.d(1).apply(*w);
    // Moving w by a cycle g keeps D w; the new identification is a different point of the fiber
    // exactly when the class of g is nonzero, and the class is recovered from the difference.
    bool torsor = true;
    for (const auto& u : units) {
      const ZQVector moved = *w + H1.representative(u);
      torsor = torsor && T.d(1).apply(moved) == target && H1.coordinates(moved - *w) == H1.canonical(u) &&
               !H1.is_boundary(moved - *w);
    }
    r.fibers.push_back({f, A.unpack(1, *w), torsor});
  }
  return r;
}

}  // namespace gerbe
