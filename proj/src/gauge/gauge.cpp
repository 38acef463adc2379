#include "gerbe/gauge/gauge.hpp"

#include "gerbe/deligne/io.hpp"
#include "gerbe/homalg/homology.hpp"

#include <stdexcept>

namespace gerbe {

GaugeChain GaugeChain::zero(const DeligneComplex& C) { return from_components(C.pars(), C.zero_components(1)); }

GaugeChain GaugeChain::from_components(const DelignePars& base, RowComponents y) {
  return {base, std::move(y.z), std::move(y.forms)};
}

bool is_gauge_cycle(const DeligneComplex& C, const GaugeChain& Y) {
  if (Y.base != C.pars()) return false;
  return C.total().complex.d(1).apply(C.pack(1, Y.components())).is_zero();
}

RowComponents section_s(const DeligneComplex& A, const DeligneComplex& C, int t, const RowComponents& y) {
  if (A.pars().n != C.pars().n || C.pars().top() > A.pars().top())
    throw std::invalid_argument("no section " + C.pars().to_string() + " -> " + A.pars().to_string());
  RowComponents x = A.zero_components(t);
  x.z = y.z;
  for (std::size_t j = 0; j < y.forms.size(); ++j) x.forms[j] = y.forms[j];
  return x;
}

DeligneCocycle gauge_act(const StarSite& site, const DeligneCocycle& X, const GaugeChain& Y) {
  const DeligneComplex A(site, X.pars), C(site, Y.base);
  if (!is_gauge_cycle(C, Y)) throw std::invalid_argument("gauge chain is not a cycle");
  const ZQVector shift = A.total().complex.d(1).apply(A.pack(1, section_s(A, C, 1, Y.components())));
  return DeligneCocycle::from_components(X.pars, A.unpack(0, A.pack(0, X.components()) + shift));
}

FiberComplex::FiberComplex(const StarSite& site, const DelignePars& pars, int l)
    : A_(site, pars), C_(site, {pars.n, l, false}), l_(l) {
  if (l < 0 || l > pars.top())
    throw std::invalid_argument("fiber level out of range");
  const ZQComplex& X = A_.total().complex;
  const ZQComplex& Y = C_.total().complex;
  const ChainMap p = projection_map(A_, C_);
  for (int t = X.lowest(); t <= 1; ++t) {
    const ZQMap pt = p.at(t, X, Y);
    subs_.emplace(t, mixed_kernel(t == 1 ? compose(Y.d(1), pt) : pt));
  }
  E_ = subcomplex(X, subs_);
  truncated_ = truncate_nonneg(E_);
}

const MixedSubmodule* FiberComplex::submodule(int t) const {
  const auto it = subs_.find(t);
  return it == subs_.end() ? nullptr : &it->second;
}

ZQVector FiberComplex::embed(int t, const ZQVector& e) const {
  const MixedSubmodule* s = submodule(t);
  return s ? s->embedding().apply(e) : e;
}

ZQVector FiberComplex::coordinates(int t, const ZQVector& x) const {
  const MixedSubmodule* s = submodule(t);
  return s ? s->coordinates(x) : x;
}

std::optional<GaugeWitness> are_gauge_equivalent(const StarSite& site, const DeligneCocycle& X,
                                                 const DeligneCocycle& Xp, int l) {
  if (X.pars != Xp.pars) throw std::invalid_argument("cocycles at different connection levels");
  if (projection_p(X, l) != projection_p(Xp, l))
    throw std::invalid_argument("cocycles extend different data at level " + std::to_string(l));
  if (X == Xp) {
    const DeligneComplex A(site, X.pars), C(site, {X.pars.n, l, false});
    return GaugeWitness{GaugeChain::zero(C), A.zero_components(1)};
  }
  const FiberComplex E(site, X.pars, l);
  const DeligneComplex& A = E.source();
  const ZQVector delta = A.pack(0, Xp.components()) - A.pack(0, X.components());
  const Homology H0(E.complex(), 0);
  const auto pre = H0.boundary_preimage(E.coordinates(0, delta));
  if (!pre) return std::nullopt;
  const ZQVector w = E.embed(1, *pre);
  const ZQVector y = projection_map(A, E.base()).at(1, A.total().complex, E.base().total().complex).apply(w);
  return GaugeWitness{GaugeChain::from_components(E.base().pars(), E.base().unpack(1, y)), A.unpack(1, w)};
}

bool check_witness(const StarSite& site, const DeligneCocycle& X, const DeligneCocycle& Xp, const GaugeWitness& w) {
  const DeligneComplex A(site, X.pars), C(site, w.chain.base);
  if (!is_gauge_cycle(C, w.chain)) return false;
  const ZQVector W = A.pack(1, w.w);
  const ZQVector y = projection_map(A, C).at(1, A.total().complex, C.total().complex).apply(W);
  if (y != C.pack(1, w.chain.components())) return false;
  return A.pack(0, X.components()) + A.total().complex.d(1).apply(W) == A.pack(0, Xp.components());
}

GaugeChain random_gauge_chain(std::mt19937& rng, const DeligneComplex& C) {
  const ZQComplex& Y = C.total().complex;
  const MixedSubmodule Z1 = mixed_kernel(Y.d(1));
  std::uniform_int_distribution<int> coef(-2, 2);
  ZQVector c = ZQVector::zero(Z1.z_rank(), Z1.q_dim());
  for (auto& v : c.z) v = coef(rng);
  for (auto& v : c.q) v = make_rat(coef(rng), 2);
  return GaugeChain::from_components(C.pars(), C.unpack(1, Z1.embedding().apply(c)));
}

AutReport aut_pi(const StarSite& site, const DelignePars& pars, int i) {
  AutReport r{gerbe_pi(site, pars, i + 1), std::nullopt};
  if (pars.n >= 1) {
    // Level l > n is beyond a full connection for (n-1)-gerbes, which means flat.
    const DelignePars down =
        pars.top() > pars.n ? DelignePars::flat_marker(pars.n - 1) : DelignePars{pars.n - 1, pars.k, false};
    r.delooped = gerbe_pi(site, down, i);
  }
  return r;
}

nlohmann::json gauge_chain_to_json(const StarSite& site, const GaugeChain& Y) {
  const int n = Y.base.n;
  nlohmann::json out;
  out["n"] = n;
  if (Y.base.flat)
    out["flat"] = true;
  else
    out["l"] = Y.base.k;
  out["h"] = integer_cochain_to_json(site.base(), n + 1, Y.h);
  out["a"] = nlohmann::json::array();
  for (std::size_t j = 0; j < Y.a.size(); ++j)
    out["a"].push_back(patch_cochain_to_json(site, n - static_cast<int>(j), static_cast<int>(j), Y.a[j]));
  return out;
}

GaugeChain gauge_chain_from_json(const StarSite& site, const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const DelignePars base =
        j.value("flat", false) ? DelignePars::flat_marker(n) : DelignePars{n, j.at("l").get<int>(), false};
    base.validate();
    GaugeChain Y{base, integer_cochain_from_json(site.base(), n + 1, j.value("h", nlohmann::json::object())), {}};
    const auto& a = j.at("a");
    if (!a.is_array() || a.size() != static_cast<std::size_t>(base.top() + 1))
      throw std::invalid_argument("\"a\" must list a_0 ... a_" + std::to_string(base.top()));
    for (int q = 0; q <= base.top(); ++q)
      Y.a.push_back(patch_cochain_from_json(site, n - q, q, a[static_cast<std::size_t>(q)]));
    return Y;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed gauge chain JSON: ") + e.what());
  }
}

}  // namespace gerbe
