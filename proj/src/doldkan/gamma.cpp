#include "gerbe/doldkan/gamma.hpp"

#include "gerbe/homalg/homology.hpp"
#include "gerbe/homalg/submodule.hpp"

#include <stdexcept>
#include <string>

namespace gerbe {

namespace {

bool level_is_zero(const ZQComplex& C, int t) {
  const auto d = C.dims(t);
  return t < 0 || d.z + d.q == 0;
}

// Column j of a map, as a vector; Z-source columns carry a Q-part, Q-source columns do not.
ZQVector map_column(const ZQMap& m, std::size_t j, bool z_source) {
  if (z_source) return {dense_from_sparse(m.zz.col(j), m.dst_z()), dense_from_sparse(m.qz.col(j), m.dst_q())};
  return {IntVector(m.dst_z()), dense_from_sparse(m.qq.col(j), m.dst_q())};
}

}  // namespace

ZQVector GammaSimplex::component(const Surjection& phi, const ZQComplex& C) const {
  const auto it = components_.find(phi);
  return it == components_.end() ? C.zero(phi.target) : it->second;
}

void GammaSimplex::add(const Surjection& phi, const ZQVector& v) {
  if (phi.source() != level_ || !phi.is_surjective())
    throw std::invalid_argument("component index " + phi.to_string() + " is not a surjection from [" +
                                std::to_string(level_) + "]");
  if (v.is_zero()) return;
  auto [it, inserted] = components_.try_emplace(phi, v);
  if (inserted) return;
  it->second += v;
  if (it->second.is_zero()) components_.erase(it);
}

GammaSimplex& GammaSimplex::operator+=(const GammaSimplex& o) {
  if (o.level_ != level_) throw std::invalid_argument("adding simplices of different levels");
  for (const auto& [phi, v] : o.components_) add(phi, v);
  return *this;
}

GammaSimplex& GammaSimplex::operator-=(const GammaSimplex& o) {
  if (o.level_ != level_) throw std::invalid_argument("subtracting simplices of different levels");
  for (const auto& [phi, v] : o.components_) add(phi, -v);
  return *this;
}

GammaSimplex operator-(GammaSimplex a) {
  for (auto& [phi, v] : a.components_) v = -v;
  return a;
}

std::vector<std::pair<Surjection, int>> gamma_level_summands(const ZQComplex& C, int r) {
  std::vector<std::pair<Surjection, int>> out;
  for (int t = 0; t <= r; ++t) {
    if (level_is_zero(C, t)) continue;
    for (auto& phi : surjections(r, t)) out.emplace_back(std::move(phi), t);
  }
  return out;
}

GammaSimplex apply_simplicial(const ZQComplex& C, const MonotoneMap& theta, const GammaSimplex& x) {
  if (theta.target != x.level())
    throw std::invalid_argument("simplicial operator " + theta.to_string() + " applied at level " +
                                std::to_string(x.level()));
  GammaSimplex out(theta.source());
  for (const auto& [phi, v] : x.components()) {
    const int t = phi.target;
    const EpiMono em = factorize(compose(phi, theta));
    if (em.mono.is_identity())
      out.add(em.epi, v);
    else if (em.mono == MonotoneMap::face(t, 0))
      out.add(em.epi, C.d(t).apply(v));
  }
  return out;
}

GammaSimplex face(const ZQComplex& C, int i, const GammaSimplex& x) {
  return apply_simplicial(C, MonotoneMap::face(x.level(), i), x);
}

GammaSimplex degeneracy(const ZQComplex& C, int j, const GammaSimplex& x) {
  return apply_simplicial(C, MonotoneMap::degeneracy(x.level(), j), x);
}

GammaLevel gamma_level(const ZQComplex& C, int r) {
  GammaLevel L;
  L.r = r;
  for (auto& [phi, t] : gamma_level_summands(C, r)) {
    L.index.emplace(phi, L.slots.size());
    L.slots.push_back({std::move(phi), t, L.z, L.q});
    L.z += C.z_rank(t);
    L.q += C.q_dim(t);
  }
  return L;
}

ZQVector GammaLevel::flatten(const GammaSimplex& x, const ZQComplex& C) const {
  if (x.level() != r) throw std::invalid_argument("flattening a simplex of the wrong level");
  ZQVector out = ZQVector::zero(z, q);
  for (const auto& [phi, v] : x.components()) {
    const Slot& s = slots[index.at(phi)];
    if (v.z.size() != C.z_rank(s.t) || v.q.size() != C.q_dim(s.t))
      throw std::invalid_argument("component size does not match its level");
    for (std::size_t i = 0; i < v.z.size(); ++i) out.z[s.z_offset + i] = v.z[i];
    for (std::size_t i = 0; i < v.q.size(); ++i) out.q[s.q_offset + i] = v.q[i];
  }
  return out;
}

GammaSimplex GammaLevel::unflatten(const ZQVector& v) const {
  GammaSimplex x(r);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Slot& s = slots[k];
    const std::size_t zend = k + 1 < slots.size() ? slots[k + 1].z_offset : z;
    const std::size_t qend = k + 1 < slots.size() ? slots[k + 1].q_offset : q;
    ZQVector c{IntVector(v.z.begin() + static_cast<long>(s.z_offset), v.z.begin() + static_cast<long>(zend)),
               QVector(v.q.begin() + static_cast<long>(s.q_offset), v.q.begin() + static_cast<long>(qend))};
    x.add(s.phi, c);
  }
  return x;
}

ZQMap simplicial_matrix(const ZQComplex& C, const MonotoneMap& theta) {
  const GammaLevel src = gamma_level(C, theta.target);
  const GammaLevel dst = gamma_level(C, theta.source());
  MatrixBuilder<Int> zz(dst.z, src.z);
  MatrixBuilder<Rat> qz(dst.q, src.z), qq(dst.q, src.q);
  for (const auto& s : src.slots) {
    const EpiMono em = factorize(compose(s.phi, theta));
    if (em.mono.is_identity()) {
      const auto& d = dst.slots[dst.index.at(em.epi)];
      for (std::size_t i = 0; i < C.z_rank(s.t); ++i) zz.add(d.z_offset + i, s.z_offset + i, Int(1));
      for (std::size_t i = 0; i < C.q_dim(s.t); ++i) qq.add(d.q_offset + i, s.q_offset + i, Rat(1));
    } else if (em.mono == MonotoneMap::face(s.t, 0)) {
      const auto it = dst.index.find(em.epi);
      if (it == dst.index.end()) continue;  // C_{t-1} = 0
      const auto& d = dst.slots[it->second];
      const ZQMap dt = C.d(s.t);
      for (std::size_t j = 0; j < dt.src_z(); ++j) {
        for (const auto& e : dt.zz.col(j)) zz.add(d.z_offset + e.index, s.z_offset + j, e.value);
        for (const auto& e : dt.qz.col(j)) qz.add(d.q_offset + e.index, s.z_offset + j, e.value);
      }
      for (std::size_t j = 0; j < dt.src_q(); ++j)
        for (const auto& e : dt.qq.col(j)) qq.add(d.q_offset + e.index, s.q_offset + j, e.value);
    }
  }
  return {zz.build(), qz.build(), qq.build()};
}

ZQComplex normalized_chains(const ZQComplex& C) {
  const int lo = std::max(0, C.lowest());
  const int hi = C.highest();
  if (C.empty() || hi < lo) return {};
  std::vector<MixedSubmodule> N;
  std::vector<ZQComplex::Dims> dims;
  for (int r = lo; r <= hi; ++r) {
    const GammaLevel L = gamma_level(C, r);
    if (r == 0) {
      N.push_back(MixedSubmodule::full(L.z, L.q));
    } else {
      ZQMap faces = simplicial_matrix(C, MonotoneMap::face(r, 1));
      for (int i = 2; i <= r; ++i) faces = stack_targets(faces, simplicial_matrix(C, MonotoneMap::face(r, i)));
      N.push_back(mixed_kernel(faces));
    }
    dims.push_back({N.back().z_rank(), N.back().q_dim()});
  }
  ZQComplex out(lo, dims);
  for (int r = lo + 1; r <= hi; ++r) {
    const MixedSubmodule& src = N[static_cast<std::size_t>(r - lo)];
    const MixedSubmodule& dst = N[static_cast<std::size_t>(r - 1 - lo)];
    const ZQMap d0 = compose(simplicial_matrix(C, MonotoneMap::face(r, 0)), src.embedding());
    MatrixBuilder<Int> zz(dst.z_rank(), src.z_rank());
    MatrixBuilder<Rat> qz(dst.q_dim(), src.z_rank()), qq(dst.q_dim(), src.q_dim());
    for (std::size_t j = 0; j < src.z_rank(); ++j) {
      const ZQVector c = dst.coordinates(map_column(d0, j, true));
      for (std::size_t i = 0; i < c.z.size(); ++i) zz.add(i, j, c.z[i]);
      for (std::size_t i = 0; i < c.q.size(); ++i) qz.add(i, j, c.q[i]);
    }
    for (std::size_t j = 0; j < src.q_dim(); ++j) {
      const ZQVector c = dst.coordinates(map_column(d0, j, false));
      for (std::size_t i = 0; i < c.q.size(); ++i) qq.add(i, j, c.q[i]);
    }
    out.set_d(r, {zz.build(), qz.build(), qq.build()});
  }
  return out;
}

void check_horn(const ZQComplex& C, const Horn& horn) {
  const int n = horn.dim, k = horn.missing;
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("horn index out of range");
  for (int i = 0; i <= n; ++i) {
    if (i == k) {
      if (horn.faces.contains(i)) throw std::invalid_argument("horn supplies its missing face");
      continue;
    }
    const auto it = horn.faces.find(i);
    if (it == horn.faces.end()) throw std::invalid_argument("horn is missing face " + std::to_string(i));
    if (it->second.level() != n - 1) throw std::invalid_argument("horn face " + std::to_string(i) + " has the wrong level");
  }
  for (const auto& [j, yj] : horn.faces)
    for (const auto& [i, yi] : horn.faces) {
      if (i >= j) break;
      if (!(face(C, i, yj) == face(C, j - 1, yi)))
        throw std::domain_error("horn violates d_" + std::to_string(i) + " y_" + std::to_string(j) + " = d_" +
                                std::to_string(j - 1) + " y_" + std::to_string(i));
    }
}

GammaSimplex horn_filler(const ZQComplex& C, const Horn& horn) {
  check_horn(C, horn);
  const int n = horn.dim, k = horn.missing;
  GammaSimplex u(n);
  for (int r = 0; r < k; ++r)
    u += degeneracy(C, r, horn.faces.at(r) - face(C, r, u));
  for (int r = n; r > k; --r)
    u += degeneracy(C, r - 1, horn.faces.at(r) - face(C, r, u));
  for (const auto& [i, y] : horn.faces)
    if (!(face(C, i, u) == y)) throw std::logic_error("horn filler misses face " + std::to_string(i));
  return u;
}

MixedGroup homotopy_group(const ZQComplex& C, int i) { return homology(normalized_chains(C), i); }

GammaSimplex random_simplex(std::mt19937_64& rng, const ZQComplex& C, int r, int max_entry) {
  std::uniform_int_distribution<int> entry(-max_entry, max_entry), coin(0, 1);
  GammaSimplex x(r);
  for (const auto& [phi, t] : gamma_level_summands(C, r)) {
    if (coin(rng) == 0) continue;
    ZQVector v = C.zero(t);
    for (auto& e : v.z) e = entry(rng);
    for (auto& e : v.q) e = make_rat(entry(rng), 2);
    x.add(phi, v);
  }
  return x;
}

Horn random_horn(std::mt19937_64& rng, const ZQComplex& C, int dim, int missing) {
  const GammaSimplex x = random_simplex(rng, C, dim);
  Horn h{dim, missing, {}};
  for (int i = 0; i <= dim; ++i)
    if (i != missing) h.faces.emplace(i, face(C, i, x));
  return h;
}

}  // namespace gerbe
