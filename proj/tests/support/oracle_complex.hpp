#pragma once

// Complexes with known homology: direct sums of elementary pieces, disguised by a random
// invertible change of coordinates in every level. The expected groups come from the pieces,
// never from the library's homology routine.

#include "gerbe/homalg/complex.hpp"
#include "gerbe/homalg/mixed_group.hpp"

#include <map>
#include <random>

namespace oracle {

using namespace gerbe;

struct Piece {
  enum Kind { z, q, z_mul_z, z_to_q, z_to_zq, z_id_z, q_id_q } kind;
  int degree;  // source degree
  long m = 1;
  Rat c = 1;
};

inline MixedGroup piece_homology(const Piece& p, int i) {
  switch (p.kind) {
    case Piece::z:
      return i == p.degree ? MixedGroup::free(1) : MixedGroup{};
    case Piece::q:
      return i == p.degree ? MixedGroup::rational(1) : MixedGroup{};
    case Piece::z_mul_z:
      return i == p.degree - 1 ? MixedGroup::with_torsion({Int(p.m)}) : MixedGroup{};
    case Piece::z_to_q:
      return i == p.degree - 1 ? MixedGroup::torus(1) : MixedGroup{};
    case Piece::z_to_zq: {
      // (Z ⊕ Q) / <(m, c)> = Z/m ⊕ Q
      if (i != p.degree - 1) return {};
      MixedGroup g = MixedGroup::with_torsion({Int(p.m)});
      g.q_dim = 1;
      return g;
    }
    default:
      return {};
  }
}

struct Known {
  ZQComplex complex;
  std::map<int, MixedGroup> homology;
  // Chain isomorphism from the undisguised sum to 'complex' and its inverse.
  ZQComplex plain;
  ChainMap to_complex, from_complex;
};

// Random unimodular U with inverse, as products of elementary operations.
inline std::pair<IntMatrix, IntMatrix> random_unimodular(std::mt19937_64& rng, std::size_t n) {
  DenseInt U = DenseInt::identity(n), Ui = DenseInt::identity(n);
  if (n < 2) return {U.to_sparse(), Ui.to_sparse()};
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const Int v = c(rng);
    U.add_row(i, j, v);      // U <- E U
    Ui.add_col(j, i, -v);    // Ui <- Ui E^{-1}
  }
  return {U.to_sparse(), Ui.to_sparse()};
}

inline std::pair<QMatrix, QMatrix> random_invertible(std::mt19937_64& rng, std::size_t n) {
  DenseQ Q = DenseQ::identity(n), Qi = DenseQ::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> c(-2, 2);
  for (int k = 0; k < 3 * static_cast<int>(n); ++k) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) {
      Q.negate_row(i);
      Qi.negate_col(i);
      continue;
    }
    const Rat v = make_rat(c(rng), 2);
    Q.add_row(i, j, v);
    Qi.add_col(j, i, -v);
  }
  return {Q.to_sparse(), Qi.to_sparse()};
}

inline Known random_known(std::mt19937_64& rng, int lowest, int levels, int pieces) {
  std::uniform_int_distribution<int> kind(0, 6), deg(lowest, lowest + levels - 1), mul(2, 6), num(-3, 3);
  std::vector<Piece> ps;
  for (int k = 0; k < pieces; ++k) {
    Piece p{static_cast<Piece::Kind>(kind(rng)), deg(rng)};
    const bool two_term = p.kind != Piece::z && p.kind != Piece::q;
    if (two_term && p.degree == lowest) p.degree = lowest + 1;
    if (two_term && levels < 2) p.kind = Piece::z;
    p.m = mul(rng);
    int n = 0;
    while (n == 0) n = num(rng);
    p.c = make_rat(n, mul(rng));
    ps.push_back(p);
  }
  std::vector<ZQComplex::Dims> dims(static_cast<std::size_t>(levels));
  auto at = [&](int t) -> ZQComplex::Dims& { return dims[static_cast<std::size_t>(t - lowest)]; };
  struct Slot {
    std::size_t z0, q0, z1, q1;
  };
  std::vector<Slot> slots;
  for (const auto& p : ps) {
    Slot s{at(p.degree).z, at(p.degree).q, 0, 0};
    if (p.degree > lowest) s.z1 = at(p.degree - 1).z, s.q1 = at(p.degree - 1).q;
    switch (p.kind) {
      case Piece::z: at(p.degree).z++; break;
      case Piece::q: at(p.degree).q++; break;
      case Piece::z_mul_z: case Piece::z_id_z: at(p.degree).z++; at(p.degree - 1).z++; break;
      case Piece::z_to_q: at(p.degree).z++; at(p.degree - 1).q++; break;
      case Piece::z_to_zq: at(p.degree).z++; at(p.degree - 1).z++; at(p.degree - 1).q++; break;
      case Piece::q_id_q: at(p.degree).q++; at(p.degree - 1).q++; break;
    }
    slots.push_back(s);
  }
  ZQComplex plain(lowest, dims);
  std::map<int, MixedGroup> expected;
  for (int t = lowest; t < lowest + levels; ++t) {
    MixedGroup g;
    for (const auto& p : ps) g = direct_sum(g, piece_homology(p, t));
    expected[t] = g;
    if (t == lowest) continue;
    MatrixBuilder<Int> zz(at(t - 1).z, at(t).z);
    MatrixBuilder<Rat> qz(at(t - 1).q, at(t).z), qq(at(t - 1).q, at(t).q);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const Piece& p = ps[k];
      const Slot& s = slots[k];
      if (p.degree != t) continue;
      switch (p.kind) {
        case Piece::z_mul_z: zz.add(s.z1, s.z0, Int(p.m)); break;
        case Piece::z_id_z: zz.add(s.z1, s.z0, Int(1)); break;
        case Piece::z_to_q: qz.add(s.q1, s.z0, p.c); break;
        case Piece::z_to_zq: zz.add(s.z1, s.z0, Int(p.m)); qz.add(s.q1, s.z0, p.c); break;
        case Piece::q_id_q: qq.add(s.q1, s.q0, Rat(1)); break;
        default: break;
      }
    }
    plain.set_d(t, ZQMap{zz.build(), qz.build(), qq.build()});
  }

  // Change of coordinates g_t = [[U, 0], [W, Q]] with inverse [[U^-1, 0], [-Q^-1 W U^-1, Q^-1]].
  std::uniform_int_distribution<int> w(-1, 1);
  std::map<int, std::pair<ZQMap, ZQMap>> g;
  for (int t = lowest; t < lowest + levels; ++t) {
    const auto [U, Ui] = random_unimodular(rng, at(t).z);
    const auto [Q, Qi] = random_invertible(rng, at(t).q);
    MatrixBuilder<Rat> W(at(t).q, at(t).z);
    for (std::size_t i = 0; i < at(t).q; ++i)
      for (std::size_t j = 0; j < at(t).z; ++j) W.add(i, j, Rat(w(rng)));
    const QMatrix Wm = W.build();
    ZQMap fwd{U, Wm, Q};
    ZQMap inv{Ui, -(Qi * Wm * Ui.cast<Rat>()), Qi};
    g[t] = {fwd, inv};
  }
  Known out;
  out.plain = plain;
  out.complex = ZQComplex(lowest, dims);
  for (int t = lowest + 1; t < lowest + levels; ++t)
    out.complex.set_d(t, compose(g[t - 1].first, compose(plain.d(t), g[t].second)));
  for (int t = lowest; t < lowest + levels; ++t) {
    out.to_complex.components.emplace_back(t, g[t].first);
    out.from_complex.components.emplace_back(t, g[t].second);
  }
  out.homology = expected;
  return out;
}

}  // namespace oracle
