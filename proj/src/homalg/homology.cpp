#include "gerbe/homalg/homology.hpp"

#include "gerbe/exactalg/normal_form.hpp"

#include <stdexcept>

namespace gerbe {

namespace {

// x + c * v for a pure-Q direction v.
void add_scaled(ZQVector& x, const Rat& c, const ZQVector& v) {
  if (c == 0) return;
  for (std::size_t i = 0; i < x.z.size(); ++i) {
    if (v.z[i] == 0) continue;
    const Rat s = c * Rat(v.z[i]);
    if (!is_integral(s)) throw std::domain_error("rational multiple of an integral generator");
    x.z[i] += s.get_num();
  }
  for (std::size_t i = 0; i < x.q.size(); ++i)
    if (v.q[i] != 0) x.q[i] += c * v.q[i];
}

IntVector dense_column(const IntMatrix& M, std::size_t j) { return dense_from_sparse(M.col(j), M.rows()); }

QMatrix columns_to_qmatrix(std::size_t rows, const std::vector<SparseVec<Rat>>& cols) {
  QMatrix M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) M.set_col(j, cols[j]);
  return M;
}

}  // namespace

Homology::Homology(const ZQComplex& X, int i)
    : degree_(i),
      a_(X.z_rank(i)),
      b_(X.q_dim(i)),
      a_next_(X.z_rank(i + 1)),
      b_next_(X.q_dim(i + 1)),
      d_out_(X.d(i)),
      d_in_(X.d(i + 1)) {
  const std::size_t b_prev = X.q_dim(i - 1);

  // --- Z-part: H_i(A) = ker A_i / im A_{i+1}.
  kz_ = integral_kernel(d_out_.zz.cast<Rat>());
  const std::size_t m = kz_.size();
  kz_coords_.emplace(a_, kz_);
  DenseInt R(m, a_next_);
  for (std::size_t j = 0; j < a_next_; ++j) {
    const auto c = kz_coords_->integral(dense_column(d_in_.zz, j));
    if (!c) throw std::domain_error("not a complex: A_i A_{i+1} != 0 at degree " + std::to_string(i));
    for (std::size_t r = 0; r < m; ++r) R(r, j) = (*c)[r];
  }
  SmithForm snf = smith_form(std::move(R));
  U_ = std::move(snf.U);
  V_ = std::move(snf.V);
  diag_.assign(m, Int(0));
  for (std::size_t j = 0; j < snf.rank; ++j) diag_[j] = snf.D(j, j);
  for (std::size_t j = 0; j < m; ++j) {
    if (j >= snf.rank)
      free_slots_.push_back(j);
    else if (diag_[j] > 1)
      torsion_slots_.push_back(j);
  }
  auto z_generator = [&](std::size_t slot) {
    IntVector g(a_);
    for (std::size_t l = 0; l < m; ++l) {
      const Int& c = snf.U_inv(l, slot);
      if (c == 0) continue;
      for (std::size_t r = 0; r < a_; ++r) g[r] += c * kz_[l][r];
    }
    return g;
  };

  // --- Q-part: H_i(C) = ker C_i / im C_{i+1} with complement basis F.
  {
    Echelon span(b_);
    for (std::size_t j = 0; j < b_next_; ++j) span.insert(d_in_.qq.col(j));
    for (auto& v : kernel_rref(d_out_.qq).basis)
      if (!span.insert(v)) f_.push_back(std::move(v));
  }
  const std::size_t s = f_.size();
  class_solver_.emplace(QMatrix::hstack(d_in_.qq, columns_to_qmatrix(b_, f_)));
  image_solver_.emplace(d_in_.qq);

  // --- Connecting lattice L = span_Z { [B_{i+1} z] : z in ker A_{i+1} } in F-coordinates.
  kz_next_ = integral_kernel(d_in_.zz.cast<Rat>());
  const std::size_t m1 = kz_next_.size();
  std::vector<QVector> N(m1);
  Int den = 1;
  for (std::size_t j = 0; j < m1; ++j) {
    N[j] = class_coordinates(d_in_.qz.apply(to_q(kz_next_[j])));
    for (const auto& x : N[j]) den = lcm_of(den, x.get_den());
  }
  DenseInt Nint(s, m1);
  for (std::size_t j = 0; j < m1; ++j)
    for (std::size_t r = 0; r < s; ++r) {
      const Rat scaled = N[j][r] * den;
      Nint(r, j) = scaled.get_num();
    }
  const HermiteForm hf = column_hermite(Nint);
  lattice_rank_ = hf.pivot_rows.size();
  QMatrix P(s, s);
  std::vector<char> is_pivot(s, 0);
  for (std::size_t k = 0; k < lattice_rank_; ++k) {
    SparseVec<Rat> e;
    for (std::size_t r = 0; r < s; ++r)
      if (hf.H(r, k) != 0) e.push_back({r, make_rat(hf.H(r, k), den)});
    P.set_col(k, std::move(e));
    is_pivot[hf.pivot_rows[k]] = 1;
    IntVector combo(m1);
    for (std::size_t j = 0; j < m1; ++j) combo[j] = hf.T(j, k);
    lattice_combo_.push_back(std::move(combo));
  }
  std::vector<std::size_t> q_rows;
  for (std::size_t r = 0, k = lattice_rank_; r < s; ++r)
    if (!is_pivot[r]) {
      P.set_col(k++, {{r, Rat(1)}});
      q_rows.push_back(r);
    }
  p_solver_.emplace(P);
  if (p_solver_->rank() != s) throw std::logic_error("homology: lattice completion is singular");

  auto f_combination = [&](const QVector& coeffs) {
    ZQVector v = ZQVector::zero(a_, b_);
    for (std::size_t r = 0; r < s; ++r) {
      if (coeffs[r] == 0) continue;
      for (const auto& e : f_[r]) v.q[e.index] += coeffs[r] * e.value;
    }
    return v;
  };
  for (std::size_t r : q_rows) {
    QVector unit(s);
    unit[r] = 1;
    q_gens_.push_back(f_combination(unit));
  }
  for (std::size_t k = 0; k < lattice_rank_; ++k) torus_gens_.push_back(f_combination(dense_from_sparse(P.col(k), s)));

  // --- Kernel of the connecting map on free Z-classes.
  std::vector<IntVector> zfree;
  for (std::size_t slot : free_slots_) zfree.push_back(z_generator(slot));
  const std::size_t r = zfree.size();
  Echelon prev_image(b_prev);
  for (std::size_t j = 0; j < b_; ++j) prev_image.insert(d_out_.qq.col(j));
  QMatrix residual(b_prev, r);
  for (std::size_t j = 0; j < r; ++j) residual.set_col(j, prev_image.reduce(d_out_.qz.apply_sparse(sparse_q(zfree[j]))));
  kk_ = integral_kernel(residual);
  kk_coords_.emplace(r, kk_);
  const ColumnSolver out_solver(d_out_.qq);
  for (const auto& lambda : kk_) {
    IntVector z(a_);
    for (std::size_t j = 0; j < r; ++j)
      if (lambda[j] != 0)
        for (std::size_t t = 0; t < a_; ++t) z[t] += lambda[j] * zfree[j][t];
    QVector rhs = d_out_.qz.apply(to_q(z));
    for (auto& x : rhs) x = -x;
    const auto w = out_solver.solve(rhs);
    if (!w) throw std::logic_error("homology: kernel class without a lift");
    free_gens_.push_back({std::move(z), *w});
  }
  // Torsion lifts (G, B_{i+1} y / m) with m G = A_{i+1} y have exact order m.
  for (std::size_t slot : torsion_slots_) {
    IntVector y(a_next_);
    for (std::size_t t = 0; t < a_next_; ++t) y[t] = V_(t, slot);
    QVector w = d_in_.qz.apply(to_q(y));
    for (auto& x : w) x /= diag_[slot];
    torsion_gens_.push_back({z_generator(slot), std::move(w)});
  }

  group_.free_rank = kk_.size();
  for (std::size_t slot : torsion_slots_) group_.torsion.push_back(diag_[slot]);
  group_.q_dim = s - lattice_rank_;
  group_.torus_rank = lattice_rank_;
}

IntVector Homology::z_slot_coordinates(const IntVector& xz) const {
  const auto kappa = kz_coords_->integral(xz);
  if (!kappa) throw std::domain_error("Z-part is not an integral cycle");
  const std::size_t m = kz_.size();
  IntVector u(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t l = 0; l < m; ++l)
      if (U_(r, l) != 0) u[r] += U_(r, l) * (*kappa)[l];
  return u;
}

QVector Homology::class_coordinates(const QVector& q) const {
  const auto c = class_solver_->solve(sparse_q(q));
  if (!c) throw std::domain_error("Q-part is not a cycle of the rational subcomplex");
  QVector out(f_.size());
  for (const auto& e : *c)
    if (e.index >= b_next_) out[e.index - b_next_] = e.value;
  return out;
}

bool Homology::is_cycle(const ZQVector& x) const {
  if (x.z.size() != a_ || x.q.size() != b_) return false;
  return d_out_.apply(x).is_zero();
}

Homology::Coordinates Homology::raw_coordinates(const ZQVector& x) const {
  if (!is_cycle(x)) throw std::domain_error("not a cycle in degree " + std::to_string(degree_));
  const IntVector u = z_slot_coordinates(x.z);
  IntVector c(free_slots_.size());
  for (std::size_t j = 0; j < free_slots_.size(); ++j) c[j] = u[free_slots_[j]];
  const auto lambda = kk_coords_->integral(c);
  if (!lambda) throw std::logic_error("homology: free class outside the connecting kernel");
  Coordinates out;
  out.free = *lambda;
  for (std::size_t slot : torsion_slots_) out.torsion.push_back(u[slot]);

  ZQVector res = x;
  for (std::size_t k = 0; k < free_gens_.size(); ++k) res -= out.free[k] * free_gens_[k];
  for (std::size_t k = 0; k < torsion_gens_.size(); ++k) res -= out.torsion[k] * torsion_gens_[k];
  // What is left in the Z-part is a boundary through the unit Smith slots.
  const IntVector u2 = z_slot_coordinates(res.z);
  IntVector w(a_next_);
  bool any = false;
  for (std::size_t j = 0; j < u2.size(); ++j) {
    if (u2[j] == 0) continue;
    if (diag_[j] != 1) throw std::logic_error("homology: residual outside the unit slots");
    any = true;
    for (std::size_t t = 0; t < a_next_; ++t) w[t] += V_(t, j) * u2[j];
  }
  if (any) res -= d_in_.apply(ZQVector{w, QVector(b_next_)});

  const QVector phi = class_coordinates(res.q);
  const auto pi = p_solver_->solve(phi);
  if (!pi) throw std::logic_error("homology: class coordinates outside the completion");
  out.torus.assign(pi->begin(), pi->begin() + static_cast<std::ptrdiff_t>(lattice_rank_));
  out.q.assign(pi->begin() + static_cast<std::ptrdiff_t>(lattice_rank_), pi->end());
  return out;
}

Homology::Coordinates Homology::canonical(Coordinates c) const {
  for (std::size_t k = 0; k < c.torsion.size(); ++k) c.torsion[k] = mod_of(c.torsion[k], group_.torsion[k]);
  for (auto& t : c.torus) t = frac_of(t);
  return c;
}

std::optional<ZQVector> Homology::boundary_preimage(const ZQVector& x) const {
  if (!is_cycle(x)) throw std::domain_error("not a cycle in degree " + std::to_string(degree_));
  const IntVector u = z_slot_coordinates(x.z);
  IntVector w(a_next_);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j] == 0) continue;
    if (diag_[j] == 0 || !mpz_divisible_p(u[j].get_mpz_t(), diag_[j].get_mpz_t())) return std::nullopt;
    const Int c = u[j] / diag_[j];
    for (std::size_t t = 0; t < a_next_; ++t) w[t] += V_(t, j) * c;
  }
  ZQVector y{w, QVector(b_next_)};
  const ZQVector dy = d_in_.apply(y);
  if (dy.z != x.z) throw std::logic_error("homology: Z-preimage mismatch");
  QVector q = x.q;
  for (std::size_t t = 0; t < b_; ++t) q[t] -= dy.q[t];

  const auto pi = p_solver_->solve(class_coordinates(q));
  if (!pi) throw std::logic_error("homology: class coordinates outside the completion");
  for (std::size_t k = lattice_rank_; k < pi->size(); ++k)
    if ((*pi)[k] != 0) return std::nullopt;
  IntVector mu(kz_next_.size());
  for (std::size_t k = 0; k < lattice_rank_; ++k) {
    if (!is_integral((*pi)[k])) return std::nullopt;
    const Int n = (*pi)[k].get_num();
    for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += n * lattice_combo_[k][j];
  }
  IntVector y2(a_next_);
  for (std::size_t j = 0; j < mu.size(); ++j)
    if (mu[j] != 0)
      for (std::size_t t = 0; t < a_next_; ++t) y2[t] += mu[j] * kz_next_[j][t];
  const QVector b2 = d_in_.qz.apply(to_q(y2));
  for (std::size_t t = 0; t < b_; ++t) q[t] -= b2[t];
  const auto wq = image_solver_->solve(q);
  if (!wq) throw std::logic_error("homology: zero class without a rational preimage");
  for (std::size_t t = 0; t < a_next_; ++t) y.z[t] += y2[t];
  y.q = *wq;
  return y;
}

bool Homology::is_boundary(const ZQVector& x) const { return boundary_preimage(x).has_value(); }

ZQVector Homology::representative(const Coordinates& c) const {
  if (c.free.size() != free_gens_.size() || c.torsion.size() != torsion_gens_.size() || c.q.size() != q_gens_.size() ||
      c.torus.size() != torus_gens_.size())
    throw std::invalid_argument("coordinate vector has the wrong shape");
  ZQVector x = ZQVector::zero(a_, b_);
  for (std::size_t k = 0; k < free_gens_.size(); ++k) x += c.free[k] * free_gens_[k];
  for (std::size_t k = 0; k < torsion_gens_.size(); ++k) x += c.torsion[k] * torsion_gens_[k];
  for (std::size_t k = 0; k < q_gens_.size(); ++k) add_scaled(x, c.q[k], q_gens_[k]);
  for (std::size_t k = 0; k < torus_gens_.size(); ++k) add_scaled(x, c.torus[k], torus_gens_[k]);
  return x;
}

MixedGroup homology(const ZQComplex& X, int i) { return Homology(X, i).group(); }

namespace {

struct Layout {
  std::size_t free, torsion, q, torus;
  std::size_t z() const { return free + torsion; }
  std::size_t qd() const { return q + torus; }
};

Layout layout_of(const Homology& H) {
  return {H.free_generators().size(), H.torsion_generators().size(), H.q_generators().size(),
          H.torus_generators().size()};
}

// Relations of F -> H: m_j e_{torsion j} (into the Z-part) and the unit torus vectors (Z-generators
// landing in the Q-part).
ZQMap relations(const Homology& H) {
  const Layout l = layout_of(H);
  const std::size_t count = l.torsion + l.torus;
  ZQMap R = ZQMap::zero(count, 0, l.z(), l.qd());
  for (std::size_t j = 0; j < l.torsion; ++j) R.zz.set_col(j, {{l.free + j, H.torsion_orders()[j]}});
  for (std::size_t k = 0; k < l.torus; ++k) R.qz.set_col(l.torsion + k, {{l.q + k, Rat(1)}});
  return R;
}

}  // namespace

HomologyMap homology_map(const Homology& HX, const Homology& HY, const ZQMap& f_i) {
  const Layout lx = layout_of(HX), ly = layout_of(HY);
  HomologyMap out;
  out.matrix = ZQMap::zero(lx.z(), lx.qd(), ly.z(), ly.qd());
  auto target = [&](const ZQVector& g) { return HY.raw_coordinates(f_i.apply(g)); };
  auto z_column = [&](const Homology::Coordinates& c) {
    IntVector v = c.free;
    v.insert(v.end(), c.torsion.begin(), c.torsion.end());
    return sparse_from_dense<Int>(v);
  };
  auto q_column = [&](const Homology::Coordinates& c) {
    QVector v = c.q;
    v.insert(v.end(), c.torus.begin(), c.torus.end());
    return sparse_from_dense<Rat>(v);
  };
  std::size_t col = 0;
  for (const auto* gens : {&HX.free_generators(), &HX.torsion_generators()})
    for (const auto& g : *gens) {
      const auto c = target(g);
      out.matrix.zz.set_col(col, z_column(c));
      out.matrix.qz.set_col(col, q_column(c));
      ++col;
    }
  col = 0;
  for (const auto* gens : {&HX.q_generators(), &HX.torus_generators()})
    for (const auto& g : *gens) {
      const auto c = target(g);
      if (!z_column(c).empty()) throw std::logic_error("homology_map: rational class mapped to an integral class");
      out.matrix.qq.set_col(col++, q_column(c));
    }

  // coker = H_0 and ker = H_1 of  Z^{|R|} -> F ⊕ Z^{|R'|} -> F'.
  const ZQMap R = relations(HX), Rp = relations(HY);
  const std::size_t nr = R.src_z(), nrp = Rp.src_z();
  ZQComplex K(0, {{ly.z(), ly.qd()}, {lx.z() + nrp, lx.qd()}, {nr, 0}});
  K.set_d(1, ZQMap{IntMatrix::hstack(out.matrix.zz, Rp.zz), QMatrix::hstack(out.matrix.qz, Rp.qz), out.matrix.qq});
  // R'-coordinates of L(r) for each relation r.
  const ZQMap LR = compose(out.matrix, R);
  IntMatrix coords(nrp, nr);
  for (std::size_t j = 0; j < nr; ++j) {
    SparseVec<Int> c;
    const IntVector zcol = dense_from_sparse(LR.zz.col(j), ly.z());
    const QVector qcol = dense_from_sparse(LR.qz.col(j), ly.qd());
    for (std::size_t t = 0; t < ly.free; ++t)
      if (zcol[t] != 0) throw std::logic_error("homology_map: relation mapped off the relations");
    for (std::size_t t = 0; t < ly.torsion; ++t) {
      const Int& m = HY.torsion_orders()[t];
      if (!mpz_divisible_p(zcol[ly.free + t].get_mpz_t(), m.get_mpz_t()))
        throw std::logic_error("homology_map: relation mapped off the relations");
      if (zcol[ly.free + t] != 0) c.push_back({t, zcol[ly.free + t] / m});
    }
    for (std::size_t t = 0; t < ly.q; ++t)
      if (qcol[t] != 0) throw std::logic_error("homology_map: relation mapped off the relations");
    for (std::size_t t = 0; t < ly.torus; ++t) {
      const Rat& v = qcol[ly.q + t];
      if (!is_integral(v)) throw std::logic_error("homology_map: relation mapped off the relations");
      if (v != 0) c.push_back({ly.torsion + t, v.get_num()});
    }
    coords.set_col(j, std::move(c));
  }
  K.set_d(2, ZQMap{IntMatrix::vstack(R.zz, -coords), R.qz, QMatrix(lx.qd(), 0)});
  K.validate();
  out.cokernel = homology(K, 0);
  out.kernel = homology(K, 1);
  out.injective = out.kernel.is_zero();
  out.surjective = out.cokernel.is_zero();
  return out;
}

HomologyMap homology_map(const ZQComplex& X, const ZQComplex& Y, const ChainMap& f, int i) {
  f.check(X, Y);
  return homology_map(Homology(X, i), Homology(Y, i), f.at(i, X, Y));
}

}  // namespace gerbe
