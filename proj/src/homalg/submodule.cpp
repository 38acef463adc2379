#include "gerbe/homalg/submodule.hpp"

#include "gerbe/exactalg/normal_form.hpp"

#include <stdexcept>

namespace gerbe {

MixedSubmodule MixedSubmodule::full(std::size_t a, std::size_t b) {
  MixedSubmodule m;
  m.embed_ = ZQMap::identity(a, b);
  m.full_ = true;
  return m;
}

bool MixedSubmodule::contains(const ZQVector& x) const {
  if (full_) return true;
  if (x.z.size() != embed_.dst_z() || x.q.size() != embed_.dst_q()) return false;
  const auto lam = lattice_->integral(x.z);
  if (!lam) return false;
  ZQVector c{*lam, QVector(free_columns_.size())};
  for (std::size_t f = 0; f < free_columns_.size(); ++f) c.q[f] = x.q[free_columns_[f]];
  return embed_.apply(c) == x;
}

ZQVector MixedSubmodule::coordinates(const ZQVector& x) const {
  if (full_) return x;
  if (x.z.size() != embed_.dst_z() || x.q.size() != embed_.dst_q())
    throw std::invalid_argument("submodule coordinates: size mismatch");
  const auto lam = lattice_->integral(x.z);
  if (!lam) throw std::domain_error("vector is not in the submodule (Z-part)");
  ZQVector c{*lam, QVector(free_columns_.size())};
  // Canonical lifts vanish on the free columns and the Q-generators are unit vectors there.
  for (std::size_t f = 0; f < free_columns_.size(); ++f) c.q[f] = x.q[free_columns_[f]];
  if (!(embed_.apply(c) == x)) throw std::domain_error("vector is not in the submodule");
  return c;
}

MixedSubmodule mixed_kernel(const ZQMap& f) {
  f.check_shape();
  const std::size_t a = f.src_z(), b = f.src_q(), d = f.dst_q();
  // Z-part: x_z with A x_z = 0 and B x_z in im C.
  Echelon image(d);
  for (std::size_t j = 0; j < b; ++j) image.insert(f.qq.col(j));
  QMatrix residual(d, a);
  for (std::size_t j = 0; j < a; ++j) residual.set_col(j, image.reduce(f.qz.col(j)));
  const auto lattice = integral_kernel(QMatrix::vstack(f.zz.cast<Rat>(), residual));

  const KernelRref vk = kernel_rref(f.qq);
  const ColumnSolver solver(f.qq);
  std::vector<std::int64_t> free_slot(b, -1);
  for (std::size_t k = 0; k < vk.free_columns.size(); ++k) free_slot[vk.free_columns[k]] = static_cast<std::int64_t>(k);

  MixedSubmodule m;
  m.embed_.zz = IntMatrix(a, lattice.size());
  m.embed_.qz = QMatrix(b, lattice.size());
  m.embed_.qq = QMatrix(b, vk.basis.size());
  for (std::size_t j = 0; j < lattice.size(); ++j) {
    m.embed_.zz.set_col(j, sparse_from_dense<Int>(lattice[j]));
    // Canonical lift: C w = -B x_z with w vanishing on the free columns of C.
    SparseVec<Rat> rhs = f.qz.apply_sparse(sparse_q(lattice[j]));
    sparse_scale(rhs, Rat(-1));
    auto w = solver.solve(rhs);
    if (!w) throw std::logic_error("mixed_kernel: lattice vector without a Q-lift");
    SparseVec<Rat> lift = *w;
    for (const auto& e : *w) {
      const std::int64_t k = free_slot[e.index];
      if (k >= 0) lift = sparse_axpy(lift, Rat(-e.value), vk.basis[static_cast<std::size_t>(k)]);
    }
    m.embed_.qz.set_col(j, std::move(lift));
  }
  for (std::size_t k = 0; k < vk.basis.size(); ++k) m.embed_.qq.set_col(k, vk.basis[k]);
  m.lattice_.emplace(a, lattice);
  m.free_columns_ = vk.free_columns;
  return m;
}

namespace {

ZQMap restrict_map(const ZQMap& d, const MixedSubmodule& src, const MixedSubmodule& dst) {
  if (src.is_full() && dst.is_full()) return d;
  const ZQMap composite = compose(d, src.embedding());
  if (dst.is_full()) return composite;
  ZQMap out = ZQMap::zero(src.z_rank(), src.q_dim(), dst.z_rank(), dst.q_dim());
  const std::size_t a = composite.src_z(), b = composite.src_q();
  for (std::size_t j = 0; j < a; ++j) {
    ZQVector unit = ZQVector::zero(a, b);
    unit.z[j] = 1;
    const ZQVector c = dst.coordinates(composite.apply(unit));
    out.zz.set_col(j, sparse_from_dense<Int>(c.z));
    out.qz.set_col(j, sparse_from_dense<Rat>(c.q));
  }
  for (std::size_t j = 0; j < b; ++j) {
    ZQVector unit = ZQVector::zero(a, b);
    unit.q[j] = 1;
    const ZQVector c = dst.coordinates(composite.apply(unit));
    out.qq.set_col(j, sparse_from_dense<Rat>(c.q));
  }
  return out;
}

}  // namespace

ZQComplex subcomplex(const ZQComplex& X, const std::map<int, MixedSubmodule>& subs) {
  if (X.empty()) return X;
  auto sub_at = [&](int t) {
    auto it = subs.find(t);
    return it != subs.end() ? it->second : MixedSubmodule::full(X.z_rank(t), X.q_dim(t));
  };
  std::vector<ZQComplex::Dims> dims;
  std::vector<MixedSubmodule> levels;
  for (int t = X.lowest(); t <= X.highest(); ++t) {
    levels.push_back(sub_at(t));
    dims.push_back({levels.back().z_rank(), levels.back().q_dim()});
  }
  ZQComplex Y(X.lowest(), std::move(dims));
  for (int t = X.lowest() + 1; t <= X.highest(); ++t) {
    const std::size_t j = static_cast<std::size_t>(t - X.lowest());
    Y.set_d(t, restrict_map(X.d(t), levels[j], levels[j - 1]));
  }
  // The lowest differential maps into the zero module.
  const MixedSubmodule& bottom = levels.front();
  if (bottom.is_full()) {
    Y.set_d(X.lowest(), X.d(X.lowest()));
  } else {
    const ZQMap composite = compose(X.d(X.lowest()), bottom.embedding());
    if (!composite.is_zero()) throw std::domain_error("subcomplex: lowest level not mapped to zero");
  }
  return Y;
}

ZQComplex truncate_nonneg(const ZQComplex& X) {
  if (X.empty() || X.lowest() > 0) return X;
  if (X.highest() < 0) return ZQComplex(0, {ZQComplex::Dims{}});
  std::vector<ZQComplex::Dims> dims;
  for (int t = 0; t <= X.highest(); ++t) dims.push_back(X.dims(t));
  ZQComplex upper(0, std::move(dims));
  for (int t = 1; t <= X.highest() + 1; ++t) upper.set_d(t, X.d(t));
  // Level 0 of 'upper' still carries d_0 implicitly through X; restrict to its cycles.
  const MixedSubmodule cycles = mixed_kernel(X.d(0));
  return subcomplex(upper, {{0, cycles}});
}

}  // namespace gerbe
