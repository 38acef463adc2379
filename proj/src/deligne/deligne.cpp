#include "gerbe/deligne/deligne.hpp"

#include "gerbe/homalg/submodule.hpp"

#include <cstdint>
#include <stdexcept>

namespace gerbe {

namespace {

QMatrix select_rows(const QMatrix& m, const std::vector<std::size_t>& rows) {
  std::vector<std::ptrdiff_t> pos(m.rows(), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) pos[rows[r]] = static_cast<std::ptrdiff_t>(r);
  MatrixBuilder<Rat> b(rows.size(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.col(j))
      if (pos[e.index] >= 0) b.add(static_cast<std::size_t>(pos[e.index]), j, e.value);
  return b.build();
}

QMatrix basis_matrix(const KernelRref& K, std::size_t dim) {
  QMatrix E(dim, K.basis.size());
  for (std::size_t c = 0; c < K.basis.size(); ++c) E.set_col(c, K.basis[c]);
  return E;
}

}  // namespace

void DelignePars::validate() const {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (flat) {
    if (k != n + 2) throw std::invalid_argument("the flat marker is stored as k = n + 2");
  } else if (k < 0 || k > n + 1) {
    throw std::invalid_argument("connection level k must lie in [0, n + 1]");
  }
}

std::string DelignePars::to_string() const {
  return "(n=" + std::to_string(n) + ", " + (flat ? std::string("flat") : "k=" + std::to_string(k)) + ")";
}

DeligneComplex::DeligneComplex(const StarSite& site, DelignePars pars)
    : site_(&site), pars_(pars), D_(std::vector<DoubleComplexZQ::Row>{}) {
  pars_.validate();
  const SimplicialComplex& M = site.base();
  const int dim = M.dimension();
  const std::size_t cols = static_cast<std::size_t>(dim) + 1;
  const int n = pars_.n, top = pars_.top();

  if (pars_.flat) {
    for (int i = 0; i <= dim; ++i) closed_.push_back(kernel_rref(site.patch_coboundary(i, n + 1).cast<Rat>()));
  }

  std::vector<DoubleComplexZQ::Row> rows;
  DoubleComplexZQ::Row zrow{z_degree(), Coeff::Z, {}};
  for (std::size_t i = 0; i < cols; ++i) zrow.dims.push_back(M.count(static_cast<int>(i)));
  rows.push_back(zrow);
  for (int j = 0; j <= top; ++j) {
    DoubleComplexZQ::Row r{form_degree(j), Coeff::Q, {}};
    for (std::size_t i = 0; i < cols; ++i)
      r.dims.push_back(closed_row(j) ? closed_[i].free_columns.size() : site.cech_dim(static_cast<int>(i), j));
    rows.push_back(r);
  }
  D_ = DoubleComplexZQ(rows);

  for (int i = 0; i < dim; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    D_.set_delta(0, ii, coboundary(M, whole(M), i).cast<Rat>());
    for (int j = 0; j <= top; ++j) {
      QMatrix delta = site.cech_delta(i, j).cast<Rat>();
      if (closed_row(j))
        delta = select_rows(delta, closed_[ii + 1].free_columns) *
                basis_matrix(closed_[ii], site.cech_dim(i, j));
      D_.set_delta(static_cast<std::size_t>(1 + j), ii, std::move(delta));
    }
  }
  for (int i = 0; i <= dim; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    D_.set_vertical(0, ii, site.constant_inclusion(i).cast<Rat>());
    for (int j = 0; j < top; ++j) {
      QMatrix d = site.patch_coboundary(i, j).cast<Rat>();
      if (closed_row(j + 1)) d = select_rows(d, closed_[ii].free_columns);
      D_.set_vertical(static_cast<std::size_t>(1 + j), ii, std::move(d));
    }
  }
  T_ = total_complex(D_);
  truncated_ = truncate_nonneg(T_.complex);
}

std::size_t DeligneComplex::z_size(int t) const { return site_->base().count(z_column(t)); }

std::size_t DeligneComplex::form_size(int j, int t) const { return site_->cech_dim(form_column(j, t), j); }

RowComponents DeligneComplex::zero_components(int t) const {
  RowComponents x{IntVector(z_size(t)), {}};
  for (int j = 0; j <= pars_.top(); ++j) x.forms.emplace_back(form_size(j, t));
  return x;
}

ZQVector DeligneComplex::pack(int t, const RowComponents& x) const {
  const int top = pars_.top();
  if (x.z.size() != z_size(t) || x.forms.size() != static_cast<std::size_t>(top + 1))
    throw std::invalid_argument("row components have the wrong shape at level " + std::to_string(t));
  ZQVector out = T_.complex.zero(t);
  if (z_column(t) >= 0)
    if (const TotalBlock* b = T_.block(t, 0, static_cast<std::size_t>(z_column(t))))
      for (std::size_t r = 0; r < b->size; ++r) out.z[b->offset + r] = x.z[r];
  for (int j = 0; j <= top; ++j) {
    const auto& v = x.forms[static_cast<std::size_t>(j)];
    if (v.size() != form_size(j, t))
      throw std::invalid_argument("form row " + std::to_string(j) + " has the wrong size at level " + std::to_string(t));
    const int i = form_column(j, t);
    if (i < 0) continue;
    const TotalBlock* b = T_.block(t, static_cast<std::size_t>(1 + j), static_cast<std::size_t>(i));
    if (!b) continue;
    if (closed_row(j)) {
      const KernelRref& K = closed_[static_cast<std::size_t>(i)];
      QVector rebuilt(v.size());
      for (std::size_t c = 0; c < K.free_columns.size(); ++c) {
        const Rat& a = v[K.free_columns[c]];
        out.q[b->offset + c] = a;
        for (const auto& e : K.basis[c]) rebuilt[e.index] += a * e.value;
      }
      if (rebuilt != v) throw std::domain_error("top form component is not closed");
    } else {
      for (std::size_t r = 0; r < b->size; ++r) out.q[b->offset + r] = v[r];
    }
  }
  return out;
}

RowComponents DeligneComplex::unpack(int t, const ZQVector& x) const {
  const auto dims = T_.complex.dims(t);
  if (x.z.size() != dims.z || x.q.size() != dims.q)
    throw std::invalid_argument("vector has the wrong shape at level " + std::to_string(t));
  RowComponents out = zero_components(t);
  if (z_column(t) >= 0)
    if (const TotalBlock* b = T_.block(t, 0, static_cast<std::size_t>(z_column(t))))
      for (std::size_t r = 0; r < b->size; ++r) out.z[r] = x.z[b->offset + r];
  for (int j = 0; j <= pars_.top(); ++j) {
    const int i = form_column(j, t);
    if (i < 0) continue;
    const TotalBlock* b = T_.block(t, static_cast<std::size_t>(1 + j), static_cast<std::size_t>(i));
    if (!b) continue;
    auto& v = out.forms[static_cast<std::size_t>(j)];
    if (closed_row(j)) {
      const KernelRref& K = closed_[static_cast<std::size_t>(i)];
      for (std::size_t c = 0; c < K.basis.size(); ++c)
        for (const auto& e : K.basis[c]) v[e.index] += x.q[b->offset + c] * e.value;
    } else {
      for (std::size_t r = 0; r < b->size; ++r) v[r] = x.q[b->offset + r];
    }
  }
  return out;
}

std::shared_ptr<const DeligneComplex> DeligneCache::get(const DelignePars& pars) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(pars);
  if (it == cache_.end()) it = cache_.emplace(pars, std::make_shared<const DeligneComplex>(*site_, pars)).first;
  return it->second;
}

ZQComplex build_deligne_complex(const StarSite& site, const DelignePars& pars) {
  return DeligneComplex(site, pars).truncated();
}

MixedGroup gerbe_pi(const StarSite& site, const DelignePars& pars, int i) {
  return homology(build_deligne_complex(site, pars), i);
}

ZQComplex class_complex(const StarSite& site, int n) {
  return shift(cochain_complex(site.base(), whole(site.base()), Coeff::Z), n + 2);
}

ChainMap projection_map(const DeligneComplex& A, const DeligneComplex& C) {
  const DelignePars& pa = A.pars();
  const DelignePars& pc = C.pars();
  if (pa.n != pc.n || pc.top() > pa.top() || (pc.flat && !pa.flat))
    throw std::invalid_argument("no projection " + pa.to_string() + " -> " + pc.to_string());
  const ZQComplex& X = A.total().complex;
  const ZQComplex& Y = C.total().complex;
  const std::size_t dim_closed = pa.flat && !pc.flat ? static_cast<std::size_t>(pa.n + 1) : SIZE_MAX;
  ChainMap f;
  for (int t = X.lowest(); t <= X.highest(); ++t) {
    if (!Y.in_range(t)) continue;
    const auto src = X.dims(t), dst = Y.dims(t);
    MatrixBuilder<Int> zz(dst.z, src.z);
    MatrixBuilder<Rat> qq(dst.q, src.q);
    if (A.z_column(t) >= 0)
      if (const TotalBlock* b = A.total().block(t, 0, static_cast<std::size_t>(A.z_column(t))))
        for (std::size_t r = 0; r < b->size; ++r) zz.add(r, b->offset + r, Int(1));
    for (int j = 0; j <= pc.top(); ++j) {
      const int i = A.form_column(j, t);
      if (i < 0) continue;
      const auto row = static_cast<std::size_t>(1 + j);
      const TotalBlock* from = A.total().block(t, row, static_cast<std::size_t>(i));
      const TotalBlock* to = C.total().block(t, row, static_cast<std::size_t>(i));
      if (!from || !to) continue;
      if (static_cast<std::size_t>(j) == dim_closed) {
        // Closed cochains into all cochains: the embedding, recovered through unpack.
        for (std::size_t c = 0; c < from->size; ++c) {
          ZQVector e = X.zero(t);
          e.q[from->offset + c] = 1;
          const QVector full = A.unpack(t, e).forms[static_cast<std::size_t>(j)];
          for (std::size_t r = 0; r < full.size(); ++r)
            if (full[r] != 0) qq.add(to->offset + r, from->offset + c, full[r]);
        }
      } else {
        for (std::size_t r = 0; r < from->size; ++r) qq.add(to->offset + r, from->offset + r, Rat(1));
      }
    }
    f.components.emplace_back(t, ZQMap{zz.build(), QMatrix(dst.q, src.z), qq.build()});
  }
  return f;
}

ChainMap class_map(const DeligneComplex& A, const ZQComplex& target) {
  const ZQComplex& X = A.total().complex;
  ChainMap f;
  for (int t = X.lowest(); t <= X.highest(); ++t) {
    if (!target.in_range(t)) continue;
    const auto src = X.dims(t), dst = target.dims(t);
    MatrixBuilder<Int> zz(dst.z, src.z);
    if (A.z_column(t) >= 0)
      if (const TotalBlock* b = A.total().block(t, 0, static_cast<std::size_t>(A.z_column(t))))
        for (std::size_t r = 0; r < b->size; ++r) zz.add(r, b->offset + r, Int(1));
    f.components.emplace_back(t, ZQMap{zz.build(), QMatrix(dst.q, src.z), QMatrix(dst.q, src.q)});
  }
  return f;
}

std::string ProjectionReport::to_string() const {
  if (map.iso()) return "iso " + source.to_string() + " -> " + target.to_string();
  return std::string(map.surjective ? "surjective" : "not surjective") + ", " +
         (map.injective ? "injective" : "not injective") + ": " + source.to_string() + " -> " +
         target.to_string() + ", kernel " + map.kernel.to_string() + ", cokernel " + map.cokernel.to_string();
}

ProjectionReport pi0_projection_check(const StarSite& site, int n, int k, int l) {
  if (l < 0 || l > k) throw std::invalid_argument("projection needs 0 <= l <= k");
  const DeligneComplex A(site, {n, k, false});
  const DeligneComplex C(site, {n, l, false});
  const Homology HA(A.total().complex, 0), HC(C.total().complex, 0);
  const ChainMap f = projection_map(A, C);
  f.check(A.total().complex, C.total().complex);
  return {HA.group(), HC.group(), homology_map(HA, HC, f.at(0, A.total().complex, C.total().complex))};
}

ProjectionReport class_comparison(const StarSite& site, const DelignePars& pars, int i) {
  const DeligneComplex A(site, pars);
  const ZQComplex Z = class_complex(site, pars.n);
  const Homology HA(A.total().complex, i), HZ(Z, i);
  const ChainMap f = class_map(A, Z);
  f.check(A.total().complex, Z);
  return {HA.group(), HZ.group(), homology_map(HA, HZ, f.at(i, A.total().complex, Z))};
}

}  // namespace gerbe
