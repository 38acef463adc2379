#include "gerbe/site/cochains.hpp"

#include "gerbe/homalg/homology.hpp"

#include <stdexcept>

namespace gerbe {

namespace {

ZQMap as_map(const IntMatrix& m, Coeff coeff) {
  if (coeff == Coeff::Z) return {m, QMatrix(0, m.cols()), QMatrix(0, 0)};
  return {IntMatrix(0, 0), QMatrix(m.rows(), 0), m.cast<Rat>()};
}

ZQComplex::Dims dims_of(std::size_t n, Coeff coeff) {
  return coeff == Coeff::Z ? ZQComplex::Dims{n, 0} : ZQComplex::Dims{0, n};
}

std::string cech_row_name(int j) { return "Čech row of " + std::to_string(j) + "-cochains"; }

}  // namespace

IntMatrix coboundary(const SimplicialComplex& M, const Subcomplex& L, int p) {
  const std::size_t rows = L.count(p + 1), cols = L.count(p);
  MatrixBuilder<Int> b(rows, cols);
  if (p < 0) return b.build();
  for (std::size_t r = 0; r < rows; ++r) {
    const Simplex& tau = M.simplices(p + 1)[L.cells[static_cast<std::size_t>(p + 1)][r]];
    for (std::size_t k = 0; k < tau.size(); ++k) {
      Simplex face = tau;
      face.erase(face.begin() + static_cast<long>(k));
      const auto local = L.local_index(p, *M.index_of(face));
      if (!local) throw std::logic_error("subcomplex is not closed under faces");
      b.add(r, *local, Int(k % 2 == 0 ? 1 : -1));
    }
  }
  return b.build();
}

IntMatrix restriction(const Subcomplex& L, const Subcomplex& Lsub, int p) {
  MatrixBuilder<Int> b(Lsub.count(p), L.count(p));
  for (std::size_t r = 0; r < Lsub.count(p); ++r) {
    const auto c = L.local_index(p, Lsub.cells[static_cast<std::size_t>(p)][r]);
    if (!c) throw std::invalid_argument("restriction to a subcomplex that is not contained");
    b.add(r, *c, Int(1));
  }
  return b.build();
}

ZQComplex cochain_complex(const SimplicialComplex& M, const Subcomplex& L, Coeff coeff) {
  int top = -1;
  for (int p = 0; p < static_cast<int>(L.cells.size()); ++p)
    if (L.count(p) > 0) top = p;
  if (top < 0) return ZQComplex(0, {{0, 0}});
  std::vector<ZQComplex::Dims> dims;
  for (int p = top; p >= 0; --p) dims.push_back(dims_of(L.count(p), coeff));
  ZQComplex X(-top, std::move(dims));
  for (int p = 0; p < top; ++p) X.set_d(-p, as_map(coboundary(M, L, p), coeff));
  return X;
}

MixedGroup simplicial_cohomology(const SimplicialComplex& M, Coeff coeff, int j) {
  return homology(cochain_complex(M, whole(M), coeff), -j);
}

StarSite::StarSite(SimplicialComplex M) : M_(std::move(M)) {
  const int dim = M_.dimension();
  patches_.resize(static_cast<std::size_t>(dim) + 1);
  offsets_.resize(static_cast<std::size_t>(dim) + 1);
  for (int i = 0; i <= dim; ++i) {
    auto& P = patches_[static_cast<std::size_t>(i)];
    for (const auto& s : M_.simplices(i)) P.push_back(closed_star(M_, s));
    auto& O = offsets_[static_cast<std::size_t>(i)];
    O.resize(static_cast<std::size_t>(dim) + 1);
    for (int j = 0; j <= dim; ++j) {
      auto& o = O[static_cast<std::size_t>(j)];
      o.push_back(0);
      for (const auto& patch : P) o.push_back(o.back() + patch.count(j));
    }
  }
}

std::size_t StarSite::cech_dim(int i, int j) const {
  if (i < 0 || j < 0 || i > M_.dimension() || j > M_.dimension()) return 0;
  return offsets_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].back();
}

std::size_t StarSite::cech_offset(int i, std::size_t s, int j) const {
  return offsets_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][s];
}

IntMatrix StarSite::cech_delta(int i, int j) const {
  MatrixBuilder<Int> b(cech_dim(i + 1, j), cech_dim(i, j));
  if (i < 0 || i + 1 > M_.dimension() || cech_dim(i, j) == 0) return b.build();
  const auto& taus = M_.simplices(i + 1);
  for (std::size_t t = 0; t < taus.size(); ++t) {
    const Subcomplex& St = patch(i + 1, t);
    for (std::size_t k = 0; k < taus[t].size(); ++k) {
      Simplex face = taus[t];
      face.erase(face.begin() + static_cast<long>(k));
      const std::size_t s = *M_.index_of(face);
      const Subcomplex& Ss = patch(i, s);
      const Int sign(k % 2 == 0 ? 1 : -1);
      for (std::size_t r = 0; r < St.count(j); ++r) {
        const auto c = Ss.local_index(j, St.cells[static_cast<std::size_t>(j)][r]);
        if (!c) throw std::logic_error("star of a simplex is not inside the star of its face");
        b.add(cech_offset(i + 1, t, j) + r, cech_offset(i, s, j) + *c, sign);
      }
    }
  }
  return b.build();
}

IntMatrix StarSite::patch_coboundary(int i, int j) const {
  MatrixBuilder<Int> b(cech_dim(i, j + 1), cech_dim(i, j));
  if (i < 0 || i > M_.dimension()) return b.build();
  for (std::size_t s = 0; s < M_.count(i); ++s) {
    const IntMatrix d = coboundary(M_, patch(i, s), j);
    for (std::size_t c = 0; c < d.cols(); ++c)
      for (const auto& e : d.col(c)) b.add(cech_offset(i, s, j + 1) + e.index, cech_offset(i, s, j) + c, e.value);
  }
  return b.build();
}

IntMatrix StarSite::constant_inclusion(int i) const {
  MatrixBuilder<Int> b(cech_dim(i, 0), M_.count(i));
  for (std::size_t s = 0; s < M_.count(i); ++s)
    for (std::size_t r = 0; r < patch(i, s).count(0); ++r) b.add(cech_offset(i, s, 0) + r, s, Int(1));
  return b.build();
}

IntMatrix StarSite::global_restriction(int j) const {
  MatrixBuilder<Int> b(cech_dim(0, j), M_.count(j));
  const Subcomplex all = whole(M_);
  for (std::size_t s = 0; s < M_.count(0); ++s) {
    const IntMatrix r = restriction(all, patch(0, s), j);
    for (std::size_t c = 0; c < r.cols(); ++c)
      for (const auto& e : r.col(c)) b.add(cech_offset(0, s, j) + e.index, c, e.value);
  }
  return b.build();
}

AcyclicityReport star_acyclicity_check(const SimplicialComplex& M) {
  const StarSite site(M);
  const int dim = M.dimension();
  for (int i = 0; i <= dim; ++i)
    for (std::size_t s = 0; s < M.count(i); ++s) {
      const ZQComplex X = cochain_complex(M, site.patch(i, s), Coeff::Q);
      for (int p = 0; p <= dim; ++p) {
        const MixedGroup H = homology(X, -p);
        if (!(H == (p == 0 ? MixedGroup::rational(1) : MixedGroup{})))
          return {false, "closed star of " + M.simplex_name(M.simplices(i)[s]) + " has H^" + std::to_string(p) +
                             " = " + H.to_string()};
      }
    }
  for (int j = 0; j <= dim; ++j) {
    std::vector<ZQComplex::Dims> dims;
    for (int i = dim; i >= 0; --i) dims.push_back({0, site.cech_dim(i, j)});
    ZQComplex X(-dim, std::move(dims));
    for (int i = 0; i < dim; ++i) X.set_d(-i, as_map(site.cech_delta(i, j), Coeff::Q));
    for (int i = 0; i <= dim; ++i) {
      const MixedGroup H = homology(X, -i);
      const MixedGroup expected = i == 0 ? MixedGroup::rational(M.count(j)) : MixedGroup{};
      if (!(H == expected))
        return {false, cech_row_name(j) + " has H^" + std::to_string(i) + " = " + H.to_string()};
    }
  }
  return {};
}

}  // namespace gerbe
