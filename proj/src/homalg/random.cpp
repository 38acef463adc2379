#include "gerbe/homalg/random.hpp"

#include "gerbe/homalg/submodule.hpp"

namespace gerbe {

namespace {

bool bounded(const ZQVector& v, int bound) {
  for (const auto& x : v.z)
    if (abs(x) > bound) return false;
  for (const auto& x : v.q)
    if (abs(x.get_num()) > bound || x.get_den() > bound) return false;
  return true;
}

ZQVector column(const ZQMap& m, std::size_t j, bool z_generator) {
  ZQVector v;
  if (z_generator) {
    v.z = dense_from_sparse(m.zz.col(j), m.dst_z());
    v.q = dense_from_sparse(m.qz.col(j), m.dst_q());
  } else {
    v.z = IntVector(m.dst_z());
    v.q = dense_from_sparse(m.qq.col(j), m.dst_q());
  }
  return v;
}

}  // namespace

ZQComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& options) {
  std::uniform_int_distribution<std::size_t> zdim(0, options.max_z), qdim(0, options.max_q);
  std::uniform_int_distribution<int> coeff(-1, 1), halves(-2, 2), coin(0, 3);
  std::vector<ZQComplex::Dims> dims;
  for (int k = 0; k < options.levels; ++k) dims.push_back({zdim(rng), qdim(rng)});
  ZQComplex X(options.lowest, std::move(dims));
  for (int t = X.lowest() + 1; t <= X.highest(); ++t) {
    const MixedSubmodule K = mixed_kernel(X.d(t - 1));
    const ZQMap& E = K.embedding();
    const auto src = X.dims(t), dst = X.dims(t - 1);
    ZQMap d = ZQMap::zero(src.z, src.q, dst.z, dst.q);
    auto draw = [&](bool z_column) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        ZQVector v = ZQVector::zero(dst.z, dst.q);
        if (z_column)
          for (std::size_t g = 0; g < K.z_rank(); ++g) {
            const int c = coeff(rng);
            if (c != 0 && coin(rng) != 0) v += Int(c) * column(E, g, true);
          }
        for (std::size_t g = 0; g < K.q_dim(); ++g) {
          if (coin(rng) == 0) continue;
          const Rat c = make_rat(halves(rng), 2);
          if (c == 0) continue;
          const ZQVector w = column(E, g, false);
          for (std::size_t i = 0; i < w.q.size(); ++i) v.q[i] += c * w.q[i];
        }
        if (bounded(v, options.max_entry)) return v;
      }
      return ZQVector::zero(dst.z, dst.q);
    };
    for (std::size_t j = 0; j < src.z; ++j) {
      const ZQVector v = draw(true);
      d.zz.set_col(j, sparse_from_dense<Int>(v.z));
      d.qz.set_col(j, sparse_from_dense<Rat>(v.q));
    }
    for (std::size_t j = 0; j < src.q; ++j) d.qq.set_col(j, sparse_from_dense<Rat>(draw(false).q));
    X.set_d(t, std::move(d));
  }
  X.validate();
  return X;
}

}  // namespace gerbe
