#include "gerbe/homalg/complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace gerbe {

namespace {

template <class T>
void add_into(std::vector<T>& a, const std::vector<T>& b, int sign) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sign > 0)
      a[i] += b[i];
    else
      a[i] -= b[i];
  }
}

template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  return Matrix<T>::vstack(Matrix<T>::hstack(a, Matrix<T>(a.rows(), b.cols())),
                           Matrix<T>::hstack(Matrix<T>(b.rows(), a.cols()), b));
}

}  // namespace

QVector to_q(const IntVector& v) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

bool ZQVector::is_zero() const {
  return std::all_of(z.begin(), z.end(), [](const Int& x) { return x == 0; }) &&
         std::all_of(q.begin(), q.end(), [](const Rat& x) { return x == 0; });
}

ZQVector& ZQVector::operator+=(const ZQVector& o) {
  add_into(z, o.z, 1);
  add_into(q, o.q, 1);
  return *this;
}

ZQVector& ZQVector::operator-=(const ZQVector& o) {
  add_into(z, o.z, -1);
  add_into(q, o.q, -1);
  return *this;
}

ZQVector operator-(ZQVector a) {
  for (auto& x : a.z) x = -x;
  for (auto& x : a.q) x = -x;
  return a;
}

ZQVector operator*(const Int& c, ZQVector a) {
  for (auto& x : a.z) x *= c;
  for (auto& x : a.q) x *= c;
  return a;
}

ZQMap ZQMap::zero(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return {IntMatrix(c, a), QMatrix(d, a), QMatrix(d, b)};
}

ZQMap ZQMap::identity(std::size_t a, std::size_t b) {
  return {IntMatrix::identity(a), QMatrix(b, a), QMatrix::identity(b)};
}

void ZQMap::check_shape() const {
  if (qz.cols() != zz.cols() || qz.rows() != qq.rows())
    throw std::invalid_argument("inconsistent block shapes in mixed map");
}

ZQVector ZQMap::apply(const ZQVector& x) const {
  if (x.z.size() != src_z() || x.q.size() != src_q()) throw std::invalid_argument("mixed map: source size mismatch");
  ZQVector y;
  y.z = zz.apply(x.z);
  y.q = qq.apply(x.q);
  if (!qz.is_zero()) {
    const QVector add = qz.apply(to_q(x.z));
    for (std::size_t i = 0; i < add.size(); ++i) y.q[i] += add[i];
  }
  return y;
}

ZQMap operator+(const ZQMap& f, const ZQMap& g) { return {f.zz + g.zz, f.qz + g.qz, f.qq + g.qq}; }
ZQMap operator-(const ZQMap& f, const ZQMap& g) { return {f.zz - g.zz, f.qz - g.qz, f.qq - g.qq}; }
ZQMap operator-(const ZQMap& f) { return {-f.zz, -f.qz, -f.qq}; }

ZQMap compose(const ZQMap& g, const ZQMap& f) {
  if (g.src_z() != f.dst_z() || g.src_q() != f.dst_q()) throw std::invalid_argument("mixed map composition mismatch");
  return {g.zz * f.zz, g.qz * f.zz.cast<Rat>() + g.qq * f.qz, g.qq * f.qq};
}

ZQMap stack_targets(const ZQMap& f, const ZQMap& g) {
  return {IntMatrix::vstack(f.zz, g.zz), QMatrix::vstack(f.qz, g.qz), QMatrix::vstack(f.qq, g.qq)};
}

ZQMap join_sources(const ZQMap& f, const ZQMap& g) {
  return {IntMatrix::hstack(f.zz, g.zz), QMatrix::hstack(f.qz, g.qz), QMatrix::hstack(f.qq, g.qq)};
}

ZQMap block_sum(const ZQMap& f, const ZQMap& g) {
  return {block_diag(f.zz, g.zz), block_diag(f.qz, g.qz), block_diag(f.qq, g.qq)};
}

ZQComplex::ZQComplex(int lowest, std::vector<Dims> dims) : lowest_(lowest), dims_(std::move(dims)) {
  d_.reserve(dims_.size() + 1);
  for (int t = lowest_; t <= highest() + 1; ++t) {
    const Dims src = this->dims(t), dst = this->dims(t - 1);
    d_.push_back(ZQMap::zero(src.z, src.q, dst.z, dst.q));
  }
}

ZQMap ZQComplex::d(int t) const {
  if (!empty() && t >= lowest_ && t <= highest() + 1) return d_[index(t)];
  const Dims src = dims(t), dst = dims(t - 1);
  return ZQMap::zero(src.z, src.q, dst.z, dst.q);
}

void ZQComplex::set_d(int t, ZQMap map) {
  if (empty() || t < lowest_ || t > highest() + 1) throw std::out_of_range("differential degree out of range");
  map.check_shape();
  const Dims src = dims(t), dst = dims(t - 1);
  if (map.src_z() != src.z || map.src_q() != src.q || map.dst_z() != dst.z || map.dst_q() != dst.q)
    throw std::invalid_argument("differential d_" + std::to_string(t) + " has the wrong shape");
  d_[index(t)] = std::move(map);
}

void ZQComplex::validate() const {
  for (int t = lowest_ + 1; t <= highest(); ++t)
    if (!compose(d_[index(t - 1)], d_[index(t)]).is_zero())
      throw std::domain_error("d_" + std::to_string(t - 1) + " d_" + std::to_string(t) + " != 0");
}

ZQComplex shift(const ZQComplex& X, int l) {
  if (X.empty()) return X;
  std::vector<ZQComplex::Dims> dims;
  for (int t = X.lowest(); t <= X.highest(); ++t) dims.push_back(X.dims(t));
  ZQComplex Y(X.lowest() + l, std::move(dims));
  for (int t = X.lowest(); t <= X.highest() + 1; ++t) Y.set_d(t + l, X.d(t));
  return Y;
}

ZQComplex direct_sum(const ZQComplex& X, const ZQComplex& Y) {
  if (X.empty()) return Y;
  if (Y.empty()) return X;
  const int lo = std::min(X.lowest(), Y.lowest()), hi = std::max(X.highest(), Y.highest());
  std::vector<ZQComplex::Dims> dims;
  for (int t = lo; t <= hi; ++t) dims.push_back({X.z_rank(t) + Y.z_rank(t), X.q_dim(t) + Y.q_dim(t)});
  ZQComplex S(lo, std::move(dims));
  for (int t = lo; t <= hi + 1; ++t) S.set_d(t, block_sum(X.d(t), Y.d(t)));
  return S;
}

ZQMap ChainMap::at(int t, const ZQComplex& X, const ZQComplex& Y) const {
  for (const auto& [deg, map] : components)
    if (deg == t) return map;
  return ZQMap::zero(X.z_rank(t), X.q_dim(t), Y.z_rank(t), Y.q_dim(t));
}

void ChainMap::check(const ZQComplex& X, const ZQComplex& Y) const {
  for (const auto& [t, map] : components) {
    if (map.src_z() != X.z_rank(t) || map.src_q() != X.q_dim(t) || map.dst_z() != Y.z_rank(t) ||
        map.dst_q() != Y.q_dim(t))
      throw std::invalid_argument("chain map component at degree " + std::to_string(t) + " has the wrong shape");
  }
  if (X.empty() && Y.empty()) return;
  const int lo = std::min(X.empty() ? Y.lowest() : X.lowest(), Y.empty() ? X.lowest() : Y.lowest());
  const int hi = std::max(X.empty() ? Y.highest() : X.highest(), Y.empty() ? X.highest() : Y.highest());
  for (int t = lo; t <= hi + 1; ++t) {
    const ZQMap lhs = compose(at(t - 1, X, Y), X.d(t));
    const ZQMap rhs = compose(Y.d(t), at(t, X, Y));
    if (!(lhs == rhs)) throw std::domain_error("chain map does not commute with the differential at degree " + std::to_string(t));
  }
}

ChainMap identity_map(const ZQComplex& X) {
  ChainMap f;
  if (X.empty()) return f;
  for (int t = X.lowest(); t <= X.highest(); ++t) f.components.emplace_back(t, ZQMap::identity(X.z_rank(t), X.q_dim(t)));
  return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const ZQComplex& X, const ZQComplex& Y, const ZQComplex& Z) {
  ChainMap h;
  if (X.empty()) return h;
  for (int t = X.lowest(); t <= X.highest(); ++t) h.components.emplace_back(t, compose(g.at(t, Y, Z), f.at(t, X, Y)));
  return h;
}

}  // namespace gerbe
