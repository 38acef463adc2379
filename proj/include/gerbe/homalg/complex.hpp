#pragma once

#include "gerbe/exactalg/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gerbe {

// Element of Z^a ⊕ Q^b.
struct ZQVector {
  IntVector z;
  QVector q;

  static ZQVector zero(std::size_t a, std::size_t b) { return {IntVector(a), QVector(b)}; }
  bool is_zero() const;

  ZQVector& operator+=(const ZQVector& o);
  ZQVector& operator-=(const ZQVector& o);
  friend ZQVector operator+(ZQVector a, const ZQVector& b) { return a += b; }
  friend ZQVector operator-(ZQVector a, const ZQVector& b) { return a -= b; }
  friend ZQVector operator-(ZQVector a);
  // Multiplication by an integer.
  friend ZQVector operator*(const Int& c, ZQVector a);
  friend bool operator==(const ZQVector&, const ZQVector&) = default;
};

// Homomorphism Z^a ⊕ Q^b -> Z^c ⊕ Q^d in block form [[zz, 0], [qz, qq]]; there is no Q -> Z
// block since Hom(Q, Z) = 0.
struct ZQMap {
  IntMatrix zz;  // c x a
  QMatrix qz;    // d x a
  QMatrix qq;    // d x b

  static ZQMap zero(std::size_t a, std::size_t b, std::size_t c, std::size_t d);
  static ZQMap identity(std::size_t a, std::size_t b);

  std::size_t src_z() const { return zz.cols(); }
  std::size_t src_q() const { return qq.cols(); }
  std::size_t dst_z() const { return zz.rows(); }
  std::size_t dst_q() const { return qq.rows(); }

  bool is_zero() const { return zz.is_zero() && qz.is_zero() && qq.is_zero(); }
  ZQVector apply(const ZQVector& x) const;
  // Throws std::invalid_argument unless the three blocks have consistent shapes.
  void check_shape() const;

  friend bool operator==(const ZQMap&, const ZQMap&) = default;
  friend ZQMap operator+(const ZQMap& f, const ZQMap& g);
  friend ZQMap operator-(const ZQMap& f, const ZQMap& g);
  friend ZQMap operator-(const ZQMap& f);
};

// g ∘ f
ZQMap compose(const ZQMap& g, const ZQMap& f);
// [f; g]: stacks the targets.
ZQMap stack_targets(const ZQMap& f, const ZQMap& g);
// [f | g] on the direct sum of the sources, Z-parts first.
ZQMap join_sources(const ZQMap& f, const ZQMap& g);
// f ⊕ g
ZQMap block_sum(const ZQMap& f, const ZQMap& g);

// Bounded chain complex with levels X_t = Z^{a_t} ⊕ Q^{b_t} for lowest <= t <= highest and
// differential d_t : X_t -> X_{t-1}.
class ZQComplex {
 public:
  struct Dims {
    std::size_t z = 0;
    std::size_t q = 0;
    friend bool operator==(const Dims&, const Dims&) = default;
  };

  ZQComplex() = default;
  // Zero differentials; dims[j] is the level lowest + j.
  ZQComplex(int lowest, std::vector<Dims> dims);

  bool empty() const { return dims_.empty(); }
  int lowest() const { return lowest_; }
  int highest() const { return lowest_ + static_cast<int>(dims_.size()) - 1; }
  bool in_range(int t) const { return !empty() && t >= lowest() && t <= highest(); }

  std::size_t z_rank(int t) const { return in_range(t) ? dims_[index(t)].z : 0; }
  std::size_t q_dim(int t) const { return in_range(t) ? dims_[index(t)].q : 0; }
  Dims dims(int t) const { return in_range(t) ? dims_[index(t)] : Dims{}; }

  // d_t : X_t -> X_{t-1}; the zero map of the right shape outside the stored range.
  ZQMap d(int t) const;
  void set_d(int t, ZQMap map);

  ZQVector zero(int t) const { return ZQVector::zero(z_rank(t), q_dim(t)); }

  // Throws std::domain_error naming the first degree where d_{t-1} d_t != 0.
  void validate() const;

  friend bool operator==(const ZQComplex&, const ZQComplex&) = default;

 private:
  std::size_t index(int t) const { return static_cast<std::size_t>(t - lowest_); }

  int lowest_ = 0;
  std::vector<Dims> dims_;
  std::vector<ZQMap> d_;  // d_[j] = d_{lowest + j}, for lowest <= t <= highest + 1
};

// Level t of the result is level t - l of X.
ZQComplex shift(const ZQComplex& X, int l);

ZQComplex direct_sum(const ZQComplex& X, const ZQComplex& Y);

// Levelwise maps f_t : X_t -> Y_t; missing degrees are zero.
struct ChainMap {
  std::vector<std::pair<int, ZQMap>> components;

  // The component at degree t, or the zero map between the given levels.
  ZQMap at(int t, const ZQComplex& X, const ZQComplex& Y) const;
  // Throws std::domain_error naming the degree where f d != d f.
  void check(const ZQComplex& X, const ZQComplex& Y) const;
};

ChainMap identity_map(const ZQComplex& X);
ChainMap compose(const ChainMap& g, const ChainMap& f, const ZQComplex& X, const ZQComplex& Y,
                 const ZQComplex& Z);

QVector to_q(const IntVector& v);

}  // namespace gerbe
