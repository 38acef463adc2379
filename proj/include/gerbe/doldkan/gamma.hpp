#pragma once

#include "gerbe/doldkan/simplex_category.hpp"
#include "gerbe/homalg/complex.hpp"
#include "gerbe/homalg/mixed_group.hpp"

#include <map>
#include <random>
#include <utility>
#include <vector>

namespace gerbe {

// An r-simplex of ΓC: one element of C_t for every surjection [r] ->> [t]. Only nonzero
// components are stored.
class GammaSimplex {
 public:
  GammaSimplex() = default;
  explicit GammaSimplex(int level) : level_(level) {}

  int level() const { return level_; }
  const std::map<Surjection, ZQVector>& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  // The component at phi, or the zero vector of C_t.
  ZQVector component(const Surjection& phi, const ZQComplex& C) const;
  // Adds v to the component at phi; throws std::invalid_argument unless phi is a surjection
  // from [level].
  void add(const Surjection& phi, const ZQVector& v);

  GammaSimplex& operator+=(const GammaSimplex& o);
  GammaSimplex& operator-=(const GammaSimplex& o);
  friend GammaSimplex operator+(GammaSimplex a, const GammaSimplex& b) { return a += b; }
  friend GammaSimplex operator-(GammaSimplex a, const GammaSimplex& b) { return a -= b; }
  friend GammaSimplex operator-(GammaSimplex a);
  friend bool operator==(const GammaSimplex&, const GammaSimplex&) = default;

 private:
  int level_ = 0;
  std::map<Surjection, ZQVector> components_;
};

// The summands of (ΓC)_r, ordered by t and then lexicographically; levels with C_t = 0 are
// omitted.
std::vector<std::pair<Surjection, int>> gamma_level_summands(const ZQComplex& C, int r);

// (ΓC)(θ) : (ΓC)_r -> (ΓC)_s for θ : [s] -> [r]. Each component x_φ goes through the
// epi-mono factorization φ∘θ = ι∘π: to π when ι is the identity, to π after ∂_C when ι = δ_0,
// and is dropped otherwise.
GammaSimplex apply_simplicial(const ZQComplex& C, const MonotoneMap& theta, const GammaSimplex& x);

GammaSimplex face(const ZQComplex& C, int i, const GammaSimplex& x);
GammaSimplex degeneracy(const ZQComplex& C, int j, const GammaSimplex& x);

// (ΓC)_r flattened to Z^a ⊕ Q^b, summands in gamma_level_summands order.
struct GammaLevel {
  struct Slot {
    Surjection phi;
    int t;
    std::size_t z_offset, q_offset;
  };
  int r = 0;
  std::vector<Slot> slots;
  std::map<Surjection, std::size_t> index;
  std::size_t z = 0, q = 0;

  ZQVector flatten(const GammaSimplex& x, const ZQComplex& C) const;
  GammaSimplex unflatten(const ZQVector& v) const;
};
GammaLevel gamma_level(const ZQComplex& C, int r);

// The matrix of (ΓC)(θ) between flattened levels.
ZQMap simplicial_matrix(const ZQComplex& C, const MonotoneMap& theta);

// N(ΓC): levels ∩_{i>=1} ker d_i with differential d_0, in canonical coordinates; equals C on
// its nonnegative levels.
ZQComplex normalized_chains(const ZQComplex& C);

// Faces y_i (i != missing) of a horn Λ^dim_missing.
struct Horn {
  int dim = 1;
  int missing = 0;
  std::map<int, GammaSimplex> faces;
};

// Throws std::domain_error naming the first failing identity d_i y_j = d_{j-1} y_i.
void check_horn(const ZQComplex& C, const Horn& horn);

// A dim-simplex whose faces other than the missing one are the horn's (Moore's algorithm).
GammaSimplex horn_filler(const ZQComplex& C, const Horn& horn);

// π_i(ΓC) at the zero vertex; all basepoints give isomorphic groups.
MixedGroup homotopy_group(const ZQComplex& C, int i);

// Random simplex with small integer and half-integer entries.
GammaSimplex random_simplex(std::mt19937_64& rng, const ZQComplex& C, int r, int max_entry = 3);

// The horn of a random simplex, so it is compatible by construction.
Horn random_horn(std::mt19937_64& rng, const ZQComplex& C, int dim, int missing);

}  // namespace gerbe
