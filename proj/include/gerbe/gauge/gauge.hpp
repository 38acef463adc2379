#pragma once

#include "gerbe/deligne/cocycle.hpp"
#include "gerbe/homalg/submodule.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <random>

namespace gerbe {

// A degree-1 cycle of the Deligne(n, l) total complex: h on the Čech-(n+1) tuples and a[j] a
// j-cochain on the patches of the Čech-(n-j) tuples, j = 0 ... l (a[j] is empty when n - j < 0).
// It represents an automorphism of an n-gerbe with l-connection.
struct GaugeChain {
  DelignePars base;
  IntVector h;
  std::vector<QVector> a;

  static GaugeChain zero(const DeligneComplex& C);
  static GaugeChain from_components(const DelignePars& base, RowComponents y);
  RowComponents components() const { return {h, a}; }
  friend bool operator==(const GaugeChain&, const GaugeChain&) = default;
};

bool is_gauge_cycle(const DeligneComplex& C, const GaugeChain& Y);

// The levelwise section of p^k_l: components of C placed in the same rows of A, zero in the
// rows C lacks.
RowComponents section_s(const DeligneComplex& A, const DeligneComplex& C, int t, const RowComponents& y);

// X + D_A(š Y). Since D_C Y = 0 the result extends the same (z, A_0, ..., A_l); the only changed
// component is A_{l+1} += (-1)^{n-l} d a_l. Throws std::invalid_argument if Y is not a cycle or
// its level exceeds that of X.
DeligneCocycle gauge_act(const StarSite& site, const DeligneCocycle& X, const GaugeChain& Y);

// E_t = {x in A_t : p_t(x) in (τ≥1 C)_t}: all of A_t for t >= 2, the preimage of the 1-cycles of
// C for t = 1 and ker p_t for t <= 0. Its H_0 classifies extensions of a fixed (G, A^{(l)})
// modulo gauge, relative to a basepoint.
class FiberComplex {
 public:
  FiberComplex(const StarSite& site, const DelignePars& pars, int l);

  const DeligneComplex& source() const { return A_; }
  const DeligneComplex& base() const { return C_; }
  int level() const { return l_; }
  // Untruncated fiber complex and its τ≥0.
  const ZQComplex& complex() const { return E_; }
  const ZQComplex& truncated() const { return truncated_; }
  // The inclusion E_t -> A_t (whole when absent).
  const MixedSubmodule* submodule(int t) const;
  ZQVector embed(int t, const ZQVector& e) const;
  ZQVector coordinates(int t, const ZQVector& x) const;

 private:
  DeligneComplex A_, C_;
  int l_;
  std::map<int, MixedSubmodule> subs_;
  ZQComplex E_, truncated_;
};

struct GaugeWitness {
  GaugeChain chain;   // p(w)
  RowComponents w;    // a degree-1 element of Deligne(n, k) with X + D w = X'
};

// A witness when X and X' (same pars, same projection to level l) differ by a gauge
// transformation of (G, A^{(l)}) together with a shift of the higher connection data; none
// otherwise.
std::optional<GaugeWitness> are_gauge_equivalent(const StarSite& site, const DeligneCocycle& X,
                                                 const DeligneCocycle& Xp, int l);
bool check_witness(const StarSite& site, const DeligneCocycle& X, const DeligneCocycle& Xp, const GaugeWitness& w);

// A random element of Z_1(Deligne(n, l)): integer combinations of the lattice generators and
// half-integer combinations of the rational ones.
GaugeChain random_gauge_chain(std::mt19937& rng, const DeligneComplex& C);

// π_i of the automorphisms of an n-gerbe with l-connection, H_{i+1} of Deligne(n, l), with the
// delooping cross-check against π_i of (n-1)-gerbes with l-connection (n >= 1), flat when
// l = n + 1 or flat.
struct AutReport {
  MixedGroup group;
  std::optional<MixedGroup> delooped;
  bool agrees() const { return !delooped || *delooped == group; }
};
AutReport aut_pi(const StarSite& site, const DelignePars& pars, int i);

nlohmann::json gauge_chain_to_json(const StarSite& site, const GaugeChain& Y);
GaugeChain gauge_chain_from_json(const StarSite& site, const nlohmann::json& j);

}  // namespace gerbe
