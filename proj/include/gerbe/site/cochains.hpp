#pragma once

#include "gerbe/homalg/complex.hpp"
#include "gerbe/homalg/double_complex.hpp"
#include "gerbe/homalg/mixed_group.hpp"
#include "gerbe/site/simplicial_complex.hpp"

#include <string>
#include <vector>

namespace gerbe {

// Coboundary C^p(L) -> C^{p+1}(L) in the local ordering of L:
// (df)(σ) = Σ_k (-1)^k f(σ without its k-th vertex).
IntMatrix coboundary(const SimplicialComplex& M, const Subcomplex& L, int p);
// Restriction C^p(L) -> C^p(Lsub) for Lsub ⊆ L.
IntMatrix restriction(const Subcomplex& L, const Subcomplex& Lsub, int p);
// The cochain complex of L with C^p at level -p, so that H^p = homology at degree -p.
ZQComplex cochain_complex(const SimplicialComplex& M, const Subcomplex& L, Coeff coeff);
MixedGroup simplicial_cohomology(const SimplicialComplex& M, Coeff coeff, int j);

// The closed-star cover of M indexed by simplices, with the Čech maps between patchwise
// cochains. Čech degree i runs over the i-simplices of M (ordered tuples spanning a simplex).
class StarSite {
 public:
  explicit StarSite(SimplicialComplex M);

  const SimplicialComplex& base() const { return M_; }
  const Subcomplex& patch(int i, std::size_t s) const { return patches_[static_cast<std::size_t>(i)][s]; }

  // ⊕_{σ ∈ M_i} C^j(St σ): total size and the offset of σ's block.
  std::size_t cech_dim(int i, int j) const;
  std::size_t cech_offset(int i, std::size_t s, int j) const;

  // (δa)_τ = Σ_k (-1)^k a_{∂_k τ} restricted to St τ, from Čech degree i to i + 1.
  IntMatrix cech_delta(int i, int j) const;
  // The coboundary of every patch, C^j -> C^{j+1}, in Čech degree i.
  IntMatrix patch_coboundary(int i, int j) const;
  // Z^{M_i} -> ⊕_{M_i} C^0(St σ): integers as constant functions.
  IntMatrix constant_inclusion(int i) const;
  // C^j(M) -> ⊕_{M_0} C^j(St v).
  IntMatrix global_restriction(int j) const;

 private:
  SimplicialComplex M_;
  std::vector<std::vector<Subcomplex>> patches_;
  std::vector<std::vector<std::vector<std::size_t>>> offsets_;  // [i][j][s], with a final total
};

struct AcyclicityReport {
  bool ok = true;
  std::string failure;  // the offending simplex or Čech row
};

// Every closed star is Q-acyclic and the Čech complex of every form degree is exact in
// positive degrees with H^0 the global cochains.
AcyclicityReport star_acyclicity_check(const SimplicialComplex& M);

}  // namespace gerbe
