#pragma once

#include "gerbe/exactalg/echelon.hpp"
#include "gerbe/homalg/complex.hpp"

#include <map>
#include <optional>

namespace gerbe {

// A submodule Z^p ⊕ Q^r of Z^a ⊕ Q^b, given by an injective embedding whose Z-generators are a
// lattice basis in Hermite form (plus canonical Q-lifts) and whose Q-generators are the RREF
// kernel basis of a Q-block. Coordinates are recovered exactly.
class MixedSubmodule {
 public:
  // The whole module.
  static MixedSubmodule full(std::size_t a, std::size_t b);

  const ZQMap& embedding() const { return embed_; }
  std::size_t z_rank() const { return embed_.src_z(); }
  std::size_t q_dim() const { return embed_.src_q(); }
  bool is_full() const { return full_; }

  bool contains(const ZQVector& x) const;
  // Coordinates of x in the submodule; throws std::domain_error if x is not a member.
  ZQVector coordinates(const ZQVector& x) const;

 private:
  friend MixedSubmodule mixed_kernel(const ZQMap& f);

  ZQMap embed_;
  bool full_ = false;
  std::optional<LatticeCoordinates> lattice_;
  std::vector<std::size_t> free_columns_;
};

// {x : f(x) = 0}
MixedSubmodule mixed_kernel(const ZQMap& f);

// The subcomplex with level t replaced by subs[t] (other levels kept whole). The submodules
// must be preserved by the differential; the restricted differential is computed in the
// submodule coordinates.
ZQComplex subcomplex(const ZQComplex& X, const std::map<int, MixedSubmodule>& subs);

// Smart truncation: degrees > 0 unchanged, degree 0 replaced by the 0-cycles, negative degrees
// dropped.
ZQComplex truncate_nonneg(const ZQComplex& X);

}  // namespace gerbe
