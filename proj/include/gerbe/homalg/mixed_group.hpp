#pragma once

#include "gerbe/exactalg/number.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gerbe {

// Z^free_rank ⊕ Z/m_1 ⊕ ... ⊕ Z/m_j ⊕ Q^q_dim ⊕ (Q/Z)^torus_rank with m_1 | m_2 | ... and m_i >= 2.
struct MixedGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;
  std::size_t q_dim = 0;
  std::size_t torus_rank = 0;

  static MixedGroup zero() { return {}; }
  static MixedGroup free(std::size_t r) { return {r, {}, 0, 0}; }
  static MixedGroup rational(std::size_t s) { return {0, {}, s, 0}; }
  static MixedGroup torus(std::size_t t) { return {0, {}, 0, t}; }
  // Builds the canonical torsion list from arbitrary cyclic orders (1s are dropped).
  static MixedGroup with_torsion(std::vector<Int> orders);

  bool is_zero() const { return free_rank == 0 && torsion.empty() && q_dim == 0 && torus_rank == 0; }
  bool is_finite() const { return free_rank == 0 && q_dim == 0 && torus_rank == 0; }
  // Product of the torsion orders; meaningful when is_finite().
  Int order() const;

  // Z^r ⊕ Z/m ⊕ Q^s ⊕ (Q/Z)^t, or "0".
  std::string to_string() const;

  friend bool operator==(const MixedGroup&, const MixedGroup&) = default;
};

MixedGroup direct_sum(const MixedGroup& a, const MixedGroup& b);

// The torsion summands alone.
MixedGroup torsion_part(const MixedGroup& g);

}  // namespace gerbe
