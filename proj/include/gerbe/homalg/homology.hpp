#pragma once

#include "gerbe/exactalg/echelon.hpp"
#include "gerbe/homalg/complex.hpp"
#include "gerbe/homalg/mixed_group.hpp"

#include <optional>
#include <vector>

namespace gerbe {

// H_i of a ZQComplex together with explicit generators, exact coordinates of cycles and
// boundary preimages.
//
// The group is computed from the short exact sequence 0 -> Q-part -> X -> Z-part -> 0: the
// cokernel of the connecting map H_{i+1}(Z-part) -> H_i(Q-part) is Q^{s-d} ⊕ (Q/Z)^d, and the
// kernel of H_i(Z-part) -> H_{i-1}(Q-part) is Z^{r'} ⊕ T. The extension splits; torsion
// generators are lifted so that their orders are exact.
//
// Generators are ordered free, torsion, rational, torus. A torus generator g represents the
// family x g (x in Q modulo Z).
class Homology {
 public:
  struct Coordinates {
    IntVector free;
    IntVector torsion;
    QVector q;
    QVector torus;
    friend bool operator==(const Coordinates&, const Coordinates&) = default;
  };

  Homology() = default;
  Homology(const ZQComplex& X, int i);

  int degree() const { return degree_; }
  const MixedGroup& group() const { return group_; }
  std::size_t z_rank() const { return a_; }
  std::size_t q_dim() const { return b_; }

  const std::vector<ZQVector>& free_generators() const { return free_gens_; }
  const std::vector<ZQVector>& torsion_generators() const { return torsion_gens_; }
  const std::vector<ZQVector>& q_generators() const { return q_gens_; }
  const std::vector<ZQVector>& torus_generators() const { return torus_gens_; }
  const std::vector<Int>& torsion_orders() const { return group_.torsion; }

  bool is_cycle(const ZQVector& x) const;
  // Raw coordinates are linear in x; torsion entries are defined modulo their orders and torus
  // entries modulo 1. Throws std::domain_error if x is not a cycle.
  Coordinates raw_coordinates(const ZQVector& x) const;
  // Torsion entries reduced into [0, m), torus entries into [0, 1).
  Coordinates coordinates(const ZQVector& x) const { return canonical(raw_coordinates(x)); }
  Coordinates canonical(Coordinates c) const;
  bool is_boundary(const ZQVector& x) const;
  // Some y with d_{i+1} y = x, or none when the class of x is nonzero.
  std::optional<ZQVector> boundary_preimage(const ZQVector& x) const;
  // A cycle with the given coordinates.
  ZQVector representative(const Coordinates& c) const;

 private:
  int degree_ = 0;
  std::size_t a_ = 0, b_ = 0, a_next_ = 0, b_next_ = 0;
  ZQMap d_out_;  // d_i
  ZQMap d_in_;   // d_{i+1}
  MixedGroup group_;

  // Z-part: Kz spans ker A_i; U R V = D is the Smith form of im A_{i+1} in Kz coordinates.
  std::vector<IntVector> kz_;
  std::optional<LatticeCoordinates> kz_coords_;
  DenseInt U_, V_;
  std::vector<Int> diag_;  // length m; zero beyond the rank
  std::vector<std::size_t> torsion_slots_, free_slots_;

  // Q-part: F completes im C_{i+1} to ker C_i.
  std::vector<SparseVec<Rat>> f_;
  std::optional<ColumnSolver> class_solver_;  // columns [C_{i+1} | F]
  std::optional<ColumnSolver> image_solver_;  // columns C_{i+1}

  // Connecting lattice L in F-coordinates with Q-basis P = [e_1 .. e_d | units].
  std::size_t lattice_rank_ = 0;
  std::optional<ColumnSolver> p_solver_;
  std::vector<IntVector> kz_next_;      // basis of ker A_{i+1}
  std::vector<IntVector> lattice_combo_;  // e_k = sum_j combo[k][j] * N_j

  // Kernel part: integral kernel of the connecting map on the free Z-classes.
  std::vector<IntVector> kk_;
  std::optional<LatticeCoordinates> kk_coords_;

  std::vector<ZQVector> free_gens_, torsion_gens_, q_gens_, torus_gens_;

  IntVector z_slot_coordinates(const IntVector& xz) const;
  QVector class_coordinates(const QVector& q) const;
};

MixedGroup homology(const ZQComplex& X, int i);

// Induced map on H_i with respect to the generator systems of the two Homology objects.
struct HomologyMap {
  // Source coordinates (free, torsion | q, torus) to raw target coordinates, as a mixed map:
  // Z-generators go to Z- and Q-coordinates, Q-generators to Q-coordinates.
  ZQMap matrix;
  MixedGroup kernel;
  MixedGroup cokernel;
  bool injective = false;
  bool surjective = false;
  bool iso() const { return injective && surjective; }
};

HomologyMap homology_map(const ZQComplex& X, const ZQComplex& Y, const ChainMap& f, int i);
HomologyMap homology_map(const Homology& HX, const Homology& HY, const ZQMap& f_i);

}  // namespace gerbe
