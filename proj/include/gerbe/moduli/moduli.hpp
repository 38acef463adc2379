#pragma once

#include "gerbe/gauge/gauge.hpp"

#include <json.hpp>

#include <optional>
#include <random>
#include <vector>

namespace gerbe {

// π_i of the space of k-connections on a fixed (G, A^{(l)}): H_i of the pure-forms complex
// ker p^k_l. For i = 0 the group acts simply transitively on components; the basepoint is one
// explicit extension.
struct ConReport {
  MixedGroup group;
  std::optional<DeligneCocycle> basepoint;
};
ConReport con_pi(const StarSite& site, const DeligneCocycle& G, const DelignePars& target, int i);
// The complex ker p^k_l with rows C^{l+1} ... C^top.
ZQComplex pure_forms_complex(const DeligneComplex& A, const DeligneComplex& C);

// π_i of the moduli of extensions of (G, A^{(l)}) to target, modulo gauge: H_i of the fiber
// complex. The basepoint and an independently generated second extension are both checked to
// be valid extensions; basepoint is empty when no extension exists (flat target, non-torsion G).
struct ModuliReport {
  std::vector<MixedGroup> pi;  // i = 0 ... n + 2
  std::optional<DeligneCocycle> basepoint;
  bool basepoint_independent = true;
};
ModuliReport moduli_pi(const StarSite& site, const DeligneCocycle& G, const DelignePars& target,
                       std::uint32_t seed = 1);

struct EquivalenceReport {
  int l = 0, lp = 0;
  ModuliReport low, high;
  bool equivalent = false;
};
// Compares the moduli over A^{(l)} and A^{(l')} (truncations of a common extension of G) in every
// degree 0 ... n + 2.
EquivalenceReport equivalence_check(const StarSite& site, const DeligneCocycle& G, const DelignePars& target, int l,
                                    int lp);

nlohmann::json moduli_report_to_json(const StarSite& site, const ModuliReport& r,
                                     std::optional<bool> equivalence = std::nullopt);

// A vertex permutation of M that maps simplices to simplices.
struct SimplicialSymmetry {
  std::vector<int> image;

  static SimplicialSymmetry identity(std::size_t n);
  bool is_identity() const;
  friend bool operator==(const SimplicialSymmetry&, const SimplicialSymmetry&) = default;
  friend auto operator<=>(const SimplicialSymmetry&, const SimplicialSymmetry&) = default;
};
// (f ∘ g)(v) = f(g(v)); pullbacks compose as (f ∘ g)* = g* ∘ f*.
SimplicialSymmetry compose(const SimplicialSymmetry& f, const SimplicialSymmetry& g);
SimplicialSymmetry inverse(const SimplicialSymmetry& f);
std::vector<SimplicialSymmetry> symmetries(const SimplicialComplex& M);

// (f*c)(σ) = ±c(f σ) with the sign of sorting f σ.
IntVector pullback_cochain(const SimplicialComplex& M, const SimplicialSymmetry& f, int p, const IntVector& c);
QVector pullback_cochain(const SimplicialComplex& M, const SimplicialSymmetry& f, int p, const QVector& c);
// Patchwise cochains: tuple and simplex signs combined.
QVector pullback_patch_cochain(const StarSite& site, const SimplicialSymmetry& f, int cech, int form, const QVector& v);
// Throws std::invalid_argument unless f is an automorphism of the base.
DeligneCocycle pullback_cocycle(const StarSite& site, const SimplicialSymmetry& f, const DeligneCocycle& X);
GaugeChain pullback_gauge_chain(const StarSite& site, const SimplicialSymmetry& f, const GaugeChain& Y);

// {f : f*G ≃ G}, compared by Deligne class (for k <= n this is the class in H^{n+2}(M;Z)).
// Throws std::logic_error if the result is not closed under composition and inverses.
std::vector<SimplicialSymmetry> diff_preserving_class(const StarSite& site, const DeligneCocycle& G);

struct SymFiber {
  SimplicialSymmetry f;
  RowComponents identification;  // w with G = f*G + D w
  bool torsor = false;           // every π_0 Aut generator moves w to a distinct point of the fiber
};
struct SymReport {
  MixedGroup aut;  // π_0 Aut(G) = H_1
  std::size_t symmetries = 0;
  std::optional<Int> order;  // |H| · |π_0 Aut| when π_0 Aut is finite
  std::vector<SymFiber> fibers;
  bool ok() const;
};
// π_0 of Aut(G) -> Sym(G) -> H: surjectivity (an identification over every f) and torsor fibers.
// Throws std::invalid_argument if some f in H does not preserve the class of G.
SymReport sym_pi0(const StarSite& site, const DeligneCocycle& G, const std::vector<SimplicialSymmetry>& H);

}  // namespace gerbe
