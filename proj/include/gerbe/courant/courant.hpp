#pragma once

#include "gerbe/deligne/cocycle.hpp"

#include <json.hpp>

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gerbe {

// Descent data of an exact Courant algebroid: a 2-cochain F on the patch of every Čech-1 tuple
// with δF = 0 and dF = 0.
struct ECAObject {
  QVector F;
  friend bool operator==(const ECAObject&, const ECAObject&) = default;
};

// A B-field transformation E0 -> E1: a closed 2-cochain b per vertex patch with δb = F1 - F0.
struct ECAMorphism {
  QVector b;
  friend bool operator==(const ECAMorphism&, const ECAMorphism&) = default;
};

// An exact Courant algebroid with an isotropic splitting: δB = F, B a 2-cochain per vertex patch.
struct ECASplitObject {
  QVector F;
  QVector B;
  friend bool operator==(const ECASplitObject&, const ECASplitObject&) = default;
};

bool is_eca_object(const StarSite& site, const ECAObject& E);
bool is_eca_morphism(const StarSite& site, const ECAObject& E0, const ECAObject& E1, const ECAMorphism& m);
bool is_split_object(const StarSite& site, const ECASplitObject& S);
// The unique morphism between split objects, b = B1 - B0, when it is closed; none otherwise.
std::optional<ECAMorphism> split_morphism(const StarSite& site, const ECASplitObject& S0, const ECASplitObject& S1);

// The Čech complex of closed 2-cochains placed in degree 1: π_0 = H^3(M;Q), π_1 = the closed
// global 2-cochains. Throws std::invalid_argument unless i is 0 or 1.
MixedGroup eca_pi(const StarSite& site, int i);

// F = dA_1 on every Čech-1 patch. Throws std::invalid_argument unless X is a valid cocycle with
// n = 1, k = 1.
ECAObject atca(const StarSite& site, const DeligneCocycle& X);

// A splitting B with δB = F and the class of E in H^3(M;Q), in the generator basis of the
// homology routine on the rational cochain complex of M (empty when dim M < 3). Normalized so
// that severa_class(atca(X)) is the image of [z]: with the curvature sign [H] = -[z] for n = 1
// this is -[dB].
struct SeveraClass {
  QVector B;
  QVector H;            // the global closed 3-cochain dB
  QVector coordinates;  // of -[H]
};
SeveraClass severa_class(const StarSite& site, const ECAObject& E);
// Coordinates of a closed global 3-cochain in that basis.
QVector rational_class_3(const StarSite& site, const QVector& h);
// The image of an integer 3-cocycle in H^3(M;Q), in the same basis.
QVector rational_image(const StarSite& site, const IntVector& c);

struct SquareEntry {
  std::string generator;  // "free 0", "torsion 0 (Z/2)", ...
  QVector severa;
  QVector expected;
  bool ok = false;
};
struct SquareReport {
  std::vector<SquareEntry> entries;
  bool additive = true;
  // The kernel of H^3(M;Z) -> H^3(M;Q) on the generators: exactly the torsion ones.
  bool kills_exactly_torsion = true;
  bool ok() const;
};
// Commutativity of DD and Ševera classes with atca on the generators of H^3(M;Z), plus
// additivity of atca and severa_class on random pairs.
SquareReport dd_severa_square(const StarSite& site, std::uint32_t seed = 1, int pairs = 4);

// Curvings (A_2 with δA_2 = dA_1) and splittings of atca(X) (B with δB = dA_1) solve the same
// system; A_2 ↦ B is the identity on cochains. Both solution sets are torsors over C^2(M;Q)
// restricted to the vertex stars.
struct SplittingReport {
  QVector curving;
  QVector splitting;
  std::size_t torsor_dim = 0;  // dim ker δ on Čech-0 2-cochains
  bool ok = false;
};
// Throws std::invalid_argument unless X is a valid cocycle with n = 1, k = 1.
SplittingReport splittings_vs_curvings(const StarSite& site, const DeligneCocycle& X);

nlohmann::json eca_to_json(const StarSite& site, const ECAObject& E);
nlohmann::json eca_to_json(const StarSite& site, const ECASplitObject& S);
// Reads {"F"} or {"F", "B"} (B left empty when absent); throws std::invalid_argument on
// malformed input.
ECASplitObject eca_from_json(const StarSite& site, const nlohmann::json& j);

}  // namespace gerbe
