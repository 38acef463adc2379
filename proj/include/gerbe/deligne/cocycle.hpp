#pragma once

#include "gerbe/deligne/deligne.hpp"

#include <random>
#include <string>
#include <vector>

namespace gerbe {

// Z-model transition data (z, A_0, ..., A_top) of an n-gerbe with connection. z lives on the
// Čech-(n+2) tuples; A[j] is a j-cochain on the patch of every Čech-(n+1-j) tuple, stored as
// one vector in StarSite block order.
struct DeligneCocycle {
  DelignePars pars;
  IntVector z;
  std::vector<QVector> A;

  static DeligneCocycle zero(const StarSite& site, const DelignePars& pars);
  static DeligneCocycle from_components(const DelignePars& pars, RowComponents x);
  RowComponents components() const { return {z, A}; }

  DeligneCocycle& operator+=(const DeligneCocycle& o);
  DeligneCocycle& operator-=(const DeligneCocycle& o);
  friend DeligneCocycle operator+(DeligneCocycle a, const DeligneCocycle& b) { return a += b; }
  friend DeligneCocycle operator-(DeligneCocycle a, const DeligneCocycle& b) { return a -= b; }
  friend bool operator==(const DeligneCocycle&, const DeligneCocycle&) = default;
};

// Position of one entry of a patchwise cochain vector.
struct CochainEntry {
  Simplex tuple;    // the Čech tuple
  Simplex simplex;  // the simplex of its patch
};
CochainEntry locate_entry(const StarSite& site, int cech, int form, std::size_t index);

struct CocycleReport {
  bool ok = true;
  std::string equation;
  std::string tuple;    // the Čech tuple where it fails
  std::string simplex;  // the simplex of the patch, for form equations
  std::string message() const;
};

// Checks δz = 0, δA_0 + (-1)^{n+2} ιz = 0, δA_{j+1} + (-1)^{n+1-j} dA_j = 0 for j = 0 ... top-1,
// and dA_{n+1} = 0 when flat.
CocycleReport validate_cocycle(const StarSite& site, const DeligneCocycle& X);

// Forgets A_{l+1} ... A_top. A flat cocycle projects to any l <= n + 1.
DeligneCocycle projection_p(const DeligneCocycle& X, int l);

// Some x with δ x = b in Čech degree cech, form degree form; throws std::domain_error when
// there is none.
QVector solve_cech(const StarSite& site, int cech, int form, const QVector& b);

// Runs the exactness zig-zag from z = c (an integer (n+2)-cocycle of M) up to the connection
// level of pars. Throws std::domain_error if c is not closed, or if pars is flat and c is not
// torsion.
DeligneCocycle cocycle_from_class(const StarSite& site, const DelignePars& pars, const IntVector& c);
// Continues the zig-zag from X to a higher connection level.
DeligneCocycle extend_cocycle(const StarSite& site, const DeligneCocycle& X, const DelignePars& target);

// The global (n+2)-cochain H with H restricted to every vertex star equal to dA_{n+1}.
struct CurvatureForm {
  int degree = 0;
  QVector H;
  friend bool operator==(const CurvatureForm&, const CurvatureForm&) = default;
};
CurvatureForm curvature(const StarSite& site, const DeligneCocycle& X);

// With the sign convention of the cocycle equations, [H] = (-1)^n [z] in H^{n+2}(M;Q).
int curvature_sign(int n);
bool curvature_integrality_check(const StarSite& site, const DeligneCocycle& X);

// H^{n+2}(M;Z) with generators, and the class of z in it.
Homology class_homology(const StarSite& site, int n);
Homology::Coordinates cocycle_class(const StarSite& site, const DeligneCocycle& X);
// A random integer (n+2)-cocycle: coefficients in [-2, 2] on the generators of H^{n+2}(M;Z) (the
// torsion ones only when torsion_only) plus a random coboundary.
IntVector random_class(std::mt19937& rng, const StarSite& site, int n, bool torsion_only = false);

// U(1)-model data: g is a Q/Z-valued 0-cochain on the patch of every Čech-(n+1) tuple (any
// rational representatives), A[j - 1] = A_j for j = 1 ... k.
struct U1Data {
  int n = 0;
  int k = 0;
  QVector g;
  std::vector<QVector> A;
};

// Lifts g to Q on every patch (integrating (-1)^n δA_1 along edges when k >= 1, constant on the
// patch when k = 0), sets A_0 to the lift and reads z off δ(lift). Throws std::invalid_argument
// when the U(1)-model equations fail.
DeligneCocycle u1_to_z_model(const StarSite& site, const U1Data& data);
// g = A_0 modulo 1.
U1Data z_to_u1_model(const DeligneCocycle& X);

}  // namespace gerbe
