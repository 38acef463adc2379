#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gerbe {

// Strictly increasing vertex indices; the order fixes the orientation.
using Simplex = std::vector<int>;

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  // Throws std::invalid_argument on an empty facet, an unknown or repeated vertex, or a
  // duplicate vertex name. Vertices keep the given order.
  SimplicialComplex(std::vector<std::string> vertices, const std::vector<std::vector<std::string>>& facets);
  // Vertices named "0", "1", ...
  static SimplicialComplex from_indices(std::size_t vertex_count, const std::vector<Simplex>& facets);

  const std::vector<std::string>& vertex_names() const { return names_; }
  std::size_t vertex_count() const { return names_.size(); }
  int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
  // Maximal simplices, sorted.
  const std::vector<Simplex>& facets() const { return facets_; }

  // The p-simplices in lexicographic order; empty outside [0, dimension].
  const std::vector<Simplex>& simplices(int p) const;
  std::size_t count(int p) const { return simplices(p).size(); }
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  std::string simplex_name(const Simplex& s) const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  void build(std::vector<Simplex> facets);

  std::vector<std::string> names_;
  std::vector<Simplex> facets_;
  std::vector<std::vector<Simplex>> simplices_;
};

// A subcomplex of a fixed complex, as sorted indices into its simplex lists.
struct Subcomplex {
  std::vector<std::vector<std::size_t>> cells;  // cells[p]

  std::size_t count(int p) const;
  bool empty() const { return count(0) == 0; }
  // Position of the global p-simplex index g in cells[p].
  std::optional<std::size_t> local_index(int p, std::size_t g) const;
  bool contains(int p, std::size_t g) const { return local_index(p, g).has_value(); }
  // Every simplex of this subcomplex lies in o.
  bool is_subset_of(const Subcomplex& o) const;

  friend bool operator==(const Subcomplex&, const Subcomplex&) = default;
};

Subcomplex whole(const SimplicialComplex& M);
// Faces of all simplices containing sigma; empty when sigma is not a simplex.
Subcomplex closed_star(const SimplicialComplex& M, const Simplex& sigma);
// The subcomplex as a complex in its own right, with the inherited vertex order.
SimplicialComplex as_complex(const SimplicialComplex& M, const Subcomplex& L);

// Builders.
SimplicialComplex circle(int m);
SimplicialComplex sphere(int n);       // boundary of the (n+1)-simplex
SimplicialComplex simplex(int n);      // the full n-simplex
SimplicialComplex torus2();            // 7-vertex torus
SimplicialComplex rp2();               // 6-vertex projective plane
SimplicialComplex klein();             // 3 x 3 grid with a flipped identification
SimplicialComplex product(const SimplicialComplex& K, const SimplicialComplex& L);  // staircase
SimplicialComplex barycentric(const SimplicialComplex& K);

// Builder by name: circle3, circleN, sphereN, torus2, rp2, klein, rp2xS1, or sd(<name>).
std::optional<SimplicialComplex> named_complex(const std::string& name);

// Vertex permutations p (as images of 0..n-1) mapping the facet set onto itself, in
// lexicographic order.
std::vector<std::vector<int>> automorphisms(const SimplicialComplex& M);

// The image of a simplex under a vertex permutation, re-sorted, with the sign of the sorting
// permutation.
std::pair<Simplex, int> permute_simplex(const std::vector<int>& perm, const Simplex& s);

}  // namespace gerbe
