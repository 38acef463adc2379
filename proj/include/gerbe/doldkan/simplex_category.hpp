#pragma once

#include <compare>
#include <string>
#include <vector>

namespace gerbe {

// Monotone map [source] -> [target] of finite ordinals, stored by its values.
struct MonotoneMap {
  int target = 0;
  std::vector<int> values;  // values[i] is the image of i

  MonotoneMap() = default;
  // Throws std::invalid_argument unless the values are non-decreasing and lie in [0, target].
  MonotoneMap(int target, std::vector<int> values);

  int source() const { return static_cast<int>(values.size()) - 1; }
  int operator()(int i) const { return values[static_cast<std::size_t>(i)]; }
  bool is_surjective() const;
  bool is_injective() const;
  bool is_identity() const { return is_injective() && is_surjective(); }

  static MonotoneMap identity(int n);
  // δ_i : [n-1] -> [n], the injection missing i.
  static MonotoneMap face(int n, int i);
  // σ_j : [n+1] -> [n], the surjection hitting j twice.
  static MonotoneMap degeneracy(int n, int j);

  std::string to_string() const;

  friend auto operator<=>(const MonotoneMap&, const MonotoneMap&) = default;
  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
};

// Surjections index the summands of Γ; the type is a MonotoneMap that is onto.
using Surjection = MonotoneMap;

// g ∘ f
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

// The unique factorization f = mono ∘ epi with epi surjective and mono injective.
struct EpiMono {
  Surjection epi;
  MonotoneMap mono;
};
EpiMono factorize(const MonotoneMap& f);

// All surjections [r] ->> [t] in lexicographic order of their values; there are binomial(r, t).
std::vector<Surjection> surjections(int r, int t);

}  // namespace gerbe
