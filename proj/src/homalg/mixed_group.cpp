#include "gerbe/homalg/mixed_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace gerbe {

namespace {

// Prime-power decomposition of a positive integer by trial division; torsion orders here are
// small.
std::map<Int, std::vector<Int>> prime_powers(const std::vector<Int>& orders) {
  std::map<Int, std::vector<Int>> out;
  for (Int m : orders) {
    if (m < 0) m = -m;
    if (m == 0) throw std::invalid_argument("torsion order must be nonzero");
    for (Int p = 2; p * p <= m; ++p) {
      if (m % p != 0) continue;
      Int q = 1;
      while (m % p == 0) {
        m /= p;
        q *= p;
      }
      out[p].push_back(q);
    }
    if (m > 1) out[m].push_back(m);
  }
  return out;
}

}  // namespace

MixedGroup MixedGroup::with_torsion(std::vector<Int> orders) {
  // Invariant factors from elementary divisors: the largest factor takes the largest power of
  // every prime, and so on.
  auto pp = prime_powers(orders);
  std::size_t count = 0;
  for (auto& [p, powers] : pp) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    count = std::max(count, powers.size());
  }
  std::vector<Int> factors(count, 1);
  for (const auto& [p, powers] : pp)
    for (std::size_t k = 0; k < powers.size(); ++k) factors[count - 1 - k] *= powers[k];
  MixedGroup g;
  g.torsion = std::move(factors);
  return g;
}

Int MixedGroup::order() const {
  Int n = 1;
  for (const auto& m : torsion) n *= m;
  return n;
}

std::string MixedGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank > 0) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& m : torsion) parts.push_back("Z/" + m.get_str());
  if (q_dim > 0) parts.push_back("Q^" + std::to_string(q_dim));
  if (torus_rank > 0) parts.push_back("(Q/Z)^" + std::to_string(torus_rank));
  if (parts.empty()) return "0";
  std::string s = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
  return s;
}

MixedGroup direct_sum(const MixedGroup& a, const MixedGroup& b) {
  std::vector<Int> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  MixedGroup g = MixedGroup::with_torsion(std::move(orders));
  g.free_rank = a.free_rank + b.free_rank;
  g.q_dim = a.q_dim + b.q_dim;
  g.torus_rank = a.torus_rank + b.torus_rank;
  return g;
}

MixedGroup torsion_part(const MixedGroup& g) {
  MixedGroup t;
  t.torsion = g.torsion;
  return t;
}

}  // namespace gerbe
