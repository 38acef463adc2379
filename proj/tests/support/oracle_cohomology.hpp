#pragma once

#include "gerbe/exactalg/normal_form.hpp"
#include "gerbe/homalg/mixed_group.hpp"
#include "gerbe/site/simplicial_complex.hpp"

#include <algorithm>

namespace oracle {

using namespace gerbe;

// Independent oracle: H^j(M; Z) from Smith forms of coboundary matrices built here by direct
// face enumeration.
inline IntMatrix oracle_coboundary(const SimplicialComplex& M, int p) {
  const auto& lo = M.simplices(p);
  const auto& hi = M.simplices(p + 1);
  MatrixBuilder<Int> b(hi.size(), lo.size());
  for (std::size_t r = 0; r < hi.size(); ++r)
    for (std::size_t k = 0; k < hi[r].size(); ++k) {
      Simplex f = hi[r];
      f.erase(f.begin() + static_cast<long>(k));
      const auto c = std::find(lo.begin(), lo.end(), f) - lo.begin();
      b.add(r, static_cast<std::size_t>(c), Int(k % 2 ? -1 : 1));
    }
  return b.build();
}

inline MixedGroup oracle_cohomology(const SimplicialComplex& M, int j) {
  const std::size_t cj = M.count(j);
  std::size_t rank_out = 0;
  if (j + 1 <= M.dimension())
    for (const auto& d : invariant_factors(oracle_coboundary(M, j)))
      if (d != 0) ++rank_out;
  std::vector<Int> torsion;
  std::size_t rank_in = 0;
  if (j >= 1)
    for (const auto& d : invariant_factors(oracle_coboundary(M, j - 1)))
      if (d != 0) {
        ++rank_in;
        if (d > 1) torsion.push_back(d);
      }
  MixedGroup g = MixedGroup::with_torsion(torsion);
  g.free_rank = cj - rank_out - rank_in;
  return g;
}

}  // namespace oracle
