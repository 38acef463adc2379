#pragma once

#include "gerbe/homalg/complex.hpp"

#include <random>

namespace gerbe {

struct RandomComplexOptions {
  int lowest = 0;
  int levels = 4;
  std::size_t max_z = 3;
  std::size_t max_q = 3;
  int max_entry = 3;  // bound on numerators and denominators of every entry
};

// A random valid ZQComplex: each differential's columns are small random combinations of the
// kernel generators of the next differential down, kept only when all entries stay in range.
ZQComplex random_complex(std::mt19937_64& rng, const RandomComplexOptions& options = {});

}  // namespace gerbe
