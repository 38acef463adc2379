#pragma once

#include "gerbe/site/simplicial_complex.hpp"

#include <istream>
#include <string>

namespace gerbe {

// {"vertices": [name, ...], "facets": [[name, ...], ...]}; throws std::invalid_argument.
SimplicialComplex read_complex_json(std::istream& in);
std::string write_complex_json(const SimplicialComplex& M);

// OFF surface: header, counts, vertex coordinates (ignored), then "k v_1 ... v_k" faces.
SimplicialComplex read_off(std::istream& in);

// A builder name (see named_complex) or a path ending in .json or .off.
SimplicialComplex load_complex(const std::string& spec);

}  // namespace gerbe
