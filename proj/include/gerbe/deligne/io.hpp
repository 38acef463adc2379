#pragma once

#include "gerbe/deligne/cocycle.hpp"

#include <json.hpp>

namespace gerbe {

// {"n", "k" (or "flat": true), "z": {tuple: int}, "A": [{tuple: {simplex: "p/q"}}, ...]} with
// simplices written as "{a,b}" in vertex names and zero entries omitted.
nlohmann::json cocycle_to_json(const StarSite& site, const DeligneCocycle& X);
// Throws std::invalid_argument on malformed input.
DeligneCocycle cocycle_from_json(const StarSite& site, const nlohmann::json& j);

// Patchwise cochain vectors in the same sparse {tuple: {simplex: "p/q"}} form.
nlohmann::json patch_cochain_to_json(const StarSite& site, int cech, int form, const QVector& v);
QVector patch_cochain_from_json(const StarSite& site, int cech, int form, const nlohmann::json& j);
nlohmann::json integer_cochain_to_json(const SimplicialComplex& M, int p, const IntVector& v);
IntVector integer_cochain_from_json(const SimplicialComplex& M, int p, const nlohmann::json& j);

// Parses "{a,b,...}" in vertex names back to a simplex.
Simplex parse_simplex(const SimplicialComplex& M, const std::string& name);

}  // namespace gerbe
