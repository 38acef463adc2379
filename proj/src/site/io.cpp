#include "gerbe/site/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gerbe {

namespace {

std::string next_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok.starts_with("#")) {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    return tok;
  }
  throw std::invalid_argument("OFF file ends early");
}

long next_number(std::istream& in) {
  const std::string tok = next_token(in);
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("OFF file: expected an integer, got '" + tok + "'");
  }
}

}  // namespace

SimplicialComplex read_complex_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("complex JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("facets"))
    throw std::invalid_argument("complex JSON needs \"vertices\" and \"facets\"");
  auto name = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    throw std::invalid_argument("vertex names must be strings or integers");
  };
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(name(v));
  std::vector<std::vector<std::string>> facets;
  for (const auto& f : j.at("facets")) {
    if (!f.is_array()) throw std::invalid_argument("each facet must be an array");
    std::vector<std::string> cell;
    for (const auto& v : f) cell.push_back(name(v));
    facets.push_back(std::move(cell));
  }
  return SimplicialComplex(std::move(vertices), facets);
}

std::string write_complex_json(const SimplicialComplex& M) {
  nlohmann::json j;
  j["vertices"] = M.vertex_names();
  j["facets"] = nlohmann::json::array();
  for (const auto& f : M.facets()) {
    std::vector<std::string> cell;
    for (int v : f) cell.push_back(M.vertex_names()[static_cast<std::size_t>(v)]);
    j["facets"].push_back(cell);
  }
  return j.dump();
}

SimplicialComplex read_off(std::istream& in) {
  const std::string header = next_token(in);
  if (header != "OFF") throw std::invalid_argument("OFF file must start with 'OFF'");
  const long nv = next_number(in), nf = next_number(in);
  next_number(in);  // edge count, unused
  if (nv < 0 || nf < 0) throw std::invalid_argument("OFF file has negative counts");
  for (long i = 0; i < 3 * nv; ++i) next_token(in);
  std::vector<Simplex> facets;
  for (long f = 0; f < nf; ++f) {
    const long k = next_number(in);
    if (k < 1) throw std::invalid_argument("OFF face with no vertices");
    Simplex s;
    for (long i = 0; i < k; ++i) s.push_back(static_cast<int>(next_number(in)));
    facets.push_back(std::move(s));
  }
  return SimplicialComplex::from_indices(static_cast<std::size_t>(nv), facets);
}

SimplicialComplex load_complex(const std::string& spec) {
  if (auto M = named_complex(spec)) return *M;
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("unknown complex '" + spec + "' (not a builder name or readable file)");
  if (spec.ends_with(".off") || spec.ends_with(".OFF")) return read_off(in);
  return read_complex_json(in);
}

}  // namespace gerbe
