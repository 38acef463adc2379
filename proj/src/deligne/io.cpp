#include "gerbe/deligne/io.hpp"

#include <algorithm>
#include <stdexcept>

namespace gerbe {

Simplex parse_simplex(const SimplicialComplex& M, const std::string& name) {
  if (name.size() < 2 || name.front() != '{' || name.back() != '}')
    throw std::invalid_argument("malformed simplex name " + name);
  const auto& names = M.vertex_names();
  Simplex s;
  std::string body = name.substr(1, name.size() - 2);
  std::size_t start = 0;
  while (start <= body.size()) {
    const std::size_t comma = body.find(',', start);
    const std::string v = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end()) throw std::invalid_argument("unknown vertex " + v + " in " + name);
    s.push_back(static_cast<int>(it - names.begin()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(s.begin(), s.end());
  if (!M.contains(s)) throw std::invalid_argument(name + " is not a simplex");
  return s;
}

nlohmann::json integer_cochain_to_json(const SimplicialComplex& M, int p, const IntVector& v) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t r = 0; r < v.size(); ++r)
    if (v[r] != 0) out[M.simplex_name(M.simplices(p)[r])] = v[r].get_str();
  return out;
}

IntVector integer_cochain_from_json(const SimplicialComplex& M, int p, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("integer cochain must be an object");
  IntVector v(M.count(p));
  for (const auto& [key, value] : j.items()) {
    const Simplex s = parse_simplex(M, key);
    if (static_cast<int>(s.size()) != p + 1) throw std::invalid_argument(key + " has the wrong dimension");
    v[*M.index_of(s)] = value.is_number_integer() ? Int(value.get<long>()) : parse_integer(value.get<std::string>());
  }
  return v;
}

nlohmann::json patch_cochain_to_json(const StarSite& site, int cech, int form, const QVector& v) {
  nlohmann::json out = nlohmann::json::object();
  const SimplicialComplex& M = site.base();
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (v[r] == 0) continue;
    const CochainEntry e = locate_entry(site, cech, form, r);
    out[M.simplex_name(e.tuple)][M.simplex_name(e.simplex)] = to_string(v[r]);
  }
  return out;
}

QVector patch_cochain_from_json(const StarSite& site, int cech, int form, const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("patch cochain must be an object");
  const SimplicialComplex& M = site.base();
  QVector v(site.cech_dim(cech, form));
  for (const auto& [tkey, inner] : j.items()) {
    const Simplex t = parse_simplex(M, tkey);
    if (static_cast<int>(t.size()) != cech + 1) throw std::invalid_argument(tkey + " is not a Čech-" + std::to_string(cech) + " tuple");
    const std::size_t s = *M.index_of(t);
    if (!inner.is_object()) throw std::invalid_argument("entries of " + tkey + " must be an object");
    for (const auto& [skey, value] : inner.items()) {
      const Simplex x = parse_simplex(M, skey);
      if (static_cast<int>(x.size()) != form + 1) throw std::invalid_argument(skey + " has the wrong dimension");
      const auto local = site.patch(cech, s).local_index(form, *M.index_of(x));
      if (!local) throw std::invalid_argument(skey + " is not in the patch of " + tkey);
      v[site.cech_offset(cech, s, form) + *local] =
          value.is_number_integer() ? Rat(value.get<long>()) : parse_rational(value.get<std::string>());
    }
  }
  return v;
}

nlohmann::json cocycle_to_json(const StarSite& site, const DeligneCocycle& X) {
  const int n = X.pars.n;
  nlohmann::json out;
  out["n"] = n;
  if (X.pars.flat)
    out["flat"] = true;
  else
    out["k"] = X.pars.k;
  out["z"] = integer_cochain_to_json(site.base(), n + 2, X.z);
  out["A"] = nlohmann::json::array();
  for (int j = 0; j <= X.pars.top(); ++j)
    out["A"].push_back(patch_cochain_to_json(site, n + 1 - j, j, X.A[static_cast<std::size_t>(j)]));
  return out;
}

DeligneCocycle cocycle_from_json(const StarSite& site, const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const bool flat = j.value("flat", false);
    const DelignePars pars = flat ? DelignePars::flat_marker(n) : DelignePars{n, j.at("k").get<int>(), false};
    pars.validate();
    DeligneCocycle X{pars, integer_cochain_from_json(site.base(), n + 2, j.value("z", nlohmann::json::object())), {}};
    const auto& A = j.at("A");
    if (!A.is_array() || A.size() != static_cast<std::size_t>(pars.top() + 1))
      throw std::invalid_argument("\"A\" must list A_0 ... A_" + std::to_string(pars.top()));
    for (int q = 0; q <= pars.top(); ++q)
      X.A.push_back(patch_cochain_from_json(site, n + 1 - q, q, A[static_cast<std::size_t>(q)]));
    return X;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed cocycle JSON: ") + e.what());
  }
}

}  // namespace gerbe
