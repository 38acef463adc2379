#include "gerbe/site/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace gerbe {

namespace {

// All nonempty faces of s (including s).
void for_each_face(const Simplex& s, auto&& f) {
  const std::size_t n = s.size();
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) face.push_back(s[i]);
    f(face);
  }
}

std::vector<std::string> index_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> vertices,
                                     const std::vector<std::vector<std::string>>& facets)
    : names_(std::move(vertices)) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!index.emplace(names_[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate vertex name '" + names_[i] + "'");
  std::vector<Simplex> fs;
  for (const auto& f : facets) {
    Simplex s;
    for (const auto& v : f) {
      const auto it = index.find(v);
      if (it == index.end()) throw std::invalid_argument("facet uses unknown vertex '" + v + "'");
      s.push_back(it->second);
    }
    fs.push_back(std::move(s));
  }
  build(std::move(fs));
}

SimplicialComplex SimplicialComplex::from_indices(std::size_t vertex_count, const std::vector<Simplex>& facets) {
  SimplicialComplex M;
  M.names_ = index_names(vertex_count);
  for (const auto& f : facets)
    for (int v : f)
      if (v < 0 || static_cast<std::size_t>(v) >= vertex_count)
        throw std::invalid_argument("facet uses unknown vertex " + std::to_string(v));
  M.build(facets);
  return M;
}

void SimplicialComplex::build(std::vector<Simplex> facets) {
  for (auto& f : facets) {
    if (f.empty()) throw std::invalid_argument("empty facet");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw std::invalid_argument("facet repeats a vertex");
  }
  // Every vertex is a simplex, even when no facet lists it.
  for (std::size_t v = 0; v < names_.size(); ++v) facets.push_back({static_cast<int>(v)});

  std::set<Simplex> all;
  for (const auto& f : facets) for_each_face(f, [&](const Simplex& s) { all.insert(s); });
  std::set<Simplex> maximal(facets.begin(), facets.end());
  for (auto it = maximal.begin(); it != maximal.end();) {
    bool is_max = true;
    for (std::size_t v = 0; v < names_.size() && is_max; ++v) {
      if (std::binary_search(it->begin(), it->end(), static_cast<int>(v))) continue;
      Simplex bigger = *it;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), static_cast<int>(v)), static_cast<int>(v));
      if (all.contains(bigger)) is_max = false;
    }
    it = is_max ? std::next(it) : maximal.erase(it);
  }
  facets_.assign(maximal.begin(), maximal.end());

  simplices_.clear();
  for (const auto& s : all) {
    const std::size_t p = s.size() - 1;
    if (simplices_.size() <= p) simplices_.resize(p + 1);
    simplices_[p].push_back(s);
  }
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const {
  static const std::vector<Simplex> none;
  if (p < 0 || p > dimension()) return none;
  return simplices_[static_cast<std::size_t>(p)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  const auto& list = simplices(static_cast<int>(s.size()) - 1);
  const auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::string SimplicialComplex::simplex_name(const Simplex& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    const auto v = static_cast<std::size_t>(s[i]);
    out += v < names_.size() ? names_[v] : std::to_string(s[i]);
  }
  return out + "}";
}

std::size_t Subcomplex::count(int p) const {
  return p >= 0 && static_cast<std::size_t>(p) < cells.size() ? cells[static_cast<std::size_t>(p)].size() : 0;
}

std::optional<std::size_t> Subcomplex::local_index(int p, std::size_t g) const {
  if (p < 0 || static_cast<std::size_t>(p) >= cells.size()) return std::nullopt;
  const auto& c = cells[static_cast<std::size_t>(p)];
  const auto it = std::lower_bound(c.begin(), c.end(), g);
  if (it == c.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - c.begin());
}

bool Subcomplex::is_subset_of(const Subcomplex& o) const {
  for (std::size_t p = 0; p < cells.size(); ++p)
    for (std::size_t g : cells[p])
      if (!o.contains(static_cast<int>(p), g)) return false;
  return true;
}

Subcomplex whole(const SimplicialComplex& M) {
  Subcomplex L;
  for (int p = 0; p <= M.dimension(); ++p) {
    L.cells.emplace_back(M.count(p));
    for (std::size_t i = 0; i < M.count(p); ++i) L.cells.back()[i] = i;
  }
  return L;
}

Subcomplex closed_star(const SimplicialComplex& M, const Simplex& sigma) {
  Subcomplex L;
  if (!M.contains(sigma)) return L;
  std::set<Simplex> faces;
  for (const auto& f : M.facets())
    if (std::includes(f.begin(), f.end(), sigma.begin(), sigma.end()))
      for_each_face(f, [&](const Simplex& s) { faces.insert(s); });
  for (const auto& s : faces) {
    const std::size_t p = s.size() - 1;
    if (L.cells.size() <= p) L.cells.resize(p + 1);
    L.cells[p].push_back(*M.index_of(s));
  }
  for (auto& c : L.cells) std::sort(c.begin(), c.end());
  return L;
}

SimplicialComplex as_complex(const SimplicialComplex& M, const Subcomplex& L) {
  std::vector<std::string> names;
  std::map<int, int> relabel;
  for (std::size_t g : L.cells.empty() ? std::vector<std::size_t>{} : L.cells[0]) {
    relabel.emplace(M.simplices(0)[g][0], static_cast<int>(names.size()));
    names.push_back(M.vertex_names()[static_cast<std::size_t>(M.simplices(0)[g][0])]);
  }
  std::vector<std::vector<std::string>> facets;
  for (std::size_t p = 0; p < L.cells.size(); ++p)
    for (std::size_t g : L.cells[p]) {
      std::vector<std::string> f;
      for (int v : M.simplices(static_cast<int>(p))[g]) f.push_back(M.vertex_names()[static_cast<std::size_t>(v)]);
      facets.push_back(std::move(f));
    }
  return SimplicialComplex(std::move(names), facets);
}

SimplicialComplex circle(int m) {
  if (m < 3) throw std::invalid_argument("circle needs at least 3 vertices");
  std::vector<Simplex> f;
  for (int i = 0; i < m; ++i) f.push_back({std::min(i, (i + 1) % m), std::max(i, (i + 1) % m)});
  return SimplicialComplex::from_indices(static_cast<std::size_t>(m), f);
}

SimplicialComplex sphere(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be at least 1");
  std::vector<Simplex> f;
  for (int skip = 0; skip <= n + 1; ++skip) {
    Simplex s;
    for (int v = 0; v <= n + 1; ++v)
      if (v != skip) s.push_back(v);
    f.push_back(std::move(s));
  }
  return SimplicialComplex::from_indices(static_cast<std::size_t>(n) + 2, f);
}

SimplicialComplex simplex(int n) {
  if (n < 0) throw std::invalid_argument("simplex dimension must be nonnegative");
  Simplex s;
  for (int v = 0; v <= n; ++v) s.push_back(v);
  return SimplicialComplex::from_indices(static_cast<std::size_t>(n) + 1, {s});
}

SimplicialComplex torus2() {
  std::vector<Simplex> f;
  for (int i = 0; i < 7; ++i) {
    f.push_back({i, (i + 1) % 7, (i + 3) % 7});
    f.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_indices(7, f);
}

SimplicialComplex rp2() {
  return SimplicialComplex::from_indices(
      6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5}, {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

SimplicialComplex klein() {
  // Square grid on Z/3 x Z/3 where wrapping in y reflects x.
  auto vertex = [](int x, int y) {
    if (y >= 3) {
      y -= 3;
      x = -x;
    }
    return ((x % 3) + 3) % 3 * 3 + y;
  };
  std::vector<Simplex> f;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      f.push_back({vertex(x, y), vertex(x + 1, y), vertex(x + 1, y + 1)});
      f.push_back({vertex(x, y), vertex(x, y + 1), vertex(x + 1, y + 1)});
    }
  return SimplicialComplex::from_indices(9, f);
}

SimplicialComplex product(const SimplicialComplex& K, const SimplicialComplex& L) {
  const auto nl = static_cast<int>(L.vertex_count());
  std::vector<std::string> names;
  for (const auto& a : K.vertex_names())
    for (const auto& b : L.vertex_names()) names.push_back("(" + a + "," + b + ")");
  std::vector<std::vector<std::string>> facets;
  for (const auto& s : K.facets())
    for (const auto& t : L.facets()) {
      const int p = static_cast<int>(s.size()) - 1, q = static_cast<int>(t.size()) - 1;
      // Monotone lattice paths from (0,0) to (p,q): choose which of the p+q steps move in K.
      for (unsigned long mask = 0; mask < (1UL << (p + q)); ++mask) {
        if (__builtin_popcountl(mask) != p) continue;
        int i = 0, j = 0;
        std::vector<std::string> cell{names[static_cast<std::size_t>(s[0] * nl + t[0])]};
        for (int step = 0; step < p + q; ++step) {
          (mask & (1UL << step)) ? ++i : ++j;
          cell.push_back(names[static_cast<std::size_t>(s[static_cast<std::size_t>(i)] * nl + t[static_cast<std::size_t>(j)])]);
        }
        facets.push_back(std::move(cell));
      }
    }
  return SimplicialComplex(std::move(names), facets);
}

SimplicialComplex barycentric(const SimplicialComplex& K) {
  std::vector<std::string> names;
  std::map<Simplex, int> vertex_of;
  for (int p = 0; p <= K.dimension(); ++p)
    for (const auto& s : K.simplices(p)) {
      vertex_of.emplace(s, static_cast<int>(names.size()));
      names.push_back(K.simplex_name(s));
    }
  std::vector<std::vector<std::string>> facets;
  for (const auto& f : K.facets()) {
    // Full flags of faces of f correspond to orderings of its vertices.
    Simplex order = f;
    do {
      Simplex face;
      std::vector<std::string> cell;
      for (int v : order) {
        face.insert(std::upper_bound(face.begin(), face.end(), v), v);
        cell.push_back(names[static_cast<std::size_t>(vertex_of.at(face))]);
      }
      facets.push_back(std::move(cell));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return SimplicialComplex(std::move(names), facets);
}

std::optional<SimplicialComplex> named_complex(const std::string& name) {
  if (name.starts_with("sd(") && name.ends_with(")")) {
    auto inner = named_complex(name.substr(3, name.size() - 4));
    if (!inner) return std::nullopt;
    return barycentric(*inner);
  }
  if (name == "torus2") return torus2();
  if (name == "rp2") return rp2();
  if (name == "klein") return klein();
  if (name == "rp2xS1") return product(rp2(), circle(3));
  auto number = [&](std::string_view prefix, int min) -> std::optional<int> {
    if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }) || rest.size() > 4)
      return std::nullopt;
    const int v = std::stoi(rest);
    return v >= min ? std::optional<int>(v) : std::nullopt;
  };
  if (auto m = number("circle", 3)) return circle(*m);
  if (auto n = number("sphere", 1)) return sphere(*n);
  return std::nullopt;
}

std::vector<std::vector<int>> automorphisms(const SimplicialComplex& M) {
  const std::size_t n = M.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : M.simplices(1)) {
    adj[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = 1;
    adj[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] = 1;
  }
  // Vertex invariant: the number of simplices of each dimension containing it.
  std::vector<std::vector<std::size_t>> signature(n, std::vector<std::size_t>(static_cast<std::size_t>(M.dimension()) + 1));
  for (int p = 0; p <= M.dimension(); ++p)
    for (const auto& s : M.simplices(p))
      for (int v : s) ++signature[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)];
  const std::set<Simplex> facet_set(M.facets().begin(), M.facets().end());

  std::vector<std::vector<int>> out;
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      for (const auto& f : M.facets())
        if (!facet_set.contains(permute_simplex(perm, f).first)) return;
      out.push_back(perm);
      return;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || signature[w] != signature[v]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u) ok = adj[u][v] == adj[static_cast<std::size_t>(perm[u])][w];
      if (!ok) continue;
      perm[v] = static_cast<int>(w);
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
    }
    perm[v] = -1;
  };
  rec(rec, 0);
  return out;
}

std::pair<Simplex, int> permute_simplex(const std::vector<int>& perm, const Simplex& s) {
  Simplex image;
  for (int v : s) image.push_back(perm[static_cast<std::size_t>(v)]);
  int sign = 1;
  for (std::size_t i = 0; i < image.size(); ++i)
    for (std::size_t j = i + 1; j < image.size(); ++j)
      if (image[i] > image[j]) sign = -sign;
  std::sort(image.begin(), image.end());
  return {image, sign};
}

}  // namespace gerbe
