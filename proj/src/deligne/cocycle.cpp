#include "gerbe/deligne/cocycle.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace gerbe {

namespace {

int sign_of(int e) { return e % 2 == 0 ? 1 : -1; }

QVector apply_q(const IntMatrix& m, const QVector& x) { return m.cast<Rat>().apply(x); }

void axpy(QVector& y, int s, const QVector& x) {
  for (std::size_t r = 0; r < y.size(); ++r) y[r] += s > 0 ? x[r] : Rat(-x[r]);
}

std::optional<std::size_t> first_nonzero(const QVector& v) {
  for (std::size_t r = 0; r < v.size(); ++r)
    if (v[r] != 0) return r;
  return std::nullopt;
}

std::string sign_text(int e) { return e % 2 == 0 ? "+" : "-"; }

}  // namespace

DeligneCocycle DeligneCocycle::zero(const StarSite& site, const DelignePars& pars) {
  pars.validate();
  const int n = pars.n;
  DeligneCocycle X{pars, IntVector(site.base().count(n + 2)), {}};
  for (int j = 0; j <= pars.top(); ++j) X.A.emplace_back(site.cech_dim(n + 1 - j, j));
  return X;
}

DeligneCocycle DeligneCocycle::from_components(const DelignePars& pars, RowComponents x) {
  return {pars, std::move(x.z), std::move(x.forms)};
}

DeligneCocycle& DeligneCocycle::operator+=(const DeligneCocycle& o) {
  if (pars != o.pars || z.size() != o.z.size() || A.size() != o.A.size())
    throw std::invalid_argument("adding cocycles of different shapes");
  for (std::size_t r = 0; r < z.size(); ++r) z[r] += o.z[r];
  for (std::size_t j = 0; j < A.size(); ++j) axpy(A[j], 1, o.A[j]);
  return *this;
}

DeligneCocycle& DeligneCocycle::operator-=(const DeligneCocycle& o) {
  if (pars != o.pars || z.size() != o.z.size() || A.size() != o.A.size())
    throw std::invalid_argument("subtracting cocycles of different shapes");
  for (std::size_t r = 0; r < z.size(); ++r) z[r] -= o.z[r];
  for (std::size_t j = 0; j < A.size(); ++j) axpy(A[j], -1, o.A[j]);
  return *this;
}

CochainEntry locate_entry(const StarSite& site, int cech, int form, std::size_t index) {
  const SimplicialComplex& M = site.base();
  for (std::size_t s = 0; s < M.count(cech); ++s) {
    const std::size_t lo = site.cech_offset(cech, s, form), hi = site.cech_offset(cech, s + 1, form);
    if (index >= lo && index < hi) {
      const std::size_t g = site.patch(cech, s).cells[static_cast<std::size_t>(form)][index - lo];
      return {M.simplices(cech)[s], M.simplices(form)[g]};
    }
  }
  throw std::out_of_range("cochain index out of range");
}

std::string CocycleReport::message() const {
  if (ok) return "ok";
  std::string m = equation + " fails on tuple " + tuple;
  if (!simplex.empty()) m += " at simplex " + simplex;
  return m;
}

CocycleReport validate_cocycle(const StarSite& site, const DeligneCocycle& X) {
  const SimplicialComplex& M = site.base();
  const DelignePars& p = X.pars;
  p.validate();
  const int n = p.n, top = p.top();
  if (X.z.size() != M.count(n + 2) || X.A.size() != static_cast<std::size_t>(top + 1))
    return {false, "shape", "", ""};
  for (int j = 0; j <= top; ++j)
    if (X.A[static_cast<std::size_t>(j)].size() != site.cech_dim(n + 1 - j, j))
      return {false, "shape of A_" + std::to_string(j), "", ""};

  const IntVector dz = coboundary(M, whole(M), n + 2).apply(X.z);
  for (std::size_t r = 0; r < dz.size(); ++r)
    if (dz[r] != 0) return {false, "δz = 0", M.simplex_name(M.simplices(n + 3)[r]), ""};

  auto report = [&](const std::string& eq, int cech, int form, const QVector& v) -> std::optional<CocycleReport> {
    const auto r = first_nonzero(v);
    if (!r) return std::nullopt;
    const CochainEntry e = locate_entry(site, cech, form, *r);
    return CocycleReport{false, eq, M.simplex_name(e.tuple), M.simplex_name(e.simplex)};
  };

  QVector e0 = apply_q(site.cech_delta(n + 1, 0), X.A[0]);
  axpy(e0, sign_of(n + 2), apply_q(site.constant_inclusion(n + 2), to_q(X.z)));
  if (auto r = report("δA_0 " + sign_text(n + 2) + " ιz = 0", n + 2, 0, e0)) return *r;

  for (int j = 0; j < top; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    QVector e = apply_q(site.cech_delta(n - j, j + 1), X.A[ju + 1]);
    axpy(e, sign_of(n + 1 - j), apply_q(site.patch_coboundary(n + 1 - j, j), X.A[ju]));
    const std::string eq =
        "δA_" + std::to_string(j + 1) + " " + sign_text(n + 1 - j) + " dA_" + std::to_string(j) + " = 0";
    if (auto r = report(eq, n + 1 - j, j + 1, e)) return *r;
  }
  if (p.flat) {
    const QVector e = apply_q(site.patch_coboundary(0, n + 1), X.A[static_cast<std::size_t>(n + 1)]);
    if (auto r = report("dA_" + std::to_string(n + 1) + " = 0", 0, n + 2, e)) return *r;
  }
  return {};
}

DeligneCocycle projection_p(const DeligneCocycle& X, int l) {
  if (l < 0 || l > X.pars.top()) throw std::invalid_argument("projection level out of range");
  DeligneCocycle Y = X;
  Y.pars = {X.pars.n, l, false};
  Y.A.resize(static_cast<std::size_t>(l + 1));
  return Y;
}

QVector solve_cech(const StarSite& site, int cech, int form, const QVector& b) {
  const std::size_t cols = site.cech_dim(cech, form);
  if (std::all_of(b.begin(), b.end(), [](const Rat& v) { return v == 0; })) return QVector(cols);
  if (cech < 0) throw std::domain_error("nonzero right-hand side below Čech degree 0");
  const ColumnSolver solver(site.cech_delta(cech, form).cast<Rat>());
  auto x = solver.solve(b);
  if (!x) throw std::domain_error("Čech equation has no solution");
  return *x;
}

namespace {

// Replaces A_{n+1} by a closed representative, shifting it by the restriction of a global
// cochain; possible exactly when the curvature is exact.
void make_flat(const StarSite& site, DeligneCocycle& X) {
  const int n = X.pars.n;
  DeligneCocycle full = X;
  full.pars = {n, n + 1, false};
  const CurvatureForm F = curvature(site, full);
  const SimplicialComplex& M = site.base();
  QVector omega(M.count(n + 1));
  if (first_nonzero(F.H)) {
    const ColumnSolver solver(coboundary(M, whole(M), n + 1).cast<Rat>());
    auto w = solver.solve(F.H);
    if (!w) throw std::domain_error("class is not torsion; there is no flat connection");
    omega = *w;
  }
  axpy(X.A[static_cast<std::size_t>(n + 1)], -1, apply_q(site.global_restriction(n + 1), omega));
}

}  // namespace

DeligneCocycle extend_cocycle(const StarSite& site, const DeligneCocycle& X, const DelignePars& target) {
  target.validate();
  const int n = X.pars.n, from = X.pars.top();
  if (target.n != n || target.top() < from || (X.pars.flat && !target.flat))
    throw std::invalid_argument("cannot extend " + X.pars.to_string() + " to " + target.to_string());
  DeligneCocycle Y = X;
  Y.pars = target;
  for (int j = from; j < target.top(); ++j) {
    QVector b = apply_q(site.patch_coboundary(n + 1 - j, j), Y.A[static_cast<std::size_t>(j)]);
    for (auto& v : b) v = -sign_of(n + 1 - j) * v;
    Y.A.push_back(solve_cech(site, n - j, j + 1, b));
  }
  if (target.flat && !X.pars.flat) make_flat(site, Y);
  return Y;
}

DeligneCocycle cocycle_from_class(const StarSite& site, const DelignePars& pars, const IntVector& c) {
  pars.validate();
  const SimplicialComplex& M = site.base();
  const int n = pars.n;
  if (c.size() != M.count(n + 2)) throw std::invalid_argument("class cochain has the wrong size");
  const IntVector dc = coboundary(M, whole(M), n + 2).apply(c);
  if (std::any_of(dc.begin(), dc.end(), [](const Int& v) { return v != 0; }))
    throw std::domain_error("class cochain is not closed");
  DeligneCocycle X{{n, 0, false}, c, {}};
  QVector b = apply_q(site.constant_inclusion(n + 2), to_q(c));
  for (auto& v : b) v = sign_of(n + 1) * v;
  X.A.push_back(solve_cech(site, n + 1, 0, b));
  return extend_cocycle(site, X, pars);
}

CurvatureForm curvature(const StarSite& site, const DeligneCocycle& X) {
  const int n = X.pars.n;
  if (X.pars.top() < n + 1) throw std::invalid_argument("curvature needs a full connection");
  const SimplicialComplex& M = site.base();
  const QVector dA = apply_q(site.patch_coboundary(0, n + 1), X.A[static_cast<std::size_t>(n + 1)]);
  CurvatureForm F{n + 2, QVector(M.count(n + 2))};
  for (std::size_t r = 0; r < F.H.size(); ++r) {
    const Simplex& rho = M.simplices(n + 2)[r];
    const std::size_t v = static_cast<std::size_t>(rho.front());
    const auto local = site.patch(0, v).local_index(n + 2, r);
    F.H[r] = dA[site.cech_offset(0, v, n + 2) + *local];
  }
  if (apply_q(site.global_restriction(n + 2), F.H) != dA)
    throw std::domain_error("dA_" + std::to_string(n + 1) + " does not glue to a global cochain");
  return F;
}

int curvature_sign(int n) { return sign_of(n); }

Homology class_homology(const StarSite& site, int n) {
  return Homology(cochain_complex(site.base(), whole(site.base()), Coeff::Z), -(n + 2));
}

Homology::Coordinates cocycle_class(const StarSite& site, const DeligneCocycle& X) {
  return class_homology(site, X.pars.n).coordinates(ZQVector{X.z, {}});
}

bool curvature_integrality_check(const StarSite& site, const DeligneCocycle& X) {
  const int n = X.pars.n;
  const CurvatureForm F = curvature(site, X);
  QVector diff = F.H;
  axpy(diff, -curvature_sign(n), to_q(X.z));
  if (diff.empty()) return true;
  const Homology H(cochain_complex(site.base(), whole(site.base()), Coeff::Q), -(n + 2));
  return H.is_boundary(ZQVector{{}, diff});
}

DeligneCocycle u1_to_z_model(const StarSite& site, const U1Data& data) {
  const int n = data.n, k = data.k;
  const DelignePars pars{n, k, false};
  pars.validate();
  const SimplicialComplex& M = site.base();
  const int t = n + 1;
  if (data.g.size() != site.cech_dim(t, 0) || data.A.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("U(1) data has the wrong shape");

  QVector dlog;
  if (k >= 1) {
    dlog = apply_q(site.cech_delta(n, 1), data.A[0]);
    if (n % 2 != 0)
      for (auto& v : dlog) v = -v;
  }
  QVector lift(data.g.size());
  for (std::size_t s = 0; s < M.count(t); ++s) {
    const Subcomplex& P = site.patch(t, s);
    const std::size_t o0 = site.cech_offset(t, s, 0), o1 = site.cech_offset(t, s, 1);
    const std::size_t nv = P.count(0);
    const std::string where = M.simplex_name(M.simplices(t)[s]);
    if (k == 0) {
      for (std::size_t r = 0; r < nv; ++r) {
        if (frac_of(data.g[o0 + r] - data.g[o0]) != 0)
          throw std::invalid_argument("g is not constant on the patch of " + where);
        lift[o0 + r] = frac_of(data.g[o0]);
      }
      continue;
    }
    std::vector<std::vector<std::pair<std::size_t, Rat>>> adj(nv);
    for (std::size_t e = 0; e < P.count(1); ++e) {
      const Simplex& edge = M.simplices(1)[P.cells[1][e]];
      const std::size_t a = *P.local_index(0, static_cast<std::size_t>(edge[0]));
      const std::size_t b = *P.local_index(0, static_cast<std::size_t>(edge[1]));
      adj[a].push_back({b, dlog[o1 + e]});
      adj[b].push_back({a, -dlog[o1 + e]});
    }
    std::vector<char> seen(nv, 0);
    std::queue<std::size_t> todo;
    lift[o0] = frac_of(data.g[o0]);
    seen[0] = 1;
    todo.push(0);
    while (!todo.empty()) {
      const std::size_t u = todo.front();
      todo.pop();
      for (const auto& [w, step] : adj[u]) {
        const Rat value = lift[o0 + u] + step;
        if (!seen[w]) {
          if (frac_of(value - data.g[o0 + w]) != 0)
            throw std::invalid_argument("(-1)^{n+1} dlog g + δA_1 = 0 fails modulo Z on the patch of " + where);
          lift[o0 + w] = value;
          seen[w] = 1;
          todo.push(w);
        } else if (lift[o0 + w] != value) {
          throw std::invalid_argument("δA_1 is not exact along the patch of " + where);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw std::invalid_argument("patch of " + where + " is not connected");
  }

  const QVector w = apply_q(site.cech_delta(t, 0), lift);
  IntVector z(M.count(n + 2));
  for (std::size_t s = 0; s < z.size(); ++s) {
    const std::size_t o = site.cech_offset(n + 2, s, 0), e = site.cech_offset(n + 2, s + 1, 0);
    for (std::size_t r = o; r < e; ++r)
      if (!is_integral(w[r]) || w[r] != w[o])
        throw std::invalid_argument("δg = 0 fails in Q/Z on tuple " + M.simplex_name(M.simplices(n + 2)[s]));
    if (o < e) z[s] = sign_of(n + 1) * w[o].get_num();
  }
  DeligneCocycle X{pars, z, {lift}};
  for (const auto& a : data.A) X.A.push_back(a);
  const CocycleReport rep = validate_cocycle(site, X);
  if (!rep.ok) throw std::invalid_argument("U(1) data violates its equations: " + rep.message());
  return X;
}

U1Data z_to_u1_model(const DeligneCocycle& X) {
  if (X.pars.flat) throw std::invalid_argument("U(1) export takes a connection level, not the flat marker");
  U1Data d{X.pars.n, X.pars.k, X.A[0], {}};
  for (auto& v : d.g) v = frac_of(v);
  for (std::size_t j = 1; j < X.A.size(); ++j) d.A.push_back(X.A[j]);
  return d;
}

}  // namespace gerbe

namespace gerbe {

IntVector random_class(std::mt19937& rng, const StarSite& site, int n, bool torsion_only) {
  const SimplicialComplex& M = site.base();
  const Homology H = class_homology(site, n);
  IntVector c(M.count(n + 2));
  std::uniform_int_distribution<int> coef(-2, 2);
  auto add = [&](const std::vector<ZQVector>& gens) {
    for (const auto& g : gens) {
      const int a = coef(rng);
      for (std::size_t r = 0; r < c.size(); ++r) c[r] += a * g.z[r];
    }
  };
  if (!torsion_only) add(H.free_generators());
  add(H.torsion_generators());
  if (n + 1 <= M.dimension()) {
    IntVector b(M.count(n + 1));
    for (auto& v : b) v = coef(rng);
    const IntVector db = coboundary(M, whole(M), n + 1).apply(b);
    for (std::size_t r = 0; r < c.size(); ++r) c[r] += db[r];
  }
  return c;
}

}  // namespace gerbe
