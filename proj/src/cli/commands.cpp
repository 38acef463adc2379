#include "gerbe/cli/commands.hpp"

#include "gerbe/cli/verify.hpp"
#include "gerbe/courant/courant.hpp"
#include "gerbe/deligne/io.hpp"
#include "gerbe/moduli/moduli.hpp"
#include "gerbe/site/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>

namespace gerbe {

namespace {

using nlohmann::json;

// Left-aligned columns separated by two spaces.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], display_width(row[c]));
      }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) line += std::string(width[c] - display_width(row[c]) + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  // Counts code points, so that "⊕" and "↦" take one column.
  static std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  }

  std::vector<std::vector<std::string>> rows_;
};

struct Loaded {
  std::string name;
  SimplicialComplex M;
};

Loaded load(const RunConfig& config) {
  const std::string spec = normalize_complex_spec(config.complex);
  return {spec, load_complex(spec)};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("'" + path + "' is not JSON: " + e.what());
  }
}

void check_n(int n) {
  if (n < 0 || n > 4) throw std::invalid_argument("--n must lie in 0 ... 4");
}

std::vector<int> degrees(const RunConfig& config, int top) {
  if (!config.i) {
    std::vector<int> all;
    for (int i = 0; i <= top; ++i) all.push_back(i);
    return all;
  }
  if (*config.i < 0 || *config.i > top) throw std::invalid_argument("--i must lie in 0 ... " + std::to_string(top));
  return {*config.i};
}

DelignePars pars_from(const RunConfig& config) {
  check_n(config.n);
  if (config.flat && config.k) throw std::invalid_argument("--flat and --k are exclusive");
  const DelignePars pars = config.flat ? DelignePars::flat_marker(config.n) : DelignePars{config.n, config.k.value_or(config.n + 1), false};
  pars.validate();
  return pars;
}

std::string header(const Loaded& in) {
  return in.name + ": " + std::to_string(in.M.vertex_count()) + " vertices, dimension " +
         std::to_string(in.M.dimension());
}

std::string show_vector(const QVector& v) {
  if (std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; })) return "0";
  std::string s = "[";
  for (std::size_t r = 0; r < v.size(); ++r) s += (r ? ", " : "") + v[r].get_str();
  return s + "]";
}

std::string describe_map(const HomologyMap& m) {
  if (m.iso()) return "iso";
  if (m.surjective) return "onto, kernel " + m.kernel.to_string();
  return m.injective ? "into" : "kernel " + m.kernel.to_string();
}

int cmd_cohomology(const RunConfig& config, std::ostream& out) {
  const Loaded in = load(config);
  json rows = json::array();
  Table t({"j", "H^j(M;Z)", "H^j(M;Q)"});
  for (int j = 0; j <= in.M.dimension(); ++j) {
    const std::string z = simplicial_cohomology(in.M, Coeff::Z, j).to_string();
    const std::string q = simplicial_cohomology(in.M, Coeff::Q, j).to_string();
    rows.push_back({{"j", j}, {"Z", z}, {"Q", q}});
    t.add({std::to_string(j), z, q});
  }
  if (config.format == "json") {
    out << json{{"complex", in.name}, {"cohomology", rows}}.dump(2) << '\n';
  } else {
    out << header(in) << '\n';
    t.print(out);
  }
  return kExitOk;
}

int cmd_deligne(const RunConfig& config, std::ostream& out) {
  const Loaded in = load(config);
  const DelignePars pars = pars_from(config);
  const StarSite site(in.M);
  json rows = json::array();
  Table t({"i", "π_i", "H^{n+2-i}(M;Z)", "comparison"});
  for (const int i : degrees(config, pars.n + 2)) {
    const std::string g = gerbe_pi(site, pars, i).to_string();
    const ProjectionReport c = class_comparison(site, pars, i);
    rows.push_back({{"i", i}, {"pi", g}, {"class_group", c.target.to_string()}, {"comparison", describe_map(c.map)}});
    t.add({std::to_string(i), g, c.target.to_string(), describe_map(c.map)});
  }
  if (config.format == "json") {
    out << json{{"complex", in.name}, {"pars", pars.to_string()}, {"pi", rows}}.dump(2) << '\n';
  } else {
    out << header(in) << ", " << pars.to_string() << '\n';
    t.print(out);
  }
  return kExitOk;
}

int cmd_moduli(const RunConfig& config, std::ostream& out) {
  const Loaded in = load(config);
  const DelignePars target = pars_from(config);
  const int n = target.n;
  const int l = config.l.value_or(0);
  if (l < 0 || l > n) throw std::invalid_argument("--l must lie in 0 ... " + std::to_string(n));
  const StarSite site(in.M);

  DeligneCocycle G = DeligneCocycle::zero(site, {n, l, false});
  if (!config.cocycle.empty()) {
    G = cocycle_from_json(site, read_json_file(config.cocycle));
    if (G.pars.n != n) throw std::invalid_argument("the cocycle file has n = " + std::to_string(G.pars.n));
    const CocycleReport v = validate_cocycle(site, G);
    if (!v.ok) throw std::invalid_argument("the cocycle file is not a cocycle: " + v.message());
    if (G.pars.top() < l) throw std::invalid_argument("the cocycle file has no level " + std::to_string(l));
  }
  const ModuliReport r = moduli_pi(site, projection_p(G, l), target, config.seed);

  const DeligneCocycle G0 = projection_p(G, 0);
  std::vector<std::vector<bool>> matrix(static_cast<std::size_t>(n + 1), std::vector<bool>(static_cast<std::size_t>(n + 1), true));
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const bool eq = equivalence_check(site, G0, target, a, b).equivalent;
      matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = eq;
      matrix[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = eq;
    }
  bool all = true;
  for (const auto& row : matrix)
    for (const bool x : row) all = all && x;

  if (config.format == "json") {
    json j = moduli_report_to_json(site, r, all);
    j["complex"] = in.name;
    j["target"] = target.to_string();
    j["l"] = l;
    j["matrix"] = matrix;
    out << j.dump(2) << '\n';
  } else {
    out << header(in) << ", target " << target.to_string() << ", over A^(" << l << ")\n";
    if (r.pi.empty()) {
      out << "no extension exists\n";
    } else {
      Table t({"i", "π_i"});
      for (const int i : degrees(config, n + 2))
        t.add({std::to_string(i), r.pi[static_cast<std::size_t>(i)].to_string()});
      t.print(out);
      out << "basepoint " << (r.basepoint_independent ? "independent" : "DEPENDENT") << '\n';
    }
    out << "equivalence over l, l' = 0 ... " << n << '\n';
    std::vector<std::string> head{"l\\l'"};
    for (int b = 0; b <= n; ++b) head.push_back(std::to_string(b));
    Table m(head);
    for (int a = 0; a <= n; ++a) {
      std::vector<std::string> row{std::to_string(a)};
      for (int b = 0; b <= n; ++b) row.push_back(matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ? "yes" : "no");
      m.add(row);
    }
    m.print(out);
  }
  return all && r.basepoint_independent ? kExitOk : kExitVerifyFailed;
}

// The first equation of D Y = 0 that fails, located by tuple and simplex.
std::string gauge_failure(const StarSite& site, const DeligneComplex& C, const GaugeChain& Y) {
  const ZQVector residual = C.total().complex.d(1).apply(C.pack(1, Y.components()));
  const RowComponents r = C.unpack(0, residual);
  const SimplicialComplex& M = site.base();
  const int n = C.pars().n;
  for (std::size_t s = 0; s < r.z.size(); ++s)
    if (r.z[s] != 0) return "δh = 0 fails on the tuple " + M.simplex_name(M.simplices(n + 2)[s]);
  for (std::size_t j = 0; j < r.forms.size(); ++j)
    for (std::size_t e = 0; e < r.forms[j].size(); ++e)
      if (r.forms[j][e] != 0) {
        const int q = static_cast<int>(j);
        const CochainEntry where = locate_entry(site, n + 1 - q, q, e);
        const std::string eq = q == 0 ? "δa_0 ± ιh = 0" : "δa_" + std::to_string(q) + " ± da_" + std::to_string(q - 1) + " = 0";
        return eq + " fails on the tuple " + M.simplex_name(where.tuple) + " at the simplex " +
               M.simplex_name(where.simplex);
      }
  return "the chain does not match " + C.pars().to_string();
}

int cmd_gauge(const RunConfig& config, std::ostream& out) {
  const Loaded in = load(config);
  const StarSite site(in.M);
  std::mt19937 rng(config.seed);

  DeligneCocycle X;
  if (!config.cocycle.empty()) {
    X = cocycle_from_json(site, read_json_file(config.cocycle));
    const CocycleReport v = validate_cocycle(site, X);
    if (!v.ok) throw std::invalid_argument("the cocycle file is not a cocycle: " + v.message());
  } else {
    const DelignePars pars = pars_from(config);
    X = cocycle_from_class(site, pars, random_class(rng, site, pars.n, pars.flat));
  }
  const int n = X.pars.n;

  GaugeChain Y;
  if (!config.chain.empty()) {
    Y = gauge_chain_from_json(site, read_json_file(config.chain));
    if (Y.base.n != n) throw std::invalid_argument("the chain has n = " + std::to_string(Y.base.n) + ", the cocycle " + std::to_string(n));
    const DeligneComplex C(site, Y.base);
    if (!is_gauge_cycle(C, Y)) throw std::invalid_argument("the chain is not a cycle: " + gauge_failure(site, C, Y));
  } else {
    const int l = config.l.value_or(0);
    if (l < 0 || l > X.pars.top()) throw std::invalid_argument("--l must lie in 0 ... " + std::to_string(X.pars.top()));
    Y = random_gauge_chain(rng, DeligneComplex(site, {n, l, false}));
  }
  if (Y.base.top() > X.pars.top()) throw std::invalid_argument("the chain carries more connection data than the cocycle");
  const int l = Y.base.top();

  const DeligneCocycle Xy = gauge_act(site, X, Y);
  const CocycleReport v = validate_cocycle(site, Xy);
  const bool fixed = projection_p(Xy, l) == projection_p(X, l);
  const auto w = are_gauge_equivalent(site, X, Xy, l);
  const bool witness = w && check_witness(site, X, Xy, *w);

  if (config.format == "json") {
    json j;
    j["complex"] = in.name;
    j["cocycle"] = cocycle_to_json(site, X);
    j["chain"] = gauge_chain_to_json(site, Y);
    j["acted"] = cocycle_to_json(site, Xy);
    j["valid"] = v.ok;
    j["truncation_fixed"] = fixed;
    j["witness"] = witness;
    out << j.dump(2) << '\n';
  } else {
    out << header(in) << ", cocycle " << X.pars.to_string() << ", chain " << Y.base.to_string() << '\n';
    Table t({"check", "result"});
    t.add({"acted cocycle validates", v.ok ? "yes" : v.message()});
    t.add({"A^(" + std::to_string(l) + ") unchanged", fixed ? "yes" : "no"});
    t.add({"gauge witness", witness ? "found and checked" : "none"});
    t.add({"acted equals input", Xy == X ? "yes" : "no"});
    t.print(out);
  }
  return v.ok && fixed && witness ? kExitOk : kExitVerifyFailed;
}

int cmd_courant(const RunConfig& config, std::ostream& out) {
  const Loaded in = load(config);
  const StarSite site(in.M);
  const SquareReport sq = dd_severa_square(site, config.seed);
  std::mt19937 rng(config.seed);
  const DeligneCocycle X = cocycle_from_class(site, {1, 1, false}, random_class(rng, site, 1));
  const SplittingReport sp = splittings_vs_curvings(site, X);
  const std::string pi0 = eca_pi(site, 0).to_string(), pi1 = eca_pi(site, 1).to_string();

  if (config.format == "json") {
    json entries = json::array();
    for (const auto& e : sq.entries)
      entries.push_back({{"generator", e.generator}, {"severa", show_vector(e.severa)}, {"expected", show_vector(e.expected)}, {"ok", e.ok}});
    json j;
    j["complex"] = in.name;
    j["pi"] = {pi0, pi1};
    j["square"] = {{"entries", entries}, {"additive", sq.additive}, {"kills_exactly_torsion", sq.kills_exactly_torsion}, {"ok", sq.ok()}};
    j["splittings"] = {{"torsor_dim", sp.torsor_dim}, {"ok", sp.ok}};
    out << j.dump(2) << '\n';
  } else {
    out << header(in) << '\n';
    out << "π_0 ECA = " << pi0 << ", π_1 ECA = " << pi1 << '\n';
    if (sq.entries.empty()) {
      out << "H^3(M;Z) = 0: square holds vacuously\n";
    } else {
      Table t({"generator of H^3(M;Z)", "Ševera class", "rational image", "ok"});
      for (const auto& e : sq.entries)
        t.add({e.generator, "↦ " + show_vector(e.severa), show_vector(e.expected), e.ok ? "yes" : "no"});
      t.print(out);
    }
    out << (sq.ok() ? "square commutes" : "square FAILS") << (sq.additive ? "" : ", atca not additive") << '\n';
    out << "splittings of atca(X) = curvings of X: " << (sp.ok ? "yes" : "no") << ", torsor over Q^" << sp.torsor_dim
        << '\n';
  }
  return sq.ok() && sp.ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::vector<CriterionResult> results = run_battery(config.seed, config.only);
  std::size_t passed = 0;
  json rows = json::array();
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    if (config.format == "json")
      rows.push_back({{"id", r.id}, {"module", r.module}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    else
      out << format_result(r, false) << '\n';
    err << "criterion " << r.id << ": " << format_result(r) << '\n';
  }
  if (config.format == "json")
    out << json{{"seed", config.seed}, {"results", rows}, {"passed", passed}, {"total", results.size()}}.dump(2) << '\n';
  else
    out << passed << " of " << results.size() << " passed\n";
  return passed == results.size() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

std::string normalize_complex_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || spec.find('/') != std::string::npos) return spec;
  return spec.substr(0, colon) + spec.substr(colon + 1);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.format != "table" && config.format != "json")
      throw std::invalid_argument("--format must be table or json");
    if (config.command == "cohomology") return cmd_cohomology(config, out);
    if (config.command == "deligne") return cmd_deligne(config, out);
    if (config.command == "moduli") return cmd_moduli(config, out);
    if (config.command == "gauge") return cmd_gauge(config, out);
    if (config.command == "courant") return cmd_courant(config, out);
    if (config.command == "verify") return cmd_verify(config, out, err);
    throw std::invalid_argument("unknown command '" + config.command + "'");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

}  // namespace gerbe
