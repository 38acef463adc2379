#include <catch_amalgamated.hpp>

#include "gerbe/cli/commands.hpp"
#include "gerbe/cli/verify.hpp"
#include "gerbe/deligne/io.hpp"
#include "gerbe/gauge/gauge.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gerbe;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(RunConfig config) {
  std::ostringstream out, err;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("gerbe_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cohomology command", "[cli]") {
  const Outcome rp2 = run_cli({.command = "cohomology", .complex = "rp2"});
  CHECK(rp2.code == kExitOk);
  CHECK(rp2.out.find("2  Z/2       0") != std::string::npos);

  const Outcome s2 = run_cli({.command = "cohomology", .complex = "sphere:2", .format = "json"});
  REQUIRE(s2.code == kExitOk);
  const auto j = nlohmann::json::parse(s2.out);
  std::vector<std::string> z;
  for (const auto& row : j["cohomology"]) z.push_back(row["Z"]);
  CHECK(z == std::vector<std::string>{"Z^1", "0", "Z^1"});

  const std::string empty = write_temp("empty.json", R"({"vertices": ["a", "b"], "facets": [["a", "b"], []]})");
  CHECK(run_cli({.command = "cohomology", .complex = empty}).code == kExitInputError);
  CHECK(run_cli({.command = "cohomology", .complex = "no_such_builder"}).code == kExitInputError);
  CHECK(run_cli({.command = "cohomology", .format = "xml"}).code == kExitInputError);
  CHECK(run_cli({.command = "frobnicate"}).code == kExitInputError);
}

TEST_CASE("deligne and moduli commands", "[cli]") {
  const Outcome c = run_cli({.command = "deligne", .complex = "circle3", .n = 0, .k = 1, .i = 0, .format = "json"});
  REQUIRE(c.code == kExitOk);
  CHECK(nlohmann::json::parse(c.out)["pi"][0]["pi"] == "(Q/Z)^1");
  CHECK(run_cli({.command = "deligne", .n = 0, .k = 2}).code == kExitInputError);
  CHECK(run_cli({.command = "deligne", .n = 0, .k = 1, .i = 5}).code == kExitInputError);

  const Outcome m = run_cli({.command = "moduli", .complex = "torus2", .n = 1, .flat = true, .format = "json"});
  REQUIRE(m.code == kExitOk);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j["pi"][0] == "(Q/Z)^1");
  CHECK(j["equivalence"] == true);
  CHECK(run_cli({.command = "moduli", .complex = "sphere2", .n = 1}).code == kExitOk);
  CHECK(run_cli({.command = "moduli", .n = 1, .l = 2}).code == kExitInputError);
}

TEST_CASE("gauge command and JSON round trip", "[cli]") {
  const RunConfig config{.command = "gauge", .complex = "rp2", .n = 1, .k = 2, .l = 1, .format = "json", .seed = 4};
  const Outcome g = run_cli(config);
  REQUIRE(g.code == kExitOk);
  CHECK(run_cli(config).out == g.out);  // deterministic
  const auto j = nlohmann::json::parse(g.out);
  CHECK(j["valid"] == true);
  CHECK(j["witness"] == true);

  // Emitted cocycles and chains re-validate on re-ingestion.
  const StarSite site(rp2());
  const DeligneCocycle acted = cocycle_from_json(site, j["acted"]);
  CHECK(validate_cocycle(site, acted).ok);
  const GaugeChain Y = gauge_chain_from_json(site, j["chain"]);
  CHECK(is_gauge_cycle(DeligneComplex(site, Y.base), Y));

  // Feeding the files back reproduces the action; the zero chain leaves the cocycle alone.
  const std::string cocycle = write_temp("cocycle.json", j["cocycle"].dump());
  const std::string chain = write_temp("chain.json", j["chain"].dump());
  const Outcome again = run_cli({.command = "gauge", .complex = "rp2", .format = "json", .cocycle = cocycle, .chain = chain});
  REQUIRE(again.code == kExitOk);
  CHECK(nlohmann::json::parse(again.out)["acted"] == j["acted"]);

  const GaugeChain zero = GaugeChain::zero(DeligneComplex(site, Y.base));
  const std::string zero_file = write_temp("zero.json", gauge_chain_to_json(site, zero).dump());
  const Outcome z = run_cli({.command = "gauge", .complex = "rp2", .format = "json", .cocycle = cocycle, .chain = zero_file});
  REQUIRE(z.code == kExitOk);
  CHECK(nlohmann::json::parse(z.out)["acted"] == j["cocycle"]);

  // A broken chain is an input error naming the failing equation.
  GaugeChain bad = Y;
  bad.a[0][0] += 1;
  const std::string bad_file = write_temp("bad.json", gauge_chain_to_json(site, bad).dump());
  const Outcome b = run_cli({.command = "gauge", .complex = "rp2", .cocycle = cocycle, .chain = bad_file});
  CHECK(b.code == kExitInputError);
  CHECK(b.err.find("fails on the tuple") != std::string::npos);
}

TEST_CASE("courant command", "[cli]") {
  const Outcome r = run_cli({.command = "courant", .complex = "rp2xS1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("torsion 0 (Z/2)") != std::string::npos);
  CHECK(r.out.find("↦ 0") != std::string::npos);
  CHECK(r.out.find("square commutes") != std::string::npos);
  const Outcome t = run_cli({.command = "courant", .complex = "torus2", .format = "json"});
  REQUIRE(t.code == kExitOk);
  const auto j = nlohmann::json::parse(t.out);
  CHECK(j["square"]["entries"].empty());
  CHECK(j["square"]["ok"] == true);
}

TEST_CASE("verify subsets", "[cli]") {
  const Outcome d = run_cli({.command = "verify", .only = "doldkan"});
  CHECK(d.code == kExitOk);
  CHECK(d.out.find("[PASS] 1 doldkan") != std::string::npos);
  CHECK(d.out.find("[PASS] 2 doldkan") != std::string::npos);
  CHECK(d.out.find("2 of 2 passed") != std::string::npos);
  CHECK(run_cli({.command = "verify", .only = "doldkan"}).out == d.out);
  CHECK(run_cli({.command = "verify", .only = "nosuchmodule"}).code == kExitInputError);
  CHECK_THROWS_AS(run_criterion(14, 1), std::invalid_argument);
  CHECK(battery_ids().size() == 12);
}
