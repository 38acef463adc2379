#include "gerbe/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Higher gerbes with connection on finite simplicial complexes"};
  app.require_subcommand(1, 1);
  gerbe::RunConfig config;

  for (const char* name : {"cohomology", "deligne", "moduli", "gauge", "courant", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--complex", config.complex, "builder name, builder:param, or .json/.off file");
    sub->add_option("--n", config.n, "gerbe degree");
    sub->add_option_function<int>("--k", [&](int v) { config.k = v; }, "connection level (default n + 1)");
    sub->add_option_function<int>("--l", [&](int v) { config.l = v; }, "base level");
    sub->add_option_function<int>("--i", [&](int v) { config.i = v; }, "a single homotopy degree");
    sub->add_flag("--flat", config.flat, "flat connection");
    sub->add_option("--format", config.format, "table or json");
    sub->add_option("--seed", config.seed, "seed for generated data");
    sub->add_option("--only", config.only, "verify: one module");
    sub->add_option("--cocycle", config.cocycle, "cocycle JSON file");
    sub->add_option("--chain", config.chain, "gauge chain JSON file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gerbe::kExitInputError;
  }
  config.command = app.get_subcommands().front()->get_name();
  return gerbe::run(config, std::cout, std::cerr);
}
