#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace gerbe {

struct RunConfig {
  std::string command;              // cohomology | deligne | moduli | gauge | courant | verify
  std::string complex = "circle3";  // builder name, builder:param, or .json/.off path
  int n = 0;
  std::optional<int> k;  // default n + 1
  std::optional<int> l;
  std::optional<int> i;  // a single degree instead of all
  bool flat = false;
  std::string format = "table";  // table | json
  std::uint32_t seed = 1;
  std::string only;     // verify: restrict to one module
  std::string cocycle;  // gauge/moduli: cocycle JSON file
  std::string chain;    // gauge: gauge chain JSON file
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInputError = 2;

// "sphere:2" -> "sphere2"; anything else unchanged.
std::string normalize_complex_spec(const std::string& spec);

// Runs one command; results go to out, diagnostics to err. Returns the exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gerbe
