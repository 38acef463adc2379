#include "gerbe/cli/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>

namespace {

// Runs the gerbe binary's full battery and checks the exit status and the 10 minute budget.
int end_to_end(const std::string& binary) {
  const auto start = std::chrono::steady_clock::now();
  const int status = std::system((binary + " verify > /dev/null 2>&1").c_str());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int code = status == -1 || !WIFEXITED(status) ? -1 : WEXITSTATUS(status);
  const bool pass = code == 0 && seconds < 600;
  std::printf("[%s] 13 cli: end-to-end verify (%.2f s of 600.00 s) exit code %d\n", pass ? "PASS" : "FAIL", seconds,
              code);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  std::uint32_t seed = 1;
  std::string binary = GERBE_BINARY;
  app.add_option("--criterion", criterion, "criterion number, 1 ... 13")->required()->check(CLI::Range(1, 13));
  app.add_option("--seed", seed, "battery seed");
  app.add_option("--binary", binary, "the gerbe executable");
  CLI11_PARSE(app, argc, argv);

  if (criterion == 13) return end_to_end(binary);
  const gerbe::CriterionResult r = gerbe::run_criterion(criterion, seed);
  std::cout << gerbe::format_result(r) << '\n';
  return r.pass ? 0 : 1;
}
