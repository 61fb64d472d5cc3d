#pragma once

#include <cstdint>
#include <string>

namespace lt::cli {

struct RunConfig {
  std::string command;  // axioms | norm | cone | ossys | algebra
  std::string lambda_path;
  std::string input_path;
  std::string element_path;     // norm
  std::string candidates_path;  // norm
  double tol = 1e-9;
  std::uint64_t seed = 0;
  long long budget = 1'000'000;
  int trials = 200;
  int levels = 2;
  std::string out_path;  // empty = stdout
};

/// Exit code contract: 0 = every asserted property holds, 1 = a checked
/// property failed (the report carries the counterexample), 2 = input or
/// usage error.
int run(const RunConfig& config);

}  // namespace lt::cli
