#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "riccati/io.hpp"

namespace riccati {

enum class LogLevel { quiet, info, debug };

/// Verbosity from the RICCATI_LOG environment variable (quiet|info|debug);
/// unknown or unset values mean quiet.
LogLevel log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

struct SolveArgs {
  std::string in_path;
  std::string out_path;
  std::string method = "fp";  // fp | sda
  double tol = 1e-12;
  int max_iter = 10000;
  Index cap = 4096;
  std::optional<double> gamma;  // SCARE only
  std::uint64_t seed = 0x5ca3e;
  bool verify = false;
};

/// Solves the instance at in_path and writes a result file to out_path.
/// Exit codes: 0 success, 1 usage/parse error, 2 verification failure,
/// 3 no convergence (a partial result is still written).
int cmd_solve(const SolveArgs& args);

struct GenArgs {
  std::string kind = "sdare";
  Index n = 2;
  Index m = 1;
  Index r = 1;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_gen(const GenArgs& args);

/// Runs the embedded property suite and prints a pass/fail table.
/// Exit 0 iff every property passes, 2 otherwise. quick limits the suite
/// to a fast subset.
int cmd_selftest(bool quick);

}  // namespace riccati
