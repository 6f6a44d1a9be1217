#pragma once

#include <string>
#include <vector>

#include "gengeo/config.hpp"

namespace gengeo {

// One verification item: a named claim, the number the run produced, and the
// bound it has to meet.  kind "upper" passes when measured <= tolerance
// (scaled residual must vanish); "lower" passes when measured >= tolerance
// (an obstruction must stay away from zero).
struct VerifyItem {
  std::string claim_id;
  std::string anchor;  // short name of the mathematical fact being checked
  std::string detail;
  double measured = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;
  bool pass = false;
};

// The full verification sweep on the builtin round sphere.  Point counts and
// tolerances are pinned here; only the sample seed varies.  Deterministic
// for a fixed seed.
std::vector<VerifyItem> verify_items(std::uint64_t seed);

struct CliResult {
  int exit_code = 0;  // 0 ok, 1 verification failed, 2 config, 3 numeric domain
  std::string report;  // JSON document, newline terminated
};

// Subcommand drivers.  They throw ConfigError / DomainError for bad input;
// the binary maps those to exit codes 2 / 3.
CliResult run_check(const RunConfig& cfg);
CliResult run_verify(const RunConfig& cfg);
CliResult run_scan(const RunConfig& cfg);
CliResult run_export();

}  // namespace gengeo
