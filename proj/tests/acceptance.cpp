// Full verification sweep, one line per claim.  Runs everything the library
// promises at the tolerances pinned in verify_items(), then checks that the
// verify report itself is byte-stable across reruns with the same seed.
// Exits nonzero when any line fails, so ctest treats it as the gate.

#include <cstdio>
#include <string>
#include <vector>

#include "gengeo/cli.hpp"

int main() {
  using namespace gengeo;
  const std::uint64_t seed = 1;
  std::vector<VerifyItem> items = verify_items(seed);

  int failed = 0;
  for (const VerifyItem& it : items) {
    const char* rel = it.lower_bound ? ">=" : "<=";
    std::printf("[%s] %-24s measured %.6g %s %.6g  (%s)\n", it.pass ? "PASS" : "FAIL",
                it.claim_id.c_str(), it.measured, rel, it.tolerance, it.anchor.c_str());
    if (!it.pass) {
      std::printf("       %s\n", it.detail.c_str());
      ++failed;
    }
  }

  RunConfig cfg;
  CliResult first = run_verify(cfg);
  CliResult second = run_verify(cfg);
  bool stable = first.report == second.report && first.exit_code == second.exit_code;
  std::printf("[%s] %-24s two runs at seed %llu, %zu-byte report\n",
              stable ? "PASS" : "FAIL", "report-determinism",
              static_cast<unsigned long long>(cfg.seed), first.report.size());
  if (!stable) ++failed;

  const int total = static_cast<int>(items.size()) + 1;
  std::printf("%d/%d claims verified\n", total - failed, total);
  return failed == 0 ? 0 : 1;
}
