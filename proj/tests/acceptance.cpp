// Runs the ten acceptance criteria and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "splitstep/checks.hpp"

int main(int argc, char** argv) {
  splitstep::SuiteOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  int index = 0;
  for (const splitstep::Check& c : splitstep::acceptance_suite(options)) {
    ++index;
    const bool ok = c.status != splitstep::CheckStatus::kFail;
    if (!ok) ++failed;
    std::printf("[%s] %2d %-22s measured=%.6g %s %.6g  %s\n", ok ? "PASS" : "FAIL", index,
                c.name.c_str(), c.measured, c.relation.c_str(), c.threshold, c.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
