// One PASS/FAIL line per acceptance criterion. Pass a criterion number to run just that one,
// and -v to list every check.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>

#include "qdl/experiments.hpp"

using namespace qdl;

int main(int argc, char** argv) {
  bool verbose = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "-v") == 0) verbose = true;
    else only = std::atoi(argv[i]);
  }
  int failed = 0;
  for (int k = 1; k <= kNumCriteria; ++k) {
    if (only && k != only) continue;
    bool ok = false;
    std::string detail;
    double secs = 0;
    Report r;
    try {
      const Stopwatch t;
      r = acceptance_criterion(k);
      secs = t.seconds();
      ok = r.passed() && !r.checks.empty();
      double worst = 0;
      for (const auto& c : r.checks)
        if (!c.boolean) worst = std::max(worst, c.max_deviation / c.tolerance);
      char buf[96];
      std::snprintf(buf, sizeof buf, "%zu checks, worst dev/tol %.2e, %.1f s", r.checks.size(), worst, secs);
      detail = buf;
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    std::printf("%s %2d %s (%s)\n", ok ? "PASS" : "FAIL", k, acceptance_title(k).c_str(), detail.c_str());
    for (const auto& c : r.checks)
      if (verbose || !c.passed)
        std::printf("     %s %s  dev=%.3e%s%s\n", c.passed ? "ok  " : "FAIL", c.name.c_str(), c.max_deviation,
                    c.note.empty() ? "" : "  ", c.note.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
