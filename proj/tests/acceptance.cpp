// Acceptance gate: runs the full property suite at production sample sizes
// and prints one line per criterion. Exit status 0 iff every criterion holds.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "wnu/selftest.hpp"

int main(int argc, char **argv) {
  wnu::selftest::Options opts;
  opts.seed = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
  }

  auto results = wnu::selftest::run_all(opts);
  bool all_pass = true;
  for (const auto &r : results) {
    all_pass = all_pass && r.pass;
    std::printf("%s criterion %d: %s (%.0f ms)%s%s\n",
                r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.elapsed_ms,
                r.details.empty() ? "" : " ", r.details.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
