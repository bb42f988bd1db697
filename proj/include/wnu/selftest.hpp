#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wnu::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double elapsed_ms = 0.0;
};

struct Options {
  std::uint64_t seed = 1;
  bool quick = false;  // scaled-down sample counts, for smoke runs only
};

/// Runs the full property suite: normal-form uniqueness under random
/// rewriting, the weak-near-unanimity law, the subterm-order lemmas, closure
/// of S, the bounded diagonal check, the projection-triviality oracle, the
/// concrete condition verdicts, the bounded witness search, the enumeration
/// oracle, and the mod-2 fixture.
std::vector<CriterionResult> run_all(const Options &opts);

}  // namespace wnu::selftest
