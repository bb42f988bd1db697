#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wnu/free_algebra.hpp"
#include "wnu/subterm.hpp"

namespace wnu {

struct TermPair {
  TermId first;
  TermId second;
  friend bool operator==(const TermPair &, const TermPair &) = default;
};

/// Bounds for a closure run. The generated relation is infinite, so every
/// run is cut off by whichever budget is exhausted first.
struct ClosureBudget {
  unsigned max_rounds = 8;
  std::size_t max_pairs = 100000;
  unsigned max_w_per_coordinate = 2;
};

struct ClosureSet {
  std::vector<TermPair> pairs;  // sorted by (w_count, render) per coordinate
  unsigned rounds_completed = 0;
  bool saturated = false;
  std::string stop_reason;  // "saturated" | "max_rounds" | "max_pairs"
};

/// Closes the generator pairs under the coordinatewise free-algebra
/// operation. Each round applies wa to every k-tuple drawn from the current
/// set, keeping results whose coordinates stay within the w-count budget,
/// until a round adds nothing or a budget runs out. The result is
/// independent of evaluation order.
ClosureSet close_pairs(FreeAlgebra &alg, std::span<const TermPair> generators,
                       const ClosureBudget &budget);

/// First pair with equal coordinates, in the set's deterministic order.
std::optional<TermPair> diagonal_witness(const ClosureSet &c);

/// Pairs of the set that are NOT in the incomparability relation S.
std::vector<TermPair> s_violations(SubtermIndex &idx, const ClosureSet &c);

}  // namespace wnu
