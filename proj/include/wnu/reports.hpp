#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wnu/closure.hpp"
#include "wnu/maltsev.hpp"
#include "wnu/selftest.hpp"

namespace wnu::reports {

nlohmann::json enumeration_report(TermStore &store,
                                  std::span<const std::string> vars,
                                  unsigned max_w);

nlohmann::json closure_report(TermStore &store,
                              std::span<const TermPair> generators,
                              const ClosureBudget &budget,
                              const ClosureSet &closure, SubtermIndex &idx);

/// Full condition report: classification (when the condition is a single
/// linear identity), projection triviality, and for candidate-nontrivial
/// identities both the bounded witness search and the S-based refutation.
nlohmann::json check_report(const maltsev::Condition &cond, unsigned k,
                            unsigned max_w, const ClosureBudget &budget);

nlohmann::json selftest_report(
    const std::vector<selftest::CriterionResult> &results,
    std::uint64_t seed, bool quick);

}  // namespace wnu::reports
