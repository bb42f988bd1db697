#pragma once

#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnu/term_store.hpp"

namespace wnu {

/// The subterm order on normal terms and the incomparability relation S.
/// a is a subterm of b iff a == b or a is a subterm of some child of b;
/// this is the reflexive-transitive closure of the immediate-child relation.
class SubtermIndex {
 public:
  explicit SubtermIndex(TermStore &store) : store_(store) {}

  TermStore &store() const { return store_; }

  bool is_subterm(TermId a, TermId b);

  /// (a,b) in S iff neither is a subterm of the other. S never meets the
  /// diagonal because the subterm order is reflexive.
  bool in_s(TermId a, TermId b) {
    return !is_subterm(a, b) && !is_subterm(b, a);
  }

 private:
  TermStore &store_;
  std::shared_mutex mu_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

/// Every normal term over `vars` with w_count <= max_w, each exactly once,
/// ordered by (w_count, rendered form). Variable names are deduplicated and
/// interned into the store.
std::vector<TermId> enumerate_normal(TermStore &store,
                                     std::span<const std::string> vars,
                                     unsigned max_w);

}  // namespace wnu
