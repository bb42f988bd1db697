#include "wnu/subterm.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <stdexcept>

namespace wnu {

bool SubtermIndex::is_subterm(TermId a, TermId b) {
  if (a == b) return true;
  if (store_.is_leaf(b)) return false;
  std::uint64_t key = (std::uint64_t(a) << 32) | b;
  {
    std::shared_lock lk(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  bool found = false;
  for (TermId c : store_.children(b)) {
    if (is_subterm(a, c)) {
      found = true;
      break;
    }
  }
  {
    std::unique_lock lk(mu_);
    memo_.emplace(key, found);
  }
  return found;
}

namespace {

// Appends every normal application whose children have w_counts following
// the remaining composition budget. Children are drawn from the per-level
// pools, so only the top-level condition needs checking.
void fill_level(TermStore &store, const std::vector<std::vector<TermId>> &levels,
                unsigned remaining, std::vector<TermId> &kids,
                std::vector<TermId> &out) {
  std::size_t pos = kids.size();
  if (pos == store.arity()) {
    if (remaining != 0) return;
    unsigned differs = 0;
    for (std::size_t i = 1; i < kids.size(); ++i) {
      if (kids[i] != kids[0]) ++differs;
    }
    if (differs >= 2) out.push_back(store.app(kids));
    return;
  }
  unsigned slots_left = store.arity() - unsigned(pos) - 1;
  for (unsigned c = 0; c <= remaining; ++c) {
    // The last slot must consume the whole remaining budget.
    if (slots_left == 0 && c != remaining) continue;
    for (TermId t : levels[c]) {
      kids.push_back(t);
      fill_level(store, levels, remaining - c, kids, out);
      kids.pop_back();
    }
  }
}

}  // namespace

std::vector<TermId> enumerate_normal(TermStore &store,
                                     std::span<const std::string> vars,
                                     unsigned max_w) {
  if (vars.empty()) {
    throw std::invalid_argument("enumerate_normal needs at least one variable");
  }
  std::vector<std::string> names(vars.begin(), vars.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  // levels[c] holds the normal terms with exactly c occurrences of w,
  // sorted by rendered form.
  std::vector<std::vector<TermId>> levels(max_w + 1);
  for (const std::string &n : names) levels[0].push_back(store.variable(n));

  auto by_render = [&](TermId a, TermId b) {
    return store.render(a) < store.render(b);
  };
  std::sort(levels[0].begin(), levels[0].end(), by_render);

  for (unsigned c = 1; c <= max_w; ++c) {
    std::vector<TermId> kids;
    fill_level(store, levels, c - 1, kids, levels[c]);
    std::sort(levels[c].begin(), levels[c].end(), by_render);
    levels[c].erase(std::unique(levels[c].begin(), levels[c].end()),
                    levels[c].end());
  }

  std::vector<TermId> out;
  for (auto &level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace wnu
