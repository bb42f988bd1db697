#include "wnu/fuzz.hpp"

#include <unordered_map>

namespace wnu::fuzz {

namespace {

std::uint64_t tree_size(TermStore &store, TermId t,
                        std::unordered_map<TermId, std::uint64_t> &cache) {
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  std::uint64_t size = 1;
  for (TermId c : store.children(t)) size += tree_size(store, c, cache);
  cache.emplace(t, size);
  return size;
}

std::size_t pick(std::size_t n, Rng &rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

TermId random_term(TermStore &store, std::span<const std::string> vars,
                   unsigned max_w, Rng &rng) {
  if (max_w == 0 || pick(3, rng) == 0) {
    return store.variable(vars[pick(vars.size(), rng)]);
  }
  unsigned remaining = max_w - 1;
  std::vector<TermId> kids;
  for (unsigned i = 0; i < store.arity(); ++i) {
    unsigned budget =
        std::uniform_int_distribution<unsigned>(0, remaining)(rng);
    TermId c = random_term(store, vars, budget, rng);
    remaining -= unsigned(store.w_count(c));
    kids.push_back(c);
  }
  return store.app(kids);
}

TermId random_normal(FreeAlgebra &alg, std::span<const std::string> vars,
                     unsigned max_w, Rng &rng) {
  return alg.normalize(random_term(alg.store(), vars, max_w, rng));
}

TermId random_subnode(TermStore &store, TermId t, Rng &rng) {
  std::unordered_map<TermId, std::uint64_t> cache;
  std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(
      0, tree_size(store, t, cache) - 1)(rng);
  TermId cur = t;
  while (r != 0) {
    --r;
    for (TermId c : store.children(cur)) {
      std::uint64_t cs = tree_size(store, c, cache);
      if (r < cs) {
        cur = c;
        break;
      }
      r -= cs;
    }
  }
  return cur;
}

namespace {

// Rewrites rooted at `t`, if any identity instance applies there. Collected
// as whole-term alternatives; the caller picks one.
void local_rewrites(TermStore &store, TermId t, std::vector<TermId> &out) {
  unsigned k = store.arity();
  // expansion t -> w(t,...,t) always applies
  out.push_back(store.app(std::vector<TermId>(k, t)));
  if (store.is_leaf(t)) return;
  std::span<const TermId> kids = store.children(t);
  bool all_equal = true;
  for (TermId c : kids) all_equal = all_equal && c == kids[0];
  if (all_equal) {
    out.push_back(kids[0]);  // collapse w(t,...,t) -> t
    return;
  }
  // near-unanimity shuffle: one odd value among k-1 copies of another
  TermId v0 = kids[0], v1 = v0;
  std::size_t n0 = 0, n1 = 0;
  for (TermId c : kids) {
    if (c == v0) {
      ++n0;
    } else if (v1 == v0 || c == v1) {
      v1 = c;
      ++n1;
    } else {
      return;  // three or more distinct values, no identity applies
    }
  }
  if (n0 != 1 && n1 != 1) return;
  TermId odd = n0 == 1 ? v0 : v1;
  TermId common = n0 == 1 ? v1 : v0;
  std::size_t odd_pos = 0;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i] == odd) odd_pos = i;
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (j == odd_pos) continue;
    std::vector<TermId> moved(k, common);
    moved[j] = odd;
    out.push_back(store.app(moved));
  }
}

}  // namespace

TermId rewrite_once(TermStore &store, TermId t, Rng &rng) {
  std::unordered_map<TermId, std::uint64_t> cache;
  std::uint64_t total = tree_size(store, t, cache);
  std::uint64_t r = std::uniform_int_distribution<std::uint64_t>(
      0, total - 1)(rng);

  // Descend to the chosen position, remembering the path for the rebuild.
  std::vector<std::pair<TermId, std::size_t>> path;
  TermId cur = t;
  while (r != 0) {
    --r;
    std::span<const TermId> kids = store.children(cur);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      std::uint64_t cs = tree_size(store, kids[i], cache);
      if (r < cs) {
        path.emplace_back(cur, i);
        cur = kids[i];
        break;
      }
      r -= cs;
    }
  }

  std::vector<TermId> options;
  local_rewrites(store, cur, options);
  TermId replacement = options[pick(options.size(), rng)];

  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    std::span<const TermId> kids = store.children(it->first);
    std::vector<TermId> rebuilt(kids.begin(), kids.end());
    rebuilt[it->second] = replacement;
    replacement = store.app(rebuilt);
  }
  return replacement;
}

std::vector<TermId> all_terms_up_to(TermStore &store,
                                    std::span<const std::string> vars,
                                    unsigned max_w) {
  std::vector<std::vector<TermId>> levels(max_w + 1);
  for (const std::string &v : vars) levels[0].push_back(store.variable(v));

  auto fill = [&](auto &&self, unsigned remaining, std::vector<TermId> &kids,
                  std::vector<TermId> &out) -> void {
    if (kids.size() == store.arity()) {
      if (remaining == 0) out.push_back(store.app(kids));
      return;
    }
    bool last = kids.size() + 1 == store.arity();
    for (unsigned c = 0; c <= remaining; ++c) {
      if (last && c != remaining) continue;
      for (TermId t : levels[c]) {
        kids.push_back(t);
        self(self, remaining - c, kids, out);
        kids.pop_back();
      }
    }
  };

  for (unsigned c = 1; c <= max_w; ++c) {
    std::vector<TermId> kids;
    fill(fill, c - 1, kids, levels[c]);
  }
  std::vector<TermId> out;
  for (auto &level : levels) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<TermId> normal_terms_by_filter(TermStore &store,
                                           std::span<const std::string> vars,
                                           unsigned max_w) {
  std::vector<TermId> out;
  for (TermId t : all_terms_up_to(store, vars, max_w)) {
    if (store.is_normal(t)) out.push_back(t);
  }
  return out;
}

}  // namespace wnu::fuzz
