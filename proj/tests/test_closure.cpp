#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "wnu/closure.hpp"
#include "wnu/fuzz.hpp"

using namespace wnu;

namespace {

std::set<std::pair<TermId, TermId>> as_set(const ClosureSet &c) {
  std::set<std::pair<TermId, TermId>> out;
  for (const auto &p : c.pairs) out.emplace(p.first, p.second);
  return out;
}

// Reference implementation: literally apply wa to every k-tuple of current
// pairs each round, keep what fits the per-coordinate w budget. Cubic in the
// set size at k=3, so only usable on tiny instances.
std::set<std::pair<TermId, TermId>> naive_close(FreeAlgebra &alg,
                                                std::span<const TermPair> gens,
                                                unsigned max_w,
                                                unsigned max_rounds) {
  TermStore &store = alg.store();
  unsigned k = store.arity();
  std::set<std::pair<TermId, TermId>> cur;
  for (const auto &g : gens) cur.emplace(g.first, g.second);
  for (unsigned round = 0; round < max_rounds; ++round) {
    std::vector<std::pair<TermId, TermId>> items(cur.begin(), cur.end());
    std::set<std::pair<TermId, TermId>> next = cur;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      std::vector<TermId> firsts(k), seconds(k);
      for (unsigned i = 0; i < k; ++i) {
        firsts[i] = items[idx[i]].first;
        seconds[i] = items[idx[i]].second;
      }
      TermId f = alg.wa(firsts);
      TermId s = alg.wa(seconds);
      if (store.w_count(f) <= max_w && store.w_count(s) <= max_w)
        next.emplace(f, s);
      unsigned pos = 0;
      while (pos < k && ++idx[pos] == items.size()) idx[pos++] = 0;
      if (pos == k) break;
    }
    if (next == cur) break;
    cur.swap(next);
  }
  return cur;
}

}  // namespace

TEST_CASE("single generator pair of distinct variables, one round check") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId x = store.variable("x");
  TermId y = store.variable("y");
  std::vector<TermPair> gens = {{x, y}, {y, x}};
  auto c = close_pairs(alg, gens, ClosureBudget{64, 100000, 2});
  CHECK(c.saturated);
  auto got = as_set(c);
  // applying w to ((x,y),(y,x),(y,x)) coordinatewise
  CHECK(got.count({store.parse("w(x,y,y)"), store.parse("w(y,x,x)")}) == 1);
  CHECK(got.count({store.parse("w(y,x,x)"), store.parse("w(x,y,y)")}) == 1);
  // generators survive
  CHECK(got.count({x, y}) == 1);
  // the diagonal stays empty
  CHECK(!diagonal_witness(c).has_value());
}

TEST_CASE("closure matches the naive reference on small instances") {
  for (unsigned k : {3u, 4u}) {
    TermStore store(k);
    FreeAlgebra alg(store);
    TermId x = store.variable("x");
    TermId y = store.variable("y");
    TermId z = store.variable("z");
    std::vector<TermPair> gens = {{x, y}, {y, z}, {z, x}};

    for (unsigned max_w : {1u, 2u}) {
      for (unsigned rounds : {1u, 2u}) {
        if (k == 4 && max_w == 2 && rounds == 2) continue;  // too slow naively
        auto fast =
            close_pairs(alg, gens, ClosureBudget{rounds, 1000000, max_w});
        auto slow = naive_close(alg, gens, max_w, rounds);
        CHECK(as_set(fast) == slow);
      }
    }
  }
}

TEST_CASE("result is independent of generator order") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId x = store.variable("x");
  TermId y = store.variable("y");
  TermId z = store.variable("z");
  std::vector<TermPair> a = {{x, y}, {y, z}, {z, x}};
  std::vector<TermPair> b = {{z, x}, {x, y}, {y, z}};
  auto ca = close_pairs(alg, a, ClosureBudget{64, 100000, 1});
  auto cb = close_pairs(alg, b, ClosureBudget{64, 100000, 1});
  CHECK(ca.pairs.size() == cb.pairs.size());
  for (std::size_t i = 0; i < ca.pairs.size(); ++i)
    CHECK(ca.pairs[i] == cb.pairs[i]);
}

TEST_CASE("pair ordering is by weight then rendered form") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId x = store.variable("x");
  TermId y = store.variable("y");
  std::vector<TermPair> gens = {{x, y}, {y, x}};
  auto c = close_pairs(alg, gens, ClosureBudget{64, 100000, 2});
  auto key = [&](const TermPair &p) {
    return std::make_tuple(store.w_count(p.first), store.render(p.first),
                           store.w_count(p.second), store.render(p.second));
  };
  for (std::size_t i = 1; i < c.pairs.size(); ++i)
    CHECK(key(c.pairs[i - 1]) < key(c.pairs[i]));
}

TEST_CASE("budget stops are reported") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId x = store.variable("x");
  TermId y = store.variable("y");
  TermId z = store.variable("z");
  std::vector<TermPair> gens = {{x, y}, {y, z}, {z, x}};

  auto capped = close_pairs(alg, gens, ClosureBudget{64, 5, 2});
  CHECK(!capped.saturated);
  CHECK(capped.stop_reason == "max_pairs");
  CHECK(capped.pairs.size() == 5);

  auto cut = close_pairs(alg, gens, ClosureBudget{1, 1000000, 2});
  CHECK(!cut.saturated);
  CHECK(cut.stop_reason == "max_rounds");
  CHECK(cut.rounds_completed == 1);

  auto done = close_pairs(alg, gens, ClosureBudget{64, 1000000, 1});
  CHECK(done.saturated);
  CHECK(done.stop_reason == "saturated");
}

TEST_CASE("budget validation") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId x = store.variable("x");
  TermId y = store.variable("y");
  std::vector<TermPair> gens = {{x, y}};
  CHECK_THROWS_AS(close_pairs(alg, gens, ClosureBudget{0, 100, 2}),
                  BudgetError);
  CHECK_THROWS_AS(close_pairs(alg, gens, ClosureBudget{8, 0, 2}), BudgetError);
  CHECK_THROWS_AS(close_pairs(alg, {}, ClosureBudget{8, 100, 2}),
                  std::invalid_argument);
  // generator heavier than the per-coordinate cap
  std::vector<TermPair> heavy = {{store.parse("w(w(x,y,y),x,x)"), y}};
  CHECK_THROWS_AS(close_pairs(alg, heavy, ClosureBudget{8, 100, 1}),
                  BudgetError);
}

TEST_CASE("closure of distinct-variable pairs avoids the diagonal and stays in S") {
  TermStore store(3);
  FreeAlgebra alg(store);
  SubtermIndex sub(store);
  std::vector<TermId> vars;
  for (const char *n : {"x", "y", "z"}) vars.push_back(store.variable(n));
  std::vector<TermPair> gens;
  for (TermId a : vars)
    for (TermId b : vars)
      if (a != b) gens.push_back({a, b});
  auto c = close_pairs(alg, gens, ClosureBudget{64, 50000, 2});
  CHECK(!diagonal_witness(c).has_value());
  CHECK(s_violations(sub, c).empty());
}

TEST_CASE("s_violations catches pairs outside S") {
  TermStore store(3);
  FreeAlgebra alg(store);
  SubtermIndex sub(store);
  TermId x = store.variable("x");
  std::vector<TermPair> gens = {{x, store.parse("w(x,y,y)")}};
  auto c = close_pairs(alg, gens, ClosureBudget{2, 1000, 2});
  auto bad = s_violations(sub, c);
  CHECK(!bad.empty());
  CHECK(std::any_of(bad.begin(), bad.end(), [&](const TermPair &p) {
    return p.first == x && p.second == store.parse("w(x,y,y)");
  }));
}

TEST_CASE("S is closed under the coordinatewise operation (random)") {
  for (unsigned k : {3u, 4u}) {
    TermStore store(k);
    FreeAlgebra alg(store);
    SubtermIndex sub(store);
    std::vector<std::string> vars = {"x", "y", "z"};
    fuzz::Rng rng(61 * k);
    int tried = 0;
    while (tried < 1000) {
      std::vector<TermId> firsts, seconds;
      bool ok = true;
      for (unsigned i = 0; i < k && ok; ++i) {
        TermId a = fuzz::random_normal(alg, vars, 4, rng);
        TermId b = fuzz::random_normal(alg, vars, 4, rng);
        if (!sub.in_s(a, b)) {
          ok = false;
          break;
        }
        firsts.push_back(a);
        seconds.push_back(b);
      }
      if (!ok) continue;
      ++tried;
      CHECK(sub.in_s(alg.wa(firsts), alg.wa(seconds)));
    }
  }
}
