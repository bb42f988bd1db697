#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "wnu/free_algebra.hpp"
#include "wnu/fuzz.hpp"

using namespace wnu;

namespace {

// Normality straight from the definition, independent of the flag the store
// computes at interning time.
bool naive_is_normal(TermStore &store, TermId t) {
  if (store.is_leaf(t)) return true;
  auto kids = store.children(t);
  unsigned differs = 0;
  for (std::size_t i = 1; i < kids.size(); ++i) {
    if (kids[i] != kids[0]) ++differs;
  }
  if (differs < 2) return false;
  return std::all_of(kids.begin(), kids.end(),
                     [&](TermId c) { return naive_is_normal(store, c); });
}

}  // namespace

TEST_CASE("normality of the two quoted ternary examples") {
  TermStore store(3);
  CHECK(store.is_normal(store.parse("w(w(x,y,z),y,y)")));
  CHECK(!store.is_normal(store.parse("w(y,w(x,y,z),y)")));
  CHECK(!store.is_normal(store.parse("w(x,x,x)")));
  CHECK(!store.is_normal(store.parse("w(x,x,y)")));
  CHECK(store.is_normal(store.parse("w(x,y,y)")));
}

TEST_CASE("normality flag matches the recursive definition") {
  for (unsigned k : {3u, 4u}) {
    TermStore store(k);
    std::vector<std::string> vars = {"x", "y", "z"};
    fuzz::Rng rng(5 * k);
    for (int i = 0; i < 1000; ++i) {
      TermId t = fuzz::random_term(store, vars, 4, rng);
      CHECK(store.is_normal(t) == naive_is_normal(store, t));
    }
  }
}

TEST_CASE("wa case analysis at k=3") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId a = store.parse("w(x,y,y)");
  TermId b = store.parse("w(y,x,x)");

  // all placements of the odd element agree
  TermId expected = store.app(std::vector<TermId>{b, a, a});
  CHECK(alg.wa(std::vector<TermId>{a, a, b}) == expected);
  CHECK(alg.wa(std::vector<TermId>{a, b, a}) == expected);
  CHECK(alg.wa(std::vector<TermId>{b, a, a}) == expected);

  CHECK(alg.wa(std::vector<TermId>{a, a, a}) == a);

  TermId c = store.variable("z");
  CHECK(alg.wa(std::vector<TermId>{a, b, c}) ==
        store.app(std::vector<TermId>{a, b, c}));
}

TEST_CASE("wa at k=4: two doubletons fall through to raw application") {
  TermStore store(4);
  FreeAlgebra alg(store);
  TermId a = store.variable("a");
  TermId b = store.variable("b");
  TermId r = alg.wa(std::vector<TermId>{a, a, b, b});
  CHECK(store.render(r) == "w(a,a,b,b)");
  CHECK(store.is_normal(r));
}

TEST_CASE("wa rejects non-normal arguments") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId bad = store.parse("w(x,x,x)");
  TermId x = store.variable("x");
  TermId y = store.variable("y");
  CHECK_THROWS_AS(alg.wa(std::vector<TermId>{bad, x, y}),
                  std::invalid_argument);
}

TEST_CASE("normalize the quoted examples") {
  TermStore store(3);
  FreeAlgebra alg(store);
  CHECK(alg.normalize(store.parse("w(y,w(x,y,z),y)")) ==
        store.parse("w(w(x,y,z),y,y)"));
  CHECK(alg.normalize(store.parse("w(x,x,x)")) == store.parse("x"));
  CHECK(alg.normalize(store.parse("w(w(x,x,y),w(x,y,x),w(y,x,x))")) ==
        store.parse("w(y,x,x)"));
}

TEST_CASE("free equality") {
  TermStore store(3);
  FreeAlgebra alg(store);
  CHECK(alg.free_equal(store.parse("w(x,y,x)"), store.parse("w(x,x,y)")));
  CHECK(!alg.free_equal(store.parse("w(x,y,z)"), store.parse("w(z,y,x)")));
  CHECK(alg.free_equal(store.parse("w(y,w(x,y,z),y)"),
                       store.parse("w(w(x,y,z),y,y)")));
}

TEST_CASE("substitution evaluates in the free algebra") {
  TermStore store(3);
  FreeAlgebra alg(store);
  TermId p = store.variable("p");
  TermId q = store.variable("q");
  TermId x = store.variable("x");
  TermId wyxx = store.parse("w(y,x,x)");

  CHECK(alg.substitute(store.parse("w(p,q,q)"), {{p, x}, {q, x}}) == x);
  CHECK(alg.substitute(p, {{p, wyxx}}) == wyxx);
  CHECK(alg.substitute(store.parse("w(p,p,q)"), {{p, x}, {q, wyxx}}) ==
        store.parse("w(w(y,x,x),x,x)"));

  CHECK_THROWS_AS(alg.substitute(store.parse("w(p,q,r)"), {{p, x}, {q, x}}),
                  std::invalid_argument);
}

TEST_CASE("normalization properties on random terms") {
  for (unsigned k : {3u, 4u}) {
    TermStore store(k);
    FreeAlgebra alg(store);
    std::vector<std::string> vars = {"x", "y", "z"};
    fuzz::Rng rng(17 * k);
    for (int i = 0; i < 2000; ++i) {
      TermId t = fuzz::random_term(store, vars, 6, rng);
      TermId n = alg.normalize(t);
      CHECK(store.is_normal(n));
      CHECK(alg.normalize(n) == n);  // already-normal terms are fixed points
    }
  }
}

TEST_CASE("single random rewrites never change the normal form") {
  TermStore store(3);
  FreeAlgebra alg(store);
  std::vector<std::string> vars = {"x", "y", "z"};
  fuzz::Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    TermId t = fuzz::random_term(store, vars, 5, rng);
    TermId n = alg.normalize(t);
    TermId cur = t;
    for (int step = 0; step < 10; ++step) {
      cur = fuzz::rewrite_once(store, cur, rng);
      CHECK(alg.normalize(cur) == n);
    }
  }
}

TEST_CASE("substituting each variable for itself is normalization") {
  TermStore store(3);
  FreeAlgebra alg(store);
  std::vector<std::string> vars = {"x", "y", "z"};
  std::unordered_map<TermId, TermId> identity;
  for (const auto &v : vars) {
    TermId t = store.variable(v);
    identity[t] = t;
  }
  fuzz::Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    TermId t = fuzz::random_term(store, vars, 5, rng);
    CHECK(alg.substitute(t, identity) == alg.normalize(t));
  }
}

TEST_CASE("image of wa on small tuples is exactly the normal terms") {
  // Sanity check for the general-k reading of normality: applying wa to all
  // tuples of small normal terms never leaves the normal set, and every
  // normal application of small weight arises this way.
  for (unsigned k : {3u, 4u}) {
    TermStore store(k);
    FreeAlgebra alg(store);
    std::vector<std::string> vars = {"x", "y"};
    auto small = fuzz::normal_terms_by_filter(store, vars, 1);

    std::set<TermId> image;
    std::vector<TermId> tuple;
    auto rec = [&](auto &&self) -> void {
      if (tuple.size() == k) {
        image.insert(alg.wa(tuple));
        return;
      }
      for (TermId t : small) {
        tuple.push_back(t);
        self(self);
        tuple.pop_back();
      }
    };
    rec(rec);
    for (TermId t : image) CHECK(store.is_normal(t));

    // every normal application with children among `small` is in the image
    std::set<TermId> small_set(small.begin(), small.end());
    for (TermId t : fuzz::normal_terms_by_filter(store, vars, 3)) {
      if (store.is_leaf(t)) continue;
      auto kids = store.children(t);
      bool all_small = std::all_of(kids.begin(), kids.end(), [&](TermId c) {
        return small_set.count(c) > 0;
      });
      if (all_small) CHECK(image.count(t) == 1);
    }
  }
}
