#pragma once

#include <shared_mutex>
#include <span>
#include <unordered_map>

#include "wnu/term_store.hpp"

namespace wnu {

/// The free algebra on the store's variables: its carrier is the set of
/// normal terms and its basic operation is `wa`. Normalization evaluates a
/// raw term bottom-up in this algebra, which yields the unique normal form
/// of the term modulo the k-wnu identities.
class FreeAlgebra {
 public:
  explicit FreeAlgebra(TermStore &store) : store_(store) {}

  TermStore &store() const { return store_; }
  unsigned arity() const { return store_.arity(); }

  bool is_normal(TermId t) const { return store_.is_normal(t); }

  /// The basic operation on normal terms:
  ///  - all arguments equal a        -> a
  ///  - one odd value c among a
  ///    common value d != c         -> w(c,d,...,d)
  ///  - otherwise                   -> w(a1,...,ak)
  /// Arguments must be normal; the result always is.
  TermId wa(std::span<const TermId> args);

  /// Unique normal form of t modulo the k-wnu identities. Memoized per node.
  TermId normalize(TermId t);

  /// Whether s and t denote the same element of the free algebra, i.e.
  /// whether s = t is an identity of the k-wnu variety.
  bool free_equal(TermId s, TermId t) {
    return normalize(s) == normalize(t);
  }

  /// Evaluates `body` at the given normal elements: leaves are replaced via
  /// env (keyed by variable id), applications evaluate through wa. Every
  /// variable of body must be bound; env values must be normal.
  TermId substitute(TermId body,
                    const std::unordered_map<TermId, TermId> &env);

 private:
  TermId memo_lookup(TermId t) const;

  TermStore &store_;
  mutable std::shared_mutex mu_;
  std::unordered_map<TermId, TermId> norm_memo_;
};

}  // namespace wnu
