#pragma once

#include <random>
#include <span>
#include <string>
#include <vector>

#include "wnu/free_algebra.hpp"
#include "wnu/term_store.hpp"

namespace wnu::fuzz {

using Rng = std::mt19937_64;

/// Random syntactic term over `vars` with w_count <= max_w. Not necessarily
/// normal.
TermId random_term(TermStore &store, std::span<const std::string> vars,
                   unsigned max_w, Rng &rng);

/// Random normal term: a random syntactic term, normalized.
TermId random_normal(FreeAlgebra &alg, std::span<const std::string> vars,
                     unsigned max_w, Rng &rng);

/// Uniformly random node of the term tree (with multiplicity under sharing).
TermId random_subnode(TermStore &store, TermId t, Rng &rng);

/// Applies one random instance of a k-wnu identity (either direction) at a
/// random tree position: collapse w(t,..,t) -> t, expand t -> w(t,..,t), or
/// move the odd argument of a near-unanimous application to another slot.
/// Retries a few positions; returns t unchanged if nothing applies.
TermId rewrite_once(TermStore &store, TermId t, Rng &rng);

/// All syntactic terms over `vars` with w_count <= max_w (no filtering).
std::vector<TermId> all_terms_up_to(TermStore &store,
                                    std::span<const std::string> vars,
                                    unsigned max_w);

/// Brute-force enumeration oracle: generate everything, keep normal forms.
std::vector<TermId> normal_terms_by_filter(TermStore &store,
                                           std::span<const std::string> vars,
                                           unsigned max_w);

}  // namespace wnu::fuzz
