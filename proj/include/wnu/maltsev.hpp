#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wnu/closure.hpp"
#include "wnu/term_store.hpp"

namespace wnu::maltsev {

/// A term over the condition's operation symbols: a variable, or a symbol
/// applied to subterms (composition allowed).
struct CondTerm {
  std::string head;
  std::vector<CondTerm> args;  // empty iff head is a variable

  bool is_var() const { return args.empty(); }
};

struct OpSymbol {
  std::string name;
  unsigned arity;
};

struct Identity {
  CondTerm lhs;
  CondTerm rhs;
};

/// A strong Maltsev condition: a finite list of identities. Symbol arities
/// are inferred from the first occurrence and must stay consistent.
struct Condition {
  std::vector<OpSymbol> symbols;
  std::vector<Identity> identities;

  std::string text;  // the source form, kept for reports

  const OpSymbol *find_symbol(std::string_view name) const;
};

/// Parses `identity (";" identity)*` with `identity := cterm "=" cterm` and
/// `cterm := var | sym "(" cterm ("," cterm)* ")"`. Applied identifiers are
/// symbols, everything else a variable.
Condition parse_condition(std::string_view text);

std::string render_cond_term(const CondTerm &t);

/// Map from operation symbol to projection coordinate (1-based).
using ProjectionAssignment = std::map<std::string, unsigned>;

/// The variable a projection-composed term selects: a variable selects
/// itself, f(u1,...,un) selects whatever u_{asg(f)} selects. Over any set
/// with at least two elements, two such terms are equal as functions iff
/// they select the same variable.
std::string project_eval(const CondTerm &term,
                         const ProjectionAssignment &asg);

/// Searches all projection assignments for one satisfying every identity.
/// A witness means the condition is trivial (holds in the two-element
/// projection algebra).
std::optional<ProjectionAssignment> is_trivial(const Condition &cond);

enum class SlemcShape {
  SameSymbol,             // t(x...) = t(y...)
  TwoSymbols,             // r(x...) = s(y...)
  TermEqualsVariable,     // t(x...) = y
  VariableEqualsVariable  // z = r
};

enum class SlemcStatus {
  Trivial,              // satisfiable by projections
  Collapsing,           // forces every idempotent model to one element
  CandidateNontrivial,  // same symbol, x_i != y_i at every coordinate
};

struct SlemcClassification {
  SlemcShape shape;
  SlemcStatus status;
  std::optional<unsigned> shared_coordinate;  // 1-based, SameSymbol/Trivial
  std::string note;
};

/// Classifies a single linear identity. For SameSymbol inputs the verdict
/// agrees with is_trivial; collapsing shapes are reported, not proved.
/// Throws std::invalid_argument unless the condition is one linear identity.
SlemcClassification classify_slemc(const Condition &cond);

/// The t(x_1..x_m) = t(y_1..y_m) data of a SameSymbol condition.
struct Slemc {
  std::string symbol;
  std::vector<std::string> lhs_vars;
  std::vector<std::string> rhs_vars;
};

Slemc as_slemc(const Condition &cond);

struct WitnessSearch {
  std::optional<std::string> witness;  // rendered over formal variables v1..vm
  std::uint64_t candidates_examined = 0;
};

/// Looks for a term of the k-wnu free algebra, over m formal variables and
/// with w_count <= max_w, that satisfies the identity under free-algebra
/// equality. Candidates run in enumeration order, so the returned witness is
/// the least one. For a genuinely nontrivial SLEMC no witness exists at any
/// bound; absence here is the expected outcome.
WitnessSearch search_wnu_witness(const Slemc &cond, unsigned k,
                                 unsigned max_w);

struct RefutationReport {
  bool precondition_ok = false;
  std::vector<std::pair<std::string, std::string>> bad_generators;
  ClosureSet closure;
  std::optional<std::string> diagonal;
  std::size_t s_violation_count = 0;
  bool confirmed_at_budget = false;
  std::string statement;
};

/// Bounded run of the diagonal argument: closes the generators
/// {(x_i, y_i)} under the coordinatewise free-algebra operation and checks
/// that the closure avoids the diagonal and stays inside S. Generators with
/// x_i == y_i are reported as precondition violations ((a,a) is never in S).
RefutationReport refute_via_s(const Slemc &cond, unsigned k,
                              const ClosureBudget &budget);

/// Exhaustive identity check over a concrete finite algebra: every identity
/// of the condition must hold under all valuations into {0..domain_size-1}.
/// Operations are given per symbol name.
using FiniteOp = std::function<int(std::span<const int>)>;
bool holds_in_finite_algebra(const Condition &cond,
                             const std::map<std::string, FiniteOp> &ops,
                             int domain_size);

}  // namespace wnu::maltsev
