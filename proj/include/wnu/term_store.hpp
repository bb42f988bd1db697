#pragma once

#include <cstdint>
#include <deque>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wnu {

/// Handle to an interned term node. Valid only for the store that issued it.
using TermId = std::uint32_t;

struct ParseError : std::runtime_error {
  ParseError(const std::string &msg, std::size_t pos)
      : std::runtime_error(msg), position(pos) {}
  std::size_t position;
};

struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BudgetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Hash-consed DAG of terms over a variable set and a single k-ary symbol w.
/// Two terms render identically iff they share an id. Nodes are immutable;
/// interning is safe from multiple threads.
class TermStore {
 public:
  /// Requires arity >= 3. The binary case is rejected: w(x,y) = w(y,x) is
  /// plain commutativity and outside this engine.
  explicit TermStore(unsigned arity);

  TermStore(const TermStore &) = delete;
  TermStore &operator=(const TermStore &) = delete;

  unsigned arity() const { return arity_; }

  /// Interns a variable leaf. Identifier: [A-Za-z_][A-Za-z0-9_]*, "w" is
  /// reserved for the operation symbol.
  TermId variable(std::string_view name);

  /// Interns an application node; no identity of the variety is applied.
  TermId app(std::span<const TermId> children);

  /// Parses `term := var | "w" "(" term ("," term){k-1} ")"`.
  TermId parse(std::string_view text);

  bool is_leaf(TermId t) const;
  std::string var_name(TermId t) const;
  std::span<const TermId> children(TermId t) const;

  /// Occurrences of w in the term tree (sharing expanded).
  std::uint64_t w_count(TermId t) const;

  /// Membership in the normal-form set: a leaf, or an application whose
  /// children are normal and whose first child differs from the children at
  /// two distinct other positions. Computed once at interning time.
  bool is_normal(TermId t) const;

  /// Canonical text, tree semantics. parse(render(t)) == t.
  std::string render(TermId t) const;

  std::size_t size() const;

  bool valid(TermId t) const { return t < size(); }

 private:
  struct Node {
    std::string name;            // leaves only
    std::vector<TermId> kids;    // applications only
    std::uint64_t w_count = 0;
    bool leaf = false;
    bool normal = false;
  };

  struct KidsHash {
    std::size_t operator()(const std::vector<TermId> &v) const {
      std::size_t h = 1469598103934665603ull;
      for (TermId t : v) {
        h ^= t;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  const Node &node(TermId t) const;
  void render_into(TermId t, std::string &out) const;

  unsigned arity_;
  mutable std::shared_mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<std::string, TermId> var_ids_;
  std::unordered_map<std::vector<TermId>, TermId, KidsHash> app_ids_;
};

bool is_valid_identifier(std::string_view name);

}  // namespace wnu
