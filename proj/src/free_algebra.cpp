#include "wnu/free_algebra.hpp"

#include <mutex>
#include <vector>

namespace wnu {

TermId FreeAlgebra::wa(std::span<const TermId> args) {
  if (args.size() != arity()) {
    throw ArityError("wa expects " + std::to_string(arity()) + " arguments");
  }
  for (TermId a : args) {
    if (!store_.is_normal(a)) {
      throw std::invalid_argument("wa argument is not a normal term: " +
                                  store_.render(a));
    }
  }
  bool all_equal = true;
  for (TermId a : args) all_equal = all_equal && a == args[0];
  if (all_equal) return args[0];

  // Detect the pattern "one odd value c, common value d at every other
  // position". With at most two distinct values present, that means one of
  // them occurs exactly once.
  TermId v0 = args[0];
  TermId v1 = v0;
  std::size_t n0 = 0, n1 = 0;
  bool two_values = true;
  for (TermId a : args) {
    if (a == v0) {
      ++n0;
    } else if (v1 == v0) {
      v1 = a;
      ++n1;
    } else if (a == v1) {
      ++n1;
    } else {
      two_values = false;
      break;
    }
  }
  if (two_values && (n0 == 1 || n1 == 1)) {
    TermId odd = n0 == 1 ? v0 : v1;
    TermId common = n0 == 1 ? v1 : v0;
    std::vector<TermId> kids(arity(), common);
    kids[0] = odd;
    return store_.app(kids);
  }
  return store_.app(args);
}

TermId FreeAlgebra::memo_lookup(TermId t) const {
  std::shared_lock lk(mu_);
  auto it = norm_memo_.find(t);
  return it == norm_memo_.end() ? TermId(-1) : it->second;
}

TermId FreeAlgebra::normalize(TermId t) {
  if (store_.is_normal(t)) return t;
  TermId cached = memo_lookup(t);
  if (cached != TermId(-1)) return cached;

  std::span<const TermId> kids = store_.children(t);
  std::vector<TermId> norm_kids;
  norm_kids.reserve(kids.size());
  for (TermId c : kids) norm_kids.push_back(normalize(c));
  TermId result = wa(norm_kids);
  {
    std::unique_lock lk(mu_);
    norm_memo_.emplace(t, result);
  }
  return result;
}

TermId FreeAlgebra::substitute(
    TermId body, const std::unordered_map<TermId, TermId> &env) {
  for (auto &[var, value] : env) {
    if (!store_.is_leaf(var)) {
      throw std::invalid_argument("substitution keys must be variables");
    }
    if (!store_.is_normal(value)) {
      throw std::invalid_argument("substitution values must be normal terms");
    }
  }
  std::unordered_map<TermId, TermId> memo;
  auto eval = [&](auto &&self, TermId t) -> TermId {
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    TermId result;
    if (store_.is_leaf(t)) {
      auto it = env.find(t);
      if (it == env.end()) {
        throw std::invalid_argument("unbound variable in substitution: " +
                                    store_.var_name(t));
      }
      result = it->second;
    } else {
      std::span<const TermId> kids = store_.children(t);
      std::vector<TermId> vals;
      vals.reserve(kids.size());
      for (TermId c : kids) vals.push_back(self(self, c));
      result = wa(vals);
    }
    memo.emplace(t, result);
    return result;
  };
  return eval(eval, body);
}

}  // namespace wnu
