#include "wnu/closure.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <utility>

namespace wnu {

namespace {

std::uint64_t pack(TermPair p) {
  return (std::uint64_t(p.first) << 32) | p.second;
}

// One closure run. Rounds are derived with a pruned tuple enumeration that
// produces exactly the kept results of the naive all-tuples rule: a k-tuple
// of pairs can only yield a result within the w-count budget if, on each
// coordinate, either all entries coincide (the operation returns the shared
// term) or the entry w-counts sum to at most budget-1 (any other case builds
// an application of weight 1 + sum). The naive rule is kept as a test oracle.
class ClosureRun {
 public:
  ClosureRun(FreeAlgebra &alg, std::span<const TermPair> generators,
             const ClosureBudget &budget)
      : alg_(alg), store_(alg.store()), budget_(budget), k_(alg.arity()) {
    if (budget.max_rounds == 0 || budget.max_pairs == 0 ||
        budget.max_w_per_coordinate == 0) {
      throw BudgetError("closure budgets must all be positive");
    }
    if (generators.empty()) {
      throw std::invalid_argument("closure needs at least one generator pair");
    }
    for (TermPair g : generators) {
      if (!store_.is_normal(g.first) || !store_.is_normal(g.second)) {
        throw std::invalid_argument("generator coordinates must be normal");
      }
      if (store_.w_count(g.first) > budget.max_w_per_coordinate ||
          store_.w_count(g.second) > budget.max_w_per_coordinate) {
        throw BudgetError(
            "generator exceeds the per-coordinate w-count budget");
      }
    }
    std::vector<TermPair> gens(generators.begin(), generators.end());
    sort_pairs(gens);
    for (TermPair g : gens) add(g);
  }

  ClosureSet run() {
    ClosureSet out;
    bool capped = false;
    for (unsigned round = 1; round <= budget_.max_rounds; ++round) {
      derive_round();
      sort_pairs(results_);
      std::size_t before = members_.size();
      for (TermPair p : results_) {
        if (index_.contains(pack(p))) continue;
        if (members_.size() >= budget_.max_pairs) {
          capped = true;
          break;
        }
        add(p);
      }
      if (capped) {
        out.rounds_completed = round - 1;
        out.stop_reason = "max_pairs";
        break;
      }
      out.rounds_completed = round;
      if (members_.size() == before) {
        out.saturated = true;
        out.stop_reason = "saturated";
        break;
      }
      delta_begin_ = before;
    }
    if (out.stop_reason.empty()) out.stop_reason = "max_rounds";
    out.pairs = members_;
    sort_pairs(out.pairs);
    return out;
  }

 private:
  struct Light {
    TermPair p;
    bool delta;
  };

  void add(TermPair p) {
    index_.emplace(pack(p), members_.size());
    members_.push_back(p);
  }

  bool is_delta(TermPair p) const {
    auto it = index_.find(pack(p));
    return it != index_.end() && it->second >= delta_begin_;
  }

  const std::string &render_cached(TermId t) {
    auto it = render_cache_.find(t);
    if (it == render_cache_.end()) {
      it = render_cache_.emplace(t, store_.render(t)).first;
    }
    return it->second;
  }

  bool term_less(TermId a, TermId b) {
    if (a == b) return false;
    auto wa = store_.w_count(a), wb = store_.w_count(b);
    if (wa != wb) return wa < wb;
    return render_cached(a) < render_cached(b);
  }

  void sort_pairs(std::vector<TermPair> &pairs) {
    std::sort(pairs.begin(), pairs.end(), [&](TermPair x, TermPair y) {
      if (x.first != y.first) return term_less(x.first, y.first);
      return term_less(x.second, y.second);
    });
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  }

  void derive_round() {
    results_.clear();
    derive_light_tuples();
    derive_rows(/*fixed_first=*/true);
    derive_rows(/*fixed_first=*/false);
  }

  // Tuples where both coordinate sums stay within budget - 1. Entries are
  // bucketed by their (first,second) w-count profile so the recursion only
  // visits feasible branches.
  void derive_light_tuples() {
    unsigned cap = budget_.max_w_per_coordinate - 1;
    std::map<std::pair<unsigned, unsigned>, std::vector<Light>> groups;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      TermPair p = members_[i];
      unsigned wf = unsigned(store_.w_count(p.first));
      unsigned ws = unsigned(store_.w_count(p.second));
      if (wf <= cap && ws <= cap) {
        groups[{wf, ws}].push_back({p, i >= delta_begin_});
      }
    }
    std::vector<TermId> fs, ss;
    fs.reserve(k_);
    ss.reserve(k_);
    auto rec = [&](auto &&self, unsigned bf, unsigned bs,
                   bool any_delta) -> void {
      if (fs.size() == k_) {
        if (!any_delta) return;
        results_.push_back({alg_.wa(fs), alg_.wa(ss)});
        return;
      }
      for (auto &[profile, items] : groups) {
        if (profile.first > bf || profile.second > bs) continue;
        for (const Light &l : items) {
          fs.push_back(l.p.first);
          ss.push_back(l.p.second);
          self(self, bf - profile.first, bs - profile.second,
               any_delta || l.delta);
          fs.pop_back();
          ss.pop_back();
        }
      }
    };
    rec(rec, cap, cap, false);
  }

  // Tuples where one coordinate is constant (the operation collapses it to
  // the shared term) and the other coordinate stays within budget - 1.
  // All-equal tuples reproduce an existing pair and are skipped.
  void derive_rows(bool fixed_first) {
    unsigned cap = budget_.max_w_per_coordinate - 1;
    struct Entry {
      TermId other;
      unsigned w;
      bool delta;
    };
    std::unordered_map<TermId, std::vector<Entry>> rows;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      TermPair p = members_[i];
      TermId fixed = fixed_first ? p.first : p.second;
      TermId other = fixed_first ? p.second : p.first;
      unsigned w = unsigned(store_.w_count(other));
      if (w <= cap) rows[fixed].push_back({other, w, i >= delta_begin_});
    }
    std::vector<TermId> tuple;
    tuple.reserve(k_);
    for (auto &[fixed, row] : rows) {
      auto rec = [&](auto &&self, unsigned bw, bool any_delta) -> void {
        if (tuple.size() == k_) {
          if (!any_delta) return;
          bool all_equal = true;
          for (TermId t : tuple) all_equal = all_equal && t == tuple[0];
          if (all_equal) return;
          TermId combined = alg_.wa(tuple);
          if (fixed_first) {
            results_.push_back({fixed, combined});
          } else {
            results_.push_back({combined, fixed});
          }
          return;
        }
        for (const Entry &e : row) {
          if (e.w > bw) continue;
          tuple.push_back(e.other);
          self(self, bw - e.w, any_delta || e.delta);
          tuple.pop_back();
        }
      };
      rec(rec, cap, false);
    }
  }

  FreeAlgebra &alg_;
  TermStore &store_;
  ClosureBudget budget_;
  unsigned k_;
  std::vector<TermPair> members_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::size_t delta_begin_ = 0;
  std::vector<TermPair> results_;
  std::unordered_map<TermId, std::string> render_cache_;
};

}  // namespace

ClosureSet close_pairs(FreeAlgebra &alg, std::span<const TermPair> generators,
                       const ClosureBudget &budget) {
  return ClosureRun(alg, generators, budget).run();
}

std::optional<TermPair> diagonal_witness(const ClosureSet &c) {
  for (TermPair p : c.pairs) {
    if (p.first == p.second) return p;
  }
  return std::nullopt;
}

std::vector<TermPair> s_violations(SubtermIndex &idx, const ClosureSet &c) {
  std::vector<TermPair> out;
  for (TermPair p : c.pairs) {
    if (!idx.in_s(p.first, p.second)) out.push_back(p);
  }
  return out;
}

}  // namespace wnu
