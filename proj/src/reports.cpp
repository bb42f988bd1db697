#include "wnu/reports.hpp"

#include <chrono>

#include "wnu/subterm.hpp"

namespace wnu::reports {

using nlohmann::json;

namespace {

json pair_json(TermStore &store, TermPair p) {
  return json::array({store.render(p.first), store.render(p.second)});
}

const char *shape_name(maltsev::SlemcShape s) {
  switch (s) {
    case maltsev::SlemcShape::SameSymbol: return "same_symbol";
    case maltsev::SlemcShape::TwoSymbols: return "two_symbols";
    case maltsev::SlemcShape::TermEqualsVariable: return "term_equals_variable";
    case maltsev::SlemcShape::VariableEqualsVariable:
      return "variable_equals_variable";
  }
  return "?";
}

const char *status_name(maltsev::SlemcStatus s) {
  switch (s) {
    case maltsev::SlemcStatus::Trivial: return "trivial";
    case maltsev::SlemcStatus::Collapsing: return "collapsing";
    case maltsev::SlemcStatus::CandidateNontrivial:
      return "candidate_nontrivial";
  }
  return "?";
}

json budget_json(const ClosureBudget &b) {
  return {{"max_rounds", b.max_rounds},
          {"max_pairs", b.max_pairs},
          {"max_w_per_coordinate", b.max_w_per_coordinate}};
}

}  // namespace

json enumeration_report(TermStore &store, std::span<const std::string> vars,
                        unsigned max_w) {
  json terms = json::array();
  for (TermId t : enumerate_normal(store, vars, max_w)) {
    terms.push_back(store.render(t));
  }
  return {{"variables", std::vector<std::string>(vars.begin(), vars.end())},
          {"max_w", max_w},
          {"count", terms.size()},
          {"terms", terms}};
}

json closure_report(TermStore &store, std::span<const TermPair> generators,
                    const ClosureBudget &budget, const ClosureSet &closure,
                    SubtermIndex &idx) {
  json gens = json::array();
  for (TermPair g : generators) gens.push_back(pair_json(store, g));

  json report = {{"generators", gens},
                 {"budget", budget_json(budget)},
                 {"rounds_completed", closure.rounds_completed},
                 {"saturated", closure.saturated},
                 {"stop_reason", closure.stop_reason},
                 {"pair_count", closure.pairs.size()}};
  if (auto d = diagonal_witness(closure)) {
    report["diagonal_witness"] = pair_json(store, *d);
  } else {
    report["diagonal_witness"] = nullptr;
  }
  json violations = json::array();
  for (TermPair p : s_violations(idx, closure)) {
    violations.push_back(pair_json(store, p));
  }
  report["s_violations"] = violations;
  return report;
}

json check_report(const maltsev::Condition &cond, unsigned k, unsigned max_w,
                  const ClosureBudget &budget) {
  auto start = std::chrono::steady_clock::now();
  json report = {{"condition", cond.text},
                 {"k", k},
                 {"budget_or_bound",
                  {{"max_w", max_w}, {"closure", budget_json(budget)}}}};

  bool candidate = false;
  try {
    auto cls = maltsev::classify_slemc(cond);
    json c = {{"shape", shape_name(cls.shape)},
              {"status", status_name(cls.status)},
              {"note", cls.note}};
    if (cls.shared_coordinate) c["shared_coordinate"] = *cls.shared_coordinate;
    report["classification"] = c;
    candidate = cls.status == maltsev::SlemcStatus::CandidateNontrivial;
  } catch (const std::invalid_argument &e) {
    report["classification"] = {{"shape", "not_a_single_linear_identity"},
                                {"note", e.what()}};
  }

  if (auto witness = maltsev::is_trivial(cond)) {
    json asg = json::object();
    for (auto &[sym, coord] : *witness) asg[sym] = coord;
    report["trivial"] = true;
    report["projection_witness"] = asg;
  } else {
    report["trivial"] = false;
    report["projection_witness"] = nullptr;
  }

  std::uint64_t candidates_examined = 0;
  if (candidate) {
    auto slemc = maltsev::as_slemc(cond);
    auto search = maltsev::search_wnu_witness(slemc, k, max_w);
    candidates_examined = search.candidates_examined;
    report["witness_search"] = {
        {"max_w", max_w},
        {"witness", search.witness ? json(*search.witness) : json(nullptr)},
        {"candidates_examined", search.candidates_examined}};

    auto ref = maltsev::refute_via_s(slemc, k, budget);
    json r = {{"precondition_ok", ref.precondition_ok},
              {"confirmed_at_budget", ref.confirmed_at_budget},
              {"statement", ref.statement}};
    if (!ref.bad_generators.empty()) {
      json bad = json::array();
      for (auto &[a, b] : ref.bad_generators) {
        bad.push_back(json::array({a, b}));
      }
      r["bad_generators"] = bad;
    }
    if (ref.precondition_ok) {
      r["pair_count"] = ref.closure.pairs.size();
      r["rounds_completed"] = ref.closure.rounds_completed;
      r["saturated"] = ref.closure.saturated;
      r["stop_reason"] = ref.closure.stop_reason;
      r["diagonal_witness"] =
          ref.diagonal ? json(*ref.diagonal) : json(nullptr);
      r["s_violation_count"] = ref.s_violation_count;
    }
    report["refutation"] = r;
    report["outcome"] = search.witness
                            ? "witness found"
                            : (ref.confirmed_at_budget
                                   ? "refuted at budget"
                                   : "inconclusive at budget");
  } else {
    report["outcome"] = report["trivial"].get<bool>()
                            ? "trivial"
                            : "not a candidate nontrivial identity";
  }
  report["candidates_examined"] = candidates_examined;
  report["elapsed_ms"] = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return report;
}

json selftest_report(const std::vector<selftest::CriterionResult> &results,
                     std::uint64_t seed, bool quick) {
  json criteria = json::array();
  bool all_pass = true;
  for (const auto &r : results) {
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"details", r.details},
                        {"elapsed_ms", r.elapsed_ms}});
    all_pass = all_pass && r.pass;
  }
  return {{"seed", seed},
          {"quick", quick},
          {"all_pass", all_pass},
          {"criteria", criteria}};
}

}  // namespace wnu::reports
