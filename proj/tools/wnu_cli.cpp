// Command-line front end for the wnu engine, built on the C API in wnu.h.
//
// Exit codes: 0 completed, 2 parse error, 3 arity violation, 4 invalid
// budget, 1 other failure. Mathematical verdicts (trivial / refuted /
// witness found) live in the report, never in the exit code.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wnu.h"

namespace {

using nlohmann::json;

struct Scoped {
  wnu_engine *eng = nullptr;
  ~Scoped() { wnu_engine_free(eng); }
};

struct OwnedString {
  char *s = nullptr;
  ~OwnedString() { wnu_string_free(s); }
};

char g_err[512];

int die(int status) {
  std::cerr << "error: " << g_err << "\n";
  return status;
}

wnu_engine *make_engine(unsigned k, int &status) {
  wnu_engine *eng = wnu_engine_new(k, g_err, sizeof g_err);
  if (!eng) status = WNU_ERR_ARITY;
  return eng;
}

std::string join(const std::vector<std::string> &items, char sep) {
  std::string out;
  for (const auto &i : items) {
    if (!out.empty()) out += sep;
    out += i;
  }
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"term engine for k-ary weak-near-unanimity free algebras"};
  app.require_subcommand(1);

  unsigned k = 3;
  std::string format = "text";
  std::uint64_t seed = 1;
  unsigned max_w = 2;
  unsigned budget_w = 2;
  unsigned budget_rounds = 8;
  std::size_t budget_pairs = 20000;

  auto add_common = [&](CLI::App *cmd, bool with_k = true) {
    if (with_k) cmd->add_option("-k", k, "arity of the operation (>= 3)");
    cmd->add_option("--format", format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  std::string term_a, term_b, vars_csv, gen_text, condition;

  auto *normalize = app.add_subcommand("normalize", "print the normal form");
  normalize->add_option("term", term_a)->required();
  add_common(normalize);

  auto *eq = app.add_subcommand("eq", "test equality in the free algebra");
  eq->add_option("lhs", term_a)->required();
  eq->add_option("rhs", term_b)->required();
  add_common(eq);

  auto *subterm =
      app.add_subcommand("subterm", "subterm order and S membership");
  subterm->add_option("a", term_a)->required();
  subterm->add_option("b", term_b)->required();
  add_common(subterm);

  auto *enum_cmd =
      app.add_subcommand("enum", "enumerate normal terms by weight");
  enum_cmd->add_option("--vars", vars_csv, "comma-separated variables")
      ->required();
  enum_cmd->add_option("--max-w", max_w, "maximum number of w nodes");
  add_common(enum_cmd);

  auto *closure = app.add_subcommand(
      "closure", "close pairs under the coordinatewise operation");
  closure->add_option("--vars", vars_csv,
                      "variables; generators are all distinct ordered pairs");
  closure->add_option("--gen", gen_text, "explicit generators \"(s,t);...\"");
  closure->add_option("--budget-w", budget_w, "per-coordinate w-count cap");
  closure->add_option("--budget-rounds", budget_rounds, "round cap");
  closure->add_option("--budget-pairs", budget_pairs, "pair-count cap");
  add_common(closure);

  auto *check = app.add_subcommand("check", "analyze a Maltsev condition");
  check->add_option("condition", condition, "e.g. \"t(r,a,r,e) = t(a,r,e,a)\"")
      ->required();
  check->add_option("--max-w", max_w, "witness search bound");
  check->add_option("--budget-w", budget_w, "refutation w-count cap");
  check->add_option("--budget-rounds", budget_rounds, "refutation round cap");
  check->add_option("--budget-pairs", budget_pairs, "refutation pair cap");
  add_common(check);

  auto *selftest =
      app.add_subcommand("selftest", "run the full property suites");
  selftest->add_option("--seed", seed, "random seed");
  bool quick = false;
  selftest->add_flag("--quick", quick, "scaled-down smoke run");
  add_common(selftest, /*with_k=*/false);

  CLI11_PARSE(app, argc, argv);

  if (*normalize) {
    int status = 0;
    Scoped s{make_engine(k, status)};
    if (!s.eng) return die(status);
    wnu_term t, n;
    if (int rc = wnu_parse_term(s.eng, term_a.c_str(), &t, g_err, sizeof g_err))
      return die(rc);
    if (int rc = wnu_normalize(s.eng, t, &n, g_err, sizeof g_err))
      return die(rc);
    OwnedString in{wnu_render_term(s.eng, t)}, out{wnu_render_term(s.eng, n)};
    if (format == "json") {
      std::cout << json{{"input", in.s}, {"normal", out.s}}.dump(2) << "\n";
    } else {
      std::cout << out.s << "\n";
    }
    return 0;
  }

  if (*eq) {
    int status = 0;
    Scoped s{make_engine(k, status)};
    if (!s.eng) return die(status);
    wnu_term a, b;
    if (int rc = wnu_parse_term(s.eng, term_a.c_str(), &a, g_err, sizeof g_err))
      return die(rc);
    if (int rc = wnu_parse_term(s.eng, term_b.c_str(), &b, g_err, sizeof g_err))
      return die(rc);
    int equal = 0;
    if (int rc = wnu_free_equal(s.eng, a, b, &equal, g_err, sizeof g_err))
      return die(rc);
    if (format == "json") {
      std::cout << json{{"lhs", term_a}, {"rhs", term_b}, {"equal", equal != 0}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << (equal ? "equal" : "not equal") << "\n";
    }
    return 0;
  }

  if (*subterm) {
    int status = 0;
    Scoped s{make_engine(k, status)};
    if (!s.eng) return die(status);
    wnu_term a, b;
    if (int rc = wnu_parse_term(s.eng, term_a.c_str(), &a, g_err, sizeof g_err))
      return die(rc);
    if (int rc = wnu_parse_term(s.eng, term_b.c_str(), &b, g_err, sizeof g_err))
      return die(rc);
    int ab = 0, ba = 0, in_s = 0;
    if (int rc = wnu_is_subterm(s.eng, a, b, &ab, g_err, sizeof g_err))
      return die(rc);
    if (int rc = wnu_is_subterm(s.eng, b, a, &ba, g_err, sizeof g_err))
      return die(rc);
    if (int rc = wnu_in_s(s.eng, a, b, &in_s, g_err, sizeof g_err))
      return die(rc);
    if (format == "json") {
      std::cout << json{{"a", term_a},
                        {"b", term_b},
                        {"a_subterm_of_b", ab != 0},
                        {"b_subterm_of_a", ba != 0},
                        {"in_s", in_s != 0}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "a subterm of b: " << (ab ? "yes" : "no") << "\n"
                << "b subterm of a: " << (ba ? "yes" : "no") << "\n"
                << "in S: " << (in_s ? "yes" : "no") << "\n";
    }
    return 0;
  }

  if (*enum_cmd) {
    int status = 0;
    Scoped s{make_engine(k, status)};
    if (!s.eng) return die(status);
    OwnedString out;
    if (int rc = wnu_enumerate_json(s.eng, vars_csv.c_str(), max_w, &out.s,
                                    g_err, sizeof g_err))
      return die(rc);
    if (format == "json") {
      std::cout << out.s << "\n";
    } else {
      for (const auto &t : json::parse(out.s)["terms"]) {
        std::cout << t.get<std::string>() << "\n";
      }
    }
    return 0;
  }

  if (*closure) {
    if (gen_text.empty() && vars_csv.empty()) {
      std::cerr << "error: closure needs --vars or --gen\n";
      return 1;
    }
    int status = 0;
    Scoped s{make_engine(k, status)};
    if (!s.eng) return die(status);
    std::string gens = gen_text;
    if (gens.empty()) {
      // all distinct ordered pairs over the variable list
      std::vector<std::string> vars;
      for (std::size_t start = 0; start <= vars_csv.size();) {
        std::size_t comma = vars_csv.find(',', start);
        vars.push_back(vars_csv.substr(
            start, comma == std::string::npos ? std::string::npos
                                              : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      std::vector<std::string> pairs;
      for (const auto &a : vars) {
        for (const auto &b : vars) {
          if (a != b) pairs.push_back("(" + a + "," + b + ")");
        }
      }
      gens = join(pairs, ';');
    }
    OwnedString out;
    if (int rc = wnu_closure_json(s.eng, gens.c_str(), budget_rounds,
                                  budget_pairs, budget_w, &out.s, g_err,
                                  sizeof g_err))
      return die(rc);
    json report = json::parse(out.s);
    bool bad_gen = false;
    for (const auto &g : report["generators"]) {
      for (const auto &v : report["s_violations"]) {
        if (g == v) bad_gen = true;
      }
    }
    if (bad_gen) {
      std::cerr << "error: generator pair is not in S (coordinates are "
                   "comparable under the subterm order)\n";
      return 1;
    }
    if (format == "json") {
      std::cout << out.s << "\n";
    } else {
      std::cout << "pairs: " << report["pair_count"] << "\n"
                << "rounds: " << report["rounds_completed"]
                << " (stop: " << report["stop_reason"].get<std::string>()
                << ")\n"
                << "diagonal witness: "
                << (report["diagonal_witness"].is_null()
                        ? "none"
                        : report["diagonal_witness"].dump())
                << "\n"
                << "S violations: " << report["s_violations"].size() << "\n";
    }
    return 0;
  }

  if (*check) {
    OwnedString out;
    if (int rc = wnu_check_condition_json(condition.c_str(), k, max_w,
                                          budget_rounds, budget_pairs,
                                          budget_w, &out.s, g_err,
                                          sizeof g_err))
      return die(rc);
    if (format == "json") {
      std::cout << out.s << "\n";
      return 0;
    }
    json report = json::parse(out.s);
    std::cout << "condition: " << report["condition"].get<std::string>()
              << "\n";
    if (report.contains("classification")) {
      auto &c = report["classification"];
      std::cout << "classification: " << c["shape"].get<std::string>();
      if (c.contains("status")) {
        std::cout << " / " << c["status"].get<std::string>();
      }
      std::cout << "\n";
    }
    std::cout << "trivial: " << (report["trivial"].get<bool>() ? "yes" : "no")
              << "\n";
    if (!report["projection_witness"].is_null()) {
      std::cout << "projection witness: " << report["projection_witness"].dump()
                << "\n";
    }
    if (report.contains("witness_search")) {
      auto &ws = report["witness_search"];
      std::cout << "witness search (max_w=" << ws["max_w"] << "): "
                << (ws["witness"].is_null()
                        ? "no witness"
                        : ws["witness"].get<std::string>())
                << " (" << ws["candidates_examined"] << " candidates)\n";
    }
    if (report.contains("refutation")) {
      auto &r = report["refutation"];
      std::cout << "refutation: "
                << (r["confirmed_at_budget"].get<bool>()
                        ? "confirmed at budget"
                        : "NOT confirmed")
                << "\n";
    }
    std::cout << "outcome: " << report["outcome"].get<std::string>() << "\n";
    return 0;
  }

  if (*selftest) {
    OwnedString out;
    if (int rc = wnu_selftest_json(seed, quick ? 1 : 0, &out.s, g_err,
                                   sizeof g_err))
      return die(rc);
    json report = json::parse(out.s);
    if (format == "json") {
      std::cout << out.s << "\n";
    } else {
      for (const auto &c : report["criteria"]) {
        std::printf("%s criterion %2d: %s (%.0f ms) %s\n",
                    c["pass"].get<bool>() ? "PASS" : "FAIL",
                    c["id"].get<int>(), c["name"].get<std::string>().c_str(),
                    c["elapsed_ms"].get<double>(),
                    c["details"].get<std::string>().c_str());
      }
    }
    return report["all_pass"].get<bool>() ? 0 : 1;
  }

  return 0;
}
