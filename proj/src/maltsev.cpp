#include "wnu/maltsev.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#include "wnu/free_algebra.hpp"
#include "wnu/subterm.hpp"

namespace wnu::maltsev {

const OpSymbol *Condition::find_symbol(std::string_view name) const {
  for (const OpSymbol &s : symbols) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

class CondParser {
 public:
  explicit CondParser(std::string_view text) : text_(text) {}

  Condition run() {
    Condition cond;
    cond.text = std::string(text_);
    cond.identities.push_back(parse_identity());
    while (peek() == ';') {
      ++pos_;
      cond.identities.push_back(parse_identity());
    }
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after condition");
    for (auto &[name, arity] : arities_) cond.symbols.push_back({name, arity});
    std::sort(cond.symbols.begin(), cond.symbols.end(),
              [](const OpSymbol &a, const OpSymbol &b) {
                return a.name < b.name;
              });
    return cond;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected identifier");
    std::string name(text_.substr(start, pos_ - start));
    if (std::isdigit(static_cast<unsigned char>(name[0]))) {
      pos_ = start;
      fail("identifier cannot start with a digit");
    }
    return name;
  }

  CondTerm parse_cterm() {
    CondTerm t;
    t.head = ident();
    if (peek() != '(') return t;  // bare variable
    ++pos_;
    t.args.push_back(parse_cterm());
    while (peek() == ',') {
      ++pos_;
      t.args.push_back(parse_cterm());
    }
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    auto [it, inserted] = arities_.try_emplace(t.head, unsigned(t.args.size()));
    if (!inserted && it->second != t.args.size()) {
      fail("symbol '" + t.head + "' used with arity " +
           std::to_string(t.args.size()) + " but declared with arity " +
           std::to_string(it->second));
    }
    return t;
  }

  Identity parse_identity() {
    Identity id;
    id.lhs = parse_cterm();
    if (peek() != '=') fail("expected '='");
    ++pos_;
    id.rhs = parse_cterm();
    return id;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, unsigned> arities_;
};

}  // namespace

Condition parse_condition(std::string_view text) {
  return CondParser(text).run();
}

std::string render_cond_term(const CondTerm &t) {
  std::string out = t.head;
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      out += render_cond_term(t.args[i]);
    }
    out += ')';
  }
  return out;
}

std::string project_eval(const CondTerm &term,
                         const ProjectionAssignment &asg) {
  if (term.is_var()) return term.head;
  auto it = asg.find(term.head);
  if (it == asg.end()) {
    throw std::invalid_argument("no projection assigned to symbol '" +
                                term.head + "'");
  }
  if (it->second < 1 || it->second > term.args.size()) {
    throw std::invalid_argument("projection index out of range for '" +
                                term.head + "'");
  }
  return project_eval(term.args[it->second - 1], asg);
}

std::optional<ProjectionAssignment> is_trivial(const Condition &cond) {
  std::vector<OpSymbol> syms = cond.symbols;  // sorted by name by the parser
  std::vector<unsigned> choice(syms.size(), 1);

  auto satisfied = [&]() {
    ProjectionAssignment asg;
    for (std::size_t i = 0; i < syms.size(); ++i) {
      asg[syms[i].name] = choice[i];
    }
    for (const Identity &id : cond.identities) {
      if (project_eval(id.lhs, asg) != project_eval(id.rhs, asg)) {
        return std::optional<ProjectionAssignment>();
      }
    }
    return std::optional(asg);
  };

  while (true) {
    if (auto asg = satisfied()) return asg;
    std::size_t i = 0;
    for (; i < syms.size(); ++i) {
      if (choice[i] < syms[i].arity) {
        ++choice[i];
        break;
      }
      choice[i] = 1;
    }
    if (i == syms.size()) return std::nullopt;
  }
}

namespace {

bool is_linear_side(const CondTerm &t) {
  if (t.is_var()) return true;
  return std::all_of(t.args.begin(), t.args.end(),
                     [](const CondTerm &a) { return a.is_var(); });
}

std::vector<std::string> side_vars(const CondTerm &t) {
  std::vector<std::string> vars;
  for (const CondTerm &a : t.args) vars.push_back(a.head);
  return vars;
}

}  // namespace

SlemcClassification classify_slemc(const Condition &cond) {
  if (cond.identities.size() != 1) {
    throw std::invalid_argument("expected a single identity, got " +
                                std::to_string(cond.identities.size()));
  }
  const Identity &id = cond.identities.front();
  if (!is_linear_side(id.lhs) || !is_linear_side(id.rhs)) {
    throw std::invalid_argument("identity is not linear (composition used)");
  }

  SlemcClassification out;
  bool lv = id.lhs.is_var(), rv = id.rhs.is_var();
  if (lv && rv) {
    out.shape = SlemcShape::VariableEqualsVariable;
    if (id.lhs.head == id.rhs.head) {
      out.status = SlemcStatus::Trivial;
      out.note = "both sides are the same variable";
    } else {
      out.status = SlemcStatus::Collapsing;
      out.note = "distinct bare variables equate all elements";
    }
    return out;
  }
  if (lv != rv) {
    out.shape = SlemcShape::TermEqualsVariable;
    const CondTerm &app = lv ? id.rhs : id.lhs;
    const std::string &var = (lv ? id.lhs : id.rhs).head;
    auto vars = side_vars(app);
    auto it = std::find(vars.begin(), vars.end(), var);
    if (it != vars.end()) {
      out.status = SlemcStatus::Trivial;
      out.shared_coordinate = unsigned(it - vars.begin()) + 1;
      out.note = "projection to the variable's coordinate satisfies it";
    } else {
      out.status = SlemcStatus::Collapsing;
      out.note =
          "with idempotence the term side collapses to one variable, "
          "equating it with a variable not among the arguments";
    }
    return out;
  }
  if (id.lhs.head != id.rhs.head) {
    out.shape = SlemcShape::TwoSymbols;
    auto lvars = side_vars(id.lhs), rvars = side_vars(id.rhs);
    for (std::size_t i = 0; i < lvars.size(); ++i) {
      auto it = std::find(rvars.begin(), rvars.end(), lvars[i]);
      if (it != rvars.end()) {
        out.status = SlemcStatus::Trivial;
        out.note = "both symbols can project to the shared variable '" +
                   lvars[i] + "'";
        return out;
      }
    }
    out.status = SlemcStatus::Collapsing;
    out.note =
        "disjoint variable sets: with idempotence the identity equates two "
        "distinct variables";
    return out;
  }

  out.shape = SlemcShape::SameSymbol;
  auto lvars = side_vars(id.lhs), rvars = side_vars(id.rhs);
  for (std::size_t i = 0; i < lvars.size(); ++i) {
    if (lvars[i] == rvars[i]) {
      out.status = SlemcStatus::Trivial;
      out.shared_coordinate = unsigned(i) + 1;
      out.note = "projection to coordinate " + std::to_string(i + 1) +
                 " satisfies it";
      return out;
    }
  }
  out.status = SlemcStatus::CandidateNontrivial;
  out.note = "x_i differs from y_i at every coordinate";
  return out;
}

Slemc as_slemc(const Condition &cond) {
  SlemcClassification cls = classify_slemc(cond);
  if (cls.shape != SlemcShape::SameSymbol) {
    throw std::invalid_argument(
        "expected an identity of the form t(x1..xm) = t(y1..ym)");
  }
  const Identity &id = cond.identities.front();
  return Slemc{id.lhs.head, side_vars(id.lhs), side_vars(id.rhs)};
}

WitnessSearch search_wnu_witness(const Slemc &cond, unsigned k,
                                 unsigned max_w) {
  std::size_t m = cond.lhs_vars.size();
  TermStore store(k);
  FreeAlgebra alg(store);

  std::vector<std::string> formals;
  for (std::size_t i = 1; i <= m; ++i) {
    formals.push_back("v" + std::to_string(i));
  }
  std::unordered_map<TermId, TermId> env_lhs, env_rhs;
  for (std::size_t i = 0; i < m; ++i) {
    TermId f = store.variable(formals[i]);
    env_lhs[f] = store.variable(cond.lhs_vars[i]);
    env_rhs[f] = store.variable(cond.rhs_vars[i]);
  }

  WitnessSearch out;
  for (TermId cand : enumerate_normal(store, formals, max_w)) {
    ++out.candidates_examined;
    if (alg.substitute(cand, env_lhs) == alg.substitute(cand, env_rhs)) {
      out.witness = store.render(cand);
      return out;
    }
  }
  return out;
}

RefutationReport refute_via_s(const Slemc &cond, unsigned k,
                              const ClosureBudget &budget) {
  TermStore store(k);
  FreeAlgebra alg(store);
  SubtermIndex idx(store);

  RefutationReport report;
  std::vector<TermPair> gens;
  for (std::size_t i = 0; i < cond.lhs_vars.size(); ++i) {
    TermPair g{store.variable(cond.lhs_vars[i]),
               store.variable(cond.rhs_vars[i])};
    if (!idx.in_s(g.first, g.second)) {
      report.bad_generators.emplace_back(cond.lhs_vars[i], cond.rhs_vars[i]);
      continue;
    }
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) {
      gens.push_back(g);
    }
  }
  if (!report.bad_generators.empty()) {
    report.statement =
        "precondition violation: some generator pairs are comparable under "
        "the subterm order and cannot lie in S";
    return report;
  }
  report.precondition_ok = true;

  report.closure = close_pairs(alg, gens, budget);
  if (auto d = diagonal_witness(report.closure)) {
    report.diagonal = store.render(d->first);
  }
  report.s_violation_count = s_violations(idx, report.closure).size();
  report.confirmed_at_budget =
      !report.diagonal.has_value() && report.s_violation_count == 0;
  report.statement =
      "bounded check: the relation generated by the coordinate pairs avoids "
      "the diagonal and stays inside the incomparability relation S up to "
      "the stated budget; S is closed under the coordinatewise operation and "
      "contains the generators, which is why no budget can ever produce a "
      "diagonal pair";
  return report;
}

bool holds_in_finite_algebra(const Condition &cond,
                             const std::map<std::string, FiniteOp> &ops,
                             int domain_size) {
  auto eval = [&](auto &&self, const CondTerm &t,
                  const std::map<std::string, int> &val) -> int {
    if (t.is_var()) return val.at(t.head);
    std::vector<int> args;
    for (const CondTerm &a : t.args) args.push_back(self(self, a, val));
    return ops.at(t.head)(args);
  };
  auto collect_vars = [&](auto &&self, const CondTerm &t,
                          std::set<std::string> &vars) -> void {
    if (t.is_var()) {
      vars.insert(t.head);
    } else {
      for (const CondTerm &a : t.args) self(self, a, vars);
    }
  };

  for (const Identity &id : cond.identities) {
    std::set<std::string> vars;
    collect_vars(collect_vars, id.lhs, vars);
    collect_vars(collect_vars, id.rhs, vars);
    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<int> assignment(names.size(), 0);
    while (true) {
      std::map<std::string, int> val;
      for (std::size_t i = 0; i < names.size(); ++i) {
        val[names[i]] = assignment[i];
      }
      if (eval(eval, id.lhs, val) != eval(eval, id.rhs, val)) return false;
      std::size_t i = 0;
      for (; i < assignment.size(); ++i) {
        if (++assignment[i] < domain_size) break;
        assignment[i] = 0;
      }
      if (i == assignment.size()) break;
    }
  }
  return true;
}

}  // namespace wnu::maltsev
