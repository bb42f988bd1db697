#include "wnu.h"

#include <cctype>
#include <cstring>
#include <new>
#include <string>

#include "wnu/closure.hpp"
#include "wnu/free_algebra.hpp"
#include "wnu/maltsev.hpp"
#include "wnu/reports.hpp"
#include "wnu/selftest.hpp"
#include "wnu/subterm.hpp"
#include "wnu/term_store.hpp"

struct wnu_engine {
  explicit wnu_engine(unsigned arity)
      : store(arity), algebra(store), subterms(store) {}

  wnu::TermStore store;
  wnu::FreeAlgebra algebra;
  wnu::SubtermIndex subterms;
};

namespace {

void set_err(char *err, size_t err_len, const char *msg) {
  if (!err || err_len == 0) return;
  std::strncpy(err, msg, err_len - 1);
  err[err_len - 1] = '\0';
}

char *dup_string(const std::string &s) {
  char *out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
int guarded(char *err, size_t err_len, F &&body) {
  try {
    body();
    return WNU_OK;
  } catch (const wnu::ParseError &e) {
    set_err(err, err_len, e.what());
    return WNU_ERR_PARSE;
  } catch (const wnu::ArityError &e) {
    set_err(err, err_len, e.what());
    return WNU_ERR_ARITY;
  } catch (const wnu::BudgetError &e) {
    set_err(err, err_len, e.what());
    return WNU_ERR_BUDGET;
  } catch (const std::exception &e) {
    set_err(err, err_len, e.what());
    return WNU_ERR_INVALID;
  }
}

int check_term(wnu_engine *eng, wnu_term t, char *err, size_t err_len) {
  if (!eng->store.valid(t)) {
    set_err(err, err_len, "invalid term handle");
    return WNU_ERR_INVALID;
  }
  return WNU_OK;
}

std::vector<std::string> split_csv(const std::string &text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// "(s,t);(s,t);..." with s,t full terms. Each pair is split at its single
// depth-1 comma; the sides go through the regular term parser.
std::vector<wnu::TermPair> parse_pairs(wnu::TermStore &store,
                                       const std::string &text) {
  std::vector<wnu::TermPair> out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  };
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '(') {
      throw wnu::ParseError("expected '(' at position " + std::to_string(pos),
                            pos);
    }
    std::size_t depth = 0, split = std::string::npos, end = std::string::npos;
    for (std::size_t i = pos; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') {
        if (--depth == 0) {
          end = i;
          break;
        }
      }
      if (text[i] == ',' && depth == 1 && split == std::string::npos) {
        split = i;
      }
    }
    if (end == std::string::npos || split == std::string::npos) {
      throw wnu::ParseError("malformed pair at position " +
                                std::to_string(pos),
                            pos);
    }
    wnu::TermPair p{store.parse(text.substr(pos + 1, split - pos - 1)),
                    store.parse(text.substr(split + 1, end - split - 1))};
    out.push_back(p);
    pos = end + 1;
    skip_ws();
    if (pos < text.size()) {
      if (text[pos] != ';') {
        throw wnu::ParseError("expected ';' between pairs at position " +
                                  std::to_string(pos),
                              pos);
      }
      ++pos;
    }
  }
  if (out.empty()) {
    throw wnu::ParseError("no generator pairs given", 0);
  }
  return out;
}

}  // namespace

extern "C" {

wnu_engine *wnu_engine_new(unsigned arity, char *err, size_t err_len) {
  wnu_engine *eng = nullptr;
  guarded(err, err_len, [&] { eng = new wnu_engine(arity); });
  return eng;
}

void wnu_engine_free(wnu_engine *eng) { delete eng; }

unsigned wnu_engine_arity(const wnu_engine *eng) {
  return eng->store.arity();
}

int wnu_intern_variable(wnu_engine *eng, const char *name, wnu_term *out,
                        char *err, size_t err_len) {
  return guarded(err, err_len, [&] { *out = eng->store.variable(name); });
}

int wnu_parse_term(wnu_engine *eng, const char *text, wnu_term *out,
                   char *err, size_t err_len) {
  return guarded(err, err_len, [&] { *out = eng->store.parse(text); });
}

char *wnu_render_term(wnu_engine *eng, wnu_term t) {
  if (!eng->store.valid(t)) return nullptr;
  return dup_string(eng->store.render(t));
}

uint64_t wnu_w_count(wnu_engine *eng, wnu_term t) {
  return eng->store.valid(t) ? eng->store.w_count(t) : 0;
}

int wnu_is_normal(wnu_engine *eng, wnu_term t) {
  return eng->store.valid(t) && eng->store.is_normal(t) ? 1 : 0;
}

int wnu_normalize(wnu_engine *eng, wnu_term t, wnu_term *out, char *err,
                  size_t err_len) {
  if (int rc = check_term(eng, t, err, err_len)) return rc;
  return guarded(err, err_len, [&] { *out = eng->algebra.normalize(t); });
}

int wnu_free_equal(wnu_engine *eng, wnu_term a, wnu_term b, int *out,
                   char *err, size_t err_len) {
  if (int rc = check_term(eng, a, err, err_len)) return rc;
  if (int rc = check_term(eng, b, err, err_len)) return rc;
  return guarded(err, err_len,
                 [&] { *out = eng->algebra.free_equal(a, b) ? 1 : 0; });
}

int wnu_is_subterm(wnu_engine *eng, wnu_term a, wnu_term b, int *out,
                   char *err, size_t err_len) {
  if (int rc = check_term(eng, a, err, err_len)) return rc;
  if (int rc = check_term(eng, b, err, err_len)) return rc;
  return guarded(err, err_len,
                 [&] { *out = eng->subterms.is_subterm(a, b) ? 1 : 0; });
}

int wnu_in_s(wnu_engine *eng, wnu_term a, wnu_term b, int *out, char *err,
             size_t err_len) {
  if (int rc = check_term(eng, a, err, err_len)) return rc;
  if (int rc = check_term(eng, b, err, err_len)) return rc;
  return guarded(err, err_len,
                 [&] { *out = eng->subterms.in_s(a, b) ? 1 : 0; });
}

int wnu_enumerate_json(wnu_engine *eng, const char *vars, unsigned max_w,
                       char **json_out, char *err, size_t err_len) {
  return guarded(err, err_len, [&] {
    auto names = split_csv(vars);
    auto report = wnu::reports::enumeration_report(eng->store, names, max_w);
    *json_out = dup_string(report.dump(2));
  });
}

int wnu_closure_json(wnu_engine *eng, const char *generators,
                     unsigned max_rounds, size_t max_pairs, unsigned max_w,
                     char **json_out, char *err, size_t err_len) {
  return guarded(err, err_len, [&] {
    auto gens = parse_pairs(eng->store, generators);
    wnu::ClosureBudget budget{max_rounds, max_pairs, max_w};
    auto closure = wnu::close_pairs(eng->algebra, gens, budget);
    auto report = wnu::reports::closure_report(eng->store, gens, budget,
                                               closure, eng->subterms);
    *json_out = dup_string(report.dump(2));
  });
}

int wnu_check_condition_json(const char *condition, unsigned arity,
                             unsigned max_w, unsigned max_rounds,
                             size_t max_pairs, unsigned budget_w,
                             char **json_out, char *err, size_t err_len) {
  return guarded(err, err_len, [&] {
    if (arity < 3) {
      throw wnu::ArityError("arity must be >= 3 for the variety engine");
    }
    auto cond = wnu::maltsev::parse_condition(condition);
    wnu::ClosureBudget budget{max_rounds, max_pairs, budget_w};
    auto report = wnu::reports::check_report(cond, arity, max_w, budget);
    *json_out = dup_string(report.dump(2));
  });
}

int wnu_selftest_json(uint64_t seed, int quick, char **json_out, char *err,
                      size_t err_len) {
  return guarded(err, err_len, [&] {
    wnu::selftest::Options opts{seed, quick != 0};
    auto results = wnu::selftest::run_all(opts);
    auto report = wnu::reports::selftest_report(results, seed, quick != 0);
    *json_out = dup_string(report.dump(2));
  });
}

void wnu_string_free(char *s) { delete[] s; }

}  // extern "C"
