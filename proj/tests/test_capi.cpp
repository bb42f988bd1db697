#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "wnu.h"

using nlohmann::json;

namespace {

struct Engine {
  wnu_engine *eng = nullptr;
  char err[256] = {0};

  explicit Engine(unsigned arity) { eng = wnu_engine_new(arity, err, sizeof err); }
  ~Engine() { wnu_engine_free(eng); }

  wnu_term parse(const char *text) {
    wnu_term t = 0;
    REQUIRE(wnu_parse_term(eng, text, &t, err, sizeof err) == WNU_OK);
    return t;
  }

  std::string render(wnu_term t) {
    char *s = wnu_render_term(eng, t);
    REQUIRE(s != nullptr);
    std::string out = s;
    wnu_string_free(s);
    return out;
  }
};

}  // namespace

TEST_CASE("engine lifecycle and arity guard") {
  char err[256] = {0};
  wnu_engine *eng = wnu_engine_new(3, err, sizeof err);
  REQUIRE(eng != nullptr);
  CHECK(wnu_engine_arity(eng) == 3);
  wnu_engine_free(eng);

  wnu_engine *bad = wnu_engine_new(2, err, sizeof err);
  CHECK(bad == nullptr);
  CHECK(std::strlen(err) > 0);

  wnu_engine_free(nullptr);  // must be a no-op
}

TEST_CASE("parse, render, normalize through the C layer") {
  Engine e(3);
  wnu_term t = e.parse("w(y, w(x,y,z), y)");
  CHECK(e.render(t) == "w(y,w(x,y,z),y)");
  CHECK(wnu_w_count(e.eng, t) == 2);
  CHECK(wnu_is_normal(e.eng, t) == 0);

  wnu_term n = 0;
  REQUIRE(wnu_normalize(e.eng, t, &n, e.err, sizeof e.err) == WNU_OK);
  CHECK(e.render(n) == "w(w(x,y,z),y,y)");
  CHECK(wnu_is_normal(e.eng, n) == 1);

  int eq = 0;
  REQUIRE(wnu_free_equal(e.eng, t, n, &eq, e.err, sizeof e.err) == WNU_OK);
  CHECK(eq == 1);
}

TEST_CASE("error statuses carry the failure class") {
  Engine e(3);
  wnu_term out = 0;

  CHECK(wnu_parse_term(e.eng, "w(x,,y)", &out, e.err, sizeof e.err) ==
        WNU_ERR_PARSE);
  CHECK(std::strstr(e.err, "4") != nullptr);  // failing position

  CHECK(wnu_parse_term(e.eng, "w(x,y)", &out, e.err, sizeof e.err) ==
        WNU_ERR_ARITY);

  wnu_term v = 0;
  CHECK(wnu_intern_variable(e.eng, "w", &v, e.err, sizeof e.err) ==
        WNU_ERR_INVALID);

  // invalid term handle
  int res = 0;
  CHECK(wnu_free_equal(e.eng, 999999, 0, &res, e.err, sizeof e.err) ==
        WNU_ERR_INVALID);

  char *json_out = nullptr;
  CHECK(wnu_closure_json(e.eng, "(x,y)", 0, 100, 2, &json_out, e.err,
                          sizeof e.err) == WNU_ERR_BUDGET);
}

TEST_CASE("subterm and S queries") {
  Engine e(3);
  wnu_term x = e.parse("x");
  wnu_term t = e.parse("w(w(x,y,z),y,y)");
  int r = 0;
  REQUIRE(wnu_is_subterm(e.eng, x, t, &r, e.err, sizeof e.err) == WNU_OK);
  CHECK(r == 1);
  REQUIRE(wnu_in_s(e.eng, x, t, &r, e.err, sizeof e.err) == WNU_OK);
  CHECK(r == 0);
  wnu_term y = e.parse("y");
  REQUIRE(wnu_in_s(e.eng, x, y, &r, e.err, sizeof e.err) == WNU_OK);
  CHECK(r == 1);
}

TEST_CASE("enumeration json") {
  Engine e(3);
  char *out = nullptr;
  REQUIRE(wnu_enumerate_json(e.eng, "x,y", 1, &out, e.err, sizeof e.err) ==
          WNU_OK);
  json j = json::parse(out);
  wnu_string_free(out);
  REQUIRE(j["terms"].is_array());
  CHECK(j["terms"].size() == 4);
  CHECK(j["terms"][0] == "x");
  CHECK(j["count"] == 4);
}

TEST_CASE("closure json matches the report schema") {
  Engine e(3);
  char *out = nullptr;
  REQUIRE(wnu_closure_json(e.eng, "(x,y);(y,x)", 64, 100000, 2, &out, e.err,
                           sizeof e.err) == WNU_OK);
  json j = json::parse(out);
  wnu_string_free(out);
  CHECK(j["generators"].size() == 2);
  CHECK(j["budget"]["max_w_per_coordinate"] == 2);
  CHECK(j["saturated"].is_boolean());
  CHECK(j["pair_count"].is_number_unsigned());
  CHECK(j["diagonal_witness"].is_null());
  CHECK(j["s_violations"].is_array());
  CHECK(j["s_violations"].empty());
  CHECK(j["rounds_completed"].is_number_unsigned());
}

TEST_CASE("condition check json") {
  char err[256] = {0};
  char *out = nullptr;
  REQUIRE(wnu_check_condition_json("t(r,a,r,e) = t(a,r,e,a)", 3, 2, 8, 100000,
                                   2, &out, err, sizeof err) == WNU_OK);
  json j = json::parse(out);
  wnu_string_free(out);
  CHECK(j["classification"]["status"] == "candidate_nontrivial");
  CHECK(j["witness_search"]["witness"].is_null());
  CHECK(j["refutation"]["confirmed_at_budget"] == true);
  CHECK(j["outcome"] == "refuted at budget");

  out = nullptr;
  REQUIRE(wnu_check_condition_json("t(x,y,z) = t(y,x,z)", 3, 2, 8, 100000, 2,
                                   &out, err, sizeof err) == WNU_OK);
  j = json::parse(out);
  wnu_string_free(out);
  CHECK(j["outcome"] == "trivial");

  CHECK(wnu_check_condition_json("t(x,y = z", 3, 2, 8, 100000, 2, &out, err,
                                 sizeof err) == WNU_ERR_PARSE);
}

TEST_CASE("quick selftest json") {
  char err[256] = {0};
  char *out = nullptr;
  REQUIRE(wnu_selftest_json(1, 1, &out, err, sizeof err) == WNU_OK);
  json j = json::parse(out);
  wnu_string_free(out);
  REQUIRE(j["criteria"].is_array());
  CHECK(j["criteria"].size() == 10);
  for (const auto &c : j["criteria"]) CHECK(c["pass"] == true);
  CHECK(j["all_pass"] == true);
}
