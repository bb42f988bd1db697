/* C interface to the wnu term engine.
 *
 * An engine owns an interned term DAG at a fixed arity k >= 3 together with
 * the free-algebra evaluator and the subterm index. Terms are opaque
 * handles scoped to the engine that produced them.
 *
 * Functions return WNU_OK (0) on success. On failure they return a nonzero
 * status and, when an error buffer is supplied, write a NUL-terminated
 * message into it. Strings produced by the library (wnu_render_term and the
 * *_json calls) must be released with wnu_string_free.
 */
#ifndef WNU_H
#define WNU_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wnu_engine wnu_engine;
typedef uint32_t wnu_term;

enum wnu_status {
  WNU_OK = 0,
  WNU_ERR_INVALID = 1, /* bad argument or contract violation */
  WNU_ERR_PARSE = 2,   /* syntax error; message includes the position */
  WNU_ERR_ARITY = 3,   /* arity violation */
  WNU_ERR_BUDGET = 4   /* invalid closure budget */
};

wnu_engine *wnu_engine_new(unsigned arity, char *err, size_t err_len);
void wnu_engine_free(wnu_engine *eng);
unsigned wnu_engine_arity(const wnu_engine *eng);

int wnu_intern_variable(wnu_engine *eng, const char *name, wnu_term *out,
                        char *err, size_t err_len);
int wnu_parse_term(wnu_engine *eng, const char *text, wnu_term *out,
                   char *err, size_t err_len);
char *wnu_render_term(wnu_engine *eng, wnu_term t);
uint64_t wnu_w_count(wnu_engine *eng, wnu_term t);
int wnu_is_normal(wnu_engine *eng, wnu_term t);

int wnu_normalize(wnu_engine *eng, wnu_term t, wnu_term *out, char *err,
                  size_t err_len);
int wnu_free_equal(wnu_engine *eng, wnu_term a, wnu_term b, int *out,
                   char *err, size_t err_len);
int wnu_is_subterm(wnu_engine *eng, wnu_term a, wnu_term b, int *out,
                   char *err, size_t err_len);
int wnu_in_s(wnu_engine *eng, wnu_term a, wnu_term b, int *out, char *err,
             size_t err_len);

/* vars: comma-separated variable names. */
int wnu_enumerate_json(wnu_engine *eng, const char *vars, unsigned max_w,
                       char **json_out, char *err, size_t err_len);

/* generators: pair list "(s,t);(s,t);...", each side a term. Every
 * generator must be a normal pair within the w-count budget. */
int wnu_closure_json(wnu_engine *eng, const char *generators,
                     unsigned max_rounds, size_t max_pairs, unsigned max_w,
                     char **json_out, char *err, size_t err_len);

/* condition: "identity (';' identity)*" with identity "cterm = cterm".
 * Runs classification, the projection triviality test, and for candidate
 * nontrivial identities the bounded witness search plus the S refutation. */
int wnu_check_condition_json(const char *condition, unsigned arity,
                             unsigned max_w, unsigned max_rounds,
                             size_t max_pairs, unsigned budget_w,
                             char **json_out, char *err, size_t err_len);

int wnu_selftest_json(uint64_t seed, int quick, char **json_out, char *err,
                      size_t err_len);

void wnu_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* WNU_H */
