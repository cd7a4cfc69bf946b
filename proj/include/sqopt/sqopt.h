#ifndef SQOPT_SQOPT_H
#define SQOPT_SQOPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SQO_BUILDING_LIBRARY)
#    define SQO_API __declspec(dllexport)
#  else
#    define SQO_API __declspec(dllimport)
#  endif
#else
#  define SQO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SQO_OK = 0,
  SQO_ERR_DIMENSION = 1,
  SQO_ERR_UNKNOWN_ID = 2,
  SQO_ERR_INVALID_PARAMS = 3,
  SQO_ERR_PARSE = 4,
  SQO_ERR_DOMAIN = 5,
  SQO_ERR_PRECONDITION = 6,
  SQO_ERR_CONFIG = 7,
  SQO_ERR_COMPUTE = 8,
  SQO_ERR_NULL = 9
} sqo_status;

typedef struct sqo_function sqo_function;
typedef struct sqo_realset sqo_realset;
typedef struct sqo_report sqo_report;

/* Message of the last failing call on this thread; "" after a success. */
SQO_API const char* sqo_last_error(void);
SQO_API const char* sqo_version(void);

/* Catalog functions. `params` is "key=value ..." (values may be quoted). */
SQO_API sqo_status sqo_function_create(const char* id, const char* params, int dim, sqo_function** out);
SQO_API void sqo_function_destroy(sqo_function* f);
SQO_API int sqo_function_dim(const sqo_function* f);
/* +inf outside the domain. */
SQO_API sqo_status sqo_function_eval(const sqo_function* f, const double* x, double* value);
SQO_API sqo_status sqo_dini_upper(const sqo_function* f, const double* x, const double* d, double* value);
SQO_API sqo_status sqo_dini_lower(const sqo_function* f, const double* x, const double* d, double* value);
SQO_API sqo_status sqo_hadamard_upper(const sqo_function* f, const double* x, const double* d, double* value);

/* Subsets of the line: "R", "{}", "{a}", "[a,b) U (c,inf)". */
SQO_API sqo_status sqo_realset_parse(const char* text, sqo_realset** out);
SQO_API void sqo_realset_destroy(sqo_realset* s);
/* Writes a NUL-terminated string; `needed` receives the full length + 1. */
SQO_API sqo_status sqo_realset_format(const sqo_realset* s, char* buf, size_t len, size_t* needed);
SQO_API sqo_status sqo_realset_contains(const sqo_realset* s, double x, int* result);
SQO_API sqo_status sqo_realset_support(const sqo_realset* s, double d, double* value);

/* Strong subdifferential with parameters (beta, gamma) over K ("R" or a line
   set or box(lo;hi)). */
SQO_API sqo_status sqo_strong_member(const sqo_function* h, const double* x, double beta, double gamma,
                                     const char* K, const double* xi, int* member, double* margin);
SQO_API sqo_status sqo_strong_interval(const sqo_function* h, double x, double beta, double gamma, const char* K,
                                       sqo_realset** out);
/* Worst lambda and sup of lambda*a - lambda^2*b for given (xi, d). */
SQO_API sqo_status sqo_worst_lambda(const double* xi, const double* d, int dim, double beta, double gamma,
                                    double* lambda, double* sup_phi);

/* Runs one command ("subdiff", "convexity", "normalcone", "certify",
   "penalize", "corpus") on INI config text. `options` is "key=value ..."
   with keys case, tol, seed, plot (0/1). A report is produced even when the
   command fails; its exit code follows the CLI. */
SQO_API sqo_status sqo_run(const char* command, const char* config_text, const char* options, sqo_report** out);
SQO_API const char* sqo_report_json(const sqo_report* r);
SQO_API const char* sqo_report_svg(const sqo_report* r);
SQO_API const char* sqo_report_summary(const sqo_report* r);
SQO_API int sqo_report_exit_code(const sqo_report* r);
SQO_API void sqo_report_destroy(sqo_report* r);

/* Newline-separated corpus case ids; owned by the library. */
SQO_API const char* sqo_corpus_list(void);
/* Newline-separated "id<TAB>summary" catalog entries; owned by the library. */
SQO_API const char* sqo_catalog_list(void);

#ifdef __cplusplus
}
#endif

#endif
