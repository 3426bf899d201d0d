/* C interface of the box-convexity library.
 *
 * Everything lives behind opaque handles and integer status codes so the
 * shared library can be driven from C, scripting FFIs, or the bundled CLI
 * without touching C++ types. JSON strings cross the boundary; the schemas
 * are documented in the repository README.
 *
 * Ownership: every char* returned through an out-parameter is heap-allocated
 * and must be released with boxnc_string_free. Handles are released with
 * their matching *_destroy function. On any failure the thread-local message
 * from boxnc_last_error describes the cause.
 */
#ifndef BOXNC_BOXNC_H
#define BOXNC_BOXNC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum boxnc_status {
  BOXNC_OK = 0,
  /* computation succeeded; the verdict is negative (refuted / fails) */
  BOXNC_VERDICT_NEGATIVE = 1,
  /* malformed JSON, schema violation, domain or precondition error */
  BOXNC_ERR_INPUT = 2,
  BOXNC_ERR_INTERNAL = 3,
  BOXNC_ERR_NULL_ARGUMENT = 4
} boxnc_status;

int boxnc_abi_version(void);

/* Last error message of the calling thread; never NULL, empty when clear. */
const char* boxnc_last_error(void);

void boxnc_string_free(char* text);

/* ---- command runner -------------------------------------------------- */

typedef struct boxnc_run_options {
  uint64_t seed;
  int has_seed;
  double tol;
  int has_tol;
  long trials;
  int has_trials;
  long resolution;
  int has_resolution;
} boxnc_run_options;

/* Runs one verification command (divdiff, certify, interpolate, regularize,
 * order, box-order, hh, jensen, rasa, synth, extract-measure, decompose,
 * strong) on a JSON input document. *report_out receives the JSON report,
 * newline-terminated, also on BOXNC_ERR_INPUT. options may be NULL. */
boxnc_status boxnc_run(const char* command, const char* input_json,
                       const boxnc_run_options* options, char** report_out);

/* ---- function handles ------------------------------------------------- */

typedef struct boxnc_function boxnc_function;

/* function_json: {"expr": ...} | {"builtin": ...} | {"tabulated": ...} |
 * {"sum": ...}. arity < 0 takes the arity from the document. */
boxnc_status boxnc_function_create(const char* function_json, int arity,
                                   boxnc_function** out);
int boxnc_function_arity(const boxnc_function* f);
boxnc_status boxnc_function_eval(const boxnc_function* f, const double* x, int dim,
                                 double* value_out);
void boxnc_function_destroy(boxnc_function* f);

/* ---- measure handles -------------------------------------------------- */

typedef struct boxnc_measure boxnc_measure;

/* measure_json: {"dim": p, "atoms": [{"x": [...], "w": ...}, ...]} or
 * {"binomial": {"n": ..., "p": ...}}. */
boxnc_status boxnc_measure_create(const char* measure_json, boxnc_measure** out);
int boxnc_measure_dim(const boxnc_measure* m);
size_t boxnc_measure_atom_count(const boxnc_measure* m);
boxnc_status boxnc_measure_atom(const boxnc_measure* m, size_t index, double* location_out,
                                double* weight_out);
boxnc_status boxnc_measure_mass(const boxnc_measure* m, double* out);
boxnc_status boxnc_measure_moment(const boxnc_measure* m, const int* exponents, int dim,
                                  double* out);
boxnc_status boxnc_measure_survival(const boxnc_measure* m, double x, double* out);
boxnc_status boxnc_measure_truncated_moment(const boxnc_measure* m, double u, int q,
                                            int plus_side, double* out);
boxnc_status boxnc_measure_convolve(const boxnc_measure* a, const boxnc_measure* b,
                                    boxnc_measure** out);
void boxnc_measure_destroy(boxnc_measure* m);

#ifdef __cplusplus
}
#endif

#endif /* BOXNC_BOXNC_H */
