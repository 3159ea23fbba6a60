/* canonsym — first integrals and infinitesimal symmetries of canonical
 * Hamiltonian systems, behind a C API with opaque handles and status codes.
 *
 * Every function that can fail returns a csym_status; CSYM_OK means the out
 * parameters are valid. On failure, csym_last_error() returns a thread-local
 * human-readable message. Strings returned through char** out parameters are
 * owned by the caller and must be released with csym_string_free().
 */
#ifndef CANONSYM_H
#define CANONSYM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CSYM_VERSION "0.1.0"

typedef enum csym_status {
  CSYM_OK = 0,
  CSYM_E_UNEXPECTED_TOKEN,
  CSYM_E_UNEXPECTED_END,
  CSYM_E_UNKNOWN_IDENTIFIER,
  CSYM_E_ARITY_MISMATCH,
  CSYM_E_DIVISION_BY_ZERO,
  CSYM_E_NOT_POLYNOMIAL_IN_MOMENTA,
  CSYM_E_JET_VARIABLE_PRESENT,
  CSYM_E_DOMAIN,
  CSYM_E_PROBE_DOMAIN_EXHAUSTED,
  CSYM_E_NOT_CONTACT_FIELD,
  CSYM_E_BASE_POINT_SINGULAR,
  CSYM_E_NON_INTEGRABLE_ALONG_PATH,
  CSYM_E_NOT_INVARIANT,
  CSYM_E_NO_CLOSED_FORM_ANTIDERIVATIVE,
  CSYM_E_H_NOT_KINETIC_MINUS_POTENTIAL,
  CSYM_E_W_NOT_LINEAR_HOMOGENEOUS,
  CSYM_E_H_NOT_POLYNOMIAL,
  CSYM_E_DEGREE_TOO_LARGE,
  CSYM_E_NOT_SEPARABLE,
  CSYM_E_NEWTON_DIVERGENCE,
  CSYM_E_SCHEMA,
  CSYM_E_IO,
  CSYM_E_BAD_ARGUMENT,
  CSYM_E_INTERNAL
} csym_status;

/* zero-test verdicts */
#define CSYM_PROVED_ZERO 0
#define CSYM_NUMERICALLY_ZERO 1
#define CSYM_NONZERO 2

typedef struct csym_space csym_space;     /* phase space (n, coordinate names) */
typedef struct csym_expr csym_expr;       /* immutable expression */
typedef struct csym_system csym_system;   /* phase space + Hamiltonian */
typedef struct csym_field csym_field;     /* infinitesimal transformation */
typedef struct csym_problem csym_problem; /* parsed problem file */
typedef struct csym_report csym_report;   /* command run report */

const char* csym_version(void);
const char* csym_last_error(void);
const char* csym_status_name(csym_status s);
void csym_string_free(char* s);

/* --- phase space and expressions --------------------------------------- */

csym_status csym_space_create(int n, csym_space** out);
void csym_space_free(csym_space* s);
int csym_space_dim(const csym_space* s);

csym_status csym_parse(const csym_space* s, const char* text, csym_expr** out);
csym_status csym_expr_render(const csym_expr* e, char** out);
csym_status csym_expr_normalize(const csym_expr* e, csym_expr** out);
csym_status csym_differentiate(const csym_expr* e, const char* variable, csym_expr** out);
csym_status csym_poisson_bracket(const csym_expr* f, const csym_expr* g, csym_expr** out);
csym_status csym_expr_eval(const csym_expr* e, const char* const* names, const double* values,
                           int count, double* out);
csym_status csym_expr_is_zero(const csym_expr* e, uint64_t seed, int* verdict);
void csym_expr_free(csym_expr* e);

/* --- canonical system --------------------------------------------------- */

csym_status csym_system_create(const csym_space* s, const char* hamiltonian, csym_system** out);
void csym_system_free(csym_system* s);

/* verdict on dW/dt + {W, H}; residual receives its rendered text */
csym_status csym_first_integral_test(const csym_system* sys, const char* w, uint64_t seed,
                                     int* verdict, char** residual);

/* --- contact fields ------------------------------------------------------ */

/* xi and pi each point at n expression strings */
csym_status csym_field_create(const csym_space* s, const char* const* xi, const char* const* pi,
                              csym_field** out);
csym_status csym_field_from_integral(const csym_space* s, const char* w, csym_field** out);
csym_status csym_field_component(const csym_field* f, int which /* 0: xi, 1: pi */, int index,
                                 char** out);
csym_status csym_integral_from_field(const csym_system* sys, const csym_field* f,
                                     const double* base_point /* 2n values or NULL */,
                                     char** w_out, int* addend_normalized);
csym_status csym_invariance_check(const csym_system* sys, const csym_field* f, uint64_t seed,
                                  int* passed);
void csym_field_free(csym_field* f);

/* --- discovery ------------------------------------------------------------ */

/* nullspace of the first-integral condition on the monomial ansatz; the
 * result is a JSON array of rendered generators */
csym_status csym_discover(const csym_system* sys, int degree, int include_t, uint64_t seed,
                          char** generators_json);

/* --- problems, commands, reports ------------------------------------------ */

typedef struct csym_run_options {
  int64_t seed;        /* < 0: use the problem file's seed */
  double tolerance;    /* <= 0: command default */
  const char* csv_dir; /* NULL: no CSV export */
} csym_run_options;

csym_status csym_problem_parse(const char* json_text, const char* label, csym_problem** out);
csym_status csym_problem_load(const char* path, csym_problem** out);
void csym_problem_free(csym_problem* p);

int csym_gallery_count(void);
const char* csym_gallery_name(int index);
csym_status csym_gallery_problem(int index, csym_problem** out);

/* command is one of: verify, correspond, reconstruct, invariance,
 * levy-cerruti, discover, simulate, commute */
csym_status csym_run(const csym_problem* p, const char* command, const csym_run_options* opts,
                     csym_report** out);
csym_status csym_run_gallery(const char* command /* NULL: every applicable command */,
                             const csym_run_options* opts, csym_report** out);

int csym_report_passed(const csym_report* r);
int csym_report_exit_code(const csym_report* r);
csym_status csym_report_text(const csym_report* r, char** out);
csym_status csym_report_json(const csym_report* r, char** out);
void csym_report_free(csym_report* r);

#ifdef __cplusplus
}
#endif

#endif /* CANONSYM_H */
