/*
 * twistlab C interface.
 *
 * Exact verification of twisted tensor product constructions on
 * finite-dimensional algebras and Hopf algebras, given by structure
 * constants over Q or GF(p).
 *
 * All objects are opaque handles created and destroyed through this
 * interface. Functions return tl_status; on failure they may also set
 * *err to a heap-allocated message that must be released with
 * tl_string_free. Output parameters are only written on TL_OK.
 */

#ifndef TWISTLAB_H
#define TWISTLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_CHECK_FAILED = 1,    /* a certification suite reported a failure */
  TL_PARSE_ERROR = 2,     /* malformed definition file or scalar */
  TL_INVALID_ARGUMENT = 3,
  TL_NOT_INVERTIBLE = 4,  /* singular map / no convolution inverse */
  TL_UNCERTIFIED = 5,     /* a construction was given unchecked data */
  TL_INTERNAL = 6,        /* conclusion failed after its hypotheses passed */
  TL_LIMIT_EXCEEDED = 7,  /* size guard refused an exhaustive check */
} tl_status;

typedef struct tl_object tl_object; /* a parsed or built definition object */
typedef struct tl_report tl_report; /* staged verification report */

const char* tl_version(void);

/* --- objects ----------------------------------------------------------- */

/* field is the default field for builtin references: "Q", "GF:p"; NULL
 * means Q. uri is "builtin:<name>" or a filesystem path. */
tl_status tl_object_resolve(const char* uri, const char* field,
                            tl_object** out, char** err);
tl_status tl_object_parse_string(const char* text, const char* field,
                                 tl_object** out, char** err);
/* Canonical byte-stable text form (linmap / algebra / hopf / group). */
tl_status tl_object_serialize(const tl_object* obj, char** text, char** err);
const char* tl_object_kind(const tl_object* obj);
tl_status tl_object_digest(const tl_object* obj, char** digest, char** err);
void tl_object_free(tl_object* obj);

/* --- verification ------------------------------------------------------ */

/* max_dim bounds the total dimension exhaustive checks run over;
 * 0 means the default of 64. */
tl_status tl_check(const tl_object* obj, size_t max_dim, tl_report** out,
                   char** err);

/* what: twisted-product | smash | double | star | derive-rprime |
 *       group-algebra.  options: "" or "field=GF:5" (group-algebra). */
tl_status tl_build(const char* what, const tl_object* const* inputs,
                   size_t count, const char* options, size_t max_dim,
                   tl_object** out, char** err);

/* name: comodule-twist | homogenization | sqt-double. The instance is the
 * pipeline input kind (nu-twist / comodule-algebra / sqt-element) or a
 * hopf object combined with options ("c=-1", "nu=trivial",
 * "r=triangular", "r=trivial"). */
tl_status tl_pipeline(const char* name, const tl_object* instance,
                      const char* options, size_t max_dim, tl_report** out,
                      char** err);

/* --- reports ------------------------------------------------------------ */

int tl_report_ok(const tl_report* report);
int tl_report_implication_violation(const tl_report* report);
tl_status tl_report_render(const tl_report* report, int as_json, char** text,
                           char** err);
void tl_report_free(tl_report* report);

/* --- misc ---------------------------------------------------------------- */

tl_status tl_list_builtins(char** text, char** err);
tl_status tl_set_jobs(unsigned jobs);
void tl_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* TWISTLAB_H */
