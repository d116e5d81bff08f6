#ifndef WEYLFORGE_H
#define WEYLFORGE_H

/* C interface to weylforge. Every call returns a wf_status; on failure the
 * message is available from wf_last_error() on the same thread. Strings
 * handed out through char** parameters are owned by the caller and must be
 * released with wf_string_free. All JSON output is deterministic for fixed
 * inputs and seeds. */

#include <stddef.h>
#include <stdint.h>

#if defined(WEYLFORGE_BUILDING)
#define WF_API __attribute__((visibility("default")))
#else
#define WF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wf_status {
  WF_OK = 0,
  WF_UNKNOWN_TYPE = 1,
  WF_RANK_OUT_OF_RANGE = 2,
  WF_INVALID_SYSTEM = 3,
  WF_ORBIT_CAP_EXCEEDED = 4,
  WF_NO_VALID_ASSIGNMENT = 5,
  WF_DEGENERATE_SAMPLE = 6,
  WF_NOT_POSITIVE = 7,
  WF_CONVEXITY_FAIL = 8,
  WF_SKEW_UNAVAILABLE = 9,
  WF_BAD_PARAMS = 10,
  WF_NON_FINITE_HESSIAN = 11,
  WF_NOT_SYMMETRIC = 12,
  WF_NOT_TRACELESS = 13,
  WF_NOT_PERMUTATION_INVARIANT = 14,
  WF_UNKNOWN_SPACE = 15,
  WF_PARAMS_VIOLATE_CONSTRAINTS = 16,
  WF_NOT_AFFINE_SYMMETRIC = 17,
  WF_PARSE = 18,
  WF_INTERNAL = 19
} wf_status;

typedef struct wf_norm wf_norm;

typedef struct wf_options {
  uint64_t seed;            /* 42 */
  size_t samples;           /* sphere samples; 0 picks a size from the dimension */
  double tolerance;         /* eigenvalue floor for the certificate, 1e-8 */
  size_t fd_points;         /* finite-difference cross-check points, 1000 */
  uint64_t enumeration_cap; /* largest group that is enumerated element-wise */
} wf_options;

WF_API void wf_options_init(wf_options* opts);

WF_API const char* wf_last_error(void);
WF_API const char* wf_status_name(int status);
WF_API void wf_string_free(char* s);
WF_API const char* wf_version(void);

/* Groups and invariants. rank may be 0 for the exceptional types. */
WF_API int wf_weyl_report(const char* type, int rank, uint64_t enumeration_cap, char** out_json);
WF_API int wf_root_system_json(const char* type, int rank, char** out_json);
WF_API int wf_invariants_report(const char* type, int rank, const wf_options* opts, int expand,
                                char** out_json);

/* Norms. wf_norm_build resolves, compiles and certifies a spec. When the
 * certificate fails the norm and certificate are still returned, together
 * with WF_CONVEXITY_FAIL. */
WF_API int wf_norm_build(const char* spec_json, const wf_options* opts, wf_norm** out_norm,
                         char** out_certificate_json);
/* Compiled norm file, or a spec with every constant given. No sampling. */
WF_API int wf_norm_load(const char* norm_json, const wf_options* opts, wf_norm** out_norm);
WF_API void wf_norm_free(wf_norm* norm);
WF_API int wf_norm_to_json(const wf_norm* norm, char** out_json);
WF_API int wf_norm_describe(const wf_norm* norm, char** out_text);
WF_API size_t wf_norm_dim(const wf_norm* norm);
WF_API size_t wf_norm_ambient_dim(const wf_norm* norm);
/* Certificate JSON; *passed is 1 when both the eigenvalue bound and the
 * finite-difference cross-check hold. */
WF_API int wf_norm_certify(const wf_norm* norm, const wf_options* opts, char** out_certificate_json,
                           int* passed);
/* Points are in frame coordinates (length wf_norm_dim). */
WF_API int wf_norm_eval(const wf_norm* norm, const double* y, size_t n, double* out_value);
WF_API int wf_norm_gradient(const wf_norm* norm, const double* y, size_t n, double* out_gradient);
/* n*n row-major */
WF_API int wf_norm_tensor(const wf_norm* norm, const double* y, size_t n, double* out_tensor);
WF_API int wf_norm_to_frame(const wf_norm* norm, const double* ambient, size_t n, double* out_y);
/* L(y - x) */
WF_API int wf_norm_distance(const wf_norm* norm, const double* x, const double* y, size_t n, double* out);
WF_API int wf_norm_reversibility_defect(const wf_norm* norm, size_t samples, uint64_t seed, double* out);

/* Descending spectrum of a symmetric traceless n*n matrix (row-major). With a
 * norm on the A_{n-1} Cartan space, also its value on the spectrum. */
WF_API int wf_orbit_project(const double* matrix, size_t n, const wf_norm* norm_or_null, char** out_json);

/* Classification of a de Rham product: symmetric factor names, a flat
 * factor of dimension euclidean_dim and `nonsymmetric` irreducible
 * non-symmetric factors. */
WF_API int wf_classify(const char* const* names, size_t count, size_t euclidean_dim, size_t nonsymmetric,
                       char** out_json);
/* Embedded symmetric-space table, verbatim. */
WF_API int wf_classify_dump(char** out_json);
/* Rank-one families, isolated rank-one cases and the irreversible list. */
WF_API int wf_classify_lists(char** out_json);

#ifdef __cplusplus
}
#endif

#endif
