/* C interface to the dtorsion library. All handles are opaque; every call
 * that can fail returns a dt_status and leaves a message retrievable with
 * dt_last_error() on the calling thread. Strings returned by the library are
 * owned by the handle they come from (or are static) and stay valid until the
 * handle is freed. */
#ifndef DTORSION_H
#define DTORSION_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DT_API __declspec(dllexport)
#elif defined(__GNUC__)
#define DT_API __attribute__((visibility("default")))
#else
#define DT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define DT_API_VERSION 1

typedef enum dt_status {
  DT_OK = 0,
  DT_ERR_PARSE = 1,       /* malformed text input */
  DT_ERR_INVALID = 2,     /* input violates a mathematical precondition */
  DT_ERR_UNSUPPORTED = 3,
  DT_ERR_LIMIT = 4,       /* size ceiling exceeded */
  DT_ERR_ARGUMENT = 5,    /* bad argument: index out of range, null pointer */
  DT_ERR_IO = 6,
  DT_ERR_NUMERICAL = 7,
  DT_ERR_INTERNAL = 8
} dt_status;

typedef struct dt_group dt_group;
typedef struct dt_cocycle dt_cocycle;
typedef struct dt_report dt_report;

typedef struct dt_options {
  int json;                 /* nonzero: versioned JSON document instead of text */
  int degree;               /* cohomological degree, default 2 */
  int zn_coefficients;      /* nonzero: Z/N instead of U(1) */
  int64_t modulus;          /* 0: default */
  int64_t class_index;      /* -1: unset */
  int quotient_conjugation;
  int emit_matrices;
  const char* command;      /* echoed in the report; may be NULL */
} dt_options;

DT_API void dt_options_init(dt_options* options);

DT_API int dt_api_version(void);
DT_API const char* dt_version(void);
/* Message of the last failed call on this thread; "" if none. */
DT_API const char* dt_last_error(void);
DT_API const char* dt_status_name(dt_status status);

/* Groups */
DT_API dt_status dt_group_parse(const char* spec, dt_group** out);
DT_API void dt_group_free(dt_group* group);
DT_API int dt_group_order(const dt_group* group);
DT_API const char* dt_group_name(const dt_group* group);
DT_API dt_status dt_group_multiply(const dt_group* group, int a, int b, int* out);

/* Invariant factors of H^degree(G, U(1)) (or Z/modulus); writes at most
 * capacity factors and always sets *count to the full number. */
DT_API dt_status dt_cohomology_factors(const dt_group* group, int degree, int zn_coefficients,
                                       int64_t modulus, int64_t* factors, size_t capacity,
                                       size_t* count);

/* Canonical U(1) representative of a class, addressed by class index. */
DT_API dt_status dt_cocycle_representative(const dt_group* group, int degree, int64_t modulus,
                                           int64_t class_index, dt_cocycle** out);
DT_API void dt_cocycle_free(dt_cocycle* cocycle);
DT_API int64_t dt_cocycle_modulus(const dt_cocycle* cocycle);
DT_API int dt_cocycle_degree(const dt_cocycle* cocycle);
/* Value k of exp(2 pi i k / N) on a tuple of `degree` elements. */
DT_API dt_status dt_cocycle_value(const dt_cocycle* cocycle, const int* elements, size_t count,
                                  int64_t* out);
/* epsilon(g, h) as a reduced fraction num/den of a full turn. */
DT_API dt_status dt_epsilon(const dt_cocycle* cocycle, int g, int h, int64_t* num, int64_t* den);

/* Reports. Each renders the same document as the command-line tool. */
DT_API dt_status dt_report_info(const char* group, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_cohomology(const char* group, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_cocycles(const char* group, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_phases(const char* group, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_partition(const char* group, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_membrane(const char* group, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_projrep(const char* group, const dt_options* options, dt_report** out);
/* Exactly one of complex_text (complex file contents) and builtin (a
 * builtin complex name) is non-NULL. */
DT_API dt_status dt_report_euler(const char* group, const char* complex_text, const char* builtin,
                                 const dt_options* options, dt_report** out);
DT_API dt_status dt_report_inertia(const char* group, const char* complex_text, const char* builtin,
                                   const dt_options* options, dt_report** out);
DT_API dt_status dt_report_cech_verify(const char* text, const dt_options* options, dt_report** out);
DT_API dt_status dt_report_cech_diff(const char* text1, const char* text2, const dt_options* options,
                                     dt_report** out);

DT_API const char* dt_report_data(const dt_report* report);
DT_API size_t dt_report_size(const dt_report* report);
/* 0 when a verification inside the report failed. */
DT_API int dt_report_passed(const dt_report* report);
DT_API void dt_report_free(dt_report* report);

/* Newline-separated builtin complex names; static. */
DT_API const char* dt_builtin_complexes(void);

#ifdef __cplusplus
}
#endif

#endif
