/* C interface to the affsp homology engine.
 *
 * Objects are opaque handles created by affsp_*_create functions and released
 * by the matching affsp_*_destroy. Every fallible call returns an
 * affsp_status; on failure affsp_last_error() describes the problem (the
 * message is per thread and valid until the next failing call on that thread).
 */
#ifndef AFFSP_H
#define AFFSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AFFSP_API __declspec(dllexport)
#else
#define AFFSP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct affsp_context affsp_context;
typedef struct affsp_algebra affsp_algebra;
typedef struct affsp_report affsp_report;

typedef enum affsp_status {
  AFFSP_OK = 0,
  AFFSP_ERR_DOMAIN = 1,      /* argument outside the mathematical domain */
  AFFSP_ERR_SHAPE = 2,       /* dimension mismatch */
  AFFSP_ERR_RANGE = 3,       /* degree beyond a complex's cap */
  AFFSP_ERR_RESOURCE = 4,    /* memory guard tripped */
  AFFSP_ERR_CONSISTENCY = 5, /* internal self-check failed */
  AFFSP_ERR_FORMAT = 6,      /* malformed input or filesystem failure */
  AFFSP_ERR_ARGUMENT = 7,    /* null handle or invalid option */
  AFFSP_ERR_INTERNAL = 8
} affsp_status;

typedef enum affsp_format { AFFSP_FORMAT_JSON = 0, AFFSP_FORMAT_CSV = 1, AFFSP_FORMAT_TEXT = 2 } affsp_format;

AFFSP_API const char* affsp_version(void);
AFFSP_API const char* affsp_status_name(affsp_status status);
AFFSP_API const char* affsp_last_error(void);

/* ---- context: cache directory, memory cap, threads ---- */
AFFSP_API affsp_status affsp_context_create(affsp_context** out);
AFFSP_API void affsp_context_destroy(affsp_context* ctx);
/* NULL or "" disables the on-disk differential cache. */
AFFSP_API affsp_status affsp_context_set_cache_dir(affsp_context* ctx, const char* dir);
/* Largest nonzero count of any matrix built by calls through this context. */
AFFSP_API affsp_status affsp_context_set_memory_cap(affsp_context* ctx, uint64_t nnz_cap);
AFFSP_API affsp_status affsp_context_set_threads(affsp_context* ctx, unsigned threads);

/* ---- algebras: family "sp", "I" or "g" ---- */
AFFSP_API affsp_status affsp_algebra_create(affsp_context* ctx, const char* family, unsigned n, affsp_algebra** out);
AFFSP_API void affsp_algebra_destroy(affsp_algebra* algebra);
AFFSP_API affsp_status affsp_algebra_dim(const affsp_algebra* algebra, size_t* out);
/* Basis labels, structure constants, validation and (for g) the ideal/quotient split. */
AFFSP_API affsp_status affsp_algebra_info(const affsp_algebra* algebra, affsp_report** out);

/* ---- computations ---- */
/* theory: "lie", "leibniz", "adjoint", "rel", "cr" or "coeff:<module>" where
 * <module> is "trivial", "adjoint", "ideal", "ideal^K" or "adjoint^K"
 * (K-th exterior power). */
AFFSP_API affsp_status affsp_homology(affsp_context* ctx, const affsp_algebra* algebra, const char* theory,
                                      unsigned max_degree, int emit_cycles, affsp_report** out);
AFFSP_API affsp_status affsp_invariants(affsp_context* ctx, unsigned n, unsigned k_max, affsp_report** out);
/* cap < 0 selects the claim's default for this n. */
AFFSP_API affsp_status affsp_verify(affsp_context* ctx, const char* claim, unsigned n, int cap, affsp_report** out);
AFFSP_API size_t affsp_claim_count(void);
AFFSP_API const char* affsp_claim_id(size_t index);

/* ---- reports ---- */
AFFSP_API void affsp_report_destroy(affsp_report* report);
/* 1 when every check in the report passed (homology and info reports always pass). */
AFFSP_API int affsp_report_passed(const affsp_report* report);
/* Renders into a newly allocated NUL-terminated string; free with affsp_string_free. */
AFFSP_API affsp_status affsp_report_render(const affsp_report* report, affsp_format format, char** out);
AFFSP_API void affsp_string_free(char* s);
/* Betti numbers of a homology report. Writes min(capacity, count) values and the
 * full count to *count. */
AFFSP_API affsp_status affsp_report_betti(const affsp_report* report, size_t* values, size_t capacity,
                                          size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* AFFSP_H */
