#ifndef PUREGAUSS_H
#define PUREGAUSS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    PG_OK = 0,
    PG_ERR_DOMAIN = 1,    /* invalid arguments */
    PG_ERR_RESOURCE = 2,  /* a size cap or search budget was exceeded */
    PG_ERR_INTERNAL = 3   /* an internal consistency check failed */
} pg_status;

/* Difference-set instance: a union of order-N cyclotomic classes in F_{p^{fs}}. */
typedef struct pg_shds pg_shds;

const char* pg_version(void);

/* Message for the last non-OK status on the calling thread. */
const char* pg_last_error(void);

/* Strings returned through char** outputs are JSON documents owned by the caller. */
void pg_string_free(char* s);

/* f = 0 derives f = ord_N(p); otherwise it must match. */
pg_status pg_purity_json(uint64_t N, uint64_t p, uint64_t f, char** out);

pg_status pg_classify_f_json(uint64_t f, int explain, char** out);
pg_status pg_scan_tables_json(uint64_t nmax, unsigned threads, int explain, char** out);

/* G_{p^f}(eta_N^j) as exact coefficients in Z[zeta_{pN}]. */
pg_status pg_gauss_sum_json(uint64_t p, uint64_t f, uint64_t N, int64_t j, uint64_t field_cap, char** out);
pg_status pg_sign_constants_json(uint64_t p, uint64_t f, uint64_t N, uint64_t field_cap, char** out);

/* Subproduct-property default index set for the pure triple (N, ord_N(p), p). */
pg_status pg_default_index_set_json(uint64_t N, uint64_t p, char** out);

pg_status pg_shds_build(uint64_t p, uint64_t f, uint64_t s, uint64_t N, const uint64_t* index, size_t count,
                        uint64_t field_cap, pg_shds** out);
void pg_shds_free(pg_shds* h);
pg_status pg_shds_describe_json(const pg_shds* h, char** out);
pg_status pg_shds_verify_json(const pg_shds* h, int brute_force, char** out);
pg_status pg_shds_dual_json(const pg_shds* h, char** out);
/* threshold = 0 scans all orbit representatives; literal = 1 scans every field element. */
pg_status pg_shds_invariant_json(const pg_shds* h, uint64_t a, uint64_t threshold, int literal, unsigned threads,
                                 char** out);

pg_status pg_flatpoly_json(uint64_t p1, uint64_t p2, int relaxed, uint64_t budget, char** out);

#ifdef __cplusplus
}
#endif

#endif
