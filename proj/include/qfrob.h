/* qfrob — exact p-adic Frobenius computations for the mirror-quintic
 * boundary point: C interface of the shared library.
 *
 * Usage pattern:
 *     qfrob_ctx* ctx = NULL;
 *     qfrob_report* rep = NULL;
 *     if (qfrob_ctx_create(7, 15, 10, &ctx) != QFROB_OK) { ... }
 *     if (qfrob_verify(ctx, "all", &rep) != QFROB_OK) { ... qfrob_last_error() ... }
 *     puts(qfrob_report_json(rep));
 *     int ok = qfrob_report_ok(rep);
 *     qfrob_report_destroy(rep);
 *     qfrob_ctx_destroy(ctx);
 *
 * All functions returning int yield QFROB_OK (0) on success or an error code;
 * qfrob_last_error() describes the most recent failure on the calling thread.
 * Reports remain valid after the context is destroyed.
 */

#ifndef QFROB_H
#define QFROB_H

#ifdef __cplusplus
extern "C" {
#endif

#define QFROB_OK 0
#define QFROB_ERR_BAD_PRIME 1        /* p not admissible: p = 2 or non-prime anywhere;
                                        p = 5 for the quintic Frobenius operations */
#define QFROB_ERR_BAD_ARGUMENT 2     /* argument outside its documented domain */
#define QFROB_ERR_PRECISION 3        /* a comparison needed more digits than were carried */
#define QFROB_ERR_TRUNCATION_CAP 4   /* a series failed to converge within the cap */
#define QFROB_ERR_IDENTITY 5         /* a certified internal identity failed to hold */
#define QFROB_ERR_INNER_VALUATION 6  /* L-value inner-sum valuation check failed */
#define QFROB_ERR_IO 7               /* cache file I/O failure */
#define QFROB_ERR_INTERNAL 8         /* unexpected condition */

typedef struct qfrob_ctx qfrob_ctx;
typedef struct qfrob_report qfrob_report;

/* Create a computation context for one odd prime. digits is the reported
 * precision N (>= 1), margin the number of guard digits carried on top.
 * Defaults used by the CLI: digits 15, margin 10. p = 5 is accepted here
 * (series and L-function layers are prime-generic) but rejected by
 * qfrob_frobenius, whose construction assumes p != 5. */
int qfrob_ctx_create(long prime, int digits, int margin, qfrob_ctx** out);

/* Hard cap on series length (default 5000). Resets cached state. */
int qfrob_ctx_set_truncation_cap(qfrob_ctx* ctx, long cap);

void qfrob_ctx_destroy(qfrob_ctx* ctx);

/* Message for the last failing qfrob_* call on this thread ("" if none). */
const char* qfrob_last_error(void);

/* Frobenius matrix report. convention: "standard" or "dwork". */
int qfrob_frobenius(qfrob_ctx* ctx, const char* convention, qfrob_report** out);

/* Identity-check report. suite: "all", "dwork", "brackets", "cohomology"
 * or "lfunction". The call succeeds even when checks fail; inspect
 * qfrob_report_ok. */
int qfrob_verify(qfrob_ctx* ctx, const char* suite, qfrob_report** out);

/* Exact-table reports. */
int qfrob_tables_dwork(qfrob_ctx* ctx, long n_max, qfrob_report** out);
int qfrob_tables_dmatrix(qfrob_ctx* ctx, int alpha_lo, int alpha_hi, long beta_lo,
                         long beta_hi, qfrob_report** out);
int qfrob_tables_cvalues(qfrob_ctx* ctx, int alpha, long max_index, qfrob_report** out);

/* Serialized report payloads; pointers remain valid until the report is
 * destroyed. JSON is deterministic for a fixed configuration; the text form
 * additionally carries the wall time. */
const char* qfrob_report_json(const qfrob_report* rep);
const char* qfrob_report_text(const qfrob_report* rep);

/* 1 iff every check in the report passed (1 for pure table reports). */
int qfrob_report_ok(const qfrob_report* rep);

void qfrob_report_destroy(qfrob_report* rep);

const char* qfrob_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QFROB_H */
