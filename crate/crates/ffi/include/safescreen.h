#ifndef SAFESCREEN_H
#define SAFESCREEN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_POINTER = 1,
  SS_STATUS_INVALID_ARGUMENT = 2,
  SS_STATUS_DIMENSION_MISMATCH = 3,
  SS_STATUS_INVALID_DATA = 4,
  SS_STATUS_NUMERICAL = 5,
  SS_STATUS_PANIC = 6,
} SsStatus;

/**
 * Column-compressed sparse matrix.
 */
typedef struct SsMatrix SsMatrix;

/**
 * Outcome of a screening call.
 */
typedef struct SsReport SsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ss_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ss_version(void);

/**
 * Builds a matrix from CSC arrays (`col_ptr` has `n_cols + 1` entries,
 * row indices strictly increasing within each column).
 *
 * # Safety
 * `col_ptr` must point to `n_cols + 1` values; `row_idx` and `values` to
 * `nnz` values each; `out` must be writable.
 */
SsStatus ss_matrix_from_csc(size_t n_rows,
                            size_t n_cols,
                            const size_t *col_ptr,
                            const size_t *row_idx,
                            const double *values,
                            size_t nnz,
                            SsMatrix **out);

/**
 * Builds a matrix from a dense column-major array; zeros are not stored.
 *
 * # Safety
 * `data` must point to `n_rows * n_cols` values; `out` must be writable.
 */
SsStatus ss_matrix_from_dense(size_t n_rows, size_t n_cols, const double *data, SsMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from this library that was not yet freed.
 */
void ss_matrix_free(SsMatrix *m);

/**
 * # Safety
 * `m` must be a live handle; `n_rows` and `n_cols` must be writable.
 */
SsStatus ss_matrix_shape(const SsMatrix *m, size_t *n_rows, size_t *n_cols);

/**
 * `‖X^T y‖∞`, the smallest penalty with an all-zero LASSO solution.
 *
 * # Safety
 * `x` must be a live handle, `y` must point to `y_len` values, `out` writable.
 */
SsStatus ss_lasso_lambda_max(const SsMatrix *x, const double *y, size_t y_len, double *out);

/**
 * Screens LASSO features at `lambda`. With `w0` null the default start
 * (`w0 = 0` at `lambda_max`) is used; otherwise `w0` (length `n_cols`) is a
 * solution at `lambda0`.
 *
 * # Safety
 * Pointers must be valid for the stated lengths; `out` must be writable.
 */
SsStatus ss_lasso_screen(const SsMatrix *x,
                         const double *y,
                         size_t y_len,
                         double lambda,
                         const double *w0,
                         double lambda0,
                         SsReport **out);

/**
 * Solves the LASSO by coordinate descent to relative gap `tol`, writing the
 * `n_cols` coefficients to `w_out` and the certified gap to `gap_out`
 * (which may be null). Returns `SS_STATUS_NUMERICAL` if `max_iters` sweeps
 * did not reach `tol`; `w_out` then holds the last iterate.
 *
 * # Safety
 * Pointers must be valid for the stated lengths.
 */
SsStatus ss_lasso_solve(const SsMatrix *x,
                        const double *y,
                        size_t y_len,
                        double lambda,
                        double tol,
                        size_t max_iters,
                        double *w_out,
                        size_t w_len,
                        double *gap_out);

/**
 * Penalty above which the default hinge-loss test removes every feature.
 *
 * # Safety
 * `x` live, `labels` (±1) valid for `len`, `out` writable.
 */
SsStatus ss_svm_lambda_max_bar(const SsMatrix *x, const double *labels, size_t len, double *out);

/**
 * Hinge-loss screening at `lambda` with the default reference point.
 *
 * # Safety
 * `x` live, `labels` (±1) valid for `len`, `out` writable.
 */
SsStatus ss_svm_screen(const SsMatrix *x,
                       const double *labels,
                       size_t len,
                       double lambda,
                       SsReport **out);

/**
 * Logistic-regression screening at `lambda` from the `w = 0` dual point.
 *
 * # Safety
 * `x` live, `labels` (±1) valid for `len`, `out` writable.
 */
SsStatus ss_logreg_screen(const SsMatrix *x,
                          const double *labels,
                          size_t len,
                          double lambda,
                          SsReport **out);

/**
 * Number of kept features; 0 for a null report.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
size_t ss_report_kept_count(const SsReport *r);

/**
 * Number of eliminated features; 0 for a null report.
 *
 * # Safety
 * `r` must be null or a live report handle.
 */
size_t ss_report_eliminated_count(const SsReport *r);

/**
 * Copies the sorted kept indices into `out`, which must hold at least
 * `ss_report_kept_count` entries (`cap`).
 *
 * # Safety
 * `r` live; `out` writable for `cap` entries.
 */
SsStatus ss_report_kept_indices(const SsReport *r, size_t *out, size_t cap);

/**
 * Writes whether feature `k` was eliminated.
 *
 * # Safety
 * `r` live; `out` writable.
 */
SsStatus ss_report_is_eliminated(const SsReport *r, size_t k, bool *out);

/**
 * # Safety
 * `r` must be null or a report handle that was not yet freed.
 */
void ss_report_free(SsReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SAFESCREEN_H */
