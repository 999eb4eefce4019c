//! C ABI over the `safescreen` library.
//!
//! Matrices and screening reports are opaque handles created and freed
//! through this API. Every fallible call returns an [`SsStatus`]; on failure
//! the message is available from [`ss_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use safescreen::safe_logreg::{screen_logreg, LogRegScreenOptions};
use safescreen::safe_svm::{default_reference, lambda_max_bar, screen_svm, SvmScreenOptions};
use safescreen::solvers::{solve_lasso, SolveOptions};
use safescreen::{
    safe_lasso, Error, LassoInstance, LogRegInstance, ScreeningReport, SparseColMatrix, SvmInstance, WarmStart,
};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    InvalidData = 4,
    Numerical = 5,
    Panic = 6,
}

/// Column-compressed sparse matrix.
pub struct SsMatrix {
    inner: SparseColMatrix,
}

/// Outcome of a screening call.
pub struct SsReport {
    inner: ScreeningReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidArgument(_) | Error::IndexOutOfRange { .. } => SsStatus::InvalidArgument,
            Error::Dimension(_) => SsStatus::DimensionMismatch,
            Error::InvalidData(_) | Error::Parse { .. } | Error::Io(_) | Error::Json(_) => SsStatus::InvalidData,
            Error::BudgetInfeasible { .. } => SsStatus::InvalidArgument,
            Error::InvalidGeometry(_) | Error::NotConverged { .. } | Error::Numerical(_) => SsStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SsStatus::NullPointer, format!("{what} is null"))
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside safescreen".into());
            SsStatus::Panic
        }
    }
}

/// Borrows `len` elements; a null pointer is accepted only for `len == 0`.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller guarantees `p` points to `len` readable elements.
    Ok(unsafe { std::slice::from_raw_parts(p, len) })
}

unsafe fn matrix<'a>(m: *const SsMatrix) -> Result<&'a SparseColMatrix, Failure> {
    // SAFETY: a non-null handle was produced by this library and not freed.
    unsafe { m.as_ref() }.map(|m| &m.inner).ok_or_else(|| null("matrix"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: `out` is non-null and the caller guarantees it is writable.
    unsafe { out.write(value) };
    Ok(())
}

fn boxed_report(report: ScreeningReport) -> *mut SsReport {
    Box::into_raw(Box::new(SsReport { inner: report }))
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ss_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a matrix from CSC arrays (`col_ptr` has `n_cols + 1` entries,
/// row indices strictly increasing within each column).
///
/// # Safety
/// `col_ptr` must point to `n_cols + 1` values; `row_idx` and `values` to
/// `nnz` values each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_matrix_from_csc(
    n_rows: usize,
    n_cols: usize,
    col_ptr: *const usize,
    row_idx: *const usize,
    values: *const f64,
    nnz: usize,
    out: *mut *mut SsMatrix,
) -> SsStatus {
    guard(|| unsafe {
        let cp = slice(col_ptr, n_cols + 1, "col_ptr")?.to_vec();
        let ri = slice(row_idx, nnz, "row_idx")?.to_vec();
        let vals = slice(values, nnz, "values")?.to_vec();
        let inner = SparseColMatrix::from_csc(n_rows, n_cols, cp, ri, vals)?;
        write(out, Box::into_raw(Box::new(SsMatrix { inner })), "out")
    })
}

/// Builds a matrix from a dense column-major array; zeros are not stored.
///
/// # Safety
/// `data` must point to `n_rows * n_cols` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_matrix_from_dense(
    n_rows: usize,
    n_cols: usize,
    data: *const f64,
    out: *mut *mut SsMatrix,
) -> SsStatus {
    guard(|| unsafe {
        let len = n_rows
            .checked_mul(n_cols)
            .ok_or_else(|| Failure(SsStatus::InvalidArgument, "matrix size overflows".into()))?;
        let d = slice(data, len, "data")?;
        let cols: Vec<Vec<f64>> = d.chunks(n_rows.max(1)).take(n_cols).map(<[f64]>::to_vec).collect();
        let inner = SparseColMatrix::from_dense_cols(n_rows, &cols)?;
        write(out, Box::into_raw(Box::new(SsMatrix { inner })), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_matrix_free(m: *mut SsMatrix) {
    if !m.is_null() {
        // SAFETY: the handle came from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// # Safety
/// `m` must be a live handle; `n_rows` and `n_cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_matrix_shape(m: *const SsMatrix, n_rows: *mut usize, n_cols: *mut usize) -> SsStatus {
    guard(|| unsafe {
        let x = matrix(m)?;
        write(n_rows, x.n_rows(), "n_rows")?;
        write(n_cols, x.n_cols(), "n_cols")
    })
}

unsafe fn lasso(x: *const SsMatrix, y: *const f64, y_len: usize) -> Result<LassoInstance, Failure> {
    unsafe {
        let x = matrix(x)?.clone();
        let y = slice(y, y_len, "y")?.to_vec();
        Ok(LassoInstance::plain(x, y)?)
    }
}

/// `‖X^T y‖∞`, the smallest penalty with an all-zero LASSO solution.
///
/// # Safety
/// `x` must be a live handle, `y` must point to `y_len` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_lasso_lambda_max(
    x: *const SsMatrix,
    y: *const f64,
    y_len: usize,
    out: *mut f64,
) -> SsStatus {
    guard(|| unsafe {
        let inst = lasso(x, y, y_len)?;
        write(out, safe_lasso::lambda_max(&inst), "out")
    })
}

/// Screens LASSO features at `lambda`. With `w0` null the default start
/// (`w0 = 0` at `lambda_max`) is used; otherwise `w0` (length `n_cols`) is a
/// solution at `lambda0`.
///
/// # Safety
/// Pointers must be valid for the stated lengths; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_lasso_screen(
    x: *const SsMatrix,
    y: *const f64,
    y_len: usize,
    lambda: f64,
    w0: *const f64,
    lambda0: f64,
    out: *mut *mut SsReport,
) -> SsStatus {
    guard(|| unsafe {
        let inst = lasso(x, y, y_len)?;
        let ws = if w0.is_null() {
            WarmStart::default_for(&inst)
        } else {
            let w = slice(w0, inst.n_cols(), "w0")?.to_vec();
            WarmStart::from_solution(&inst, lambda0, w)?
        };
        let r = safe_lasso::screen(&inst, lambda, &ws, Default::default())?;
        write(out, boxed_report(r), "out")
    })
}

/// Solves the LASSO by coordinate descent to relative gap `tol`, writing the
/// `n_cols` coefficients to `w_out` and the certified gap to `gap_out`
/// (which may be null). Returns `SS_STATUS_NUMERICAL` if `max_iters` sweeps
/// did not reach `tol`; `w_out` then holds the last iterate.
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn ss_lasso_solve(
    x: *const SsMatrix,
    y: *const f64,
    y_len: usize,
    lambda: f64,
    tol: f64,
    max_iters: usize,
    w_out: *mut f64,
    w_len: usize,
    gap_out: *mut f64,
) -> SsStatus {
    guard(|| unsafe {
        let inst = lasso(x, y, y_len)?;
        if w_out.is_null() {
            return Err(null("w_out"));
        }
        if w_len != inst.n_cols() {
            return Err(Failure(
                SsStatus::DimensionMismatch,
                format!("w_len is {w_len}, expected {}", inst.n_cols()),
            ));
        }
        let opts = SolveOptions {
            tol,
            max_iters,
            warm_w: None,
        };
        let res = solve_lasso(&inst, lambda, &opts)?;
        std::slice::from_raw_parts_mut(w_out, w_len).copy_from_slice(&res.w);
        if !gap_out.is_null() {
            gap_out.write(res.duality_gap);
        }
        res.require_converged()?;
        Ok(())
    })
}

unsafe fn svm(x: *const SsMatrix, labels: *const f64, len: usize) -> Result<SvmInstance, Failure> {
    unsafe { Ok(SvmInstance::new(matrix(x)?.clone(), slice(labels, len, "labels")?.to_vec())?) }
}

/// Penalty above which the default hinge-loss test removes every feature.
///
/// # Safety
/// `x` live, `labels` (±1) valid for `len`, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_svm_lambda_max_bar(
    x: *const SsMatrix,
    labels: *const f64,
    len: usize,
    out: *mut f64,
) -> SsStatus {
    guard(|| unsafe {
        let inst = svm(x, labels, len)?;
        write(out, lambda_max_bar(&inst)?, "out")
    })
}

/// Hinge-loss screening at `lambda` with the default reference point.
///
/// # Safety
/// `x` live, `labels` (±1) valid for `len`, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_svm_screen(
    x: *const SsMatrix,
    labels: *const f64,
    len: usize,
    lambda: f64,
    out: *mut *mut SsReport,
) -> SsStatus {
    guard(|| unsafe {
        let inst = svm(x, labels, len)?;
        let (l0, g0) = default_reference(&inst)?;
        let r = screen_svm(&inst, lambda, l0, g0, SvmScreenOptions::default())?;
        write(out, boxed_report(r), "out")
    })
}

/// Logistic-regression screening at `lambda` from the `w = 0` dual point.
///
/// # Safety
/// `x` live, `labels` (±1) valid for `len`, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_logreg_screen(
    x: *const SsMatrix,
    labels: *const f64,
    len: usize,
    lambda: f64,
    out: *mut *mut SsReport,
) -> SsStatus {
    guard(|| unsafe {
        let inst = LogRegInstance::new(matrix(x)?.clone(), slice(labels, len, "labels")?.to_vec())?;
        let r = screen_logreg(&inst, lambda, LogRegScreenOptions::default())?;
        write(out, boxed_report(r), "out")
    })
}

unsafe fn report<'a>(r: *const SsReport) -> Result<&'a ScreeningReport, Failure> {
    // SAFETY: a non-null handle was produced by this library and not freed.
    unsafe { r.as_ref() }.map(|r| &r.inner).ok_or_else(|| null("report"))
}

/// Number of kept features; 0 for a null report.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn ss_report_kept_count(r: *const SsReport) -> usize {
    unsafe { r.as_ref() }.map_or(0, |r| r.inner.kept.len())
}

/// Number of eliminated features; 0 for a null report.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn ss_report_eliminated_count(r: *const SsReport) -> usize {
    unsafe { r.as_ref() }.map_or(0, |r| r.inner.eliminated.len())
}

/// Copies the sorted kept indices into `out`, which must hold at least
/// `ss_report_kept_count` entries (`cap`).
///
/// # Safety
/// `r` live; `out` writable for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn ss_report_kept_indices(r: *const SsReport, out: *mut usize, cap: usize) -> SsStatus {
    guard(|| unsafe {
        let kept = &report(r)?.kept;
        if cap < kept.len() {
            return Err(Failure(
                SsStatus::DimensionMismatch,
                format!("buffer holds {cap} indices, {} needed", kept.len()),
            ));
        }
        if kept.is_empty() {
            return Ok(());
        }
        if out.is_null() {
            return Err(null("out"));
        }
        std::slice::from_raw_parts_mut(out, kept.len()).copy_from_slice(kept);
        Ok(())
    })
}

/// Writes whether feature `k` was eliminated.
///
/// # Safety
/// `r` live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_report_is_eliminated(r: *const SsReport, k: usize, out: *mut bool) -> SsStatus {
    guard(|| unsafe {
        let rep = report(r)?;
        if k >= rep.n_features() {
            return Err(Failure(
                SsStatus::InvalidArgument,
                format!("feature {k} out of range ({} features)", rep.n_features()),
            ));
        }
        write(out, rep.is_eliminated(k), "out")
    })
}

/// # Safety
/// `r` must be null or a report handle that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_report_free(r: *mut SsReport) {
    if !r.is_null() {
        // SAFETY: the handle came from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(r) });
    }
}
