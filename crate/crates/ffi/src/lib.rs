//! C ABI over `pcinc`.
//!
//! Matrices and experiment tables are opaque heap handles owned by the caller
//! and released with their `_free` function. Every fallible call returns a
//! [`PcincStatus`]; on failure a description is available from
//! [`pcinc_last_error`] on the same thread. Missing judgments cross the
//! boundary as NaN.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pcinc::indices::{evaluate, evaluate_all, BlendParams, IndexError, IndexId};
use pcinc::matrix::{parse_matrix, MatrixError, PcMatrix};
use pcinc::montecarlo::{run_experiment, DistanceTable, ExperimentConfig, ExperimentError, GammaDist, RemovalMode};
use pcinc::priority::{Method, PriorityError};
use pcinc::ComparisonGraph;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcincStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    NotIrreducible = 3,
    NotComplete = 4,
    InvalidArgument = 5,
    Numerical = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Index selectors accepted by [`pcinc_index`]; values match the order of
/// [`pcinc_index_all`] output.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcincIndex {
    Gci1 = 0,
    Gci2 = 1,
    Ktilde = 2,
    I1 = 3,
    I2 = 4,
    Ialpha = 5,
    Ialphabeta = 6,
    Gw = 7,
    Sh = 8,
    Re1 = 9,
    Re2 = 10,
    Ci = 11,
    Lls = 12,
    Oliva = 13,
}

/// Ranking methods accepted by [`pcinc_rank`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcincMethod {
    Evm = 0,
    Gmm = 1,
    Harker = 2,
    Ills = 3,
}

/// Disturbance distributions accepted in [`PcincExperimentConfig::gamma`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcincGamma {
    Uniform = 0,
    LogUniform = 1,
}

pub const PCINC_INDEX_COUNT: usize = 14;

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PcincBlend {
    pub alpha: f64,
    pub ab_alpha: f64,
    pub ab_beta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PcincExperimentConfig {
    pub n: usize,
    pub base_matrices: usize,
    pub d_max: usize,
    pub removals_max: usize,
    pub seed: u64,
    pub weight_range: f64,
    pub blend: PcincBlend,
    /// A [`PcincGamma`] value.
    pub gamma: u32,
    /// Nonzero draws every thinned sample afresh from the complete matrix.
    pub independent_removals: u32,
    /// Zero uses the default thread pool.
    pub threads: usize,
}

/// Opaque matrix handle.
pub struct PcincMatrix(PcMatrix);

/// Opaque experiment result handle.
pub struct PcincTable(DistanceTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type FfiResult<T> = Result<T, (PcincStatus, String)>;

fn fail<T>(status: PcincStatus, msg: impl Into<String>) -> FfiResult<T> {
    Err((status, msg.into()))
}

fn index_status(e: &IndexError) -> PcincStatus {
    match e {
        IndexError::NotIrreducible => PcincStatus::NotIrreducible,
        IndexError::NotComplete => PcincStatus::NotComplete,
        IndexError::BadParams(_) | IndexError::UnknownIndex(_) => PcincStatus::InvalidArgument,
        _ => PcincStatus::Numerical,
    }
}

fn from_index(e: IndexError) -> (PcincStatus, String) {
    (index_status(&e), e.to_string())
}

fn from_priority(e: PriorityError) -> (PcincStatus, String) {
    from_index(e.into())
}

fn from_matrix(e: MatrixError) -> (PcincStatus, String) {
    let status = match e {
        MatrixError::Syntax { .. } => PcincStatus::Parse,
        _ => PcincStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn from_experiment(e: ExperimentError) -> (PcincStatus, String) {
    let status = match &e {
        ExperimentError::InvalidConfig(_) | ExperimentError::BadK { .. } | ExperimentError::ThreadPool(_) => {
            PcincStatus::InvalidArgument
        }
        ExperimentError::Cell { source, .. } => index_status(source),
    };
    (status, e.to_string())
}

/// Runs `f`, records any error for [`pcinc_last_error`], and converts panics.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> PcincStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PcincStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PcincStatus::Panic
        }
    }
}

unsafe fn matrix_ref<'a>(m: *const PcincMatrix) -> FfiResult<&'a PcMatrix> {
    match m.as_ref() {
        Some(h) => Ok(&h.0),
        None => fail(PcincStatus::NullPointer, "matrix handle is null"),
    }
}

unsafe fn out_ref<'a, T>(p: *mut T) -> FfiResult<&'a mut T> {
    match p.as_mut() {
        Some(r) => Ok(r),
        None => fail(PcincStatus::NullPointer, "output pointer is null"),
    }
}

unsafe fn blend(p: *const PcincBlend) -> BlendParams {
    match p.as_ref() {
        Some(b) => BlendParams { alpha: b.alpha, ab_alpha: b.ab_alpha, ab_beta: b.ab_beta },
        None => BlendParams::default(),
    }
}

fn index_id(index: u32) -> FfiResult<IndexId> {
    match IndexId::ALL.get(index as usize) {
        Some(&id) => Ok(id),
        None => fail(PcincStatus::InvalidArgument, format!("index selector {index} is out of range")),
    }
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn pcinc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Default blend weights `(0.5; 0.3, 0.3)`.
#[no_mangle]
pub extern "C" fn pcinc_blend_default() -> PcincBlend {
    let p = BlendParams::default();
    PcincBlend { alpha: p.alpha, ab_alpha: p.ab_alpha, ab_beta: p.ab_beta }
}

/// Parses the text matrix format from a NUL-terminated UTF-8 string.
///
/// # Safety
/// `text` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_parse(text: *const c_char, out: *mut *mut PcincMatrix) -> PcincStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if text.is_null() {
            return fail(PcincStatus::NullPointer, "text is null");
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (PcincStatus::Parse, "text is not valid UTF-8".to_string()))?;
        let m = parse_matrix(text).map_err(from_matrix)?;
        *out = Box::into_raw(Box::new(PcincMatrix(m)));
        Ok(())
    })
}

/// Builds a matrix from `n * n` row-major cells; NaN marks a missing judgment.
///
/// # Safety
/// `cells` must point to `n * n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_from_array(n: usize, cells: *const f64, out: *mut *mut PcincMatrix) -> PcincStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if cells.is_null() {
            return fail(PcincStatus::NullPointer, "cells pointer is null");
        }
        let len = n.checked_mul(n).ok_or((PcincStatus::InvalidArgument, "size overflow".to_string()))?;
        let flat = std::slice::from_raw_parts(cells, len);
        let grid: Vec<Vec<Option<f64>>> = flat
            .chunks(n.max(1))
            .map(|row| row.iter().map(|&v| if v.is_nan() { None } else { Some(v) }).collect())
            .collect();
        let m = PcMatrix::validate(&grid).map_err(from_matrix)?;
        *out = Box::into_raw(Box::new(PcincMatrix(m)));
        Ok(())
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_free(m: *mut PcincMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of alternatives, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_size(m: *const PcincMatrix) -> usize {
    m.as_ref().map_or(0, |h| h.0.size())
}

/// Reads cell `(i, j)`, zero-based; NaN when missing.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_get(m: *const PcincMatrix, i: usize, j: usize, out: *mut f64) -> PcincStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        let out = out_ref(out)?;
        if i >= m.size() || j >= m.size() {
            return fail(PcincStatus::InvalidArgument, format!("cell ({i}, {j}) is out of range"));
        }
        *out = m.get(i, j).unwrap_or(f64::NAN);
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_is_complete(m: *const PcincMatrix, out: *mut bool) -> PcincStatus {
    guard(|| {
        *out_ref(out)? = matrix_ref(m)?.is_complete();
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_matrix_is_irreducible(m: *const PcincMatrix, out: *mut bool) -> PcincStatus {
    guard(|| {
        *out_ref(out)? = ComparisonGraph::new(matrix_ref(m)?).is_irreducible();
        Ok(())
    })
}

/// Number of indices, the required length for [`pcinc_index_all`].
#[no_mangle]
pub extern "C" fn pcinc_index_count() -> usize {
    PCINC_INDEX_COUNT
}

/// Stable name of a [`PcincIndex`] value as a static string, or null.
#[no_mangle]
pub extern "C" fn pcinc_index_name(index: u32) -> *const c_char {
    const NAMES: [&CStr; PCINC_INDEX_COUNT] = [
        c"GCI1", c"GCI2", c"Ktilde", c"I1", c"I2", c"Ialpha", c"Ialphabeta", c"GW", c"SH", c"RE1", c"RE2", c"CI",
        c"LLS", c"Oliva",
    ];
    NAMES.get(index as usize).map_or(ptr::null(), |s| s.as_ptr())
}

/// Evaluates one index. A null `params` selects the default blend weights.
///
/// # Safety
/// `m` must be a live handle, `params` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_index(
    m: *const PcincMatrix,
    index: u32,
    params: *const PcincBlend,
    out: *mut f64,
) -> PcincStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        let out = out_ref(out)?;
        let id = index_id(index)?;
        *out = evaluate(m, id, &blend(params)).map_err(from_index)?;
        Ok(())
    })
}

/// Evaluates all indices into `out[0..len]` in [`PcincIndex`] order.
///
/// # Safety
/// `m` must be a live handle, `params` null or readable, and `out` must hold
/// `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pcinc_index_all(
    m: *const PcincMatrix,
    params: *const PcincBlend,
    out: *mut f64,
    len: usize,
) -> PcincStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        if out.is_null() {
            return fail(PcincStatus::NullPointer, "output pointer is null");
        }
        if len < PCINC_INDEX_COUNT {
            return fail(PcincStatus::BufferTooSmall, format!("need {PCINC_INDEX_COUNT} slots, got {len}"));
        }
        let values = evaluate_all(m, &blend(params)).map_err(from_index)?;
        std::slice::from_raw_parts_mut(out, PCINC_INDEX_COUNT).copy_from_slice(values.as_array());
        Ok(())
    })
}

/// Writes the normalized priority vector of `m` into `out[0..n]`.
///
/// # Safety
/// `m` must be a live handle and `out` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pcinc_rank(m: *const PcincMatrix, method: u32, out: *mut f64, len: usize) -> PcincStatus {
    guard(|| {
        let m = matrix_ref(m)?;
        if out.is_null() {
            return fail(PcincStatus::NullPointer, "output pointer is null");
        }
        if len < m.size() {
            return fail(PcincStatus::BufferTooSmall, format!("need {} slots, got {len}", m.size()));
        }
        let method = match method {
            0 => Method::Evm,
            1 => Method::Gmm,
            2 => Method::Harker,
            3 => Method::Ills,
            other => return fail(PcincStatus::InvalidArgument, format!("method selector {other} is out of range")),
        };
        if !ComparisonGraph::new(m).is_irreducible() {
            return fail(PcincStatus::NotIrreducible, "matrix is not irreducible");
        }
        let w = method.rank(m).map_err(from_priority)?;
        std::slice::from_raw_parts_mut(out, m.size()).copy_from_slice(w.weights());
        Ok(())
    })
}

/// Default experiment configuration (n = 7, 1000 base matrices, d_max = 30,
/// 15 removals, seed 1).
#[no_mangle]
pub extern "C" fn pcinc_experiment_default() -> PcincExperimentConfig {
    let c = ExperimentConfig::default();
    PcincExperimentConfig {
        n: c.n,
        base_matrices: c.base_matrices,
        d_max: c.d_max,
        removals_max: c.removals_max,
        seed: c.seed,
        weight_range: c.weight_range,
        blend: pcinc_blend_default(),
        gamma: PcincGamma::Uniform as u32,
        independent_removals: 0,
        threads: 0,
    }
}

/// Runs the robustness experiment.
///
/// # Safety
/// `config` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_experiment_run(
    config: *const PcincExperimentConfig,
    out: *mut *mut PcincTable,
) -> PcincStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let c = config.as_ref().ok_or((PcincStatus::NullPointer, "config is null".to_string()))?;
        let gamma = match c.gamma {
            0 => GammaDist::Uniform,
            1 => GammaDist::LogUniform,
            other => return fail(PcincStatus::InvalidArgument, format!("gamma selector {other} is out of range")),
        };
        let cfg = ExperimentConfig {
            n: c.n,
            base_matrices: c.base_matrices,
            d_max: c.d_max,
            removals_max: c.removals_max,
            blend: blend(&c.blend),
            seed: c.seed,
            weight_range: c.weight_range,
            gamma,
            removal: if c.independent_removals != 0 { RemovalMode::Independent } else { RemovalMode::Chain },
            threads: (c.threads != 0).then_some(c.threads),
        };
        let table = run_experiment(&cfg).map_err(from_experiment)?;
        *out = Box::into_raw(Box::new(PcincTable(table)));
        Ok(())
    })
}

/// Largest `k` stored in the table, or 0 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pcinc_table_removals(t: *const PcincTable) -> usize {
    t.as_ref().map_or(0, |h| h.0.removals_max())
}

/// Mean rescaled distance `D(index, k)`.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_table_get(t: *const PcincTable, index: u32, k: usize, out: *mut f64) -> PcincStatus {
    guard(|| {
        let t = &t.as_ref().ok_or((PcincStatus::NullPointer, "table handle is null".to_string()))?.0;
        let out = out_ref(out)?;
        let id = index_id(index)?;
        if k > t.removals_max() {
            return fail(PcincStatus::InvalidArgument, format!("k = {k} exceeds {}", t.removals_max()));
        }
        *out = t.get(id, k);
        Ok(())
    })
}

/// Total distance `sum_k |D(index, k)|`.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcinc_table_total(t: *const PcincTable, index: u32, out: *mut f64) -> PcincStatus {
    guard(|| {
        let t = &t.as_ref().ok_or((PcincStatus::NullPointer, "table handle is null".to_string()))?.0;
        let out = out_ref(out)?;
        *out = t.total(index_id(index)?);
        Ok(())
    })
}

/// Releases a table handle. Null is ignored.
///
/// # Safety
/// `t` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcinc_table_free(t: *mut PcincTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_order_matches_library() {
        for (i, id) in IndexId::ALL.iter().enumerate() {
            let name = unsafe { CStr::from_ptr(pcinc_index_name(i as u32)) };
            assert_eq!(name.to_str().unwrap(), id.name());
        }
        assert!(pcinc_index_name(14).is_null());
        assert_eq!(PcincIndex::Oliva as usize, IndexId::Oliva.ordinal());
        assert_eq!(PcincIndex::Ktilde as usize, IndexId::KTilde.ordinal());
    }

    #[test]
    fn errors_are_recorded_per_call() {
        let mut m = ptr::null_mut();
        let st = unsafe { pcinc_matrix_parse(c"3\n1 2\n".as_ptr(), &mut m) };
        assert_eq!(st, PcincStatus::Parse);
        assert!(m.is_null());
        assert!(!pcinc_last_error().is_null());
        let st = unsafe { pcinc_matrix_parse(c"3\n1 2 4\n1/2 1 2\n1/4 1/2 1\n".as_ptr(), &mut m) };
        assert_eq!(st, PcincStatus::Ok);
        assert!(pcinc_last_error().is_null());
        unsafe { pcinc_matrix_free(m) };
    }
}
