//! C interface. Vertices are 1-based across this boundary.
//!
//! Objects are opaque handles created by `*_generate`, `*_from_*` or
//! `*_read` and released with the matching `*_free`. Every fallible call
//! returns an [`LsStatus`]; on failure [`ls_last_error_message`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use lowsum::embed::{embed, Algorithm, EmbedResult, GreedyConfig};
use lowsum::graph::generate::{gen_forest, gen_zero_sum_labeling, ForestKind, LabelingPattern};
use lowsum::graph::io::{read_forest, read_labeling};
use lowsum::graph::{copy_sum, EdgeLabeling, Embedding, SpanningForest};
use lowsum::oracle::enumerate_sums;
use lowsum::{Error, ExactValue};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    MalformedInput = 2,
    Infeasible = 3,
    DimensionMismatch = 4,
    NotZeroSum = 5,
    TooLarge = 6,
    BadParameter = 7,
    Io = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsAlgorithm {
    Greedy = 0,
    Prop2 = 1,
    MonotonePlus = 2,
    MonotoneMinus = 3,
    Best = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsPattern {
    Uniform = 0,
    BlockAdversarial = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsForestKind {
    Path = 0,
    Star = 1,
    PerfectMatching = 2,
    RandomTree = 3,
    RandomForest = 4,
    BinaryTree = 5,
}

/// Opaque labeling of `K_n`.
pub struct LsLabeling(EdgeLabeling);

/// Opaque spanning forest.
pub struct LsForest(SpanningForest);

/// Opaque embedding result.
pub struct LsResult(EmbedResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LsStatus {
    match e {
        Error::MalformedInput(_) => LsStatus::MalformedInput,
        Error::InfeasibleZeroSum { .. } | Error::InfeasibleKind { .. } => LsStatus::Infeasible,
        Error::DimensionMismatch { .. } => LsStatus::DimensionMismatch,
        Error::NotZeroSum(_) => LsStatus::NotZeroSum,
        Error::TooLarge { .. } => LsStatus::TooLarge,
        Error::Io(_) => LsStatus::Io,
        Error::WitnessNotFound(_) | Error::TraceMismatch { .. } => LsStatus::Internal,
        _ => LsStatus::BadParameter,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (LsStatus, String)>) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LsStatus::Internal
        }
    }
}

fn lift<T>(r: lowsum::Result<T>) -> Result<T, (LsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (LsStatus, String) {
    (LsStatus::NullPointer, format!("{what} is null"))
}

fn bad(msg: impl Into<String>) -> (LsStatus, String) {
    (LsStatus::BadParameter, msg.into())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (LsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), (LsStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, (LsStatus, String)> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Path::new)
        .map_err(|_| bad("path is not valid UTF-8"))
}

fn pattern_of(v: u32) -> Result<LabelingPattern, (LsStatus, String)> {
    match v {
        0 => Ok(LabelingPattern::Uniform),
        1 => Ok(LabelingPattern::BlockAdversarial),
        _ => Err(bad(format!("unknown pattern {v}"))),
    }
}

fn kind_of(v: u32) -> Result<ForestKind, (LsStatus, String)> {
    ForestKind::ALL
        .get(v as usize)
        .copied()
        .ok_or_else(|| bad(format!("unknown forest kind {v}")))
}

fn algorithm_of(v: u32) -> Result<Algorithm, (LsStatus, String)> {
    Algorithm::ALL
        .get(v as usize)
        .copied()
        .ok_or_else(|| bad(format!("unknown algorithm {v}")))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ls_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Random zero-sum labeling. `pattern` is an [`LsPattern`] value.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ls_labeling_generate(
    n: usize,
    seed: u64,
    pattern: u32,
    out: *mut *mut LsLabeling,
) -> LsStatus {
    guard(|| {
        let l = lift(gen_zero_sum_labeling(n, seed, pattern_of(pattern)?))?;
        store(out, LsLabeling(l))
    })
}

/// Labeling from `n(n-1)/2` signs in lexicographic pair order
/// `(1,2), (1,3), ..., (n-1,n)`, each `+1` or `-1`.
///
/// # Safety
/// `signs` must point to `len` readable bytes and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ls_labeling_from_signs(
    n: usize,
    signs: *const i8,
    len: usize,
    out: *mut *mut LsLabeling,
) -> LsStatus {
    guard(|| {
        let pairs = n * n.saturating_sub(1) / 2;
        if len != pairs {
            return Err((
                LsStatus::MalformedInput,
                format!("expected {pairs} signs for n = {n}, got {len}"),
            ));
        }
        if signs.is_null() && len > 0 {
            return Err(null("signs"));
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(signs, len)
        };
        let triples = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .zip(slice)
            .map(|((u, v), &s)| (u, v, s as i64));
        let l = lift(EdgeLabeling::from_triples(n, triples))?;
        store(out, LsLabeling(l))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_labeling_read(path: *const c_char, out: *mut *mut LsLabeling) -> LsStatus {
    guard(|| {
        let l = lift(read_labeling(path_arg(path)?))?;
        store(out, LsLabeling(l))
    })
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `labeling` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_labeling_n(labeling: *const LsLabeling) -> usize {
    labeling.as_ref().map_or(0, |l| l.0.n())
}

/// Sum of all labels, or 0 for NULL.
///
/// # Safety
/// `labeling` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_labeling_total(labeling: *const LsLabeling) -> i64 {
    labeling.as_ref().map_or(0, |l| l.0.total_sum())
}

/// # Safety
/// `labeling` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn ls_labeling_free(labeling: *mut LsLabeling) {
    if !labeling.is_null() {
        drop(Box::from_raw(labeling));
    }
}

/// Forest from a named family. `kind` is an [`LsForestKind`] value.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_forest_generate(n: usize, kind: u32, seed: u64, out: *mut *mut LsForest) -> LsStatus {
    guard(|| {
        let f = lift(gen_forest(n, kind_of(kind)?, seed))?;
        store(out, LsForest(f))
    })
}

/// Forest from `m` edges given as `2m` vertex numbers `u1 v1 u2 v2 ...`.
///
/// # Safety
/// `edges` must point to `2 * m` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_forest_from_edges(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut LsForest,
) -> LsStatus {
    guard(|| {
        if edges.is_null() && m > 0 {
            return Err(null("edges"));
        }
        let flat = if m == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let mut list = Vec::with_capacity(m);
        for pair in flat.chunks(2) {
            let (u, v) = (pair[0] as usize, pair[1] as usize);
            if u == 0 || v == 0 || u > n || v > n {
                return Err((
                    LsStatus::MalformedInput,
                    format!("edge ({u}, {v}) out of range 1..={n}"),
                ));
            }
            list.push((u - 1, v - 1));
        }
        let f = lift(SpanningForest::new(n, list))?;
        store(out, LsForest(f))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_forest_read(path: *const c_char, out: *mut *mut LsForest) -> LsStatus {
    guard(|| {
        let f = lift(read_forest(path_arg(path)?))?;
        store(out, LsForest(f))
    })
}

/// Maximum degree, or 0 for NULL.
///
/// # Safety
/// `forest` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_forest_max_degree(forest: *const LsForest) -> usize {
    forest.as_ref().map_or(0, |f| f.0.max_degree())
}

/// # Safety
/// `forest` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn ls_forest_free(forest: *mut LsForest) {
    if !forest.is_null() {
        drop(Box::from_raw(forest));
    }
}

/// Runs an embedding algorithm ([`LsAlgorithm`] value) with
/// `epsilon = eps_num / eps_den`, which must lie in `(0, 1/4)`.
///
/// # Safety
/// `labeling` and `forest` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_embed(
    labeling: *const LsLabeling,
    forest: *const LsForest,
    algorithm: u32,
    eps_num: i64,
    eps_den: i64,
    out: *mut *mut LsResult,
) -> LsStatus {
    guard(|| {
        let l = deref(labeling, "labeling")?;
        let f = deref(forest, "forest")?;
        if eps_den <= 0 {
            return Err(bad("epsilon denominator must be positive"));
        }
        let cfg = lift(GreedyConfig::new(ExactValue::new(eps_num as i128, eps_den as i128)))?;
        let r = lift(embed(&l.0, &f.0, algorithm_of(algorithm)?, &cfg))?;
        store(out, LsResult(r))
    })
}

/// Copy sum of the result, or 0 for NULL.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_result_c_value(result: *const LsResult) -> i64 {
    result.as_ref().map_or(0, |r| r.0.c_value)
}

/// 1 if `|c| <= max_degree + 1` holds, 0 if it fails, -1 if the check does
/// not apply (labeling not zero-sum) or `result` is NULL.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_result_within_delta_plus_1(result: *const LsResult) -> i32 {
    match result.as_ref().and_then(|r| r.0.certificates.delta_plus_1) {
        Some(true) => 1,
        Some(false) => 0,
        None => -1,
    }
}

/// Writes the embedding (`out[u-1]` is the image of forest vertex `u`).
///
/// # Safety
/// `result` must be a live handle and `out` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ls_result_embedding(result: *const LsResult, out: *mut u32, len: usize) -> LsStatus {
    guard(|| {
        let r = deref(result, "result")?;
        let pi = r.0.embedding.as_slice();
        if len != pi.len() {
            return Err((
                LsStatus::DimensionMismatch,
                format!("buffer holds {len} values, embedding has {}", pi.len()),
            ));
        }
        if out.is_null() && len > 0 {
            return Err(null("out"));
        }
        for (i, &v) in pi.iter().enumerate() {
            *out.add(i) = (v + 1) as u32;
        }
        Ok(())
    })
}

/// # Safety
/// `result` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn ls_result_free(result: *mut LsResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Copy sum of the forest under the embedding `pi` (`n` values, 1-based).
///
/// # Safety
/// Handles must be live, `pi` must point to `n` readable values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_copy_sum(
    labeling: *const LsLabeling,
    forest: *const LsForest,
    pi: *const u32,
    n: usize,
    out: *mut i64,
) -> LsStatus {
    guard(|| {
        let l = deref(labeling, "labeling")?;
        let f = deref(forest, "forest")?;
        if (pi.is_null() && n > 0) || out.is_null() {
            return Err(null("pi or out"));
        }
        let raw = if n == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(pi, n)
        };
        if raw.contains(&0) {
            return Err((LsStatus::MalformedInput, "embedding values are 1-based".into()));
        }
        let emb = lift(Embedding::new(raw.iter().map(|&v| v as usize - 1).collect()))?;
        *out = lift(copy_sum(&l.0, &f.0, &emb))?;
        Ok(())
    })
}

/// Smallest `|c|` over all `n!` embeddings; refuses `n > min(cap, 10)`.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_oracle_min_abs_sum(
    labeling: *const LsLabeling,
    forest: *const LsForest,
    cap: usize,
    out: *mut i64,
) -> LsStatus {
    guard(|| {
        let l = deref(labeling, "labeling")?;
        let f = deref(forest, "forest")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = lift(enumerate_sums(&l.0, &f.0, cap))?;
        *out = d.min_abs().unwrap_or(0);
        Ok(())
    })
}
