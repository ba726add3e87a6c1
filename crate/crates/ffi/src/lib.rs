//! C ABI over the `cubepath` solvers.
//!
//! Curves and paths are opaque handles created by `cp_*_new`/`cp_solve`/
//! `cp_oracle` and released with the matching `*_free`. Every fallible call
//! returns a [`CpStatus`]; on failure, [`cp_last_error`] describes the most
//! recent error on the calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubepath::cube_model::{parse_curve, CubeCurve, GridCube};
use cubepath::oracle::{build_graph, shortest_cycle};
use cubepath::rubberband::{solve, Polyline, SolverConfig, Variant};

/// Result codes. `CP_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidCurve = 3,
    SolverFailed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpVariant {
    Original = 0,
    Edge = 1,
    Face = 2,
}

fn variant_from(v: i32) -> Option<Variant> {
    match v {
        x if x == CpVariant::Original as i32 => Some(Variant::Original),
        x if x == CpVariant::Edge as i32 => Some(Variant::EdgeBased),
        x if x == CpVariant::Face as i32 => Some(Variant::FaceBased),
        _ => None,
    }
}

/// A validated simple cube-curve.
pub struct CpCurve {
    curve: CubeCurve,
}

/// A closed polygonal path with its run statistics.
pub struct CpPath {
    path: Polyline,
    loops: usize,
    time_ms: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let mut s = msg.into();
    s.retain(|c| c != '\0');
    let c = CString::new(s).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: CpStatus, msg: impl Into<String>) -> CpStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into `CP_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> CpStatus) -> CpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            fail(CpStatus::Panic, format!("internal panic: {msg}"))
        }
    }
}

/// Message for the last failed call on this thread, or NULL if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

fn put_curve(curve: CubeCurve, out: *mut *mut CpCurve) -> CpStatus {
    // SAFETY: caller checked `out` for NULL.
    unsafe { *out = Box::into_raw(Box::new(CpCurve { curve })) };
    CpStatus::Ok
}

/// Builds a curve from `count` cubes given as `xyz[3*i..3*i+3]`.
///
/// # Safety
/// `xyz` must point to `3 * count` readable `int64_t`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cp_curve_new(xyz: *const i64, count: usize, out: *mut *mut CpCurve) -> CpStatus {
    guard(|| {
        if xyz.is_null() || out.is_null() {
            return fail(CpStatus::NullPointer, "null argument");
        }
        let Some(len) = count.checked_mul(3) else {
            return fail(CpStatus::InvalidArgument, "count overflows");
        };
        let raw = std::slice::from_raw_parts(xyz, len);
        let cubes = raw.chunks_exact(3).map(|c| GridCube::new(c[0], c[1], c[2])).collect();
        match CubeCurve::new(cubes) {
            Ok(curve) => put_curve(curve, out),
            Err(e) => fail(CpStatus::InvalidCurve, e.to_string()),
        }
    })
}

/// Parses the text format (`cube x y z` lines, `#` comments).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cp_curve_parse(text: *const c_char, out: *mut *mut CpCurve) -> CpStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(CpStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(CpStatus::InvalidArgument, "text is not UTF-8");
        };
        match parse_curve(s) {
            Ok(curve) => put_curve(curve, out),
            Err(e) => fail(CpStatus::InvalidCurve, e.to_string()),
        }
    })
}

/// # Safety
/// `curve` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cp_curve_free(curve: *mut CpCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Number of cubes, or 0 for NULL.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_curve_cube_count(curve: *const CpCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.curve.len())
}

/// Number of critical edges, or 0 for NULL.
///
/// # Safety
/// `curve` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_curve_critical_edge_count(curve: *const CpCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.curve.critical_edges().len())
}

fn put_path(path: Polyline, loops: usize, time_ms: f64, out: *mut *mut CpPath) -> CpStatus {
    // SAFETY: caller checked `out` for NULL.
    unsafe { *out = Box::into_raw(Box::new(CpPath { path, loops, time_ms })) };
    CpStatus::Ok
}

/// Runs a rubberband variant (a `CpVariant` value) until the length gain of a
/// loop drops below `epsilon`.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cp_solve(
    curve: *const CpCurve,
    variant: i32,
    epsilon: f64,
    out: *mut *mut CpPath,
) -> CpStatus {
    guard(|| {
        let (Some(c), false) = (curve.as_ref(), out.is_null()) else {
            return fail(CpStatus::NullPointer, "null argument");
        };
        let Some(variant) = variant_from(variant) else {
            return fail(CpStatus::InvalidArgument, format!("unknown variant {variant}"));
        };
        let cfg = match SolverConfig::new(variant, epsilon) {
            Ok(cfg) => cfg,
            Err(e) => return fail(CpStatus::InvalidArgument, e.to_string()),
        };
        match solve(&c.curve, &cfg) {
            Ok((path, report)) => put_path(path, report.loops, report.wall_time_ms, out),
            Err(e) => fail(CpStatus::SolverFailed, e.to_string()),
        }
    })
}

/// Shortest cycle of the graph with `m` samples per critical edge.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cp_oracle(curve: *const CpCurve, m: usize, out: *mut *mut CpPath) -> CpStatus {
    guard(|| {
        let (Some(c), false) = (curve.as_ref(), out.is_null()) else {
            return fail(CpStatus::NullPointer, "null argument");
        };
        let tol = SolverConfig::default().tolerance;
        let result = build_graph(&c.curve, m, tol).and_then(|g| shortest_cycle(&g));
        match result {
            Ok((path, _)) => put_path(path, 0, 0.0, out),
            Err(e) => fail(CpStatus::SolverFailed, e.to_string()),
        }
    })
}

/// # Safety
/// `path` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cp_path_free(path: *mut CpPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Euclidean length, or NaN for NULL.
///
/// # Safety
/// `path` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_path_length(path: *const CpPath) -> f64 {
    path.as_ref().map_or(f64::NAN, |p| p.path.length())
}

/// Loops the solver ran (0 for oracle cycles).
///
/// # Safety
/// `path` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_path_loops(path: *const CpPath) -> usize {
    path.as_ref().map_or(0, |p| p.loops)
}

/// Solver wall time in milliseconds.
///
/// # Safety
/// `path` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_path_time_ms(path: *const CpPath) -> f64 {
    path.as_ref().map_or(0.0, |p| p.time_ms)
}

/// # Safety
/// `path` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cp_path_vertex_count(path: *const CpPath) -> usize {
    path.as_ref().map_or(0, |p| p.path.len())
}

/// Copies vertex coordinates into `xyz` (3 doubles per vertex).
/// `capacity` counts doubles; too small gives `CP_STATUS_BUFFER_TOO_SMALL`
/// and writes nothing.
///
/// # Safety
/// `path` must be a live handle; `xyz` must hold `capacity` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn cp_path_vertices(path: *const CpPath, xyz: *mut f64, capacity: usize) -> CpStatus {
    guard(|| {
        let (Some(p), false) = (path.as_ref(), xyz.is_null()) else {
            return fail(CpStatus::NullPointer, "null argument");
        };
        let need = 3 * p.path.len();
        if capacity < need {
            return fail(CpStatus::BufferTooSmall, format!("need {need} doubles, got {capacity}"));
        }
        let dst = std::slice::from_raw_parts_mut(xyz, need);
        for (chunk, v) in dst.chunks_exact_mut(3).zip(p.path.vertices()) {
            chunk.copy_from_slice(&[v.position.x, v.position.y, v.position.z]);
        }
        CpStatus::Ok
    })
}
