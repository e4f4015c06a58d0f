//! C ABI over the endgraph library.
//!
//! Conventions: objects cross the boundary as opaque handles freed by their
//! matching `_free` function; strings returned through `char **` out-params
//! are NUL-terminated, owned by the caller, and freed with
//! [`eg_string_free`]; every fallible call returns an [`EgStatus`], and on
//! failure a thread-local message is readable through
//! [`eg_last_error_message`] until the next failing call on that thread.
//! Panics never unwind across the boundary; they surface as
//! `EG_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use endgraph::ball::{Ball, Radius};
use endgraph::ends::rank_lower_bound;
use endgraph::error::Error;
use endgraph::genericity::{run_experiment, ExperimentParams};
use endgraph::metric::{distance, DyadicDistance};
use endgraph::oracle::GraphInput;
use endgraph::phe::{phe_equivalent, StandardGraphDescriptor};
use endgraph::specfile::resolve_graph_spec;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EgStatus {
    Ok = 0,
    /// A required pointer was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Unknown name or out-of-range parameter.
    Argument = 3,
    /// Malformed input text.
    Parse = 4,
    /// The operation is not defined on this input.
    Domain = 5,
    /// The operating system reported an I/O failure.
    Io = 6,
    /// An internal invariant failed; the library state is still sound.
    Panic = 7,
}

/// A rooted graph (finite edge list or procedural infinite graph).
pub struct EgGraph(GraphInput);

/// An extracted ball around the root.
pub struct EgBall(Ball);

/// Which kind of answer a distance scan produced.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EgDistanceKind {
    /// Certified equal: distance zero.
    Zero = 0,
    /// Distance is exactly `2^(-half_exponent/2)`.
    Exact = 1,
    /// Budget exhausted: distance is at most `2^(-half_exponent/2)`.
    UpperBound = 2,
}

/// Distance scan outcome. `half_exponent` is meaningless for `ZERO`.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct EgDistance {
    pub kind: EgDistanceKind,
    pub half_exponent: u32,
    /// Decimal value of the reported power of two (0 for `ZERO`).
    pub approx: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', "?");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(clean).expect("NULs replaced");
    });
}

fn status_of(e: &Error) -> EgStatus {
    match e.category() {
        "parse" => EgStatus::Parse,
        "argument" => EgStatus::Argument,
        "io" => EgStatus::Io,
        _ => EgStatus::Domain,
    }
}

fn fail(e: Error) -> EgStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn guard(f: impl FnOnce() -> EgStatus) -> EgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            EgStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be NULL or point to a NUL-terminated string.
unsafe fn arg_str<'a>(p: *const c_char) -> Result<&'a str, EgStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(EgStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        EgStatus::Utf8
    })
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, EgStatus> {
    if p.is_null() {
        set_error("null out-parameter");
        return Err(EgStatus::NullArgument);
    }
    Ok(&mut *p)
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, EgStatus> {
    if p.is_null() {
        set_error("null handle");
        return Err(EgStatus::NullArgument);
    }
    Ok(&*p)
}

fn give_string(s: String, out: &mut *mut c_char) -> EgStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            EgStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL");
            EgStatus::Panic
        }
    }
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread. Never NULL.
#[no_mangle]
pub extern "C" fn eg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned through a `char **` out-parameter. NULL is a
/// no-op.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn eg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Opens a graph from a spec string: a builtin name (`tree3`, `loch_ness`,
/// ...), a construction such as `cubic(full)` or `regular5(cylinders 00 1)`,
/// or a path to a graph or pants file.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_open(spec: *const c_char, out: *mut *mut EgGraph) -> EgStatus {
    guard(|| {
        let (spec, out) = match (arg_str(spec), out_ptr(out)) {
            (Ok(s), Ok(o)) => (s, o),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        match resolve_graph_spec(spec) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(EgGraph(g)));
                EgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a graph handle. NULL is a no-op.
///
/// # Safety
/// `g` must have come from [`eg_graph_open`] and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_free(g: *mut EgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Human-readable label of the graph (builtin name, construction, or file
/// graph name).
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_label(g: *const EgGraph, out: *mut *mut c_char) -> EgStatus {
    guard(|| {
        let (g, out) = match (handle(g), out_ptr(out)) {
            (Ok(g), Ok(o)) => (g, o),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        give_string(g.0.label(), out)
    })
}

/// Canonical standard-form descriptor of the graph, or sets `*out` to NULL
/// when the graph does not carry one.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_descriptor(g: *const EgGraph, out: *mut *mut c_char) -> EgStatus {
    guard(|| {
        let (g, out) = match (handle(g), out_ptr(out)) {
            (Ok(g), Ok(o)) => (g, o),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        match g.0.descriptor() {
            Some(d) => give_string(d.to_string(), out),
            None => {
                *out = std::ptr::null_mut();
                EgStatus::Ok
            }
        }
    })
}

/// Extracts the ball of radius `half_steps / 2` around the root.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_graph_ball(
    g: *const EgGraph,
    half_steps: u32,
    out: *mut *mut EgBall,
) -> EgStatus {
    guard(|| {
        let (g, out) = match (handle(g), out_ptr(out)) {
            (Ok(g), Ok(o)) => (g, o),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        match g.0.ball(Radius(half_steps)) {
            Ok(b) => {
                *out = Box::into_raw(Box::new(EgBall(b)));
                EgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Frees a ball handle. NULL is a no-op.
///
/// # Safety
/// `b` must have come from [`eg_graph_ball`] and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn eg_ball_free(b: *mut EgBall) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of vertices in the ball; 0 for a NULL handle.
///
/// # Safety
/// `b` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_ball_vertex_count(b: *const EgBall) -> u32 {
    b.as_ref().map_or(0, |b| b.0.vertex_count() as u32)
}

/// Number of full edges (loops included); 0 for a NULL handle.
///
/// # Safety
/// `b` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_ball_edge_count(b: *const EgBall) -> u32 {
    b.as_ref().map_or(0, |b| b.0.full_edge_count() as u32)
}

/// Number of dangling edge-ends; 0 for a NULL handle.
///
/// # Safety
/// `b` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_ball_stub_count(b: *const EgBall) -> u32 {
    b.as_ref().map_or(0, |b| b.0.stub_count() as u32)
}

/// First Betti number of the ball's full-edge subgraph; 0 for NULL.
///
/// # Safety
/// `b` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eg_ball_rank(b: *const EgBall) -> u32 {
    b.as_ref().map_or(0, |b| b.0.rank() as u32)
}

/// GraphViz rendering of the ball, stubs drawn as dangling half-edges.
///
/// # Safety
/// `b` must be a live handle; `name` a NUL-terminated string; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn eg_ball_to_dot(
    b: *const EgBall,
    name: *const c_char,
    out: *mut *mut c_char,
) -> EgStatus {
    guard(|| {
        let (b, name, out) = match (handle(b), arg_str(name), out_ptr(out)) {
            (Ok(b), Ok(n), Ok(o)) => (b, n, o),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return e,
        };
        give_string(b.0.to_dot(name), out)
    })
}

/// Ball-metric distance scan over radii `0, 1/2, ..., budget_half_steps/2`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_distance(
    a: *const EgGraph,
    b: *const EgGraph,
    budget_half_steps: u32,
    out: *mut EgDistance,
) -> EgStatus {
    guard(|| {
        let (a, b, out) = match (handle(a), handle(b), out_ptr(out)) {
            (Ok(a), Ok(b), Ok(o)) => (a, b, o),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return e,
        };
        match distance(&a.0, &b.0, budget_half_steps) {
            Ok(d) => {
                *out = match d {
                    DyadicDistance::Zero => EgDistance {
                        kind: EgDistanceKind::Zero,
                        half_exponent: 0,
                        approx: 0.0,
                    },
                    DyadicDistance::Exact { half_exponent } => EgDistance {
                        kind: EgDistanceKind::Exact,
                        half_exponent,
                        approx: d.approx(),
                    },
                    DyadicDistance::UpperBound { half_exponent } => EgDistance {
                        kind: EgDistanceKind::UpperBound,
                        half_exponent,
                        approx: d.approx(),
                    },
                };
                EgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Cycles certified inside the open ball of integer radius `radius`; a
/// monotone lower bound for the graph's first Betti number.
///
/// # Safety
/// `g` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_rank_lower_bound(
    g: *const EgGraph,
    radius: u32,
    out: *mut u32,
) -> EgStatus {
    guard(|| {
        let (g, out) = match (handle(g), out_ptr(out)) {
            (Ok(g), Ok(o)) => (g, o),
            (Err(e), _) | (_, Err(e)) => return e,
        };
        match rank_lower_bound(&g.0, radius) {
            Ok(r) => {
                *out = r;
                EgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Whether two standard-form descriptor strings (e.g.
/// `"rank=inf ends=1 loops=1"`) denote properly homotopy equivalent
/// graphs.
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn eg_descriptors_equivalent(
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> EgStatus {
    guard(|| {
        let (a, b, out) = match (arg_str(a), arg_str(b), out_ptr(out)) {
            (Ok(a), Ok(b), Ok(o)) => (a, b, o),
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return e,
        };
        let da = match StandardGraphDescriptor::from_str(a) {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        let db = match StandardGraphDescriptor::from_str(b) {
            Ok(d) => d,
            Err(e) => return fail(e),
        };
        *out = phe_equivalent(&da, &db);
        EgStatus::Ok
    })
}

/// Runs the configuration-model experiment and returns its CSV report
/// (identical to the CLI `generic` output for the same parameters).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eg_experiment_csv(
    degree: u32,
    vertices: u32,
    trials: u32,
    seed: u64,
    depth: u32,
    ball_radius: u32,
    out: *mut *mut c_char,
) -> EgStatus {
    guard(|| {
        let out = match out_ptr(out) {
            Ok(o) => o,
            Err(e) => return e,
        };
        let params = ExperimentParams {
            degree,
            vertices,
            trials,
            seed,
            depth,
            ball_radius,
        };
        match run_experiment(&params) {
            Ok(report) => give_string(report.to_csv(), out),
            Err(e) => fail(e),
        }
    })
}
