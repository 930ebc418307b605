//! C ABI for `equisplit`.
//!
//! Graphs and splittings live behind opaque handles that the caller frees
//! with [`eqs_graph_free`] and [`eqs_split_free`]. Every fallible function
//! returns an [`EqsStatus`]; on anything but `EQS_STATUS_OK` the message is
//! available from [`eqs_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use equisplit::check::check_split;
use equisplit::generators::{generate, FamilySpec};
use equisplit::graph::parse_edge_list;
use equisplit::oracle::{exact_f, is_splittable_dp, min_deletion_split_with, MinDeletionOptions, SplitResult};
use equisplit::splitter::{split, SplitParams};
use equisplit::{Error, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqsStatus {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    SizeLimit = 3,
    /// The question has no answer: not splittable, or not within budget.
    NotFound = 4,
    SolverFailure = 5,
    NullPointer = 6,
    Panic = 7,
    /// A splitting failed the independent check.
    CheckFailed = 8,
}

/// Which vertex list of a splitting to copy out.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqsSide {
    A = 0,
    B = 1,
    Deleted = 2,
}

/// An undirected simple graph.
pub struct EqsGraph(Graph);

/// Two disjoint equal-size vertex sets inducing equally many edges.
pub struct EqsSplit(SplitResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

fn fail(status: EqsStatus, message: impl Into<String>) -> EqsStatus {
    set_error(message.into());
    status
}

fn status_of(error: Error) -> EqsStatus {
    let status = match &error {
        Error::InvalidArgument(_) | Error::Io(_) => EqsStatus::InvalidArgument,
        Error::Parse { .. } => EqsStatus::ParseError,
        Error::SizeLimit(_) => EqsStatus::SizeLimit,
        Error::SolverFailure { .. } | Error::Consistency(_) => EqsStatus::SolverFailure,
    };
    fail(status, error.to_string())
}

/// Runs `body`, turning panics into `EQS_STATUS_PANIC`.
fn guard(body: impl FnOnce() -> EqsStatus) -> EqsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == EqsStatus::Ok {
                set_error(String::new());
            }
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(EqsStatus::Panic, message)
        }
    }
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, EqsStatus> {
    if s.is_null() {
        return Err(fail(EqsStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(EqsStatus::InvalidArgument, "string argument is not UTF-8"))
}

unsafe fn graph<'a>(g: *const EqsGraph) -> Result<&'a Graph, EqsStatus> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| fail(EqsStatus::NullPointer, "graph handle is null"))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> EqsStatus {
    *out = Box::into_raw(Box::new(value));
    EqsStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! need_out {
    ($out:expr) => {
        if $out.is_null() {
            return fail(EqsStatus::NullPointer, "output pointer is null");
        }
        *$out = ptr::null_mut();
    };
}

/// Message for the last failing call on this thread, or the empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn eqs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn eqs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or may be null
/// when `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut EqsGraph,
) -> EqsStatus {
    guard(|| {
        need_out!(out);
        if edges.is_null() && edge_count > 0 {
            return fail(EqsStatus::NullPointer, "edge array is null");
        }
        let flat: &[usize] = if edge_count == 0 { &[] } else { std::slice::from_raw_parts(edges, 2 * edge_count) };
        match Graph::new(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))) {
            Ok(g) => emit(out, EqsGraph(g)),
            Err(e) => status_of(e),
        }
    })
}

/// Parses an edge list: `n m` on the first line, then `m` lines `u v`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_graph_parse(text: *const c_char, out: *mut *mut EqsGraph) -> EqsStatus {
    guard(|| {
        need_out!(out);
        let s = tri!(utf8(text));
        match parse_edge_list(s) {
            Ok(g) => emit(out, EqsGraph(g)),
            Err(e) => status_of(e),
        }
    })
}

/// Generates a graph from a family spec such as `gnp:n=100,p=0.5,seed=7`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_graph_generate(spec: *const c_char, out: *mut *mut EqsGraph) -> EqsStatus {
    guard(|| {
        need_out!(out);
        let s = tri!(utf8(spec));
        match s.parse::<FamilySpec>().and_then(|spec| generate(&spec)) {
            Ok(g) => emit(out, EqsGraph(g)),
            Err(e) => status_of(e),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqs_graph_free(g: *mut EqsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqs_graph_vertex_count(g: *const EqsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqs_graph_edge_count(g: *const EqsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// A largest splitting of the whole graph, by enumeration (`n ≤ 14`).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_exact_split(g: *const EqsGraph, out: *mut *mut EqsSplit) -> EqsStatus {
    guard(|| {
        need_out!(out);
        match exact_f(tri!(graph(g))) {
            Ok(r) => emit(out, EqsSplit(r)),
            Err(e) => status_of(e),
        }
    })
}

/// Splits the whole vertex set into two halves with equal edge counts, or
/// returns `EQS_STATUS_NOT_FOUND` when no such halving exists.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_dp_split(g: *const EqsGraph, out: *mut *mut EqsSplit) -> EqsStatus {
    guard(|| {
        need_out!(out);
        match is_splittable_dp(tri!(graph(g))) {
            Ok(verdict) => match verdict.witness() {
                Some(w) => emit(out, EqsSplit(w.clone())),
                None => fail(EqsStatus::NotFound, "the graph has no splitting"),
            },
            Err(e) => status_of(e),
        }
    })
}

/// Fewest deletions, at most `budget`, leaving a splittable graph.
/// Exhaustive up to 14 vertices, sampled above with `seed`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_min_deletion_split(
    g: *const EqsGraph,
    budget: usize,
    seed: u64,
    out: *mut *mut EqsSplit,
) -> EqsStatus {
    guard(|| {
        need_out!(out);
        let opts = MinDeletionOptions { seed, ..Default::default() };
        match min_deletion_split_with(tri!(graph(g)), budget, opts) {
            Ok(Some(r)) => emit(out, EqsSplit(r)),
            Ok(None) => fail(EqsStatus::NotFound, format!("no splitting within {budget} deletions")),
            Err(e) => status_of(e),
        }
    })
}

/// The randomized splitter with deletion budget `⌊2εn⌋` and default
/// parameters otherwise.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_randomized_split(
    g: *const EqsGraph,
    epsilon: f64,
    seed: u64,
    out: *mut *mut EqsSplit,
) -> EqsStatus {
    guard(|| {
        need_out!(out);
        let g = tri!(graph(g));
        match SplitParams::new(epsilon).and_then(|p| split(g, &p.with_seed(seed))) {
            Ok(r) => emit(out, EqsSplit(r)),
            Err(e) => status_of(e),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqs_split_free(s: *mut EqsSplit) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Size of each side, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqs_split_k(s: *const EqsSplit) -> usize {
    s.as_ref().map_or(0, |s| s.0.k)
}

/// Edges induced by each side, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqs_split_edges_each(s: *const EqsSplit) -> usize {
    s.as_ref().map_or(0, |s| s.0.edges_each)
}

/// Number of vertices in neither side, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqs_split_deleted_count(s: *const EqsSplit) -> usize {
    s.as_ref().map_or(0, |s| s.0.deleted.len())
}

/// Copies one vertex list, sorted, into `buf`. `*len` receives the list
/// length; when it exceeds `capacity` nothing is copied and
/// `EQS_STATUS_INVALID_ARGUMENT` is returned.
///
/// # Safety
/// `s` must be a live handle, `buf` writable for `capacity` values (or null
/// when `capacity` is 0) and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn eqs_split_vertices(
    s: *const EqsSplit,
    side: EqsSide,
    buf: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> EqsStatus {
    guard(|| {
        let Some(s) = s.as_ref() else {
            return fail(EqsStatus::NullPointer, "split handle is null");
        };
        if len.is_null() {
            return fail(EqsStatus::NullPointer, "length pointer is null");
        }
        let list = match side {
            EqsSide::A => s.0.a.members(),
            EqsSide::B => s.0.b.members(),
            EqsSide::Deleted => s.0.deleted.members(),
        };
        *len = list.len();
        if list.len() > capacity {
            return fail(EqsStatus::InvalidArgument, format!("buffer holds {capacity}, need {}", list.len()));
        }
        if !list.is_empty() {
            if buf.is_null() {
                return fail(EqsStatus::NullPointer, "buffer is null");
            }
            ptr::copy_nonoverlapping(list.as_ptr(), buf, list.len());
        }
        EqsStatus::Ok
    })
}

/// Recounts a splitting against a graph.
///
/// # Safety
/// `g` and `s` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn eqs_split_check(g: *const EqsGraph, s: *const EqsSplit) -> EqsStatus {
    guard(|| {
        let g = tri!(graph(g));
        let Some(s) = s.as_ref() else {
            return fail(EqsStatus::NullPointer, "split handle is null");
        };
        match check_split(g, &s.0) {
            Ok(()) => EqsStatus::Ok,
            Err(e) => fail(EqsStatus::CheckFailed, e),
        }
    })
}
