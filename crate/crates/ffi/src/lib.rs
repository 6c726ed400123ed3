//! C ABI for the crossing-critical toolkit.
//!
//! Objects are opaque handles owned by the caller and released with the
//! matching `*_free` function. Every fallible call returns a [`CcgStatus`];
//! the message of the last failure on the calling thread is available from
//! [`ccg_last_error`]. Strings returned through out-parameters must be
//! released with [`ccg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crossing_critical::canon::{canonical_code, from_hex, graph_from_code, to_hex};
use crossing_critical::crossing::{crossing_number, is_crossing_critical_with_budget, CrossingResult, Verdict};
use crossing_critical::enumerate::{census_bruteforce, enumerate_critical, Catalog, Template};
use crossing_critical::format::{parse_graph, write_graph};
use crossing_critical::{Error, Multigraph};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Argument = 4,
    Structure = 5,
    Precondition = 6,
    NotRealizable = 7,
    Scale = 8,
    /// The search budget ran out before an answer was reached.
    Inconclusive = 9,
    OutOfRange = 10,
    Panic = 11,
}

/// Criticality answer.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcgVerdict {
    Critical = 0,
    NotCritical = 1,
    Inconclusive = 2,
}

/// Opaque multigraph handle.
pub struct CcgGraph(Multigraph);

/// Opaque catalog handle.
pub struct CcgCatalog(Catalog);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CcgStatus {
    match e {
        Error::Structure(_) => CcgStatus::Structure,
        Error::Argument(_) | Error::NotAssociative { .. } => CcgStatus::Argument,
        Error::Parse { .. } => CcgStatus::Parse,
        Error::Scale(_) => CcgStatus::Scale,
        Error::Precondition(_) => CcgStatus::Precondition,
        Error::NotRealizable(_) => CcgStatus::NotRealizable,
        Error::Inconclusive(_) => CcgStatus::Inconclusive,
    }
}

fn fail(status: CcgStatus, msg: &str) -> CcgStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> Result<(), CcgStatus>) -> CcgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(CcgStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: crossing_critical::Result<T>) -> Result<T, CcgStatus> {
    r.map_err(|e| fail(status_of(&e), &e.to_string()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, CcgStatus> {
    p.as_ref().ok_or_else(|| fail(CcgStatus::NullPointer, "null pointer argument"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, CcgStatus> {
    if p.is_null() {
        return Err(fail(CcgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(CcgStatus::InvalidUtf8, "string is not valid UTF-8"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), CcgStatus> {
    if out.is_null() {
        return Err(fail(CcgStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

fn budget_of(b: i64) -> Option<usize> {
    usize::try_from(b).ok()
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ccg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library.
#[no_mangle]
pub unsafe extern "C" fn ccg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates an edgeless graph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_new(n: usize, out: *mut *mut CcgGraph) -> CcgStatus {
    guard(|| put(out, Box::into_raw(Box::new(CcgGraph(Multigraph::new(n))))))
}

/// Parses one graph record in the text format. Rotation and crossing
/// sections are ignored.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_parse(src: *const c_char, out: *mut *mut CcgGraph) -> CcgStatus {
    guard(|| {
        let rec = lift(parse_graph(text(src)?))?;
        put(out, Box::into_raw(Box::new(CcgGraph(rec.graph))))
    })
}

/// Builds the graph with the given canonical code (hex).
///
/// # Safety
/// `hex` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_from_code(hex: *const c_char, out: *mut *mut CcgGraph) -> CcgStatus {
    guard(|| {
        let code = from_hex(text(hex)?).ok_or_else(|| fail(CcgStatus::Parse, "not a hex string"))?;
        let g = graph_from_code(&code).ok_or_else(|| fail(CcgStatus::Parse, "not a graph code"))?;
        put(out, Box::into_raw(Box::new(CcgGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_free(g: *mut CcgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Adds an edge between existing vertices. Parallel edges are allowed.
///
/// # Safety
/// `g` must be a valid handle; `edge_out` may be null.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_add_edge(g: *mut CcgGraph, u: usize, v: usize, edge_out: *mut usize) -> CcgStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| fail(CcgStatus::NullPointer, "null graph"))?;
        let e = lift(g.0.add_edge(u, v))?;
        if !edge_out.is_null() {
            edge_out.write(e);
        }
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_vertex_count(g: *const CcgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_edge_count(g: *const CcgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Endpoints of edge `e`.
///
/// # Safety
/// `g` must be a valid handle; `u` and `v` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_endpoints(g: *const CcgGraph, e: usize, u: *mut usize, v: *mut usize) -> CcgStatus {
    guard(|| {
        let g = get(g)?;
        if e >= g.0.m() {
            return Err(fail(CcgStatus::OutOfRange, "edge id out of range"));
        }
        let (a, b) = g.0.endpoints(e);
        put(u, a)?;
        put(v, b)
    })
}

/// Serializes the graph in the text format.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_graph_write(g: *const CcgGraph, out: *mut *mut c_char) -> CcgStatus {
    guard(|| {
        let s = write_graph(&get(g)?.0);
        put(out, owned_string(s))
    })
}

/// Isomorphism-invariant code of the graph as a hex string.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_canonical_code(g: *const CcgGraph, out: *mut *mut c_char) -> CcgStatus {
    guard(|| put(out, owned_string(to_hex(&canonical_code(&get(g)?.0)))))
}

/// Exact crossing number. A negative `budget` searches without limit;
/// otherwise the call returns `Inconclusive` once every drawing is known to
/// need more than `budget` crossings, with `budget + 1` stored in `cr_out`.
///
/// # Safety
/// `g` must be a valid handle and `cr_out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_crossing_number(g: *const CcgGraph, budget: i64, cr_out: *mut usize) -> CcgStatus {
    guard(|| match crossing_number(&get(g)?.0, budget_of(budget)) {
        CrossingResult::Exact { cr, .. } => put(cr_out, cr),
        CrossingResult::UnknownAboveBudget { budget } => {
            put(cr_out, budget + 1)?;
            Err(fail(CcgStatus::Inconclusive, &format!("crossing number exceeds {budget}")))
        }
    })
}

/// Decides whether the graph is `c`-crossing-critical. A negative `budget`
/// searches without limit. For a verdict other than critical,
/// [`ccg_last_error`] holds the reason.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_is_critical(g: *const CcgGraph, c: usize, budget: i64, out: *mut CcgVerdict) -> CcgStatus {
    guard(|| {
        let rep = lift(is_crossing_critical_with_budget(&get(g)?.0, c, budget_of(budget)))?;
        let v = match rep.verdict {
            Verdict::Critical => CcgVerdict::Critical,
            Verdict::NotCritical(why) => {
                set_error(&why);
                CcgVerdict::NotCritical
            }
            Verdict::Inconclusive(why) => {
                set_error(&why);
                CcgVerdict::Inconclusive
            }
        };
        put(out, v)
    })
}

/// Complete list of `c`-crossing-critical graphs (with multiplicities) of
/// minimum degree 3 on at most `max_n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_census(c: usize, max_n: usize, out: *mut *mut CcgCatalog) -> CcgStatus {
    guard(|| {
        let cat = lift(census_bruteforce(c, max_n))?;
        put(out, Box::into_raw(Box::new(CcgCatalog(cat))))
    })
}

/// Grows critical graphs from the seeds by subdivision, parallel-path and
/// band-duplication moves, keeping graphs with at most `max_n` vertices.
///
/// # Safety
/// `seeds` must point to `n_seeds` valid handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ccg_enumerate_critical(
    c: usize,
    max_n: usize,
    seeds: *const *const CcgGraph,
    n_seeds: usize,
    out: *mut *mut CcgCatalog,
) -> CcgStatus {
    guard(|| {
        if seeds.is_null() && n_seeds > 0 {
            return Err(fail(CcgStatus::NullPointer, "null seed array"));
        }
        let mut gs = Vec::with_capacity(n_seeds);
        for i in 0..n_seeds {
            gs.push(get(*seeds.add(i))?.0.clone());
        }
        let cat = lift(enumerate_critical(c, max_n, &gs, &Template::all()))?;
        put(out, Box::into_raw(Box::new(CcgCatalog(cat))))
    })
}

/// # Safety
/// `cat` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccg_catalog_free(cat: *mut CcgCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Number of entries, or 0 for a null handle.
///
/// # Safety
/// `cat` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ccg_catalog_len(cat: *const CcgCatalog) -> usize {
    cat.as_ref().map_or(0, |c| c.0.len())
}

/// Copies entry `i` out as a new graph handle.
///
/// # Safety
/// `cat` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_catalog_graph(cat: *const CcgCatalog, i: usize, out: *mut *mut CcgGraph) -> CcgStatus {
    guard(|| {
        let e = get(cat)?.0.entries.get(i).ok_or_else(|| fail(CcgStatus::OutOfRange, "entry index out of range"))?;
        put(out, Box::into_raw(Box::new(CcgGraph(e.graph.clone()))))
    })
}

/// Serializes the catalog in its text format.
///
/// # Safety
/// `cat` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ccg_catalog_write(cat: *const CcgCatalog, out: *mut *mut c_char) -> CcgStatus {
    guard(|| put(out, owned_string(get(cat)?.0.write())))
}
