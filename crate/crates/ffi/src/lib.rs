//! C ABI over `nkstar`. Graphs and search results are opaque handles owned
//! by the caller and released with the matching `_free` function. Every
//! fallible call returns an `NkStatus`; the message for the most recent
//! failure on the calling thread is available from `nk_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use nkstar::fault::{default_cut, in_theorem_domain};
use nkstar::{Budget, Error, SearchOptions, SearchResult, StarGraph, VertexSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkStatus {
    Ok = 0,
    /// Parameters outside the accepted domain.
    Domain = 1,
    /// (n,k,h) outside the range where the closed form applies.
    OutOfTheoremDomain = 2,
    /// Two internal computations disagreed.
    Inconsistent = 3,
    Parse = 4,
    Io = 5,
    NullPointer = 6,
    /// The search stopped on its budget before reaching a certified answer.
    BudgetExhausted = 7,
    /// The search finished and no h-cut exists.
    NoneFound = 8,
    /// Output buffer too small; the required length was still reported.
    BufferTooSmall = 9,
    Panic = 10,
}

/// An (n,k)-star graph.
pub struct NkGraph {
    inner: StarGraph,
}

/// Outcome of an exact h-super connectivity search.
pub struct NkSearch {
    inner: SearchResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(err: Error) -> NkStatus {
    let status = match err {
        Error::Domain(_) => NkStatus::Domain,
        Error::OutOfTheoremDomain { .. } => NkStatus::OutOfTheoremDomain,
        Error::Inconsistent(_) => NkStatus::Inconsistent,
        Error::Parse(_) => NkStatus::Parse,
        Error::Io(_) => NkStatus::Io,
    };
    set_error(err.to_string());
    status
}

fn null(what: &str) -> NkStatus {
    set_error(format!("{what} is null"));
    NkStatus::NullPointer
}

fn guard(f: impl FnOnce() -> NkStatus) -> NkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside nkstar");
            NkStatus::Panic
        }
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Closed-form h-super connectivity, when (n,k,h) is in its range.
///
/// # Safety
/// `out` must be NULL or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn nk_theorem_value(n: usize, k: usize, h: usize, out: *mut usize) -> NkStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match nkstar::theorem_value(n, k, h) {
            Ok(v) => {
                *out = v;
                NkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds S(n,k). Release with `nk_graph_free`.
///
/// # Safety
/// `out` must be NULL or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_new(n: usize, k: usize, out: *mut *mut NkGraph) -> NkStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match StarGraph::build(n, k) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(NkGraph { inner: g }));
                NkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `g` must come from `nk_graph_new` and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_free(g: *mut NkGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_order(g: *const NkGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.order())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_size(g: *const NkGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.graph().size())
}

/// Degree of vertex `v`, 0 for a NULL handle or out-of-range vertex.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_degree(g: *const NkGraph, v: usize) -> usize {
    match g.as_ref() {
        Some(g) if v < g.inner.order() => g.inner.graph().degree(v),
        _ => 0,
    }
}

/// Writes up to `cap` neighbors of `v` into `buf` in increasing order and the
/// degree into `len`. Returns `BufferTooSmall` if `cap` is short.
///
/// # Safety
/// `g` must be a live graph handle; `buf` must hold `cap` elements.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_neighbors(
    g: *const NkGraph,
    v: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> NkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if len.is_null() {
            return null("len");
        }
        if v >= g.inner.order() {
            return fail(Error::Domain(format!("vertex {v} out of range")));
        }
        let mut ns: Vec<usize> = g.inner.graph().neighbors(v).collect();
        ns.sort_unstable();
        *len = ns.len();
        if ns.len() > cap {
            set_error(format!("buffer holds {cap}, need {}", ns.len()));
            return NkStatus::BufferTooSmall;
        }
        if !ns.is_empty() {
            if buf.is_null() {
                return null("buf");
            }
            ptr::copy_nonoverlapping(ns.as_ptr(), buf, ns.len());
        }
        NkStatus::Ok
    })
}

fn write_str(text: &str, buf: *mut c_char, cap: usize, len: *mut usize) -> NkStatus {
    if len.is_null() {
        return null("len");
    }
    unsafe { *len = text.len() };
    if text.len() + 1 > cap {
        set_error(format!("buffer holds {cap}, need {}", text.len() + 1));
        return NkStatus::BufferTooSmall;
    }
    if buf.is_null() {
        return null("buf");
    }
    unsafe {
        ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
        *buf.add(text.len()) = 0;
    }
    NkStatus::Ok
}

/// Writes the label of `v` ("3,1,2") as a NUL-terminated string. `len`
/// receives the length without the terminator.
///
/// # Safety
/// `g` must be a live graph handle; `buf` must hold `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_vertex_label(
    g: *const NkGraph,
    v: usize,
    buf: *mut c_char,
    cap: usize,
    len: *mut usize,
) -> NkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if v >= g.inner.order() {
            return fail(Error::Domain(format!("vertex {v} out of range")));
        }
        write_str(&g.inner.label(v).to_string(), buf, cap, len)
    })
}

/// Vertex index of a label such as "3,1,2".
///
/// # Safety
/// `g` must be a live graph handle; `label` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nk_graph_vertex_index(g: *const NkGraph, label: *const c_char, out: *mut usize) -> NkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if label.is_null() {
            return null("label");
        }
        if out.is_null() {
            return null("out");
        }
        let Ok(text) = CStr::from_ptr(label).to_str() else {
            return fail(Error::Parse("label is not UTF-8".into()));
        };
        match g.inner.parse_vertex(text) {
            Ok(v) => {
                *out = v;
                NkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Sets `out` to 1 if removing the `len` vertices in `set` leaves a
/// disconnected graph of minimum degree at least `h`, else 0.
///
/// # Safety
/// `g` must be a live graph handle; `set` must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn nk_is_h_cut(
    g: *const NkGraph,
    set: *const usize,
    len: usize,
    h: usize,
    out: *mut i32,
) -> NkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out.is_null() {
            return null("out");
        }
        if len > 0 && set.is_null() {
            return null("set");
        }
        let order = g.inner.order();
        let items = if len == 0 { &[][..] } else { std::slice::from_raw_parts(set, len) };
        if let Some(&bad) = items.iter().find(|&&v| v >= order) {
            return fail(Error::Domain(format!("vertex {bad} out of range")));
        }
        let s = VertexSet::from_iter(order, items.iter().copied());
        match nkstar::is_h_cut(g.inner.graph(), &s, h) {
            Ok(verdict) => {
                *out = verdict.is_cut() as i32;
                NkStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Limits for `nk_kappa_super`. Zero means unlimited.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct NkBudget {
    pub max_seconds: f64,
    pub max_candidates: u64,
    /// Worker threads, 0 for all cores.
    pub workers: usize,
    /// Nonzero seeds the search with the clique construction when it applies.
    pub use_hint: i32,
}

/// Exact h-super connectivity of `g`. A search handle is stored in `out`
/// whenever the call gets as far as running the search, including the
/// `BudgetExhausted` and `NoneFound` outcomes.
///
/// # Safety
/// `g` must be a live graph handle; `budget` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn nk_kappa_super(
    g: *const NkGraph,
    h: usize,
    budget: *const NkBudget,
    out: *mut *mut NkSearch,
) -> NkStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null("graph") };
        if out.is_null() {
            return null("out");
        }
        *out = ptr::null_mut();
        let b = budget.as_ref().copied().unwrap_or_default();
        let opts = SearchOptions {
            budget: Budget {
                max_duration: (b.max_seconds > 0.0).then(|| Duration::from_secs_f64(b.max_seconds)),
                max_candidates: (b.max_candidates > 0).then_some(b.max_candidates),
            },
            workers: b.workers,
            lower_bound: 0,
        };
        let hint = if b.use_hint != 0 && in_theorem_domain(g.inner.n(), g.inner.k(), h) {
            match default_cut(&g.inner, h) {
                Ok(c) => Some(c),
                Err(e) => return fail(e),
            }
        } else {
            None
        };
        match nkstar::kappa_super_exact(g.inner.graph(), h, hint.as_ref(), &opts) {
            Ok(r) => {
                let status = if r.is_certified() {
                    NkStatus::Ok
                } else if r.budget_hit {
                    set_error(format!("budget exhausted; no h-cut below {}", r.exhaustive_below));
                    NkStatus::BudgetExhausted
                } else {
                    set_error(format!("no {h}-cut exists"));
                    NkStatus::NoneFound
                };
                *out = Box::into_raw(Box::new(NkSearch { inner: r }));
                status
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must come from `nk_kappa_super` and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn nk_search_free(s: *mut NkSearch) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Certified value, or -1 when the search did not certify one.
///
/// # Safety
/// `s` must be a live search handle.
#[no_mangle]
pub unsafe extern "C" fn nk_search_value(s: *const NkSearch) -> i64 {
    match s.as_ref() {
        Some(s) if s.inner.is_certified() => s.inner.value.map_or(-1, |v| v as i64),
        _ => -1,
    }
}

/// Every size below this was searched exhaustively without finding a cut.
///
/// # Safety
/// `s` must be a live search handle.
#[no_mangle]
pub unsafe extern "C" fn nk_search_exhaustive_below(s: *const NkSearch) -> usize {
    s.as_ref().map_or(0, |s| s.inner.exhaustive_below)
}

/// # Safety
/// `s` must be a live search handle.
#[no_mangle]
pub unsafe extern "C" fn nk_search_candidates(s: *const NkSearch) -> u64 {
    s.as_ref().map_or(0, |s| s.inner.candidates)
}

/// # Safety
/// `s` must be a live search handle.
#[no_mangle]
pub unsafe extern "C" fn nk_search_budget_hit(s: *const NkSearch) -> i32 {
    s.as_ref().is_some_and(|s| s.inner.budget_hit) as i32
}

/// Copies the certificate's cut into `buf` (sorted vertex indices).
/// `len` receives the cut size; 0 when there is no certificate.
///
/// # Safety
/// `s` must be a live search handle; `buf` must hold `cap` elements.
#[no_mangle]
pub unsafe extern "C" fn nk_search_cut(s: *const NkSearch, buf: *mut usize, cap: usize, len: *mut usize) -> NkStatus {
    guard(|| {
        let Some(s) = s.as_ref() else { return null("search") };
        if len.is_null() {
            return null("len");
        }
        let cut: &[usize] = s.inner.certificate.as_ref().map_or(&[], |c| &c.cut);
        *len = cut.len();
        if cut.len() > cap {
            set_error(format!("buffer holds {cap}, need {}", cut.len()));
            return NkStatus::BufferTooSmall;
        }
        if !cut.is_empty() {
            if buf.is_null() {
                return null("buf");
            }
            ptr::copy_nonoverlapping(cut.as_ptr(), buf, cut.len());
        }
        NkStatus::Ok
    })
}
