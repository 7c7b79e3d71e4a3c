//! C ABI for the spectral-rank library.
//!
//! Conventions:
//! - Graphs are opaque [`SrGraph`] handles created by `sr_graph_parse` /
//!   `sr_graph_parse_file` and released with `sr_graph_free`.
//! - Every fallible call returns an [`SrStatus`]; on failure
//!   `sr_last_error` yields a thread-local UTF-8 message valid until the
//!   next failing call on the same thread.
//! - Score outputs are caller-allocated `double` buffers of length
//!   `sr_graph_node_count(g)`.
//! - Panics never cross the boundary; they are reported as
//!   `SR_STATUS_INTERNAL_ERROR`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spectral_rank::pagerank::{pagerank, PageRankConfig};
use spectral_rank::sim::{simulate, SimConfig};
use spectral_rank::sociometry::{hubbell, katz, seeley, KatzConfig};
use spectral_rank::solver::SolverConfig;
use spectral_rank::{Error, Normalization, ScoreVector, SparseGraph};

/// Status codes returned by every fallible function.
#[allow(non_camel_case_types)]
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SrStatus {
    SR_STATUS_OK = 0,
    /// Malformed input text (bad TSV line, bad number).
    SR_STATUS_PARSE_ERROR = 1,
    /// Structurally invalid request (bad parameter, size mismatch).
    SR_STATUS_INVALID_INPUT = 2,
    /// The method's numerical preconditions failed or iteration diverged.
    SR_STATUS_NUMERICAL_ERROR = 3,
    /// A required pointer argument was null.
    SR_STATUS_NULL_POINTER = 4,
    /// An internal invariant was violated.
    SR_STATUS_INTERNAL_ERROR = 5,
}

use SrStatus::*;

/// Opaque graph handle. Owns the parsed graph and C copies of its labels.
pub struct SrGraph {
    graph: SparseGraph,
    labels: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> SrStatus {
    match err {
        Error::Parse { .. } => SR_STATUS_PARSE_ERROR,
        Error::InvalidInput(_) => SR_STATUS_INVALID_INPUT,
        Error::Numerical(_) => SR_STATUS_NUMERICAL_ERROR,
    }
}

fn fail(err: &Error) -> SrStatus {
    set_error(&err.to_string());
    status_of(err)
}

/// Runs `body` with panics converted to `SR_STATUS_INTERNAL_ERROR`.
fn guarded(body: impl FnOnce() -> SrStatus) -> SrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            SR_STATUS_INTERNAL_ERROR
        }
    }
}

fn solver(tolerance: f64, max_iterations: usize) -> SolverConfig {
    SolverConfig {
        tolerance,
        max_iterations,
        ..Default::default()
    }
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call from the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn make_graph(
    graph: Result<SparseGraph, Error>,
    out: *mut *mut SrGraph,
) -> SrStatus {
    match graph {
        Ok(graph) => {
            let labels = graph
                .labels()
                .iter()
                .map(|l| CString::new(l.as_str()).unwrap_or_default())
                .collect();
            *out = Box::into_raw(Box::new(SrGraph { graph, labels }));
            SR_STATUS_OK
        }
        Err(e) => fail(&e),
    }
}

/// Parses a TSV edge list (`src<TAB>dst[<TAB>weight]`, `#` comments,
/// single-field lines declare isolated nodes) into a new graph handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_parse(
    text: *const c_char,
    out: *mut *mut SrGraph,
) -> SrStatus {
    if text.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SR_STATUS_NULL_POINTER;
    }
    guarded(|| {
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("input text is not valid UTF-8");
            return SR_STATUS_INVALID_INPUT;
        };
        make_graph(SparseGraph::parse_tsv(text), out)
    })
}

/// Parses an edge-list file; same format as [`sr_graph_parse`].
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_parse_file(
    path: *const c_char,
    out: *mut *mut SrGraph,
) -> SrStatus {
    if path.is_null() || out.is_null() {
        set_error("null pointer argument");
        return SR_STATUS_NULL_POINTER;
    }
    guarded(|| {
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            set_error("path is not valid UTF-8");
            return SR_STATUS_INVALID_INPUT;
        };
        make_graph(
            SparseGraph::parse_tsv_path(std::path::Path::new(path)),
            out,
        )
    })
}

/// Releases a graph handle. Passing null is a no-op.
///
/// # Safety
/// `g` must be null or a pointer previously returned through
/// [`sr_graph_parse`] / [`sr_graph_parse_file`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_free(g: *mut SrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of nodes; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_node_count(g: *const SrGraph) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).graph.n()
    }
}

/// Number of (merged) edges; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_edge_count(g: *const SrGraph) -> usize {
    if g.is_null() {
        0
    } else {
        (*g).graph.edge_count()
    }
}

/// Label of node `i`, or null when out of range. The pointer lives as long
/// as the graph handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn sr_graph_label(g: *const SrGraph, i: usize) -> *const c_char {
    if g.is_null() {
        return std::ptr::null();
    }
    match (&(*g).labels).get(i) {
        Some(l) => l.as_ptr(),
        None => std::ptr::null(),
    }
}

unsafe fn check_graph_and_out<'a>(
    g: *const SrGraph,
    out: *mut f64,
) -> Result<(&'a SrGraph, &'a mut [f64]), SrStatus> {
    if g.is_null() || out.is_null() {
        set_error("null pointer argument");
        return Err(SR_STATUS_NULL_POINTER);
    }
    let gr = &*g;
    Ok((gr, std::slice::from_raw_parts_mut(out, gr.graph.n())))
}

fn write_scores(out: &mut [f64], scores: &ScoreVector) {
    out.copy_from_slice(&scores.values);
}

/// PageRank scores (sum-to-one, indexed by node) into `scores`.
///
/// # Safety
/// `g` must be a live graph handle; `scores` must point to
/// `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_pagerank(
    g: *const SrGraph,
    alpha: f64,
    tolerance: f64,
    max_iterations: usize,
    scores: *mut f64,
) -> SrStatus {
    let (gr, out) = match check_graph_and_out(g, scores) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| {
        let cfg = PageRankConfig {
            alpha: Some(alpha),
            solver: solver(tolerance, max_iterations),
            ..Default::default()
        };
        match pagerank(&gr.graph, &cfg) {
            Ok((pi, _)) => {
                write_scores(out, &pi);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// HITS authority and hub scores (both max-component normalized).
///
/// # Safety
/// `g` must be a live graph handle; `authority` and `hub` must each point
/// to `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_hits(
    g: *const SrGraph,
    tolerance: f64,
    max_iterations: usize,
    authority: *mut f64,
    hub: *mut f64,
) -> SrStatus {
    let (gr, auth_out) = match check_graph_and_out(g, authority) {
        Ok(v) => v,
        Err(s) => return s,
    };
    let (_, hub_out) = match check_graph_and_out(g, hub) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| {
        match spectral_rank::hits::hits(&gr.graph, &solver(tolerance, max_iterations)) {
            Ok(r) => {
                write_scores(auth_out, &r.authority);
                write_scores(hub_out, &r.hub);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Influence per reference (sum-to-one) and total influence.
///
/// # Safety
/// `g` must be a live graph handle; `per_reference` and `total` must each
/// point to `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_influence(
    g: *const SrGraph,
    tolerance: f64,
    max_iterations: usize,
    per_reference: *mut f64,
    total: *mut f64,
) -> SrStatus {
    let (gr, per_out) = match check_graph_and_out(g, per_reference) {
        Ok(v) => v,
        Err(s) => return s,
    };
    let (_, total_out) = match check_graph_and_out(g, total) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| {
        match spectral_rank::influence::influence_scores(
            &gr.graph,
            &solver(tolerance, max_iterations),
        ) {
            Ok(r) => {
                write_scores(per_out, &r.per_reference);
                write_scores(total_out, &r.total);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Closed-model equilibrium prices (sum-to-one).
///
/// # Safety
/// `g` must be a live graph handle; `prices` must point to
/// `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_leontief_closed(
    g: *const SrGraph,
    tolerance: f64,
    max_iterations: usize,
    prices: *mut f64,
) -> SrStatus {
    let (gr, out) = match check_graph_and_out(g, prices) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| {
        match spectral_rank::influence::leontief_closed(
            &gr.graph,
            &solver(tolerance, max_iterations),
        ) {
            Ok(r) => {
                write_scores(out, &r.prices);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Seeley popularity scores (sum-to-one). Every node must have at least
/// one outgoing edge.
///
/// # Safety
/// `g` must be a live graph handle; `scores` must point to
/// `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_seeley(
    g: *const SrGraph,
    tolerance: f64,
    max_iterations: usize,
    scores: *mut f64,
) -> SrStatus {
    let (gr, out) = match check_graph_and_out(g, scores) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| match seeley(&gr.graph, &solver(tolerance, max_iterations)) {
        Ok(pi) => {
            write_scores(out, &pi);
            SR_STATUS_OK
        }
        Err(e) => fail(&e),
    })
}

/// Katz attenuated path counts. Requires `attenuation < 1 / rho(L)`.
///
/// # Safety
/// `g` must be a live graph handle; `scores` must point to
/// `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_katz(
    g: *const SrGraph,
    attenuation: f64,
    tolerance: f64,
    max_iterations: usize,
    scores: *mut f64,
) -> SrStatus {
    let (gr, out) = match check_graph_and_out(g, scores) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| {
        let cfg = KatzConfig {
            attenuation,
            solver: solver(tolerance, max_iterations),
        };
        match katz(&gr.graph, &cfg) {
            Ok(pi) => {
                write_scores(out, &pi);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Hubbell status: the fixed point of `pi = v + pi W` for exogenous input
/// `v` (length `sr_graph_node_count(g)`).
///
/// # Safety
/// `g` must be a live graph handle; `exogenous` and `scores` must each
/// point to `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_hubbell(
    g: *const SrGraph,
    exogenous: *const f64,
    tolerance: f64,
    max_iterations: usize,
    scores: *mut f64,
) -> SrStatus {
    let (gr, out) = match check_graph_and_out(g, scores) {
        Ok(v) => v,
        Err(s) => return s,
    };
    if exogenous.is_null() {
        set_error("null pointer argument");
        return SR_STATUS_NULL_POINTER;
    }
    let v = std::slice::from_raw_parts(exogenous, gr.graph.n());
    guarded(|| {
        let v = ScoreVector::new(v.to_vec(), Normalization::None);
        match hubbell(&gr.graph, &v, &solver(tolerance, max_iterations)) {
            Ok(pi) => {
                write_scores(out, &pi);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// Monte-Carlo random-surfer visit frequencies (sum-to-one, ChaCha8-seeded
/// and reproducible for a fixed seed).
///
/// # Safety
/// `g` must be a live graph handle; `scores` must point to
/// `sr_graph_node_count(g)` doubles.
#[no_mangle]
pub unsafe extern "C" fn sr_simulate(
    g: *const SrGraph,
    steps: u64,
    alpha: f64,
    seed: u64,
    scores: *mut f64,
) -> SrStatus {
    let (gr, out) = match check_graph_and_out(g, scores) {
        Ok(v) => v,
        Err(s) => return s,
    };
    guarded(|| {
        let cfg = SimConfig {
            steps,
            alpha,
            seed,
            ..Default::default()
        };
        match simulate(&gr.graph, &cfg) {
            Ok(freq) => {
                write_scores(out, &freq);
                SR_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}
