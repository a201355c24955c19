//! C ABI for the almostfree pipeline.
//!
//! Handles are opaque pointers owned by this library; every constructor has
//! a matching `_free`, strings returned through out-params are released
//! with [`af_string_free`]. Functions report [`AfStatus`]; on any non-OK
//! status a thread-local message with details is available through
//! [`af_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use almostfree::algebra::format::algebra_to_string;
use almostfree::borel::{
    action_to_string, assemble_action, borel_model, volume_kernel_check,
    verify_volume_differential,
};
use almostfree::certificate::{verify_morphism, Assignment};
use almostfree::graph::{parse_dimacs, Coloring, Graph};
use almostfree::oracle::{cohomology_dims, CohomologyConfig, OracleError};
use almostfree::reduction::{
    decide_almost_free, encode_original, encode_shifted, Method, ReductionError, Verdict,
};

/// Status codes shared by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AfStatus {
    Ok = 0,
    /// Input text failed to parse; see af_last_error_message.
    ParseError = 1,
    /// Arguments violate a precondition (k range, sizes, coverage).
    InvalidArgument = 2,
    /// A computation budget was exhausted or a basis refused.
    Budget = 3,
    /// A null pointer was passed where a value is required.
    NullPointer = 4,
    /// Text was not valid UTF-8.
    Utf8 = 5,
    /// Internal invariant failure.
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AfVerdict {
    AlmostFree = 0,
    NotAlmostFree = 1,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AfMethod {
    Groebner = 0,
    CertificateSearch = 1,
}

/// Opaque graph handle.
pub struct AfGraph {
    inner: Graph,
}

/// Opaque decision handle.
pub struct AfDecision {
    verdict: Verdict,
    witness: Option<Coloring>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

/// Message for the most recent non-OK status on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn af_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn af_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn guard<F: FnOnce() -> AfStatus>(f: F) -> AfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            AfStatus::Internal
        }
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, AfStatus> {
    if ptr.is_null() {
        set_error("null text pointer");
        return Err(AfStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("text is not valid UTF-8");
        AfStatus::Utf8
    })
}

fn reduction_status(e: &ReductionError) -> AfStatus {
    match e {
        ReductionError::Budget(_) => AfStatus::Budget,
        ReductionError::Inconsistent => AfStatus::Internal,
        _ => AfStatus::InvalidArgument,
    }
}

fn give_string(text: String, out: *mut *mut c_char) -> AfStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained interior NUL");
            return AfStatus::Internal;
        }
    };
    unsafe { *out = c.into_raw() };
    AfStatus::Ok
}

/// Parses DIMACS `.col` text into a graph handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn af_graph_parse_dimacs(
    text: *const c_char,
    out: *mut *mut AfGraph,
) -> AfStatus {
    guard(|| {
        if out.is_null() {
            set_error("null out pointer");
            return AfStatus::NullPointer;
        }
        let text = match read_utf8(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_dimacs(text) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(AfGraph { inner: graph }));
                AfStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                AfStatus::ParseError
            }
        }
    })
}

/// # Safety
/// `graph` must come from `af_graph_parse_dimacs` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn af_graph_free(graph: *mut AfGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_graph_vertex_count(graph: *const AfGraph) -> u32 {
    if graph.is_null() {
        return 0;
    }
    (*graph).inner.vertex_count()
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_graph_edge_count(graph: *const AfGraph) -> usize {
    if graph.is_null() {
        return 0;
    }
    (*graph).inner.edge_count()
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_graph_is_connected(graph: *const AfGraph) -> bool {
    if graph.is_null() {
        return false;
    }
    (*graph).inner.is_connected()
}

unsafe fn encode_common(
    graph: *const AfGraph,
    k: u32,
    out: *mut *mut c_char,
    f: impl Fn(&Graph, u32) -> Result<almostfree::algebra::SullivanAlgebra, ReductionError>,
) -> AfStatus {
    if graph.is_null() || out.is_null() {
        set_error("null pointer");
        return AfStatus::NullPointer;
    }
    match f(&(*graph).inner, k) {
        Ok(algebra) => give_string(algebra_to_string(&algebra), out),
        Err(e) => {
            set_error(e.to_string());
            reduction_status(&e)
        }
    }
}

/// Serializes the shifted encoding (`d y = sum x_a^{k-l} x_b^l`, k >= 2)
/// in the `sullivan v1` format.
///
/// # Safety
/// `graph` must be live; `out` receives a string to free with
/// `af_string_free`.
#[no_mangle]
pub unsafe extern "C" fn af_encode_shifted(
    graph: *const AfGraph,
    k: u32,
    out: *mut *mut c_char,
) -> AfStatus {
    guard(|| encode_common(graph, k, out, encode_shifted))
}

/// The unshifted encoder (k >= 3).
///
/// # Safety
/// As `af_encode_shifted`.
#[no_mangle]
pub unsafe extern "C" fn af_encode_original(
    graph: *const AfGraph,
    k: u32,
    out: *mut *mut c_char,
) -> AfStatus {
    guard(|| encode_common(graph, k, out, encode_original))
}

/// Serializes the torus-action data (`action k=.. r=..` format).
///
/// # Safety
/// As `af_encode_shifted`.
#[no_mangle]
pub unsafe extern "C" fn af_construct_action(
    graph: *const AfGraph,
    k: u32,
    out: *mut *mut c_char,
) -> AfStatus {
    guard(|| {
        if graph.is_null() || out.is_null() {
            set_error("null pointer");
            return AfStatus::NullPointer;
        }
        match assemble_action(&(*graph).inner, k) {
            Ok(action) => give_string(action_to_string(&action), out),
            Err(e) => {
                set_error(e.to_string());
                AfStatus::InvalidArgument
            }
        }
    })
}

/// Frees a string produced by this library.
///
/// # Safety
/// `text` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn af_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Decides almost-freeness of the action encoded by `(graph, k)`.
///
/// # Safety
/// `graph` must be live; `out` receives a handle to free with
/// `af_decision_free`.
#[no_mangle]
pub unsafe extern "C" fn af_decide(
    graph: *const AfGraph,
    k: u32,
    method: AfMethod,
    out: *mut *mut AfDecision,
) -> AfStatus {
    guard(|| {
        if graph.is_null() || out.is_null() {
            set_error("null pointer");
            return AfStatus::NullPointer;
        }
        let method = match method {
            AfMethod::Groebner => Method::Groebner,
            AfMethod::CertificateSearch => Method::CertificateSearch,
        };
        match decide_almost_free(&(*graph).inner, k, method) {
            Ok(decision) => {
                *out = Box::into_raw(Box::new(AfDecision {
                    verdict: decision.verdict,
                    witness: decision.witness,
                }));
                AfStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                reduction_status(&e)
            }
        }
    })
}

/// # Safety
/// `decision` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_decision_verdict(decision: *const AfDecision) -> AfVerdict {
    match (*decision).verdict {
        Verdict::AlmostFree => AfVerdict::AlmostFree,
        Verdict::NotAlmostFree => AfVerdict::NotAlmostFree,
    }
}

/// Color of `vertex` (1-based) in the witness coloring, or -1 when the
/// decision carries no witness or the vertex is out of range.
///
/// # Safety
/// `decision` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn af_decision_witness_color(
    decision: *const AfDecision,
    vertex: u32,
) -> i64 {
    if decision.is_null() {
        return -1;
    }
    match &(*decision).witness {
        Some(w) if vertex >= 1 && vertex <= w.vertex_count() => i64::from(w.color(vertex)),
        _ => -1,
    }
}

/// # Safety
/// `decision` must come from `af_decide` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn af_decision_free(decision: *mut AfDecision) {
    if !decision.is_null() {
        drop(Box::from_raw(decision));
    }
}

/// Checks a proposed coloring (`colors[i]` is the color of vertex i+1, each
/// in 0..=k) as a differential-commuting morphism; `accepted` receives the
/// outcome.
///
/// # Safety
/// `graph` must be live; `colors` must point to `len` u32 values;
/// `accepted` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn af_verify_coloring(
    graph: *const AfGraph,
    k: u32,
    colors: *const u32,
    len: usize,
    accepted: *mut bool,
) -> AfStatus {
    guard(|| {
        if graph.is_null() || colors.is_null() || accepted.is_null() {
            set_error("null pointer");
            return AfStatus::NullPointer;
        }
        let graph = &(*graph).inner;
        if len != graph.vertex_count() as usize {
            set_error(format!(
                "coloring covers {len} vertices, graph has {}",
                graph.vertex_count()
            ));
            return AfStatus::InvalidArgument;
        }
        if k < 2 {
            set_error("k must be at least 2");
            return AfStatus::InvalidArgument;
        }
        let slice = std::slice::from_raw_parts(colors, len);
        let algebra = match encode_shifted(graph, k) {
            Ok(a) => a,
            Err(e) => {
                set_error(e.to_string());
                return AfStatus::InvalidArgument;
            }
        };
        let assignment =
            Assignment { m: k + 1, exponents: slice.iter().map(|&c| c % (k + 1)).collect() };
        match verify_morphism(&algebra, &assignment) {
            Ok(outcome) => {
                *accepted = outcome.accepted();
                AfStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                AfStatus::InvalidArgument
            }
        }
    })
}

/// Cohomology dimensions of the encoded algebra in degrees `0..=cutoff`;
/// `out_dims` must hold `cutoff + 1` values.
///
/// # Safety
/// `graph` must be live; `out_dims` must point to at least `len` u64s.
#[no_mangle]
pub unsafe extern "C" fn af_betti(
    graph: *const AfGraph,
    k: u32,
    cutoff: u32,
    out_dims: *mut u64,
    len: usize,
) -> AfStatus {
    guard(|| {
        if graph.is_null() || out_dims.is_null() {
            set_error("null pointer");
            return AfStatus::NullPointer;
        }
        if len != cutoff as usize + 1 {
            set_error(format!("need cutoff + 1 = {} slots, got {len}", cutoff + 1));
            return AfStatus::InvalidArgument;
        }
        let algebra = match encode_shifted(&(*graph).inner, k) {
            Ok(a) => a,
            Err(e) => {
                set_error(e.to_string());
                return AfStatus::InvalidArgument;
            }
        };
        match cohomology_dims(&algebra, cutoff, &CohomologyConfig::default()) {
            Ok(dims) => {
                let out = std::slice::from_raw_parts_mut(out_dims, len);
                out.copy_from_slice(&dims);
                AfStatus::Ok
            }
            Err(e @ OracleError::BasisTooLarge { .. }) => {
                set_error(e.to_string());
                AfStatus::Budget
            }
            Err(e) => {
                set_error(e.to_string());
                AfStatus::Internal
            }
        }
    })
}

/// Runs the geometric checks (volume differentials on every edge with one
/// global sign, plus the volume-kernel shape); `ok` receives the verdict.
///
/// # Safety
/// `graph` must be live; `ok` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn af_check_borel(graph: *const AfGraph, k: u32, ok: *mut bool) -> AfStatus {
    guard(|| {
        if graph.is_null() || ok.is_null() {
            set_error("null pointer");
            return AfStatus::NullPointer;
        }
        let graph = &(*graph).inner;
        let action = match assemble_action(graph, k) {
            Ok(a) => a,
            Err(e) => {
                set_error(e.to_string());
                return AfStatus::InvalidArgument;
            }
        };
        let model = match borel_model(&action) {
            Ok(m) => m,
            Err(e) => {
                set_error(e.to_string());
                return AfStatus::Internal;
            }
        };
        let mut all_ok = model.algebra.check_well_formed().is_valid();
        match volume_kernel_check(k) {
            Ok(report) => all_ok &= report.is_ok(),
            Err(e) => {
                set_error(e.to_string());
                return AfStatus::Internal;
            }
        }
        let mut sign = None;
        for &(a, b) in graph.edges() {
            match verify_volume_differential(&model, (a, b)) {
                Ok(report) => {
                    all_ok &= report.is_ok();
                    match (sign, report.sign) {
                        (None, s) => sign = s,
                        (Some(prev), Some(s)) => all_ok &= prev == s,
                        _ => all_ok = false,
                    }
                }
                Err(e) => {
                    set_error(e.to_string());
                    return AfStatus::Internal;
                }
            }
        }
        *ok = all_ok;
        AfStatus::Ok
    })
}
