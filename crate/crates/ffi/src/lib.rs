//! C ABI over `respart`.
//!
//! Graphs and partitions cross the boundary as opaque handles. Every entry
//! point returns a [`RespartStatus`]; results come back through out
//! pointers. Panics are caught and reported as `RESPART_STATUS_PANIC`. The
//! message for the most recent failure on the calling thread is available
//! from [`respart_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use respart::constructions::{construct, Method};
use respart::resolver::{is_resolving_partition, metric_dimension_exact, partition_dimension_exact};
use respart::{all_pairs_distances, Error, ExactOptions, Graph, VertexPartition};

/// Opaque graph handle.
pub struct RespartGraph(Graph);

/// Opaque partition handle.
pub struct RespartPartition(VertexPartition);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RespartStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGraph = 2,
    Disconnected = 3,
    InvalidPartition = 4,
    OutOfRange = 5,
    TooLarge = 6,
    PreconditionViolated = 7,
    VerificationFailed = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RespartMethod {
    Path = 0,
    Star = 1,
    Thm1 = 2,
    Thm3 = 3,
    Spider = 4,
    Gentree = 5,
    Auto = 6,
}

impl From<RespartMethod> for Method {
    fn from(m: RespartMethod) -> Self {
        match m {
            RespartMethod::Path => Method::Path,
            RespartMethod::Star => Method::Star,
            RespartMethod::Thm1 => Method::Thm1,
            RespartMethod::Thm3 => Method::Thm3,
            RespartMethod::Spider => Method::Spider,
            RespartMethod::Gentree => Method::Gentree,
            RespartMethod::Auto => Method::Auto,
        }
    }
}

fn status_of(e: &Error) -> RespartStatus {
    match e {
        Error::EmptyGraph | Error::SelfLoop(_) | Error::DuplicateEdge(..) | Error::Parse { .. } => {
            RespartStatus::InvalidGraph
        }
        Error::OutOfRange { .. } | Error::InvalidRange(_) => RespartStatus::OutOfRange,
        Error::Disconnected => RespartStatus::Disconnected,
        Error::InvalidPartition(_) | Error::InvalidSet(_) => RespartStatus::InvalidPartition,
        Error::TooLarge { .. } => RespartStatus::TooLarge,
        Error::VerificationFailed(_) => RespartStatus::VerificationFailed,
        Error::NotATree
        | Error::IsAPath
        | Error::NotAPath
        | Error::NotAStar
        | Error::IsAStar
        | Error::NotASpider { .. }
        | Error::TooFewLeaves { .. }
        | Error::NotGeneralizedTree(_)
        | Error::PreconditionViolated(_) => RespartStatus::PreconditionViolated,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (RespartStatus, String)>) -> RespartStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RespartStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(msg);
            RespartStatus::Panic
        }
    }
}

fn core<T>(r: respart::Result<T>) -> Result<T, (RespartStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (RespartStatus, String) {
    (RespartStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (RespartStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(p: *mut T, value: T, what: &str) -> Result<(), (RespartStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries, 0-based ids).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (or be null when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn respart_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut RespartGraph,
) -> RespartStatus {
    guard(|| {
        let flat: &[usize] = match (edges.is_null(), edge_count) {
            (_, 0) => &[],
            (true, _) => return Err(null("edges")),
            (false, m) => std::slice::from_raw_parts(edges, 2 * m),
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = core(Graph::from_edges(n, &pairs))?;
        write_out(out, Box::into_raw(Box::new(RespartGraph(g))), "out")
    })
}

/// # Safety
/// `graph` must come from `respart_graph_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn respart_graph_free(graph: *mut RespartGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn respart_graph_vertex_count(graph: *const RespartGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// Builds a partition from per-vertex class indices; the indices used must
/// be exactly `0..t` for some `t`.
///
/// # Safety
/// `class_of` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn respart_partition_from_classes(
    class_of: *const usize,
    n: usize,
    out: *mut *mut RespartPartition,
) -> RespartStatus {
    guard(|| {
        if class_of.is_null() {
            return Err(null("class_of"));
        }
        let assignment = std::slice::from_raw_parts(class_of, n);
        let p = core(VertexPartition::from_assignment(assignment))?;
        write_out(out, Box::into_raw(Box::new(RespartPartition(p))), "out")
    })
}

/// # Safety
/// `partition` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn respart_partition_free(partition: *mut RespartPartition) {
    if !partition.is_null() {
        drop(Box::from_raw(partition));
    }
}

/// Class count, or 0 for a null handle.
///
/// # Safety
/// `partition` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn respart_partition_class_count(partition: *const RespartPartition) -> usize {
    partition.as_ref().map_or(0, |p| p.0.num_classes())
}

/// # Safety
/// `partition` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn respart_partition_class_of(
    partition: *const RespartPartition,
    vertex: usize,
    out: *mut usize,
) -> RespartStatus {
    guard(|| {
        let p = &deref(partition, "partition")?.0;
        if vertex >= p.n() {
            return Err((RespartStatus::OutOfRange, format!("vertex {vertex} out of range for {} vertices", p.n())));
        }
        write_out(out, p.class_of()[vertex], "out")
    })
}

/// Sets `*resolving`. When the partition does not resolve and `witness` is
/// non-null, the least colliding pair is written to `witness[0..2]`.
///
/// # Safety
/// Handles must be live; `resolving` must be writable; `witness` must be
/// null or point to two writable values.
#[no_mangle]
pub unsafe extern "C" fn respart_is_resolving(
    graph: *const RespartGraph,
    partition: *const RespartPartition,
    resolving: *mut bool,
    witness: *mut usize,
) -> RespartStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let p = &deref(partition, "partition")?.0;
        if p.n() != g.n() {
            return Err((
                RespartStatus::InvalidPartition,
                format!("partition covers {} vertices, graph has {}", p.n(), g.n()),
            ));
        }
        let dm = core(all_pairs_distances(g))?;
        let verdict = core(is_resolving_partition(&dm, p))?;
        write_out(resolving, verdict.resolving, "resolving")?;
        if let (Some((u, v)), false) = (verdict.witness, witness.is_null()) {
            witness.write(u);
            witness.add(1).write(v);
        }
        Ok(())
    })
}

/// Exact partition dimension. If `witness` is non-null it receives a new
/// partition handle realizing it.
///
/// # Safety
/// `graph` must be live; `pd` writable; `witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn respart_partition_dimension(
    graph: *const RespartGraph,
    pd: *mut usize,
    witness: *mut *mut RespartPartition,
) -> RespartStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let dm = core(all_pairs_distances(g))?;
        let (t, w) = core(partition_dimension_exact(g, &dm, &ExactOptions::from_env()))?;
        write_out(pd, t, "pd")?;
        if !witness.is_null() {
            witness.write(Box::into_raw(Box::new(RespartPartition(w))));
        }
        Ok(())
    })
}

/// Exact metric dimension.
///
/// # Safety
/// `graph` must be live; `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn respart_metric_dimension(graph: *const RespartGraph, dim: *mut usize) -> RespartStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let dm = core(all_pairs_distances(g))?;
        let (k, _) = core(metric_dimension_exact(g, &dm, &ExactOptions::from_env()))?;
        write_out(dim, k, "dim")
    })
}

/// Runs a construction and returns its partition as a new handle.
///
/// # Safety
/// `graph` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn respart_construct(
    graph: *const RespartGraph,
    method: RespartMethod,
    out: *mut *mut RespartPartition,
) -> RespartStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let dm = core(all_pairs_distances(g))?;
        let c = core(construct(g, &dm, method.into()))?;
        write_out(out, Box::into_raw(Box::new(RespartPartition(c.partition))), "out")
    })
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn respart_status_message(status: RespartStatus) -> *const c_char {
    let s: &'static CStr = match status {
        RespartStatus::Ok => c"ok",
        RespartStatus::NullPointer => c"null pointer argument",
        RespartStatus::InvalidGraph => c"invalid graph",
        RespartStatus::Disconnected => c"graph is disconnected",
        RespartStatus::InvalidPartition => c"invalid partition",
        RespartStatus::OutOfRange => c"value out of range",
        RespartStatus::TooLarge => c"graph exceeds the exact-search limit",
        RespartStatus::PreconditionViolated => c"precondition violated",
        RespartStatus::VerificationFailed => c"constructed partition failed verification",
        RespartStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn respart_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
