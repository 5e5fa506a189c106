use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use respart_ffi::*;

fn graph(n: usize, edges: &[(usize, usize)]) -> *mut RespartGraph {
    let flat: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    let status = unsafe { respart_graph_new(n, flat.as_ptr(), edges.len(), &mut g) };
    assert_eq!(status, RespartStatus::Ok);
    g
}

fn double_star() -> *mut RespartGraph {
    graph(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
}

fn last_error() -> String {
    let p = respart_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn dimensions_and_constructions() {
    let g = double_star();
    unsafe {
        assert_eq!(respart_graph_vertex_count(g), 6);
        let mut pd = 0;
        let mut witness = ptr::null_mut();
        assert_eq!(respart_partition_dimension(g, &mut pd, &mut witness), RespartStatus::Ok);
        assert_eq!(pd, 3);
        assert_eq!(respart_partition_class_count(witness), 3);

        let mut dim = 0;
        assert_eq!(respart_metric_dimension(g, &mut dim), RespartStatus::Ok);
        assert_eq!(dim, 2);

        let mut p = ptr::null_mut();
        assert_eq!(respart_construct(g, RespartMethod::Thm1, &mut p), RespartStatus::Ok);
        assert_eq!(respart_partition_class_count(p), 3);
        let mut resolving = false;
        assert_eq!(respart_is_resolving(g, p, &mut resolving, ptr::null_mut()), RespartStatus::Ok);
        assert!(resolving);

        respart_partition_free(p);
        respart_partition_free(witness);
        respart_graph_free(g);
    }
}

#[test]
fn non_resolving_partition_reports_witness() {
    let g = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    let class_of = [0usize, 1, 1, 2, 3];
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(respart_partition_from_classes(class_of.as_ptr(), 5, &mut p), RespartStatus::Ok);
        let mut c = usize::MAX;
        assert_eq!(respart_partition_class_of(p, 2, &mut c), RespartStatus::Ok);
        assert_eq!(c, 1);
        assert_eq!(respart_partition_class_of(p, 9, &mut c), RespartStatus::OutOfRange);

        let mut resolving = true;
        let mut witness = [0usize; 2];
        assert_eq!(respart_is_resolving(g, p, &mut resolving, witness.as_mut_ptr()), RespartStatus::Ok);
        assert!(!resolving);
        assert_eq!(witness, [1, 2]);
        respart_partition_free(p);
        respart_graph_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let edges = [0usize, 0];
        assert_eq!(respart_graph_new(2, edges.as_ptr(), 1, &mut g), RespartStatus::InvalidGraph);
        assert!(last_error().contains("self-loop"));
        assert_eq!(respart_graph_new(2, ptr::null(), 1, &mut g), RespartStatus::NullPointer);
        assert!(g.is_null());

        let edges = [0usize, 1, 2, 3];
        assert_eq!(respart_graph_new(4, edges.as_ptr(), 2, &mut g), RespartStatus::Ok);
        let mut pd = 0;
        assert_eq!(respart_partition_dimension(g, &mut pd, ptr::null_mut()), RespartStatus::Disconnected);
        respart_graph_free(g);

        let path = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let mut p = ptr::null_mut();
        assert_eq!(respart_construct(path, RespartMethod::Thm1, &mut p), RespartStatus::PreconditionViolated);
        assert!(last_error().contains("which is not a path"));
        assert_eq!(respart_construct(path, RespartMethod::Auto, &mut p), RespartStatus::Ok);
        assert_eq!(respart_partition_class_count(p), 2);
        respart_partition_free(p);

        let gaps = [0usize, 2, 2, 2, 2];
        assert_eq!(respart_partition_from_classes(gaps.as_ptr(), 5, &mut p), RespartStatus::InvalidPartition);
        respart_graph_free(path);

        assert_eq!(respart_metric_dimension(ptr::null(), &mut pd), RespartStatus::NullPointer);
        assert_eq!(respart_graph_vertex_count(ptr::null()), 0);
        respart_graph_free(ptr::null_mut());
    }
}

#[test]
fn status_messages_are_static() {
    for s in [RespartStatus::Ok, RespartStatus::TooLarge, RespartStatus::Panic] {
        let msg = unsafe { CStr::from_ptr(respart_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/respart.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["respart_graph_new", "respart_construct", "RESPART_STATUS_OK", "RESPART_METHOD_THM1"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // only when a C compiler is around
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() else {
        return;
    };
    assert!(status.success());
}
