use std::ffi::{CStr, CString};
use std::ptr;

use equisplit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(eqs_last_error_message()) }.to_string_lossy().into_owned()
}

fn parse(text: &str) -> (EqsStatus, *mut EqsGraph) {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { eqs_graph_parse(text.as_ptr(), &mut g) };
    (status, g)
}

fn vertices(s: *const EqsSplit, side: EqsSide) -> Vec<usize> {
    let mut len = 0;
    let status = unsafe { eqs_split_vertices(s, side, ptr::null_mut(), 0, &mut len) };
    if len == 0 {
        assert_eq!(status, EqsStatus::Ok);
        return Vec::new();
    }
    assert_eq!(status, EqsStatus::InvalidArgument);
    let mut buf = vec![0; len];
    assert_eq!(unsafe { eqs_split_vertices(s, side, buf.as_mut_ptr(), len, &mut len) }, EqsStatus::Ok);
    buf
}

#[test]
fn exact_split_of_k4() {
    let edges = [0usize, 1, 0, 2, 0, 3, 1, 2, 1, 3, 2, 3];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(eqs_graph_new(4, edges.as_ptr(), 6, &mut g), EqsStatus::Ok);
        assert_eq!((eqs_graph_vertex_count(g), eqs_graph_edge_count(g)), (4, 6));
        let mut s = ptr::null_mut();
        assert_eq!(eqs_exact_split(g, &mut s), EqsStatus::Ok);
        assert_eq!(eqs_split_k(s), 2);
        assert_eq!(eqs_split_edges_each(s), 1);
        assert_eq!(eqs_split_deleted_count(s), 0);
        let (a, b) = (vertices(s, EqsSide::A), vertices(s, EqsSide::B));
        assert_eq!(a.len() + b.len(), 4);
        assert!(vertices(s, EqsSide::Deleted).is_empty());
        assert_eq!(eqs_split_check(g, s), EqsStatus::Ok);
        eqs_split_free(s);
        eqs_graph_free(g);
    }
    assert_eq!(last_error(), "");
}

#[test]
fn dp_reports_odd_order_as_not_found() {
    let (status, g) = parse("3 3\n0 1\n1 2\n0 2\n");
    assert_eq!(status, EqsStatus::Ok);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(eqs_dp_split(g, &mut s), EqsStatus::NotFound);
        assert!(s.is_null());
        eqs_graph_free(g);
    }
    assert!(!last_error().is_empty());
}

#[test]
fn parse_errors_carry_the_line() {
    let (status, g) = parse("3 1\n0 1\n1 x\n");
    assert_eq!(status, EqsStatus::ParseError);
    assert!(g.is_null());
    assert!(last_error().starts_with("line 3"), "{}", last_error());
}

#[test]
fn randomized_split_of_a_generated_graph() {
    let spec = CString::new("gnp:n=300,p=0.5,seed=4").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(eqs_graph_generate(spec.as_ptr(), &mut g), EqsStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(eqs_randomized_split(g, 0.1, 1, &mut s), EqsStatus::Ok);
        assert!(eqs_split_deleted_count(s) <= 60);
        assert_eq!(2 * eqs_split_k(s) + eqs_split_deleted_count(s), 300);
        assert_eq!(eqs_split_check(g, s), EqsStatus::Ok);
        eqs_split_free(s);
        assert_eq!(eqs_randomized_split(g, 0.7, 1, &mut s), EqsStatus::InvalidArgument);
        eqs_graph_free(g);
    }
}

#[test]
fn min_deletion_and_size_limits() {
    // A star on 5 vertices needs one deletion.
    let (_, star) = parse("5 4\n0 1\n0 2\n0 3\n0 4\n");
    let (_, big) = parse("20 0\n");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(eqs_min_deletion_split(star, 0, 0, &mut s), EqsStatus::NotFound);
        assert_eq!(eqs_min_deletion_split(star, 3, 0, &mut s), EqsStatus::Ok);
        assert_eq!(eqs_split_deleted_count(s), 1);
        assert_eq!(eqs_split_check(star, s), EqsStatus::Ok);
        assert_eq!(eqs_split_check(big, s), EqsStatus::CheckFailed);
        eqs_split_free(s);
        assert_eq!(eqs_exact_split(big, &mut s), EqsStatus::SizeLimit);
        eqs_graph_free(star);
        eqs_graph_free(big);
    }
}

#[test]
fn null_and_invalid_arguments() {
    let mut g = ptr::null_mut();
    let mut s = ptr::null_mut();
    let mut len = 0;
    unsafe {
        assert_eq!(eqs_graph_parse(ptr::null(), &mut g), EqsStatus::NullPointer);
        assert_eq!(eqs_graph_new(3, ptr::null(), 1, &mut g), EqsStatus::NullPointer);
        assert_eq!(eqs_exact_split(ptr::null(), &mut s), EqsStatus::NullPointer);
        assert_eq!(eqs_split_vertices(ptr::null(), EqsSide::A, ptr::null_mut(), 0, &mut len), EqsStatus::NullPointer);
        assert_eq!(eqs_graph_new(2, [0usize, 0].as_ptr(), 1, &mut g), EqsStatus::InvalidArgument);
        let bad = CString::new("gnp:n=10,p=2").unwrap();
        assert_eq!(eqs_graph_generate(bad.as_ptr(), &mut g), EqsStatus::InvalidArgument);
        assert_eq!(eqs_graph_vertex_count(ptr::null()), 0);
        eqs_graph_free(ptr::null_mut());
        eqs_split_free(ptr::null_mut());
    }
    let version = unsafe { CStr::from_ptr(eqs_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
