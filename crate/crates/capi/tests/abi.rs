//! Exercises the C entry points the way a foreign caller would: through
//! raw pointers, NUL-terminated strings, and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use endgraph_capi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(eg_last_error_message())
            .to_string_lossy()
            .into_owned()
    }
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { eg_string_free(p) };
    s
}

fn open(spec: &str) -> *mut EgGraph {
    let mut g = ptr::null_mut();
    let status = unsafe { eg_graph_open(c(spec).as_ptr(), &mut g) };
    assert_eq!(status, EgStatus::Ok, "open {spec}: {}", last_error());
    g
}

#[test]
fn open_label_ball_round_trip() {
    let g = open("tree3");
    let mut label = ptr::null_mut();
    assert_eq!(unsafe { eg_graph_label(g, &mut label) }, EgStatus::Ok);
    assert_eq!(take_string(label), "tree3");

    let mut ball = ptr::null_mut();
    assert_eq!(unsafe { eg_graph_ball(g, 1, &mut ball) }, EgStatus::Ok);
    unsafe {
        assert_eq!(eg_ball_vertex_count(ball), 1);
        assert_eq!(eg_ball_edge_count(ball), 0);
        assert_eq!(eg_ball_stub_count(ball), 3);
        assert_eq!(eg_ball_rank(ball), 0);
    }
    let mut dot = ptr::null_mut();
    assert_eq!(
        unsafe { eg_ball_to_dot(ball, c("root_ball").as_ptr(), &mut dot) },
        EgStatus::Ok
    );
    let dot = take_string(dot);
    assert!(dot.starts_with("graph \"root_ball\""));
    // The three stubs render as dashed dangling half-edges.
    assert_eq!(dot.matches("style=dashed").count(), 3);
    unsafe {
        eg_ball_free(ball);
        eg_graph_free(g);
    }
}

#[test]
fn distance_between_builtins() {
    let a = open("loch_ness");
    let b = open("tree3");
    let mut d = EgDistance {
        kind: EgDistanceKind::Zero,
        half_exponent: 99,
        approx: -1.0,
    };
    assert_eq!(unsafe { eg_distance(a, b, 10, &mut d) }, EgStatus::Ok);
    assert_eq!(d.kind, EgDistanceKind::Exact);
    assert_eq!(d.half_exponent, 1);
    assert!((d.approx - 0.5f64.sqrt()).abs() < 1e-12);

    // A graph compared to itself needs the budget to run out.
    assert_eq!(unsafe { eg_distance(a, a, 12, &mut d) }, EgStatus::Ok);
    assert_eq!(d.kind, EgDistanceKind::UpperBound);
    assert_eq!(d.half_exponent, 12);
    unsafe {
        eg_graph_free(a);
        eg_graph_free(b);
    }
}

#[test]
fn descriptor_and_rank_queries() {
    let g = open("loch_ness");
    let mut desc = ptr::null_mut();
    assert_eq!(unsafe { eg_graph_descriptor(g, &mut desc) }, EgStatus::Ok);
    assert_eq!(take_string(desc), "rank=inf ends=1 loops=1");

    let mut rank = 0u32;
    assert_eq!(unsafe { eg_rank_lower_bound(g, 5, &mut rank) }, EgStatus::Ok);
    assert_eq!(rank, 4);
    unsafe { eg_graph_free(g) };

    let mut eq = false;
    let a = c("rank=inf ends=1 loopends=1");
    let b = c("rank=inf ends=1 loops=1");
    assert_eq!(
        unsafe { eg_descriptors_equivalent(a.as_ptr(), b.as_ptr(), &mut eq) },
        EgStatus::Ok
    );
    assert!(eq);
    let c2 = c("rank=2 ends=1 loops=0");
    assert_eq!(
        unsafe { eg_descriptors_equivalent(a.as_ptr(), c2.as_ptr(), &mut eq) },
        EgStatus::Ok
    );
    assert!(!eq);
}

#[test]
fn errors_report_status_and_message() {
    let mut g = ptr::null_mut();
    let status = unsafe { eg_graph_open(c("nessie").as_ptr(), &mut g) };
    assert_eq!(status, EgStatus::Argument);
    assert!(last_error().contains("unknown builtin"));
    assert!(g.is_null());

    let status = unsafe { eg_graph_open(ptr::null(), &mut g) };
    assert_eq!(status, EgStatus::NullArgument);

    let mut label = ptr::null_mut();
    let status = unsafe { eg_graph_label(ptr::null(), &mut label) };
    assert_eq!(status, EgStatus::NullArgument);

    let bad = c("cubic(cylinders 2)");
    let status = unsafe { eg_graph_open(bad.as_ptr(), &mut g) };
    assert_eq!(status, EgStatus::Domain);
    assert!(last_error().contains("bad symbol"));

    let mut eq = false;
    let junk = c("rank=banana ends=1 loops=0");
    let ok = c("rank=1 ends=1 loops=0");
    let status = unsafe { eg_descriptors_equivalent(junk.as_ptr(), ok.as_ptr(), &mut eq) };
    assert_eq!(status, EgStatus::Domain);

    // NULL handles are inert for the count accessors and the frees.
    unsafe {
        assert_eq!(eg_ball_vertex_count(ptr::null()), 0);
        eg_ball_free(ptr::null_mut());
        eg_graph_free(ptr::null_mut());
        eg_string_free(ptr::null_mut());
    }
}

#[test]
fn experiment_csv_is_deterministic_across_the_boundary() {
    let mut first = ptr::null_mut();
    let mut second = ptr::null_mut();
    unsafe {
        assert_eq!(
            eg_experiment_csv(3, 20, 5, 42, 2, 4, &mut first),
            EgStatus::Ok
        );
        assert_eq!(
            eg_experiment_csv(3, 20, 5, 42, 2, 4, &mut second),
            EgStatus::Ok
        );
    }
    let first = take_string(first);
    let second = take_string(second);
    assert_eq!(first, second);
    assert!(first.starts_with("trial,seed,rank_ball_R,in_Un,in_Vn_witness_radius\n"));
    assert_eq!(first.lines().count(), 6);

    let mut out = ptr::null_mut();
    let status = unsafe { eg_experiment_csv(3, 21, 5, 42, 2, 4, &mut out) };
    assert_eq!(status, EgStatus::Argument, "odd stub total must be rejected");
}
