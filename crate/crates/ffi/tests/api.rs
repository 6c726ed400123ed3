use std::ffi::{CStr, CString};
use std::ptr;

use crossing_critical_ffi::*;

fn complete(n: usize) -> *mut CcgGraph {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(ccg_graph_new(n, &mut g), CcgStatus::Ok);
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(ccg_graph_add_edge(g, a, b, ptr::null_mut()), CcgStatus::Ok);
            }
        }
    }
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ccg_last_error()).to_string_lossy().into_owned() }
}

#[test]
fn crossing_numbers_of_small_complete_graphs() {
    for (n, want) in [(4, 0), (5, 1), (6, 3)] {
        let g = complete(n);
        let mut cr = 0;
        assert_eq!(unsafe { ccg_crossing_number(g, -1, &mut cr) }, CcgStatus::Ok);
        assert_eq!(cr, want);
        unsafe { ccg_graph_free(g) };
    }
}

#[test]
fn budget_exhaustion_is_reported() {
    let g = complete(6);
    let mut cr = 0;
    assert_eq!(unsafe { ccg_crossing_number(g, 1, &mut cr) }, CcgStatus::Inconclusive);
    assert_eq!(cr, 2);
    assert!(last_error().contains("exceeds 1"));
    unsafe { ccg_graph_free(g) };
}

#[test]
fn criticality_verdicts() {
    let g = complete(5);
    let mut v = CcgVerdict::Inconclusive;
    unsafe {
        assert_eq!(ccg_is_critical(g, 1, -1, &mut v), CcgStatus::Ok);
        assert_eq!(v, CcgVerdict::Critical);
        assert_eq!(ccg_is_critical(g, 2, -1, &mut v), CcgStatus::Ok);
        assert_eq!(v, CcgVerdict::NotCritical);
        assert_eq!(ccg_is_critical(g, 0, -1, &mut v), CcgStatus::Argument);
        ccg_graph_free(g);
    }
}

#[test]
fn parse_write_and_code_round_trip() {
    let src = CString::new("3 3\n0 0 1\n1 1 2\n2 2 0\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(ccg_graph_parse(src.as_ptr(), &mut g), CcgStatus::Ok);
        assert_eq!(ccg_graph_vertex_count(g), 3);
        assert_eq!(ccg_graph_edge_count(g), 3);
        let (mut u, mut v) = (0, 0);
        assert_eq!(ccg_graph_endpoints(g, 1, &mut u, &mut v), CcgStatus::Ok);
        assert_eq!((u, v), (1, 2));
        assert_eq!(ccg_graph_endpoints(g, 3, &mut u, &mut v), CcgStatus::OutOfRange);

        let mut text = ptr::null_mut();
        assert_eq!(ccg_graph_write(g, &mut text), CcgStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().starts_with("3 3"));
        ccg_string_free(text);

        let mut code = ptr::null_mut();
        assert_eq!(ccg_canonical_code(g, &mut code), CcgStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(ccg_graph_from_code(code, &mut h), CcgStatus::Ok);
        let mut code2 = ptr::null_mut();
        assert_eq!(ccg_canonical_code(h, &mut code2), CcgStatus::Ok);
        assert_eq!(CStr::from_ptr(code), CStr::from_ptr(code2));
        ccg_string_free(code);
        ccg_string_free(code2);
        ccg_graph_free(h);
        ccg_graph_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("2 1\n0 0 7\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(ccg_graph_parse(bad.as_ptr(), &mut g), CcgStatus::Parse);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        let junk = CString::new("2 x\n").unwrap();
        assert_eq!(ccg_graph_parse(junk.as_ptr(), &mut g), CcgStatus::Parse);
        assert_eq!(ccg_graph_parse(ptr::null(), &mut g), CcgStatus::NullPointer);
        let mut cr = 0;
        assert_eq!(ccg_crossing_number(ptr::null(), -1, &mut cr), CcgStatus::NullPointer);
        let nonhex = CString::new("zz").unwrap();
        assert_eq!(ccg_graph_from_code(nonhex.as_ptr(), &mut g), CcgStatus::Parse);
        ccg_graph_free(ptr::null_mut());
        ccg_string_free(ptr::null_mut());
        assert_eq!(ccg_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn census_and_enumeration_agree_for_one_crossing() {
    unsafe {
        let mut census = ptr::null_mut();
        assert_eq!(ccg_census(1, 6, &mut census), CcgStatus::Ok);
        assert_eq!(ccg_catalog_len(census), 3);

        let k5 = complete(5);
        let mut k33 = ptr::null_mut();
        assert_eq!(ccg_graph_new(6, &mut k33), CcgStatus::Ok);
        for a in 0..3 {
            for b in 3..6 {
                assert_eq!(ccg_graph_add_edge(k33, a, b, ptr::null_mut()), CcgStatus::Ok);
            }
        }
        let seeds = [k5 as *const CcgGraph, k33];
        let mut grown = ptr::null_mut();
        assert_eq!(ccg_enumerate_critical(1, 6, seeds.as_ptr(), 2, &mut grown), CcgStatus::Ok);
        assert_eq!(ccg_catalog_len(grown), 3);

        let mut g = ptr::null_mut();
        assert_eq!(ccg_catalog_graph(census, 0, &mut g), CcgStatus::Ok);
        assert_eq!(ccg_graph_vertex_count(g), 5);
        assert_eq!(ccg_catalog_graph(census, 3, &mut g), CcgStatus::OutOfRange);

        let mut text = ptr::null_mut();
        assert_eq!(ccg_catalog_write(grown, &mut text), CcgStatus::Ok);
        assert!(CStr::from_ptr(text).to_str().unwrap().starts_with("catalog c 1 max-n 6"));
        ccg_string_free(text);

        assert_eq!(ccg_census(9, 6, &mut census), CcgStatus::Scale);
        ccg_graph_free(g);
        ccg_graph_free(k5);
        ccg_graph_free(k33);
        ccg_catalog_free(grown);
        ccg_catalog_free(census);
    }
}
