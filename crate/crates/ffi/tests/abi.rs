use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use nkstar_ffi::*;

fn graph(n: usize, k: usize) -> *mut NkGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { nk_graph_new(n, k, &mut g) }, NkStatus::Ok);
    g
}

fn last_error() -> String {
    let p = nk_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph_queries() {
    let g = graph(5, 3);
    unsafe {
        assert_eq!(nk_graph_order(g), 60);
        assert_eq!(nk_graph_size(g), 120);
        assert_eq!(nk_graph_degree(g, 0), 4);
        assert_eq!(nk_graph_degree(g, 60), 0);

        let mut buf = [0usize; 8];
        let mut len = 0;
        assert_eq!(nk_graph_neighbors(g, 0, buf.as_mut_ptr(), buf.len(), &mut len), NkStatus::Ok);
        assert_eq!(len, 4);
        assert!(buf[..4].windows(2).all(|w| w[0] < w[1]));
        assert_eq!(nk_graph_neighbors(g, 0, buf.as_mut_ptr(), 2, &mut len), NkStatus::BufferTooSmall);
        assert_eq!(len, 4);

        let mut text = [0 as std::ffi::c_char; 16];
        assert_eq!(nk_graph_vertex_label(g, 0, text.as_mut_ptr(), text.len(), &mut len), NkStatus::Ok);
        assert_eq!(CStr::from_ptr(text.as_ptr()).to_str().unwrap(), "1,2,3");
        assert_eq!(len, 5);
        assert_eq!(nk_graph_vertex_label(g, 0, text.as_mut_ptr(), 5, &mut len), NkStatus::BufferTooSmall);

        let label = CString::new("3,1,2").unwrap();
        let mut v = 0;
        assert_eq!(nk_graph_vertex_index(g, label.as_ptr(), &mut v), NkStatus::Ok);
        assert_eq!(nk_graph_vertex_label(g, v, text.as_mut_ptr(), text.len(), &mut len), NkStatus::Ok);
        assert_eq!(CStr::from_ptr(text.as_ptr()).to_str().unwrap(), "3,1,2");

        let bad = CString::new("3,3,2").unwrap();
        assert_eq!(nk_graph_vertex_index(g, bad.as_ptr(), &mut v), NkStatus::Domain);
        nk_graph_free(g);
    }
}

#[test]
fn bad_parameters_set_error() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(nk_graph_new(3, 3, &mut g), NkStatus::Domain);
        assert!(g.is_null());
        assert!(last_error().contains("n=3"));
        assert_eq!(nk_graph_new(3, 2, ptr::null_mut()), NkStatus::NullPointer);
    }
}

#[test]
fn theorem_values() {
    let mut v = 0;
    unsafe {
        assert_eq!(nk_theorem_value(5, 3, 1, &mut v), NkStatus::Ok);
        assert_eq!(v, 5);
        assert_eq!(nk_theorem_value(4, 3, 2, &mut v), NkStatus::OutOfTheoremDomain);
    }
    assert!(!last_error().is_empty());
}

#[test]
fn search_and_cut_check() {
    let g = graph(4, 2);
    unsafe {
        let mut s = ptr::null_mut();
        let b = NkBudget { use_hint: 0, ..Default::default() };
        assert_eq!(nk_kappa_super(g, 1, &b, &mut s), NkStatus::Ok);
        assert_eq!(nk_search_value(s), 3);
        assert_eq!(nk_search_exhaustive_below(s), 3);
        assert_eq!(nk_search_budget_hit(s), 0);

        let mut cut = [0usize; 8];
        let mut len = 0;
        assert_eq!(nk_search_cut(s, cut.as_mut_ptr(), cut.len(), &mut len), NkStatus::Ok);
        assert_eq!(len, 3);
        let mut is_cut = 0;
        assert_eq!(nk_is_h_cut(g, cut.as_ptr(), len, 1, &mut is_cut), NkStatus::Ok);
        assert_eq!(is_cut, 1);
        assert_eq!(nk_is_h_cut(g, cut.as_ptr(), 1, 1, &mut is_cut), NkStatus::Ok);
        assert_eq!(is_cut, 0);
        nk_search_free(s);

        let zero = NkBudget { max_candidates: 1, ..Default::default() };
        assert_eq!(nk_kappa_super(g, 1, &zero, &mut s), NkStatus::BudgetExhausted);
        assert_eq!(nk_search_value(s), -1);
        assert_eq!(nk_search_budget_hit(s), 1);
        nk_search_free(s);

        let bad = [99usize];
        assert_eq!(nk_is_h_cut(g, bad.as_ptr(), 1, 0, &mut is_cut), NkStatus::Domain);
        nk_graph_free(g);
    }
}

#[test]
fn hint_matches_closed_form() {
    let g = graph(5, 3);
    unsafe {
        let mut s = ptr::null_mut();
        let b = NkBudget { use_hint: 1, ..Default::default() };
        assert_eq!(nk_kappa_super(g, 2, &b, &mut s), NkStatus::Ok);
        assert_eq!(nk_search_value(s), 6);
        nk_search_free(s);
        nk_graph_free(g);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        nk_graph_free(ptr::null_mut());
        nk_search_free(ptr::null_mut());
        assert_eq!(nk_graph_order(ptr::null()), 0);
        assert_eq!(nk_search_value(ptr::null()), -1);
        let mut len = 0;
        assert_eq!(nk_graph_neighbors(ptr::null(), 0, ptr::null_mut(), 0, &mut len), NkStatus::NullPointer);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/nkstar.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["nk_graph_new", "nk_kappa_super", "nk_last_error_message", "NK_STATUS_BUDGET_EXHAUSTED"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .output()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
