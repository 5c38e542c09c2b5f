use std::ffi::{c_char, CStr, CString};
use std::ptr;

use markov_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { markov_string_free(s) };
    v
}

fn last_error() -> String {
    let p = markov_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn quad(s: &str) -> *mut MarkovQuad {
    let c = CString::new(s).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { markov_quad_parse(c.as_ptr(), &mut q) }, MarkovStatus::Ok);
    q
}

#[test]
fn triple_round_trip() {
    let (a, b, c) = (CString::new("1").unwrap(), CString::new("2").unwrap(), CString::new("5").unwrap());
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(markov_triple_new(a.as_ptr(), b.as_ptr(), c.as_ptr(), &mut t), MarkovStatus::Ok);
        let mut n = ptr::null_mut();
        assert_eq!(markov_triple_involution(t, 1, &mut n), MarkovStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(markov_triple_component(n, 0, &mut s), MarkovStatus::Ok);
        assert_eq!(take(s), "29");

        let mut x = ptr::null_mut();
        assert_eq!(markov_triple_x(t, &mut x), MarkovStatus::Ok);
        assert_eq!(markov_quad_to_string(x, &mut s), MarkovStatus::Ok);
        assert_eq!(take(s), "9/10 + 1/10*sqrt(221)");
        let mut f = ptr::null_mut();
        assert_eq!(markov_triple_form(t, &mut f), MarkovStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(markov_form_lattice_min(f, 100, &mut m), MarkovStatus::Ok);
        assert_eq!(markov_quad_to_string(m, &mut s), MarkovStatus::Ok);
        assert_eq!(take(s), "10/221*sqrt(221)");

        markov_form_free(f);
        markov_quad_free(m);
        markov_quad_free(x);
        markov_triple_free(n);
        markov_triple_free(t);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(markov_triple_from_u64(1, 2, 3, &mut t), MarkovStatus::NotMarkov);
        assert!(t.is_null());
        assert!(last_error().contains("not a Markov triple"));
        assert_eq!(markov_triple_from_u64(1, 1, 1, ptr::null_mut()), MarkovStatus::NullPointer);
        assert_eq!(markov_triple_new(ptr::null(), ptr::null(), ptr::null(), &mut t), MarkovStatus::NullPointer);
        let mut q = ptr::null_mut();
        let bad = CString::new("sqrt(").unwrap();
        assert_eq!(markov_quad_parse(bad.as_ptr(), &mut q), MarkovStatus::Parse);

        let (a, b) = (quad("sqrt(2)"), quad("sqrt(3)"));
        assert_eq!(markov_quad_arith(a, MarkovOp::Add, b, &mut q), MarkovStatus::Arithmetic);
        let z = quad("0");
        assert_eq!(markov_quad_arith(a, MarkovOp::Div, z, &mut q), MarkovStatus::Arithmetic);
        assert_eq!(markov_quad_continued_fraction(z, &mut ptr::null_mut()), MarkovStatus::Domain);
        for p in [a, b, z] {
            markov_quad_free(p);
        }
    }
}

#[test]
fn arithmetic_and_approximation() {
    let (x, y) = (quad("1/2 + 1/2*sqrt(5)"), quad("-1/2 + 1/2*sqrt(5)"));
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(markov_quad_arith(x, MarkovOp::Mul, y, &mut d), MarkovStatus::Ok);
        let one = quad("1");
        let mut c = 7;
        assert_eq!(markov_quad_cmp(d, one, &mut c), MarkovStatus::Ok);
        assert_eq!(c, 0);
        let mut f = 0.0;
        assert_eq!(markov_quad_to_f64(x, &mut f), MarkovStatus::Ok);
        assert!((f - 1.618033988749895).abs() < 1e-15);
        let mut s = ptr::null_mut();
        assert_eq!(markov_quad_continued_fraction(x, &mut s), MarkovStatus::Ok);
        assert_eq!(take(s), "[; (1)]");
        let lam = quad("sqrt(5) - 1/100");
        let mut n = 0usize;
        assert_eq!(markov_count_approximations(x, lam, 30, &mut n), MarkovStatus::Ok);
        assert_eq!(n, 5);
        for p in [x, y, d, one, lam] {
            markov_quad_free(p);
        }
    }
}

#[test]
fn svg_and_version() {
    let (lo, hi) = (CString::new("0").unwrap(), CString::new("1").unwrap());
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(markov_render_svg(5, lo.as_ptr(), hi.as_ptr(), &mut s), MarkovStatus::Ok);
        assert_eq!(take(s).matches("<circle").count(), 11);
        assert_eq!(markov_render_svg(5, hi.as_ptr(), lo.as_ptr(), &mut s), MarkovStatus::InvalidArgument);
        assert_eq!(CStr::from_ptr(markov_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
        markov_string_free(ptr::null_mut());
    }
}
