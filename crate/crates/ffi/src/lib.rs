//! C ABI over `markov_core`.
//!
//! Objects are opaque heap handles created by `*_new`/`*_parse` functions and
//! released with the matching `*_free`. Functions return a [`MarkovStatus`];
//! on failure `markov_last_error()` describes the problem. Strings returned
//! through `char **` outputs are owned by the caller and released with
//! `markov_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use markov_core::cf::{cf_expand, count_approximations, lagrange_number};
use markov_core::exactnum::parse_rational;
use markov_core::forms::BinaryQuadraticForm;
use markov_core::markov::{self as mk, MarkovTriple};
use markov_core::render::{render_svg, RenderSpec};
use markov_core::{Error, QuadExt};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkovStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotMarkov = 5,
    Arithmetic = 6,
    Domain = 7,
    Panic = 99,
}

/// A Markov triple `(a, b, c)`.
pub struct MarkovTripleHandle(MarkovTriple);

/// An exact number `r + s sqrt(D)`.
pub struct MarkovQuad(QuadExt);

/// A binary quadratic form `A p^2 + 2B pq + C q^2`.
pub struct MarkovForm(BinaryQuadraticForm);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MarkovStatus {
    match e {
        Error::Parse(_) => MarkovStatus::Parse,
        Error::NotMarkov(..) => MarkovStatus::NotMarkov,
        Error::DivisionByZero | Error::MixedField(..) | Error::NegativeRadicand(_) | Error::Singular | Error::ZeroVector => {
            MarkovStatus::Arithmetic
        }
        Error::InvalidArgument(_) => MarkovStatus::InvalidArgument,
        _ => MarkovStatus::Domain,
    }
}

struct Fail(MarkovStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MarkovStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MarkovStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            MarkovStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(MarkovStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(MarkovStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn obj<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(MarkovStatus::NullPointer, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(MarkovStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(MarkovStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn markov_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn markov_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn markov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---- triples ----

/// Builds a triple from decimal strings.
///
/// # Safety
/// Arguments must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_new(
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut MarkovTripleHandle,
) -> MarkovStatus {
    guard(|| {
        let parse = |p, n| -> Result<num_bigint::BigInt, Fail> {
            let s = str_arg(p, n)?;
            s.trim().parse().map_err(|_| Fail(MarkovStatus::Parse, format!("{n}: not an integer: {s:?}")))
        };
        let t = MarkovTriple::new(parse(a, "a")?, parse(b, "b")?, parse(c, "c")?)?;
        put(out, MarkovTripleHandle(t))
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_from_u64(a: u64, b: u64, c: u64, out: *mut *mut MarkovTripleHandle) -> MarkovStatus {
    guard(|| put(out, MarkovTripleHandle(MarkovTriple::new(a, b, c)?)))
}

/// # Safety
/// `t` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_free(t: *mut MarkovTripleHandle) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The neighbour across move `k` in 1..=3.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_involution(t: *const MarkovTripleHandle, k: c_int, out: *mut *mut MarkovTripleHandle) -> MarkovStatus {
    guard(|| {
        let t = obj(t, "t")?;
        let k = u8::try_from(k).map_err(|_| Fail(MarkovStatus::InvalidArgument, format!("move {k} not in 1..=3")))?;
        put(out, MarkovTripleHandle(t.0.involution(k)?))
    })
}

/// Component `i` in 0..=2 as a decimal string.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_component(t: *const MarkovTripleHandle, i: c_int, out: *mut *mut c_char) -> MarkovStatus {
    guard(|| {
        let t = obj(t, "t")?;
        let v = match i {
            0 => &t.0.a,
            1 => &t.0.b,
            2 => &t.0.c,
            _ => return Err(Fail(MarkovStatus::InvalidArgument, format!("component {i} not in 0..=2"))),
        };
        put_string(out, v.to_string())
    })
}

/// The Markov irrational `x` of the sorted triple.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_x(t: *const MarkovTripleHandle, out: *mut *mut MarkovQuad) -> MarkovStatus {
    guard(|| put(out, MarkovQuad(mk::markov_x(&obj(t, "t")?.0.sorted()))))
}

/// `L(x) = sqrt(9 c^2 - 4) / c` for the sorted triple.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_lambda(t: *const MarkovTripleHandle, out: *mut *mut MarkovQuad) -> MarkovStatus {
    guard(|| put(out, MarkovQuad(mk::markov_lambda(&obj(t, "t")?.0.sorted()))))
}

/// The Markov form of the sorted triple.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_triple_form(t: *const MarkovTripleHandle, out: *mut *mut MarkovForm) -> MarkovStatus {
    guard(|| put(out, MarkovForm(mk::markov_form(&obj(t, "t")?.0.sorted()))))
}

// ---- exact numbers ----

/// Parses expressions such as `"1/2 + 1/2*sqrt(5)"`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_parse(s: *const c_char, out: *mut *mut MarkovQuad) -> MarkovStatus {
    guard(|| put(out, MarkovQuad(str_arg(s, "s")?.parse()?)))
}

/// # Safety
/// `q` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_free(q: *mut MarkovQuad) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_to_string(q: *const MarkovQuad, out: *mut *mut c_char) -> MarkovStatus {
    guard(|| put_string(out, obj(q, "q")?.0.to_string()))
}

/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_to_f64(q: *const MarkovQuad, out: *mut f64) -> MarkovStatus {
    guard(|| {
        let v = obj(q, "q")?.0.to_f64();
        if out.is_null() {
            return Err(Fail(MarkovStatus::NullPointer, "output pointer is null".into()));
        }
        *out = v;
        Ok(())
    })
}

/// Binary operation selector for [`markov_quad_arith`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkovOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// `out = a op b`. Operands must share a quadratic field.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_arith(a: *const MarkovQuad, op: MarkovOp, b: *const MarkovQuad, out: *mut *mut MarkovQuad) -> MarkovStatus {
    guard(|| {
        let (a, b) = (&obj(a, "a")?.0, &obj(b, "b")?.0);
        let v = match op {
            MarkovOp::Add => a.try_add(b)?,
            MarkovOp::Sub => a.try_sub(b)?,
            MarkovOp::Mul => a.try_mul(b)?,
            MarkovOp::Div => a.try_div(b)?,
        };
        put(out, MarkovQuad(v))
    })
}

/// Exact comparison; writes -1, 0 or 1.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_cmp(a: *const MarkovQuad, b: *const MarkovQuad, out: *mut c_int) -> MarkovStatus {
    guard(|| {
        let o = obj(a, "a")?.0.cmp_exact(&obj(b, "b")?.0) as c_int;
        if out.is_null() {
            return Err(Fail(MarkovStatus::NullPointer, "output pointer is null".into()));
        }
        *out = o;
        Ok(())
    })
}

/// Periodic continued fraction as `"[a0, ...; (b0, ...)]"`.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_continued_fraction(q: *const MarkovQuad, out: *mut *mut c_char) -> MarkovStatus {
    guard(|| put_string(out, cf_expand(&obj(q, "q")?.0)?.to_string()))
}

/// Lagrange number of a quadratic irrational.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_quad_lagrange_number(q: *const MarkovQuad, out: *mut *mut MarkovQuad) -> MarkovStatus {
    guard(|| put(out, MarkovQuad(lagrange_number(&obj(q, "q")?.0)?)))
}

/// Number of reduced `p/q` with `q <= q_max` and `|x - p/q| < 1/(lambda q^2)`.
///
/// # Safety
/// `x` and `lambda` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_count_approximations(x: *const MarkovQuad, lambda: *const MarkovQuad, q_max: u64, out: *mut usize) -> MarkovStatus {
    guard(|| {
        let n = count_approximations(&obj(x, "x")?.0, &obj(lambda, "lambda")?.0, q_max)?.len();
        if out.is_null() {
            return Err(Fail(MarkovStatus::NullPointer, "output pointer is null".into()));
        }
        *out = n;
        Ok(())
    })
}

// ---- forms ----

/// Parses `"A,2B,C"`.
///
/// # Safety
/// `s` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_form_parse(s: *const c_char, out: *mut *mut MarkovForm) -> MarkovStatus {
    guard(|| put(out, MarkovForm(str_arg(s, "s")?.parse()?)))
}

/// # Safety
/// `f` must be NULL or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn markov_form_free(f: *mut MarkovForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_form_to_string(f: *const MarkovForm, out: *mut *mut c_char) -> MarkovStatus {
    guard(|| put_string(out, obj(f, "f")?.0.to_string()))
}

/// `M(f) = min |f| / sqrt(|det f|)` over lattice points with `|p|, |q| <= bound`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_form_lattice_min(f: *const MarkovForm, bound: u64, out: *mut *mut MarkovQuad) -> MarkovStatus {
    guard(|| put(out, MarkovQuad(obj(f, "f")?.0.lattice_min(bound)?.normalized)))
}

// ---- pictures ----

/// SVG of the Ford circles and Farey tessellation over `[lo, hi]`.
///
/// # Safety
/// `lo` and `hi` must be NUL-terminated rationals; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn markov_render_svg(q_max: u64, lo: *const c_char, hi: *const c_char, out: *mut *mut c_char) -> MarkovStatus {
    guard(|| {
        let window = (parse_rational(str_arg(lo, "lo")?)?, parse_rational(str_arg(hi, "hi")?)?);
        put_string(out, render_svg(&RenderSpec::new(window, q_max))?)
    })
}
