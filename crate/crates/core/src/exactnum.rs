//! Exact arithmetic substrate.
//!
//! [`Rational`] is a canonical big rational. [`QuadExt`] is an element
//! `r + s*sqrt(D)` of a real quadratic field with square-free `D`. All
//! comparisons are exact; floating point only appears in [`QuadExt::to_float`]
//! and [`QuadExt::to_f64`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Binary float with round-half-even, used at presentation boundaries.
pub type BigFloat = FBig<HalfEven, 2>;

const TRIAL_LIMIT: u32 = 1_000_000;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k as u32))
            .collect()
    })
}

/// Splits `n >= 0` as `root^2 * free`.
///
/// `free` is square-free whenever every prime whose square divides `n` is
/// below 10^6 or the leftover cofactor is a perfect square.
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(!n.is_negative());
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let s = n.sqrt();
    if &s * &s == *n {
        return (s, BigInt::one());
    }
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            root *= pb.pow(e / 2);
            if e % 2 == 1 {
                free *= &pb;
            }
        }
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        root *= s;
    } else {
        free *= rest;
    }
    (root, free)
}

/// An element `rat + coeff*sqrt(disc)` of a real quadratic field.
///
/// Canonical form: `disc` is square-free and `> 1`, or `disc == 0` and
/// `coeff == 0` for rationals.
#[derive(Clone, Debug)]
pub struct QuadExt {
    rat: Rational,
    coeff: Rational,
    disc: BigInt,
}

impl QuadExt {
    /// Builds `rat + coeff*sqrt(radicand)` for any non-negative integer radicand.
    pub fn new(rat: Rational, coeff: Rational, radicand: BigInt) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand(radicand.to_string()));
        }
        let (root, free) = square_free_split(&radicand);
        Ok(Self::canonical(rat, coeff * Rational::from_integer(root), free))
    }

    pub(crate) fn canonical(rat: Rational, coeff: Rational, disc: BigInt) -> Self {
        if coeff.is_zero() || disc.is_zero() {
            return QuadExt { rat, coeff: Rational::zero(), disc: BigInt::zero() };
        }
        if disc.is_one() {
            return QuadExt { rat: rat + coeff, coeff: Rational::zero(), disc: BigInt::zero() };
        }
        QuadExt { rat, coeff, disc }
    }

    pub fn from_rational(r: Rational) -> Self {
        QuadExt { rat: r, coeff: Rational::zero(), disc: BigInt::zero() }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `sqrt(q)` for a rational `q >= 0`.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeRadicand(q.to_string()));
        }
        // sqrt(n/d) = sqrt(n*d)/d
        let radicand = q.numer() * q.denom();
        Self::new(Rational::zero(), Rational::new(BigInt::one(), q.denom().clone()), radicand)
    }

    pub fn sqrt_int<T: Into<BigInt>>(n: T) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), n.into())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn sqrt_coeff(&self) -> &Rational {
        &self.coeff
    }

    /// Square-free discriminant; `0` for rationals.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rat.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coeff.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { rat: self.rat.clone(), coeff: -self.coeff.clone(), disc: self.disc.clone() }
    }

    /// Field norm `x * conj(x)`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.coeff * &self.coeff * Rational::from_integer(self.disc.clone())
    }

    /// Field trace `x + conj(x)`.
    pub fn trace(&self) -> Rational {
        &self.rat + &self.rat
    }

    fn field_with(&self, other: &Self) -> Result<BigInt> {
        if self.disc.is_zero() {
            Ok(other.disc.clone())
        } else if other.disc.is_zero() || self.disc == other.disc {
            Ok(self.disc.clone())
        } else {
            Err(Error::MixedField(self.disc.to_string(), other.disc.to_string()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        Ok(Self::canonical(&self.rat + &other.rat, &self.coeff + &other.coeff, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        Ok(Self::canonical(&self.rat - &other.rat, &self.coeff - &other.coeff, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.field_with(other)?;
        let dr = Rational::from_integer(d.clone());
        let r = &self.rat * &other.rat + &self.coeff * &other.coeff * dr;
        let s = &self.rat * &other.coeff + &self.coeff * &other.rat;
        Ok(Self::canonical(r, s, d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::canonical(&self.rat / &n, -(&self.coeff / &n), self.disc.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::canonical(&self.rat * k, &self.coeff * k, self.disc.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        QuadExt { rat: &self.rat + k, coeff: self.coeff.clone(), disc: self.disc.clone() }
    }

    /// Exact sign in `{-1, 0, 1}`.
    pub fn sign(&self) -> i32 {
        let sr = sign_of(&self.rat);
        let ss = sign_of(&self.coeff);
        if ss == 0 {
            return sr;
        }
        if sr == 0 || sr == ss {
            return ss;
        }
        // opposite signs: compare r^2 with s^2 D
        let lhs = &self.rat * &self.rat;
        let rhs = &self.coeff * &self.coeff * Rational::from_integer(self.disc.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => ss,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Integer parts `(a, b, q)` with `self = (a + b*sqrt(disc)) / q`, `q > 0`.
    fn integer_parts(&self) -> (BigInt, BigInt, BigInt) {
        let q = self.rat.denom() * self.coeff.denom();
        let a = self.rat.numer() * self.coeff.denom();
        let b = self.coeff.numer() * self.rat.denom();
        (a, b, q)
    }

    pub fn floor(&self) -> BigInt {
        let (a, b, q) = self.integer_parts();
        floor_surd(&a, &b, &self.disc, &q)
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// `floor(self * scale)` for a positive integer scale, e.g. `10^k` for
    /// truncated decimal output.
    pub fn floor_scaled(&self, scale: &BigInt) -> BigInt {
        let (a, b, q) = self.integer_parts();
        floor_surd(&(a * scale), &(b * scale), &self.disc, &q)
    }

    fn floor_pow2(&self, k: i64) -> BigInt {
        let (mut a, mut b, mut q) = self.integer_parts();
        if k >= 0 {
            a <<= k as usize;
            b <<= k as usize;
        } else {
            q <<= (-k) as usize;
        }
        floor_surd(&a, &b, &self.disc, &q)
    }

    /// Correctly rounded (half-even) binary float with `precision_bits` of
    /// significand.
    pub fn to_float(&self, precision_bits: usize) -> BigFloat {
        let bits = precision_bits.max(2);
        if self.sign() == 0 {
            return BigFloat::ZERO.with_precision(bits).value();
        }
        // Find k with floor(x * 2^k) carrying at least bits + 2 significant bits.
        let guess = self.to_f64_rough();
        let mut k: i64 = bits as i64 + 4 - guess.abs().log2().floor().max(-60000.0) as i64;
        let n = loop {
            let n = self.floor_pow2(k);
            let have = n.bits() as i64;
            if have >= bits as i64 + 2 {
                break n;
            }
            k += (bits as i64 + 2 - have).max(1) + 16;
        };
        let exact = match self.to_rational() {
            Some(r) => {
                let scaled = if k >= 0 {
                    r * Rational::from_integer(BigInt::one() << k as usize)
                } else {
                    r / Rational::from_integer(BigInt::one() << (-k) as usize)
                };
                scaled.is_integer()
            }
            None => false,
        };
        let significand: BigInt = (n << 1) + if exact { 0 } else { 1 };
        BigFloat::from_parts(to_ibig(&significand), -(k as isize) - 1)
            .with_precision(bits)
            .value()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(53).to_f64().value()
    }

    fn to_f64_rough(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(0.0);
        let s = self.coeff.to_f64().unwrap_or(0.0);
        let d = self.disc.to_f64().unwrap_or(0.0);
        let v = r + s * d.sqrt();
        if v.is_finite() && v != 0.0 {
            v
        } else {
            1.0
        }
    }

    /// Exact total order, also across different quadratic fields.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.try_sub(other) {
            return diff.sign().cmp(&0);
        }
        // u - w with u = (r1 - r2) + s1 sqrt(D1), w = s2 sqrt(D2)
        let u = QuadExt {
            rat: &self.rat - &other.rat,
            coeff: self.coeff.clone(),
            disc: self.disc.clone(),
        };
        let su = u.sign();
        let sw = sign_of(&other.coeff);
        let s = if su != sw {
            if su == 0 {
                -sw
            } else {
                su
            }
        } else {
            let w2 = &other.coeff * &other.coeff * Rational::from_integer(other.disc.clone());
            let t = (&u * &u).add_rational(&-w2);
            su * t.sign()
        };
        s.cmp(&0)
    }
}

fn sign_of(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `floor((a + b*sqrt(d)) / q)` for integers with `q > 0`, `d >= 0`.
fn floor_surd(a: &BigInt, b: &BigInt, d: &BigInt, q: &BigInt) -> BigInt {
    let bd = if b.is_zero() || d.is_zero() {
        BigInt::zero()
    } else {
        let m = b * b * d;
        let s = m.sqrt();
        let perfect = &s * &s == m;
        if b.is_positive() {
            s
        } else if perfect {
            -s
        } else {
            -s - 1
        }
    };
    (a + bd).div_floor(q)
}

pub(crate) fn to_ibig(n: &BigInt) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = dashu_int::UBig::from_le_bytes(&bytes);
    match sign {
        Sign::Minus => IBig::from_parts(dashu_int::Sign::Negative, mag),
        _ => IBig::from(mag),
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for QuadExt {}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::from_rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl From<BigInt> for QuadExt {
    fn from(n: BigInt) -> Self {
        QuadExt::from_int(n)
    }
}

// Operator sugar. These panic when the operands live in different fields;
// use the `try_*` methods where that can happen.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$call(rhs).expect("quadratic field arithmetic")
            }
        }
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$call(&rhs).expect("quadratic field arithmetic")
            }
        }
        impl $tr<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$call(rhs).expect("quadratic field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { rat: -self.rat.clone(), coeff: -self.coeff.clone(), disc: self.disc.clone() }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let mag = self.coeff.abs();
        let surd = if mag.is_one() {
            format!("sqrt({})", self.disc)
        } else {
            format!("{}*sqrt({})", mag, self.disc)
        };
        let neg = self.coeff.is_negative();
        if self.rat.is_zero() {
            write!(f, "{}{}", if neg { "-" } else { "" }, surd)
        } else {
            write!(f, "{} {} {}", self.rat, if neg { "-" } else { "+" }, surd)
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => {
            if let Ok(n) = s.parse::<BigInt>() {
                return Ok(Rational::from_integer(n));
            }
            // plain decimals such as 2.5
            let (ip, fp) = s.split_once('.').ok_or_else(bad)?;
            if fp.is_empty() || !fp.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = ip.trim_start().starts_with('-');
            let ip: BigInt = match ip.trim() {
                "" | "-" | "+" => BigInt::zero(),
                t => t.parse().map_err(|_| bad())?,
            };
            let den = BigInt::from(10u32).pow(fp.len() as u32);
            let frac: BigInt = fp.parse().map_err(|_| bad())?;
            let mag = ip.abs() * &den + frac;
            Ok(Rational::new(if neg { -mag } else { mag }, den))
        }
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Accepts sums of terms `r` and `[s*]sqrt(D)`, e.g. `1/2 + 1/2*sqrt(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && !matches!(prev, b'*' | b'/' | b'(' | b'+' | b'-') {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = QuadExt::zero();
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            let value = match term.find("sqrt(") {
                Some(pos) => {
                    let head = &term[..pos];
                    let inner = term[pos + 5..]
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("unclosed sqrt in {term:?}")))?;
                    let radicand: BigInt =
                        inner.parse().map_err(|_| Error::Parse(format!("bad radicand {inner:?}")))?;
                    let coeff = match head {
                        "" => Rational::one(),
                        "-" => -Rational::one(),
                        h => parse_rational(h.strip_suffix('*').ok_or_else(|| {
                            Error::Parse(format!("expected '*' before sqrt in {term:?}"))
                        })?)?,
                    };
                    QuadExt::new(Rational::zero(), coeff, radicand)?
                }
                None => QuadExt::from_rational(parse_rational(term)?),
            };
            acc = acc.try_add(&value)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_sum_and_product() {
        let a = q("1/2 + 1/2*sqrt(5)");
        let b = q("1/2 - 1/2*sqrt(5)");
        assert_eq!(&a + &b, QuadExt::one());
        let c = q("-1/2 + 1/2*sqrt(5)");
        assert_eq!(&a * &c, QuadExt::one());
    }

    #[test]
    fn inverse_of_sqrt2() {
        let x = QuadExt::sqrt_int(2).unwrap();
        assert_eq!(x.inv().unwrap(), q("1/2*sqrt(2)"));
        assert_eq!(QuadExt::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = QuadExt::sqrt_int(2).unwrap();
        let b = QuadExt::sqrt_int(3).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::MixedField(_, _))));
        assert!(matches!(a.try_mul(&b), Err(Error::MixedField(_, _))));
        // rationals mix with anything
        assert!(a.try_mul(&QuadExt::from(rat(3, 7))).is_ok());
    }

    #[test]
    fn signs() {
        assert_eq!(q("3/2 - sqrt(2)").sign(), 1);
        assert_eq!(QuadExt::new(int(0), int(0), BigInt::from(5)).unwrap().sign(), 0);
        assert_eq!(q("1 - sqrt(2)").sign(), -1);
    }

    #[test]
    fn square_free_normalisation() {
        assert_eq!(q("sqrt(32)"), q("4*sqrt(2)"));
        assert_eq!(q("sqrt(32)").disc(), &BigInt::from(2));
        assert!(q("sqrt(49)").is_rational());
        assert_eq!(QuadExt::sqrt_rational(&rat(9, 4)).unwrap(), QuadExt::from(rat(3, 2)));
        let (root, free) = square_free_split(&BigInt::from(9u64 * 7565));
        assert_eq!((root, free), (BigInt::from(3), BigInt::from(7565)));
    }

    #[test]
    fn floats() {
        assert_eq!(q("1/2 + 1/2*sqrt(5)").to_f64(), 1.618033988749895);
        assert_eq!(q("sqrt(2)").to_f64(), std::f64::consts::SQRT_2);
        assert_eq!(QuadExt::zero().to_f64(), 0.0);
        assert_eq!(QuadExt::from(rat(1, 3)).to_f64(), 1.0 / 3.0);
        assert_eq!(QuadExt::from(rat(-5, 8)).to_f64(), -0.625);
        // heavy cancellation: sqrt(10^20 + 1) - 10^10 ~ 5e-11
        let x = q("sqrt(100000000000000000001) - 10000000000");
        let expect = 1.0 / (2.0 * 1e10);
        assert!((x.to_f64() - expect).abs() < 1e-25);
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q("sqrt(2)").floor(), BigInt::from(1));
        assert_eq!(q("-sqrt(2)").floor(), BigInt::from(-2));
        assert_eq!(q("-sqrt(2)").ceil(), BigInt::from(-1));
        assert_eq!(QuadExt::from(rat(-3, 1)).floor(), BigInt::from(-3));
        assert_eq!(q("1/5*sqrt(221)").floor_scaled(&BigInt::from(100)), BigInt::from(297));
    }

    #[test]
    fn cross_field_order() {
        let a = q("sqrt(2)");
        let b = q("sqrt(3)");
        assert!(a < b);
        assert!(q("1 + sqrt(2)") > q("sqrt(5)"));
        assert!(q("-sqrt(7)") < q("1/2 - sqrt(3)"));
        assert_ne!(a, b);
    }

    #[test]
    fn parse_print_forms() {
        for s in ["1/2 + 1/2*sqrt(5)", "sqrt(2)", "-sqrt(3)", "9/10 - 1/10*sqrt(221)", "-7/3", "0"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("2.5"), QuadExt::from(rat(5, 2)));
        assert!("sqrt(".parse::<QuadExt>().is_err());
        assert!("1/0".parse::<QuadExt>().is_err());
        assert!("sqrt(-2)".parse::<QuadExt>().is_err());
    }
}
