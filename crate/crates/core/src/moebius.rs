//! 2x2 matrices acting on the boundary `RP^1`, on the upper half-plane and on
//! horocycle vectors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cf;
use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::hypgeo::HPoint;

/// A point of `R ∪ {∞}` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjPoint {
    Finite(QuadExt),
    Infinity,
}

impl ProjPoint {
    pub fn finite(&self) -> Option<&QuadExt> {
        match self {
            ProjPoint::Finite(x) => Some(x),
            ProjPoint::Infinity => None,
        }
    }

    pub fn rational(r: Rational) -> Self {
        ProjPoint::Finite(QuadExt::from_rational(r))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ProjPoint::Finite(x) => x.to_f64(),
            ProjPoint::Infinity => f64::INFINITY,
        }
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders finite points by value and puts `∞` last.
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.cmp(b),
            (ProjPoint::Finite(_), ProjPoint::Infinity) => Less,
            (ProjPoint::Infinity, ProjPoint::Finite(_)) => Greater,
            (ProjPoint::Infinity, ProjPoint::Infinity) => Equal,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for ProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(ProjPoint::Infinity),
            t => Ok(ProjPoint::Finite(t.parse()?)),
        }
    }
}

/// `[[a, b], [c, d]]` with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Mat2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints<T: Into<BigInt>>(a: T, b: T, c: T, d: T) -> Self {
        let r = |x: T| Rational::from_integer(x.into());
        Mat2 { a: r(a), b: r(b), c: r(c), d: r(d) }
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Integer entries and `|det| = 1`.
    pub fn is_unimodular(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d].iter().all(|x| x.is_integer()) && self.det().abs().is_one()
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Mat2 {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        })
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    /// Fractional linear action on the boundary. Orientation-reversing
    /// matrices act by the same formula there (conjugation fixes the real
    /// line).
    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        match x {
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::rational(&self.a / &self.c)
                }
            }
            ProjPoint::Finite(x) => {
                let num = x.scale(&self.a).add_rational(&self.b);
                let den = x.scale(&self.c).add_rational(&self.d);
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(&num / &den)
                }
            }
        }
    }

    /// Action on the upper half-plane: `z -> (az+b)/(cz+d)` for `det > 0`,
    /// `z -> (a z̄ + b)/(c z̄ + d)` for `det < 0`.
    pub fn apply_point(&self, z: &HPoint) -> Result<HPoint> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let (x, y2) = (z.x(), z.y_squared());
        let cxd = &self.c * x + &self.d;
        let den = &cxd * &cxd + &self.c * &self.c * y2;
        let nx = ((&self.a * x + &self.b) * &cxd + &self.a * &self.c * y2) / &den;
        let scale = det.abs() / &den;
        HPoint::from_y_squared(nx, y2 * &scale * &scale)
    }

    /// Matrix-vector product on horocycle parameters `(p, q)`.
    pub fn act_on_vector(&self, v: &(Rational, Rational)) -> Result<(Rational, Rational)> {
        if v.0.is_zero() && v.1.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok((&self.a * &v.0 + &self.b * &v.1, &self.c * &v.0 + &self.d * &v.1))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn moebius_apply(m: &Mat2, x: &ProjPoint) -> ProjPoint {
    m.apply(x)
}

pub fn act_on_vector(m: &Mat2, v: &(Rational, Rational)) -> Result<(Rational, Rational)> {
    m.act_on_vector(v)
}

/// Generators of the modular torus group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusGroupGen {
    /// `z -> (z - 1)/(-z + 2)`
    A,
    /// `z -> (z + 1)/(z + 2)`
    B,
}

impl TorusGroupGen {
    pub fn matrix(self) -> Mat2 {
        match self {
            TorusGroupGen::A => Mat2::from_ints(1, -1, -1, 2),
            TorusGroupGen::B => Mat2::from_ints(1, 1, 1, 2),
        }
    }
}

/// Elementary isometries `z+b`, `λz`, `-z̄`, `1/z̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary {
    Translate(Rational),
    Scale(Rational),
    NegConj,
    InvConj,
}

impl Elementary {
    /// Normalised matrix up to a positive factor (`diag(λ, 1)` for scaling).
    pub fn matrix(&self) -> Mat2 {
        let one = Rational::one;
        let zero = Rational::zero;
        match self {
            Elementary::Translate(b) => Mat2::new(one(), b.clone(), zero(), one()),
            Elementary::Scale(l) => Mat2::new(l.clone(), zero(), zero(), one()),
            Elementary::NegConj => Mat2::from_ints(-1, 0, 0, 1),
            Elementary::InvConj => Mat2::from_ints(0, 1, 1, 0),
        }
    }
}

/// Writes a unimodular integer matrix as a product `g_1 g_2 ... g_n` of
/// elementary isometries, up to the sign `±1` which acts trivially.
pub fn decompose_unimodular(m: &Mat2) -> Result<Vec<Elementary>> {
    if !m.is_unimodular() {
        return Err(Error::InvalidArgument(format!("{m} is not in GL2(Z)")));
    }
    let mut out = Vec::new();
    let mut cur = m.clone();
    while !cur.c.is_zero() {
        // cur = T^k J cur', with J swapping rows
        let k = (&cur.a / &cur.c).floor();
        if !k.is_zero() {
            out.push(Elementary::Translate(k.clone()));
        }
        out.push(Elementary::InvConj);
        cur = Mat2 {
            a: cur.c.clone(),
            b: cur.d.clone(),
            c: &cur.a - &k * &cur.c,
            d: &cur.b - &k * &cur.d,
        };
    }
    // cur = [[±1, b], [0, ±1]]
    let (a, d) = (cur.a.clone(), cur.d.clone());
    let mut t = &cur.b / &d;
    if a != d {
        out.push(Elementary::NegConj);
        t = -t;
    }
    if !t.is_zero() {
        out.push(Elementary::Translate(t));
    }
    Ok(out)
}

pub fn compose(gens: &[Elementary]) -> Mat2 {
    gens.iter().fold(Mat2::identity(), |acc, g| acc.mul(&g.matrix()))
}

/// Searches a matrix `W` in `GL2(Z)` with `W(x) = y` by matching complete
/// quotients of the continued fractions of `x` and `y` within `search_depth`
/// steps.
pub fn numbers_equivalent(x: &QuadExt, y: &QuadExt, search_depth: usize) -> Result<Option<Mat2>> {
    if x.is_rational() || y.is_rational() {
        return Err(Error::NotQuadraticIrrational);
    }
    let qx = cf::complete_quotients(x, search_depth)?;
    let qy = cf::complete_quotients(y, search_depth)?;
    let mut best: Option<(usize, usize)> = None;
    for (i, (ax, _)) in qx.iter().enumerate().skip(1) {
        for (j, (ay, _)) in qy.iter().enumerate().skip(1) {
            if ax == ay && best.is_none_or(|(bi, bj)| i + j < bi + bj) {
                best = Some((i, j));
            }
        }
    }
    let Some((i, j)) = best else { return Ok(None) };
    let w = qy[j].1.mul(&qx[i].1.inverse()?);
    debug_assert_eq!(w.apply(&ProjPoint::Finite(x.clone())), ProjPoint::Finite(y.clone()));
    Ok(Some(w))
}
