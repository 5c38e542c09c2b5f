//! Horocycles, geodesics and points of the upper half-plane, with signed
//! distances between them, the Farey tessellation and Ford circles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::forms::{BinaryQuadraticForm, FormKind};
use crate::moebius::ProjPoint;

/// The horocycle `h(p, q)`: centered at `p/q` with Euclidean diameter
/// `1/q^2`, or the line `y = p^2` when `q = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Horocycle {
    pub p: Rational,
    pub q: Rational,
}

impl Horocycle {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Horocycle { p, q })
    }

    pub fn int<T: Into<BigInt>>(p: T, q: T) -> Result<Self> {
        Self::new(Rational::from_integer(p.into()), Rational::from_integer(q.into()))
    }

    pub fn center(&self) -> ProjPoint {
        if self.q.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::rational(&self.p / &self.q)
        }
    }

    /// Euclidean diameter `1/q^2`, or the height `p^2` of the line.
    pub fn size(&self) -> Rational {
        if self.q.is_zero() {
            &self.p * &self.p
        } else {
            (&self.q * &self.q).recip()
        }
    }

    pub fn vector(&self) -> (Rational, Rational) {
        (self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for Horocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({}, {})", self.p, self.q)
    }
}

/// `det [[p1, p2], [q1, q2]]`.
pub fn horocycle_det(h1: &Horocycle, h2: &Horocycle) -> Rational {
    &h1.p * &h2.q - &h2.p * &h1.q
}

/// A signed distance `log(arg)` stored through its exact argument, or `-∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDistance {
    arg: Option<QuadExt>,
}

impl SignedDistance {
    pub fn neg_infinity() -> Self {
        SignedDistance { arg: None }
    }

    /// `log(arg)` for `arg > 0`.
    pub fn from_arg(arg: QuadExt) -> Result<Self> {
        if arg.sign() <= 0 {
            return Err(Error::InvalidArgument(format!("log argument {arg} is not positive")));
        }
        Ok(SignedDistance { arg: Some(arg) })
    }

    fn from_nonneg(arg: QuadExt) -> Self {
        if arg.is_zero() {
            Self::neg_infinity()
        } else {
            SignedDistance { arg: Some(arg) }
        }
    }

    pub fn arg(&self) -> Option<&QuadExt> {
        self.arg.as_ref()
    }

    pub fn is_neg_infinity(&self) -> bool {
        self.arg.is_none()
    }

    pub fn to_f64(&self) -> f64 {
        match &self.arg {
            None => f64::NEG_INFINITY,
            Some(a) => {
                let v = a.to_f64();
                if v.is_finite() && v > 0.0 {
                    v.ln()
                } else {
                    a.to_float(128).ln().to_f64().value()
                }
            }
        }
    }
}

impl PartialOrd for SignedDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.arg, &other.arg) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp_exact(b),
        }
    }
}

impl fmt::Display for SignedDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.arg {
            None => write!(f, "-inf"),
            Some(a) => write!(f, "log({a})"),
        }
    }
}

/// A geodesic with distinct endpoints, stored unordered.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Geodesic {
    #[serde(with = "proj_pair")]
    ends: (ProjPoint, ProjPoint),
}

mod proj_pair {
    use super::ProjPoint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &(ProjPoint, ProjPoint), s: S) -> Result<S::Ok, S::Error> {
        (v.0.to_string(), v.1.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(ProjPoint, ProjPoint), D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        let p = |s: String| s.parse::<ProjPoint>().map_err(serde::de::Error::custom);
        Ok((p(a)?, p(b)?))
    }
}

impl Geodesic {
    /// Endpoints are sorted, `∞` last.
    pub fn new(e1: ProjPoint, e2: ProjPoint) -> Result<Self> {
        match e1.cmp(&e2) {
            Ordering::Equal => Err(Error::DegenerateGeodesic),
            Ordering::Less => Ok(Geodesic { ends: (e1, e2) }),
            Ordering::Greater => Ok(Geodesic { ends: (e2, e1) }),
        }
    }

    pub fn e1(&self) -> &ProjPoint {
        &self.ends.0
    }

    pub fn e2(&self) -> &ProjPoint {
        &self.ends.1
    }
}

impl PartialEq for Geodesic {
    fn eq(&self, o: &Self) -> bool {
        self.ends == o.ends
    }
}

impl Eq for Geodesic {}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ends.0, self.ends.1)
    }
}

/// A point `x + iy` with `x` and `y^2` rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPoint {
    x: Rational,
    y_sq: Rational,
}

impl HPoint {
    pub fn new(x: Rational, y: Rational) -> Result<Self> {
        if !y.is_positive() {
            return Err(Error::InvalidArgument(format!("imaginary part {y} is not positive")));
        }
        Ok(HPoint { x, y_sq: &y * &y })
    }

    pub fn from_y_squared(x: Rational, y_sq: Rational) -> Result<Self> {
        if !y_sq.is_positive() {
            return Err(Error::InvalidArgument(format!("y^2 = {y_sq} is not positive")));
        }
        Ok(HPoint { x, y_sq })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y_squared(&self) -> &Rational {
        &self.y_sq
    }

    pub fn y(&self) -> QuadExt {
        QuadExt::sqrt_rational(&self.y_sq).expect("positive")
    }

    /// The positive definite form `(p - xq)^2 + y^2 q^2` with root `x + iy`.
    pub fn form(&self) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(Rational::one(), -&self.x, &self.x * &self.x + &self.y_sq)
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i*({})", self.x, self.y())
    }
}

/// Signed distance `log det^2` between horocycles; `-∞` for equal centers.
pub fn dist_horo_horo(h1: &Horocycle, h2: &Horocycle) -> SignedDistance {
    let d = horocycle_det(h1, h2);
    SignedDistance::from_nonneg(QuadExt::from(&d * &d))
}

/// Signed distance to the vertical geodesic `{x} × (0, ∞)`, argument
/// `2 q^2 |x - p/q|`.
pub fn dist_horo_vertical(h: &Horocycle, x: &QuadExt) -> Result<SignedDistance> {
    if h.q.is_zero() {
        return Err(Error::HorocycleAtInfinity);
    }
    let diff = x.add_rational(&-(&h.p / &h.q)).abs();
    Ok(SignedDistance::from_nonneg(diff.scale(&(Rational::from_integer(BigInt::from(2)) * &h.q * &h.q))))
}

/// Signed distance to a geodesic. For endpoints `e1, e2` the argument is
/// `|f(p, q)| / sqrt(-det f)` with `f = (p - e1 q)(p - e2 q)`.
pub fn dist_horo_geodesic(h: &Horocycle, g: &Geodesic) -> Result<SignedDistance> {
    let (p, q) = (&h.p, &h.q);
    let lin = |e: &QuadExt| e.scale(&-q.clone()).add_rational(p);
    match (g.e1(), g.e2()) {
        (ProjPoint::Finite(e1), ProjPoint::Finite(e2)) => {
            let val = lin(e1).try_mul(&lin(e2))?.abs();
            let half_width = e2.try_sub(e1)?.abs().scale(&Rational::new(BigInt::one(), BigInt::from(2)));
            Ok(SignedDistance::from_nonneg(val.try_div(&half_width)?))
        }
        (ProjPoint::Finite(e), ProjPoint::Infinity) | (ProjPoint::Infinity, ProjPoint::Finite(e)) => {
            let val = lin(e).scale(&(Rational::from_integer(BigInt::from(2)) * q)).abs();
            Ok(SignedDistance::from_nonneg(val))
        }
        _ => Err(Error::DegenerateGeodesic),
    }
}

/// Signed distance to the geodesic of an indefinite form: argument
/// `|f(p, q)| / sqrt(-det f)`.
pub fn dist_horo_form_geodesic(h: &Horocycle, f: &BinaryQuadraticForm) -> Result<SignedDistance> {
    if f.kind() != FormKind::Indefinite {
        return Err(Error::NotIndefinite);
    }
    let v = QuadExt::from(f.eval(&h.p, &h.q).abs());
    let s = QuadExt::sqrt_rational(&-f.det())?;
    Ok(SignedDistance::from_nonneg(v.try_div(&s)?))
}

/// Signed distance to the root of a definite form: argument
/// `|f(p, q)| / sqrt(det f)`.
pub fn dist_horo_point(h: &Horocycle, f: &BinaryQuadraticForm) -> Result<SignedDistance> {
    if f.kind() != FormKind::Definite {
        return Err(Error::NotDefinite);
    }
    let v = QuadExt::from(f.eval(&h.p, &h.q).abs());
    let s = QuadExt::sqrt_rational(&f.det())?;
    SignedDistance::from_arg(v.try_div(&s)?)
}

pub fn dist_horo_hpoint(h: &Horocycle, z: &HPoint) -> Result<SignedDistance> {
    dist_horo_point(h, &z.form())
}

/// A vertex `p/q` of the Farey tessellation, `q = 0` meaning `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FareyVertex {
    pub p: BigInt,
    pub q: BigInt,
}

impl FareyVertex {
    fn new(p: BigInt, q: BigInt) -> Self {
        FareyVertex { p, q }
    }

    pub fn infinity() -> Self {
        Self::new(BigInt::one(), BigInt::zero())
    }

    pub fn to_proj(&self) -> ProjPoint {
        if self.q.is_zero() {
            ProjPoint::Infinity
        } else {
            ProjPoint::rational(Rational::new(self.p.clone(), self.q.clone()))
        }
    }

    pub fn horocycle(&self) -> Horocycle {
        Horocycle::new(Rational::from_integer(self.p.clone()), Rational::from_integer(self.q.clone())).expect("nonzero")
    }
}

impl fmt::Display for FareyVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "inf")
        } else if self.q.is_one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// An ideal triangle of the Farey tessellation, vertices in increasing
/// order with `∞` last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyTriangle {
    pub vertices: [FareyVertex; 3],
}

impl FareyTriangle {
    fn new(mut v: [FareyVertex; 3]) -> Self {
        v.sort_by_key(|a| a.to_proj());
        FareyTriangle { vertices: v }
    }

    fn labels(&self) -> [String; 3] {
        [0, 1, 2].map(|i| self.vertices[i].to_string())
    }
}

impl fmt::Display for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.labels();
        write!(f, "({a}, {b}, {c})")
    }
}

/// Position of `z` relative to the semicircle over `[u, v]`.
fn semicircle_cmp(z: &HPoint, u: &FareyVertex, v: &FareyVertex) -> Ordering {
    let (u, v) = (Rational::new(u.p.clone(), u.q.clone()), Rational::new(v.p.clone(), v.q.clone()));
    let two = Rational::from_integer(BigInt::from(2));
    let c = (&u + &v) / &two;
    let r = (&v - &u) / &two;
    let dx = z.x() - c;
    (&dx * &dx + z.y_squared()).cmp(&(&r * &r))
}

fn mediant(a: &FareyVertex, b: &FareyVertex) -> FareyVertex {
    FareyVertex::new(&a.p + &b.p, &a.q + &b.q)
}

fn on_edge(a: &FareyVertex, b: &FareyVertex, t1: FareyTriangle, t2: FareyTriangle) -> Error {
    Error::OnEdge { edge: (a.to_string(), b.to_string()), left: Box::new(t1.labels()), right: Box::new(t2.labels()) }
}

/// The Farey triangle containing `z`, or `OnEdge` when `z` lies on an edge.
pub fn farey_triangle_of(z: &HPoint) -> Result<FareyTriangle> {
    let inf = FareyVertex::infinity();
    let n = z.x().floor().to_integer();
    let v = |p: BigInt| FareyVertex::new(p, BigInt::one());
    if z.x().is_integer() {
        let t1 = FareyTriangle::new([v(&n - 1), v(n.clone()), inf.clone()]);
        let t2 = FareyTriangle::new([v(n.clone()), v(&n + 1), inf.clone()]);
        return Err(on_edge(&v(n), &inf, t1, t2));
    }
    let (mut lo, mut hi) = (v(n.clone()), v(&n + 1));
    match semicircle_cmp(z, &lo, &hi) {
        Ordering::Greater => return Ok(FareyTriangle::new([lo, hi, inf])),
        Ordering::Equal => {
            let m = mediant(&lo, &hi);
            return Err(on_edge(&lo, &hi, FareyTriangle::new([lo.clone(), hi.clone(), inf]), FareyTriangle::new([lo.clone(), m, hi.clone()])));
        }
        Ordering::Less => {}
    }
    loop {
        let m = mediant(&lo, &hi);
        match semicircle_cmp(z, &lo, &m) {
            Ordering::Less => {
                hi = m;
                continue;
            }
            Ordering::Equal => {
                let inner = mediant(&lo, &m);
                return Err(on_edge(&lo, &m, FareyTriangle::new([lo.clone(), m.clone(), hi.clone()]), FareyTriangle::new([lo.clone(), inner, m.clone()])));
            }
            Ordering::Greater => {}
        }
        match semicircle_cmp(z, &m, &hi) {
            Ordering::Less => {
                lo = m;
                continue;
            }
            Ordering::Equal => {
                let inner = mediant(&m, &hi);
                return Err(on_edge(&m, &hi, FareyTriangle::new([lo.clone(), m.clone(), hi.clone()]), FareyTriangle::new([m.clone(), inner, hi.clone()])));
            }
            Ordering::Greater => {}
        }
        return Ok(FareyTriangle::new([lo, m, hi]));
    }
}

/// Ford circles `h(p, q)` with `gcd(p, q) = 1`, `1 <= q <= q_max` and `p/q`
/// in the closed window, in increasing order of `p/q`, followed by `h(1, 0)`.
pub fn ford_circles(q_max: u64, window: (&Rational, &Rational)) -> Result<Vec<Horocycle>> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::InvalidArgument("empty window".into()));
    }
    let mut fr: Vec<Rational> = Vec::new();
    for q in 1..=q_max {
        let qb = BigInt::from(q);
        let qr = Rational::from_integer(qb.clone());
        let start = (lo * &qr).ceil().to_integer();
        let end = (hi * &qr).floor().to_integer();
        let mut p = start;
        while p <= end {
            if p.gcd(&qb).is_one() {
                fr.push(Rational::new(p.clone(), qb.clone()));
            }
            p += 1;
        }
    }
    fr.sort();
    let mut out: Vec<Horocycle> = fr
        .into_iter()
        .map(|r| Horocycle::new(Rational::from_integer(r.numer().clone()), Rational::from_integer(r.denom().clone())).expect("nonzero"))
        .collect();
    out.push(Horocycle::int(1, 0)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    fn h(p: i64, q: i64) -> Horocycle {
        Horocycle::int(p, q).unwrap()
    }

    #[test]
    fn horo_horo() {
        assert_eq!(dist_horo_horo(&h(0, 1), &h(1, 0)).arg(), Some(&QuadExt::one()));
        assert_eq!(dist_horo_horo(&h(0, 1), &h(1, 1)).to_f64(), 0.0);
        assert!(dist_horo_horo(&h(1, 2), &h(2, 4)).is_neg_infinity());
        assert_eq!(dist_horo_horo(&h(1, 3), &h(2, 1)).arg(), Some(&QuadExt::from(int(25))));
        assert_eq!(Horocycle::int(0, 0), Err(Error::ZeroVector));
    }

    #[test]
    fn horo_vertical_and_geodesic_agree() {
        let hc = h(2, 3);
        let x = q("sqrt(2)");
        let a = dist_horo_vertical(&hc, &x).unwrap();
        let g = Geodesic::new(ProjPoint::Finite(x), ProjPoint::Infinity).unwrap();
        assert_eq!(dist_horo_geodesic(&hc, &g).unwrap(), a);
        assert_eq!(dist_horo_vertical(&h(1, 0), &q("0")), Err(Error::HorocycleAtInfinity));
        assert!(dist_horo_vertical(&h(1, 2), &q("1/2")).unwrap().is_neg_infinity());
    }

    #[test]
    fn horo_geodesic_matches_form() {
        let f = BinaryQuadraticForm::from_ints(1, -1, -1);
        let g = crate::forms::geodesic_of(&f).unwrap();
        for hc in [h(1, 0), h(0, 1), h(3, 5), h(-2, 7)] {
            assert_eq!(dist_horo_geodesic(&hc, &g).unwrap(), dist_horo_form_geodesic(&hc, &f).unwrap(), "{hc}");
        }
        // h(1, 0) to the golden geodesic: |f(1,0)| / sqrt(5/4)
        assert_eq!(dist_horo_geodesic(&h(1, 0), &g).unwrap().arg(), Some(&q("2/5*sqrt(5)")));
    }

    #[test]
    fn horo_point() {
        let i = HPoint::new(int(0), int(1)).unwrap();
        // h(1, 0) is the line y = 1, passing through i
        assert_eq!(dist_horo_hpoint(&h(1, 0), &i).unwrap().to_f64(), 0.0);
        // 4i lies inside the horoball y > 1
        let z = HPoint::new(int(0), int(4)).unwrap();
        assert!((dist_horo_hpoint(&h(1, 0), &z).unwrap().to_f64() + 4f64.ln()).abs() < 1e-15);
        let z = HPoint::new(int(0), rat(1, 4)).unwrap();
        assert!((dist_horo_hpoint(&h(1, 0), &z).unwrap().to_f64() - 4f64.ln()).abs() < 1e-15);
        assert_eq!(dist_horo_point(&h(1, 0), &BinaryQuadraticForm::from_ints(1, -1, -1)), Err(Error::NotDefinite));
    }

    #[test]
    fn farey_triangles() {
        let t = farey_triangle_of(&HPoint::new(rat(1, 2), int(1)).unwrap()).unwrap();
        assert_eq!(t.to_string(), "(0, 1, inf)");
        let t = farey_triangle_of(&HPoint::new(rat(1, 2), rat(1, 3)).unwrap()).unwrap();
        assert_eq!(t.to_string(), "(0, 1/2, 1)");
        let t = farey_triangle_of(&HPoint::new(rat(2, 5), rat(1, 100)).unwrap()).unwrap();
        assert_eq!(t.to_string(), "(1/3, 2/5, 1/2)");
        match farey_triangle_of(&HPoint::new(rat(1, 2), rat(1, 2)).unwrap()) {
            Err(Error::OnEdge { edge, .. }) => assert_eq!(edge, ("0".into(), "1".into())),
            other => panic!("{other:?}"),
        }
        assert!(matches!(farey_triangle_of(&HPoint::new(int(3), int(1)).unwrap()), Err(Error::OnEdge { .. })));
    }

    #[test]
    fn ford_window() {
        let v = ford_circles(5, (&int(0), &int(1))).unwrap();
        assert_eq!(v.len(), 12);
        assert_eq!(v.last().unwrap(), &h(1, 0));
        // Farey neighbours are tangent
        for w in v[..11].windows(2) {
            assert_eq!(horocycle_det(&w[0], &w[1]).abs(), int(1));
        }
    }
}
