//! Real binary quadratic forms `f(p, q) = A p^2 + 2B pq + C q^2` with exact
//! rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{parse_rational, QuadExt, Rational};
use crate::hypgeo::{Geodesic, HPoint};
use crate::moebius::{Mat2, ProjPoint};

/// Coefficients are stored as `(A, B, C)`; the middle coefficient of the
/// polynomial is `2B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormKind {
    /// `det < 0`
    Indefinite,
    /// `det > 0`
    Definite,
    /// `det = 0`
    Degenerate,
}

/// Result of a lattice minimum computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMin {
    /// `min |f(p, q)|` over the searched lattice points.
    pub min: Rational,
    /// A point `(p, q)` attaining the minimum.
    pub witness: (BigInt, BigInt),
    /// `M(f) = min / sqrt(|det f|)`.
    pub normalized: QuadExt,
}

impl LatticeMin {
    pub fn normalized_f64(&self) -> f64 {
        self.normalized.to_f64()
    }
}

impl BinaryQuadraticForm {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    /// `A p^2 + mid pq + C q^2`.
    pub fn from_coeffs(a: Rational, mid: Rational, c: Rational) -> Self {
        let b = mid / Rational::from_integer(BigInt::from(2));
        BinaryQuadraticForm { a, b, c }
    }

    pub fn from_ints(a: i64, mid: i64, c: i64) -> Self {
        let r = |x: i64| Rational::from_integer(x.into());
        Self::from_coeffs(r(a), r(mid), r(c))
    }

    pub fn middle(&self) -> Rational {
        &self.b + &self.b
    }

    /// `AC - B^2`.
    pub fn det(&self) -> Rational {
        &self.a * &self.c - &self.b * &self.b
    }

    pub fn kind(&self) -> FormKind {
        let d = self.det();
        if d.is_zero() {
            FormKind::Degenerate
        } else if d.is_positive() {
            FormKind::Definite
        } else {
            FormKind::Indefinite
        }
    }

    pub fn eval(&self, p: &Rational, q: &Rational) -> Rational {
        &self.a * p * p + (&self.b + &self.b) * p * q + &self.c * q * q
    }

    pub fn eval_int(&self, p: &BigInt, q: &BigInt) -> Rational {
        self.eval(&Rational::from_integer(p.clone()), &Rational::from_integer(q.clone()))
    }

    /// Evaluates at quadratic irrationals from a common field.
    pub fn eval_quad(&self, p: &QuadExt, q: &QuadExt) -> QuadExt {
        let pp = p * p;
        let pq = p * q;
        let qq = q * q;
        &(&pp.scale(&self.a) + &pq.scale(&self.middle())) + &qq.scale(&self.c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        BinaryQuadraticForm { a: &self.a * k, b: &self.b * k, c: &self.c * k }
    }

    /// `f∘M`, i.e. `(p, q) -> f(ap + bq, cp + dq)`.
    pub fn act(&self, m: &Mat2) -> Self {
        let (a, b, c, d) = (&m.a, &m.b, &m.c, &m.d);
        let na = self.eval(a, c);
        let nb = &self.a * a * b + &self.b * (a * d + b * c) + &self.c * c * d;
        let nc = self.eval(b, d);
        BinaryQuadraticForm { a: na, b: nb, c: nc }
    }

    /// `Some(k)` with `other = k * self`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let k = [(&self.a, &other.a), (&self.b, &other.b), (&self.c, &other.c)]
            .iter()
            .find(|(s, _)| !s.is_zero())
            .map(|(s, o)| *o / *s)?;
        (self.scale(&k) == *other).then_some(k)
    }

    /// Primitive integer form `(α, β, γ)` (polynomial coefficients) and
    /// `μ > 0` with `f = μ (α p^2 + β pq + γ q^2)`.
    pub fn primitive(&self) -> ((BigInt, BigInt, BigInt), Rational) {
        let coeffs = [self.a.clone(), self.middle(), self.c.clone()];
        let l = coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return ((BigInt::zero(), BigInt::zero(), BigInt::zero()), Rational::one());
        }
        let mu = Rational::new(g.clone(), l);
        ((&ints[0] / &g, &ints[1] / &g, &ints[2] / &g), mu)
    }

    /// Boundary roots of an indefinite form, smaller one first, `∞` last.
    pub fn roots(&self) -> Result<(ProjPoint, ProjPoint)> {
        let det = self.det();
        if !det.is_negative() {
            return Err(Error::NotIndefinite);
        }
        let s = QuadExt::sqrt_rational(&-det)?;
        if self.a.is_zero() {
            // f = q (2B p + C q), B != 0
            let r = -&self.c / self.middle();
            return Ok((ProjPoint::rational(r), ProjPoint::Infinity));
        }
        let inv_a = self.a.recip();
        let mb = -&self.b;
        let r1 = (-&s).add_rational(&mb).scale(&inv_a);
        let r2 = s.add_rational(&mb).scale(&inv_a);
        if r1 < r2 {
            Ok((ProjPoint::Finite(r1), ProjPoint::Finite(r2)))
        } else {
            Ok((ProjPoint::Finite(r2), ProjPoint::Finite(r1)))
        }
    }

    /// Minimum of `|f|` over nonzero integer points with `|p|, |q| <= bound`.
    pub fn lattice_min(&self, bound: u64) -> Result<LatticeMin> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::DegenerateForm);
        }
        if bound == 0 {
            return Err(Error::InvalidArgument("bound must be at least 1".into()));
        }
        let ((al, be, ga), mu) = self.primitive();
        let small = |x: &BigInt| x.abs() < BigInt::from(1u64 << 40);
        let (m, w) = if bound <= (1 << 20) && small(&al) && small(&be) && small(&ga) {
            let (al, be, ga) = (al.to_i128().unwrap(), be.to_i128().unwrap(), ga.to_i128().unwrap());
            let n = bound as i128;
            let mut best: Option<(i128, (i128, i128))> = None;
            for q in 0..=n {
                let p_lo = if q == 0 { 1 } else { -n };
                for p in p_lo..=n {
                    let v = (al * p * p + be * p * q + ga * q * q).abs();
                    if best.is_none_or(|(b, _)| v < b) {
                        best = Some((v, (p, q)));
                    }
                }
            }
            let (v, (p, q)) = best.expect("nonempty");
            (BigInt::from(v), (BigInt::from(p), BigInt::from(q)))
        } else {
            let n = BigInt::from(bound);
            let mut best: Option<(BigInt, (BigInt, BigInt))> = None;
            let mut q = BigInt::zero();
            while q <= n {
                let mut p = if q.is_zero() { BigInt::one() } else { -&n };
                while p <= n {
                    let v = (&al * &p * &p + &be * &p * &q + &ga * &q * &q).abs();
                    if best.as_ref().is_none_or(|(b, _)| &v < b) {
                        best = Some((v, (p.clone(), q.clone())));
                    }
                    p += 1;
                }
                q += 1;
            }
            best.expect("nonempty")
        };
        let min = Rational::from_integer(m) * mu;
        let normalized = QuadExt::sqrt_rational(&(&min * &min / det.abs()))?;
        Ok(LatticeMin { min, witness: w, normalized })
    }

    /// Gauss reduction of a definite form. Returns the reduced form `g` and
    /// `M` in `SL2(Z)` with `g = f∘M`, where `|2B| <= A <= C` for `A > 0`
    /// (the same for `-f` when `f` is negative definite).
    pub fn reduce_definite(&self) -> Result<(Self, Mat2)> {
        if self.kind() != FormKind::Definite {
            return Err(Error::NotDefinite);
        }
        let neg = self.a.is_negative();
        let mut g = if neg { self.scale(&-Rational::one()) } else { self.clone() };
        let mut m = Mat2::identity();
        let swap = Mat2::from_ints(0, -1, 1, 0);
        loop {
            // translate so that |B| <= A/2
            let k = (-&g.b / &g.a).round();
            if !k.is_zero() {
                let t = Mat2::new(Rational::one(), k, Rational::zero(), Rational::one());
                g = g.act(&t);
                m = m.mul(&t);
            }
            if g.c < g.a {
                g = g.act(&swap);
                m = m.mul(&swap);
                continue;
            }
            break;
        }
        if neg {
            g = g.scale(&-Rational::one());
        }
        Ok((g, m))
    }

    /// Exact minimum of `|f|` over `Z^2 \ {0}` for definite forms.
    pub fn definite_min(&self) -> Result<LatticeMin> {
        let (g, m) = self.reduce_definite()?;
        let min = g.a.abs();
        let witness = (m.a.to_integer(), m.c.to_integer());
        let normalized = QuadExt::sqrt_rational(&(&min * &min / self.det()))?;
        Ok(LatticeMin { min, witness, normalized })
    }

    /// The root `z = (-B + i sqrt(det)) / A` in the upper half-plane.
    pub fn definite_point(&self) -> Result<HPoint> {
        if self.kind() != FormKind::Definite {
            return Err(Error::NotDefinite);
        }
        let f = if self.a.is_negative() { self.scale(&-Rational::one()) } else { self.clone() };
        HPoint::from_y_squared(-&f.b / &f.a, f.det() / (&f.a * &f.a))
    }

    /// Renders the primitive integer multiple, e.g. `5p^2 + pq - 11q^2`.
    pub fn to_integer_string(&self) -> String {
        let ((a, b, c), _) = self.primitive();
        render_poly(&[a.into(), b.into(), c.into()])
    }
}

fn render_poly(coeffs: &[Rational; 3]) -> String {
    let mons = ["p^2", "pq", "q^2"];
    let mut out = String::new();
    for (k, m) in coeffs.iter().zip(mons) {
        if k.is_zero() {
            continue;
        }
        let neg = k.is_negative();
        let mag = k.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(m);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `p^2 - 9/5pq - 7/5q^2`
impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(&[self.a.clone(), self.middle(), self.c.clone()]))
    }
}

/// Parses `"A,2B,C"`, the polynomial coefficients separated by commas.
impl FromStr for BinaryQuadraticForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected A,2B,C, got {s:?}")));
        }
        Ok(Self::from_coeffs(parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?))
    }
}

/// The geodesic joining the roots of an indefinite form.
pub fn geodesic_of(f: &BinaryQuadraticForm) -> Result<Geodesic> {
    let (e1, e2) = f.roots()?;
    Geodesic::new(e1, e2)
}

/// The monic form vanishing at the endpoints, or `q(p - e q)` for a
/// geodesic ending at `∞`. Endpoints must be rational or Galois conjugate.
pub fn form_of(g: &Geodesic) -> Result<BinaryQuadraticForm> {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match (g.e1(), g.e2()) {
        (ProjPoint::Finite(x), ProjPoint::Infinity) | (ProjPoint::Infinity, ProjPoint::Finite(x)) => {
            let e = x.to_rational().ok_or(Error::IrrationalGeodesic)?;
            Ok(BinaryQuadraticForm::new(Rational::zero(), half, -e))
        }
        (ProjPoint::Finite(x), ProjPoint::Finite(y)) => {
            let s = x.try_add(y).map_err(|_| Error::IrrationalGeodesic)?;
            let p = x.try_mul(y).map_err(|_| Error::IrrationalGeodesic)?;
            match (s.to_rational(), p.to_rational()) {
                (Some(s), Some(p)) => Ok(BinaryQuadraticForm::new(Rational::one(), -s * half, p)),
                _ => Err(Error::IrrationalGeodesic),
            }
        }
        _ => Err(Error::DegenerateGeodesic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn f(a: i64, m: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::from_ints(a, m, c)
    }

    #[test]
    fn parse_and_print() {
        let g: BinaryQuadraticForm = "1,-1,-1".parse().unwrap();
        assert_eq!(g, f(1, -1, -1));
        assert_eq!(g.to_string(), "p^2 - pq - q^2");
        let h: BinaryQuadraticForm = "1,-9/5,-7/5".parse().unwrap();
        assert_eq!(h.to_string(), "p^2 - 9/5pq - 7/5q^2");
        assert_eq!(h.to_integer_string(), "5p^2 - 9pq - 7q^2");
        assert!("1,2".parse::<BinaryQuadraticForm>().is_err());
    }

    #[test]
    fn det_and_kind() {
        assert_eq!(f(1, -1, -1).det(), rat(-5, 4));
        assert_eq!(f(1, -1, -1).kind(), FormKind::Indefinite);
        assert_eq!(f(1, 1, 1).kind(), FormKind::Definite);
        assert_eq!(f(1, 2, 1).kind(), FormKind::Degenerate);
    }

    #[test]
    fn action_is_composition() {
        let g = f(3, -7, 2);
        let m = Mat2::from_ints(2, 1, 5, 3);
        let n = Mat2::from_ints(1, -4, 0, 1);
        assert_eq!(g.act(&m).act(&n), g.act(&m.mul(&n)));
        assert_eq!(g.act(&m).det(), g.det());
        for (p, q) in [(1, 0), (2, -3), (7, 11)] {
            let (p, q) = (int(p), int(q));
            let (pp, qq) = m.act_on_vector(&(p.clone(), q.clone())).unwrap();
            assert_eq!(g.act(&m).eval(&p, &q), g.eval(&pp, &qq));
        }
    }

    #[test]
    fn roots_vanish() {
        let g = f(1, -1, -1);
        let (r1, r2) = g.roots().unwrap();
        let one = QuadExt::one();
        for r in [r1, r2] {
            assert!(g.eval_quad(r.finite().unwrap(), &one).is_zero());
        }
        let (e, inf) = f(0, 1, -3).roots().unwrap();
        assert_eq!(e, ProjPoint::rational(int(3)));
        assert_eq!(inf, ProjPoint::Infinity);
        assert_eq!(f(1, 0, 1).roots(), Err(Error::NotIndefinite));
    }

    #[test]
    fn geodesic_round_trip() {
        for g in [f(1, -1, -1), f(5, 1, -11), f(0, 1, -3), f(2, 0, -1)] {
            let geo = geodesic_of(&g).unwrap();
            let back = form_of(&geo).unwrap();
            assert!(back.ratio_to(&g).is_some(), "{g} vs {back}");
        }
    }

    #[test]
    fn golden_ratio_form_minimum() {
        let m = f(1, -1, -1).lattice_min(50).unwrap();
        assert_eq!(m.min, int(1));
        assert_eq!(m.witness, (BigInt::from(1), BigInt::zero()));
        assert_eq!(m.normalized, "2/5*sqrt(5)".parse().unwrap());
        assert_eq!(f(1, 2, 1).lattice_min(5), Err(Error::DegenerateForm));
    }

    #[test]
    fn hexagonal_form_is_extremal() {
        let g = f(1, 1, 1);
        let m = g.definite_min().unwrap();
        assert_eq!(m.min, int(1));
        assert_eq!(&m.normalized * &m.normalized, QuadExt::from(rat(4, 3)));
        assert_eq!(g.lattice_min(10).unwrap().min, int(1));
    }

    #[test]
    fn reduction_agrees_with_brute_force() {
        for g in [f(7, 23, 19), f(-10, 3, -1), f(13, 0, 2), f(101, 200, 100)] {
            let (r, m) = g.reduce_definite().unwrap();
            assert_eq!(g.act(&m), r);
            assert!(r.middle().abs() <= r.a.abs() && r.a.abs() <= r.c.abs());
            assert_eq!(g.definite_min().unwrap().min, g.lattice_min(60).unwrap().min, "{g}");
        }
    }

    #[test]
    fn definite_point_is_root() {
        let z = f(1, 1, 1).definite_point().unwrap();
        assert_eq!(z.x(), &rat(-1, 2));
        assert_eq!(z.y_squared(), &rat(3, 4));
        assert_eq!(f(1, -1, -1).definite_point(), Err(Error::NotDefinite));
    }
}
