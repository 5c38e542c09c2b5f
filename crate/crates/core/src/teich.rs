//! Decorated ideal triangles, triangulations of the once-punctured torus and
//! the geodesic crossing two sides of a triangle farthest from the
//! horocycles.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::hypgeo::{Geodesic, Horocycle, SignedDistance};
use crate::markov::MarkovTriple;
use crate::moebius::ProjPoint;

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

/// Weights `a_k` of a decorated ideal triangle, side `a_k` lying opposite
/// vertex `v_k`. Sides `a1`, `a2` are the legs and `a3` the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedTriangle {
    a: [Rational; 3],
}

impl DecoratedTriangle {
    pub fn new(a1: Rational, a2: Rational, a3: Rational) -> Result<Self> {
        for w in [&a1, &a2, &a3] {
            if !w.is_positive() {
                return Err(Error::InvalidArgument(format!("weight {w} is not positive")));
            }
        }
        Ok(DecoratedTriangle { a: [a1, a2, a3] })
    }

    pub fn from_ints(a1: i64, a2: i64, a3: i64) -> Result<Self> {
        let r = |x: i64| Rational::from_integer(x.into());
        Self::new(r(a1), r(a2), r(a3))
    }

    /// Legs `a`, `b` and base `c` of a Markov triple.
    pub fn from_triple(t: &MarkovTriple) -> Self {
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        DecoratedTriangle { a: [r(&t.a), r(&t.b), r(&t.c)] }
    }

    pub fn weights(&self) -> &[Rational; 3] {
        &self.a
    }

    /// `c_k = a_k / (a_i a_j)`.
    pub fn arc_lengths(&self) -> [Rational; 3] {
        let [a1, a2, a3] = &self.a;
        [a1 / (a2 * a3), a2 / (a3 * a1), a3 / (a1 * a2)]
    }

    pub fn delta(&self) -> Rational {
        let [c1, c2, c3] = self.arc_lengths();
        c1 + c2 + c3
    }

    /// `r = sqrt(δ^2/4 - 1/a3^2)`, always positive.
    pub fn bisecting_r(&self) -> QuadExt {
        let d = self.delta();
        let a3 = &self.a[2];
        QuadExt::sqrt_rational(&(&d * &d / Rational::from_integer(BigInt::from(4)) - (a3 * a3).recip()))
            .expect("delta/2 > 1/a3")
    }
}

impl fmt::Display for DecoratedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a[0], self.a[1], self.a[2])
    }
}

pub fn arc_lengths(t: &DecoratedTriangle) -> [Rational; 3] {
    t.arc_lengths()
}

/// Ptolemy relation `ef = ac + bd` for a decorated quadrilateral with
/// sides `a, b, c, d` in cyclic order and diagonal `e`.
pub fn ptolemy_flip(a: &Rational, b: &Rational, c: &Rational, d: &Rational, e: &Rational) -> Result<Rational> {
    for w in [a, b, c, d, e] {
        if !w.is_positive() {
            return Err(Error::InvalidArgument(format!("weight {w} is not positive")));
        }
    }
    Ok((a * c + b * d) / e)
}

/// An ideal triangulation of the once-punctured torus with edge weights and
/// abstract edge labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusTriangulation {
    pub weights: [Rational; 3],
    pub labels: [u32; 3],
    next_label: u32,
}

impl TorusTriangulation {
    pub fn new(weights: [Rational; 3]) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidArgument(format!("weight {w} is not positive")));
        }
        Ok(TorusTriangulation { weights, labels: [0, 1, 2], next_label: 3 })
    }

    pub fn from_triple(t: &MarkovTriple) -> Self {
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        Self::new([r(&t.a), r(&t.b), r(&t.c)]).expect("positive")
    }

    /// `ℓ = 2(a/(bc) + b/(ca) + c/(ab))`.
    pub fn horocycle_length(&self) -> Rational {
        let [a, b, c] = &self.weights;
        two() * (a / (b * c) + b / (c * a) + c / (a * b))
    }

    pub fn is_markov_decorated(&self) -> bool {
        self.horocycle_length() == Rational::from_integer(BigInt::from(6))
    }

    /// Flips edge `k` in `1..=3`. The quadrilateral around it has sides
    /// `(b, c, b, c)`, so the new weight is `(b^2 + c^2)/a`.
    pub fn flip(&self, k: u8) -> Result<Self> {
        if !(1..=3).contains(&k) {
            return Err(Error::InvalidArgument(format!("edge {k} not in 1..=3")));
        }
        let i = (k - 1) as usize;
        let b = &self.weights[(i + 1) % 3];
        let c = &self.weights[(i + 2) % 3];
        let mut out = self.clone();
        out.weights[i] = ptolemy_flip(b, c, b, c, &self.weights[i])?;
        out.labels[i] = self.next_label;
        out.next_label += 1;
        Ok(out)
    }

    /// Weights as a Markov triple, in edge order.
    pub fn to_triple(&self) -> Option<MarkovTriple> {
        let ints: Option<Vec<BigInt>> =
            self.weights.iter().map(|w| w.is_integer().then(|| w.to_integer())).collect();
        let v = ints?;
        MarkovTriple::new(v[0].clone(), v[1].clone(), v[2].clone()).ok()
    }
}

impl fmt::Display for TorusTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.weights[0], self.weights[1], self.weights[2])
    }
}

pub fn torus_flip(t: &TorusTriangulation, edge: u8) -> Result<TorusTriangulation> {
    t.flip(edge)
}

pub fn horocycle_length(t: &TorusTriangulation) -> Rational {
    t.horocycle_length()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    Bisecting,
    PerpBisectorOfA1,
    PerpBisectorOfA2,
}

impl fmt::Display for CrossingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CrossingKind::Bisecting => "bisecting",
            CrossingKind::PerpBisectorOfA1 => "perp_bisector_of_a1",
            CrossingKind::PerpBisectorOfA2 => "perp_bisector_of_a2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSolution {
    pub kind: CrossingKind,
    /// Largest possible minimum signed distance to the three horocycles.
    pub distance: SignedDistance,
    /// `(x0, r)` of the bisecting geodesic, when placed on vertices.
    pub geometry: Option<(QuadExt, QuadExt)>,
}

/// Classifies the geodesic crossing both legs that stays farthest from the
/// horocycles. Equality in the acute inequalities counts as bisecting.
pub fn crossing_optimum(t: &DecoratedTriangle) -> CrossingSolution {
    let [a1, a2, a3] = t.weights();
    let (s1, s2, s3) = (a1 * a1, a2 * a2, a3 * a3);
    let (kind, arg) = if s1 <= &s2 + &s3 && s2 <= &s1 + &s3 {
        (CrossingKind::Bisecting, t.bisecting_r().inv().expect("r > 0"))
    } else if s1 > &s2 + &s3 {
        (CrossingKind::PerpBisectorOfA2, QuadExt::from(a2.clone()))
    } else {
        (CrossingKind::PerpBisectorOfA1, QuadExt::from(a1.clone()))
    };
    CrossingSolution { kind, distance: SignedDistance::from_arg(arg).expect("positive"), geometry: None }
}

/// Center `x0` and radius `r` of the geodesic bisecting both legs when
/// `v3 = ∞` and `h3` has height 1.
pub fn crossing_geometry(t: &DecoratedTriangle, v1: &QuadExt, v2: &QuadExt) -> Result<(QuadExt, QuadExt)> {
    let [_, c2, c3] = t.arc_lengths();
    let width = v2.try_sub(v1)?;
    if width != QuadExt::from(c3.clone()) {
        return Err(Error::InconsistentVertices(format!("v2 - v1 = {width}, expected {c3}")));
    }
    let x0 = v2.add_rational(&(c2 - t.delta() / two()));
    Ok((x0, t.bisecting_r()))
}

/// A concrete realization: `v1 < v2`, `v3 = ∞`, `h3 = h(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub v1: Rational,
    pub v2: Rational,
    pub horocycles: [Horocycle; 3],
}

/// `v1 = 0`, `v2 = c3`, `h1 = h(0, a2)`, `h2 = h(a3/a2, a1)`, `h3 = h(1, 0)`.
pub fn standard_placement(t: &DecoratedTriangle) -> Placement {
    let [a1, a2, a3] = t.weights();
    let h1 = Horocycle::new(Rational::zero(), a2.clone()).expect("nonzero");
    let h2 = Horocycle::new(a3 / a2, a1.clone()).expect("nonzero");
    let h3 = Horocycle::new(Rational::one(), Rational::zero()).expect("nonzero");
    Placement { v1: Rational::zero(), v2: a3 / (a1 * a2), horocycles: [h1, h2, h3] }
}

/// The Markov triangle `v1 = p1/b`, `v2 = p2/a`, weights `(a, b, c)`.
pub fn markov_placement(t: &MarkovTriple) -> Placement {
    let (p1, p2) = crate::markov::solve_p1p2(t);
    let r = |x: &BigInt| Rational::from_integer(x.clone());
    Placement {
        v1: Rational::new(p1.clone(), t.b.clone()),
        v2: Rational::new(p2.clone(), t.a.clone()),
        horocycles: [
            Horocycle::new(r(&p1), r(&t.b)).expect("nonzero"),
            Horocycle::new(r(&p2), r(&t.a)).expect("nonzero"),
            Horocycle::int(1, 0).expect("nonzero"),
        ],
    }
}

/// The optimal geodesic of `crossing_optimum` on a placement, with
/// `crossing_solution.geometry` filled in for the bisecting case.
pub fn optimum_geodesic(t: &DecoratedTriangle, pl: &Placement) -> Result<(CrossingSolution, Geodesic)> {
    let mut sol = crossing_optimum(t);
    let [a1, a2, _] = t.weights();
    let g = match sol.kind {
        CrossingKind::Bisecting => {
            let (x0, r) = crossing_geometry(t, &QuadExt::from(pl.v1.clone()), &QuadExt::from(pl.v2.clone()))?;
            let g = Geodesic::new(ProjPoint::Finite(x0.try_sub(&r)?), ProjPoint::Finite(x0.try_add(&r)?))?;
            sol.geometry = Some((x0, r));
            g
        }
        CrossingKind::PerpBisectorOfA2 => {
            let w = a2.recip();
            Geodesic::new(ProjPoint::rational(&pl.v1 - &w), ProjPoint::rational(&pl.v1 + &w))?
        }
        CrossingKind::PerpBisectorOfA1 => {
            let w = a1.recip();
            Geodesic::new(ProjPoint::rational(&pl.v2 - &w), ProjPoint::rational(&pl.v2 + &w))?
        }
    };
    Ok((sol, g))
}

/// `(c1 u1 + c2 u2 + c3 u3)^2 - 4 c1 c2 u1 u2 - 4`, where `u_k = e^{d_k}` are
/// the exponentiated signed distances of a geodesic crossing both legs.
pub fn u_relation_residual(c: &[Rational; 3], u: &[QuadExt; 3]) -> Result<QuadExt> {
    let lin = u[0].scale(&c[0]).try_add(&u[1].scale(&c[1]))?.try_add(&u[2].scale(&c[2]))?;
    let prod = u[0].try_mul(&u[1])?.scale(&(Rational::from_integer(BigInt::from(4)) * &c[0] * &c[1]));
    Ok(lin.try_mul(&lin)?.try_sub(&prod)?.add_rational(&-Rational::from_integer(BigInt::from(4))))
}
