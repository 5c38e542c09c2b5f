//! Continued fractions of rationals and real quadratic irrationals.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Rational};
use crate::moebius::Mat2;

/// `[preperiod; period...]`, with the period repeated forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicCF {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

impl PeriodicCF {
    pub fn term(&self, n: usize) -> &BigInt {
        if n < self.preperiod.len() {
            &self.preperiod[n]
        } else {
            &self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &BigInt> + '_ {
        (0..).map(move |n| self.term(n))
    }

    /// Exact value of the expansion.
    pub fn value(&self) -> Result<QuadExt> {
        let tail = purely_periodic_value(&self.period)?;
        let m = self.preperiod.iter().fold(Mat2::identity(), |acc, b| acc.mul(&step(b)));
        let num = tail.scale(&m.a).add_rational(&m.b);
        let den = tail.scale(&m.c).add_rational(&m.d);
        num.try_div(&den)
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "[{}; ({})]", join(&self.preperiod), join(&self.period))
    }
}

fn step(b: &BigInt) -> Mat2 {
    Mat2::new(Rational::from_integer(b.clone()), Rational::one(), Rational::one(), Rational::zero())
}

/// Value `α = [b0; b1, ..., b_{k-1}, α]` of a purely periodic expansion.
pub fn purely_periodic_value(period: &[BigInt]) -> Result<QuadExt> {
    if period.is_empty() || period.iter().any(|b| !b.is_positive()) {
        return Err(Error::InvalidArgument("period needs positive terms".into()));
    }
    let (t, disc, two_q) = periodic_quadratic(period);
    QuadExt::new(Rational::from_integer(t) / &two_q, two_q.recip(), disc)
}

// q α^2 + (q' - p) α - p' = 0, returned as (p - q', discriminant, 2q)
fn periodic_quadratic(period: &[BigInt]) -> (BigInt, BigInt, Rational) {
    let m = period.iter().fold(Mat2::identity(), |acc, b| acc.mul(&step(b)));
    let (p, pp, q, qq) = (m.a.to_integer(), m.b.to_integer(), m.c.to_integer(), m.d.to_integer());
    let t = &p - &qq;
    let disc = &t * &t + BigInt::from(4) * &q * &pp;
    (t, disc, Rational::from_integer(BigInt::from(2) * &q))
}

/// `purely_periodic_value` when the value is known to lie in `Q(sqrt(d))`,
/// `d` square-free. Avoids factoring the discriminant.
#[cfg_attr(not(test), allow(dead_code))]
fn periodic_value_in(period: &[BigInt], d: &BigInt) -> Result<QuadExt> {
    let (t, disc, two_q) = periodic_quadratic(period);
    let (k2, rem) = disc.div_rem(d);
    let k = k2.sqrt();
    if !rem.is_zero() || &k * &k != k2 {
        return purely_periodic_value(period);
    }
    Ok(QuadExt::canonical(Rational::from_integer(t) / &two_q, Rational::from_integer(k) / two_q, d.clone()))
}

/// `(P + m sqrt(D)) / Q` with `Q | m^2 D - P^2`.
#[derive(Clone, Debug)]
struct Surd {
    p: BigInt,
    q: BigInt,
    m: BigInt,
    d: BigInt,
}

impl Surd {
    fn from_quad(x: &QuadExt) -> Self {
        let (r, s) = (x.rational_part(), x.sqrt_coeff());
        let c = r.denom().lcm(s.denom());
        let a = r.numer() * (&c / r.denom());
        let b = s.numer() * (&c / s.denom());
        let (a, b, c) = if b.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        let ac = c.abs();
        Surd { p: a * &ac, q: &c * &ac, m: b * ac, d: x.disc().clone() }
    }

    fn value(&self) -> QuadExt {
        let q = Rational::from_integer(self.q.clone());
        QuadExt::canonical(Rational::from_integer(self.p.clone()) / &q, Rational::from_integer(self.m.clone()) / q, self.d.clone())
    }

    fn n(&self) -> BigInt {
        &self.m * &self.m * &self.d
    }

    /// Returns the partial quotient and advances to the next complete quotient.
    fn advance(&mut self) -> BigInt {
        let a = self.value().floor();
        let p = &a * &self.q - &self.p;
        let q = (self.n() - &p * &p) / &self.q;
        self.p = p;
        self.q = q;
        a
    }
}

fn require_irrational(x: &QuadExt) -> Result<()> {
    if x.is_rational() {
        Err(Error::RationalInput)
    } else {
        Ok(())
    }
}

/// Periodic expansion of a quadratic irrational. The period is primitive.
pub fn cf_expand(x: &QuadExt) -> Result<PeriodicCF> {
    require_irrational(x)?;
    let mut s = Surd::from_quad(x);
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms = Vec::new();
    loop {
        if let Some(&i) = seen.get(&(s.p.clone(), s.q.clone())) {
            let period = terms.split_off(i);
            return Ok(PeriodicCF { preperiod: terms, period });
        }
        seen.insert((s.p.clone(), s.q.clone()), terms.len());
        terms.push(s.advance());
    }
}

/// Complete quotients `α_0 = x, α_1, ..., α_depth` together with the
/// matrices `M(i) = [[p_{i-1}, p_{i-2}], [q_{i-1}, q_{i-2}]]`, so that
/// `x = M(i)(α_i)`.
pub fn complete_quotients(x: &QuadExt, depth: usize) -> Result<Vec<(QuadExt, Mat2)>> {
    require_irrational(x)?;
    let mut s = Surd::from_quad(x);
    let mut m = Mat2::identity();
    let mut out = Vec::with_capacity(depth + 1);
    for _ in 0..=depth {
        out.push((s.value(), m.clone()));
        let a = s.advance();
        m = m.mul(&step(&a));
    }
    Ok(out)
}

/// Partial quotients of a rational (finite expansion).
pub fn rational_terms(x: &Rational) -> Vec<BigInt> {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut out = Vec::new();
    while !d.is_zero() {
        let (q, r) = n.div_mod_floor(&d);
        out.push(q);
        n = d;
        d = r;
    }
    out
}

/// The first `n` convergents `p_k / q_k` (fewer for rationals with a short
/// expansion).
pub fn convergents(x: &QuadExt, n: usize) -> Result<Vec<(BigInt, BigInt)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let terms: Vec<BigInt> = match x.to_rational() {
        Some(r) => rational_terms(&r).into_iter().take(n).collect(),
        None => cf_expand(x)?.terms().take(n).cloned().collect(),
    };
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(terms.len());
    for b in terms {
        let p2 = &b * &p1 + &p0;
        let q2 = &b * &q1 + &q0;
        out.push((p2.clone(), q2.clone()));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    Ok(out)
}

/// Reduced fractions `p/q` with `1 <= q <= q_max` and `|x - p/q| < 1/(λ q^2)`,
/// ordered by `q` then `p`.
pub fn count_approximations(x: &QuadExt, lambda: &QuadExt, q_max: u64) -> Result<Vec<(BigInt, BigInt)>> {
    if lambda.sign() <= 0 {
        return Err(Error::InvalidArgument("lambda must be positive".into()));
    }
    let inv = lambda.inv()?;
    let mut out = Vec::new();
    for q in 1..=q_max {
        let qr = Rational::from_integer(BigInt::from(q));
        let qx = x.scale(&qr);
        let fl = qx.floor();
        let cands = if qx.is_rational() && qx.to_rational() == Some(Rational::from_integer(fl.clone())) {
            vec![fl]
        } else {
            vec![fl.clone(), fl + 1]
        };
        for p in cands {
            if !p.gcd(&BigInt::from(q)).is_one() {
                continue;
            }
            // |qx - p| * q < 1/λ
            let err = qx.add_rational(&-Rational::from_integer(p.clone())).abs().scale(&qr);
            if err.cmp_exact(&inv).is_lt() {
                out.push((p, BigInt::from(q)));
            }
        }
    }
    Ok(out)
}

/// `limsup (α_{n+1} + q_{n-1}/q_n)`, computed as the maximum over the period
/// of tail value plus reversed prefix value. Always exact.
///
/// Tails are the reduced complete quotients `α_j`; by Galois' theorem the
/// reversed period `[a_{j-1}; a_{j-2}, ...]` equals `-1/conj(α_j)`, so each
/// term is `α_j - conj(α_j)`.
pub fn lagrange_number(x: &QuadExt) -> Result<QuadExt> {
    let cf = cf_expand(x)?;
    let mut s = Surd::from_quad(x);
    for _ in 0..cf.preperiod.len() {
        s.advance();
    }
    let mut best: Option<QuadExt> = None;
    for _ in 0..cf.period.len() {
        let a = s.value();
        let v = a.try_sub(&a.conjugate())?;
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
        s.advance();
    }
    Ok(best.expect("nonempty period"))
}

/// The tails-plus-reversed-prefix maximum built from explicit period
/// products. Quadratic in the period length.
#[cfg(test)]
fn lagrange_number_products(x: &QuadExt) -> Result<QuadExt> {
    let cf = cf_expand(x)?;
    let per = &cf.period;
    let k = per.len();
    let mut best: Option<QuadExt> = None;
    for j in 0..k {
        let fwd: Vec<BigInt> = (0..k).map(|i| per[(j + i) % k].clone()).collect();
        let back: Vec<BigInt> = (1..=k).map(|i| per[(j + k - i) % k].clone()).collect();
        let v = periodic_value_in(&fwd, x.disc())?.try_add(&periodic_value_in(&back, x.disc())?.inv()?)?;
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    Ok(best.expect("nonempty period"))
}

/// Same quantity via `max 2 sqrt(N) / |Q|` over the reduced complete
/// quotients `(P + sqrt(N)) / Q`.
pub fn lagrange_number_conjugate(x: &QuadExt) -> Result<QuadExt> {
    let cf = cf_expand(x)?;
    let mut s = Surd::from_quad(x);
    for _ in 0..cf.preperiod.len() {
        s.advance();
    }
    let mut best: Option<QuadExt> = None;
    for _ in 0..cf.period.len() {
        let v = QuadExt::canonical(
            Rational::zero(),
            Rational::new(BigInt::from(2) * &s.m, s.q.abs()),
            s.d.clone(),
        );
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
        s.advance();
    }
    Ok(best.expect("nonempty period"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn q(s: &str) -> QuadExt {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classic_expansions() {
        let phi = cf_expand(&q("1/2 + 1/2*sqrt(5)")).unwrap();
        assert_eq!(phi.preperiod, ints(&[]));
        assert_eq!(phi.period, ints(&[1]));
        let r2 = cf_expand(&q("sqrt(2)")).unwrap();
        assert_eq!((r2.preperiod, r2.period), (ints(&[1]), ints(&[2])));
        let r7 = cf_expand(&q("sqrt(7)")).unwrap();
        assert_eq!((r7.preperiod, r7.period), (ints(&[2]), ints(&[1, 1, 1, 4])));
        let neg = cf_expand(&q("-sqrt(3)")).unwrap();
        assert_eq!(neg.preperiod, ints(&[-2, 3]));
        assert_eq!(neg.period, ints(&[1, 2]));
        assert_eq!(cf_expand(&QuadExt::from(rat(3, 7))), Err(Error::RationalInput));
    }

    #[test]
    fn value_round_trip() {
        for s in ["sqrt(2)", "-sqrt(3)", "1/2 + 1/2*sqrt(5)", "9/10 - 1/10*sqrt(221)", "-17/3 + 2/7*sqrt(13)", "5/58 + 1/58*sqrt(7565)"] {
            let x = q(s);
            assert_eq!(cf_expand(&x).unwrap().value().unwrap(), x, "{s}");
        }
    }

    #[test]
    fn convergents_of_sqrt2() {
        let c = convergents(&q("sqrt(2)"), 5).unwrap();
        let want: Vec<(BigInt, BigInt)> = [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]
            .iter()
            .map(|&(a, b)| (BigInt::from(a), BigInt::from(b)))
            .collect();
        assert_eq!(c, want);
        assert_eq!(convergents(&QuadExt::from(rat(7, 3)), 10).unwrap().len(), 2);
    }

    #[test]
    fn complete_quotient_matrices() {
        let x = q("-17/3 + 2/7*sqrt(13)");
        for (alpha, m) in complete_quotients(&x, 8).unwrap() {
            let back = alpha.scale(&m.a).add_rational(&m.b).try_div(&alpha.scale(&m.c).add_rational(&m.d)).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn lagrange_numbers() {
        assert_eq!(lagrange_number(&q("1/2 + 1/2*sqrt(5)")).unwrap(), q("sqrt(5)"));
        assert_eq!(lagrange_number(&q("sqrt(2)")).unwrap(), q("2*sqrt(2)"));
        for s in ["sqrt(7)", "sqrt(13)", "-17/3 + 2/7*sqrt(13)", "1/5*sqrt(221)", "7/23 + 29/11*sqrt(221)", "23/26 + 1/26*sqrt(1517)"] {
            let x = q(s);
            assert_eq!(lagrange_number(&x).unwrap(), lagrange_number_conjugate(&x).unwrap(), "{s}");
            assert_eq!(lagrange_number(&x).unwrap(), lagrange_number_products(&x).unwrap(), "{s}");
        }
    }

    #[test]
    fn golden_ratio_approximations() {
        let phi = q("1/2 + 1/2*sqrt(5)");
        // λ = 2: convergents qualify
        let hits = count_approximations(&phi, &QuadExt::from(int(2)), 100).unwrap();
        assert!(hits.len() >= 8);
        for (p, qq) in &hits {
            let e = phi.add_rational(&-Rational::new(p.clone(), qq.clone())).abs();
            let bound = QuadExt::from(Rational::new(BigInt::one(), BigInt::from(2) * qq * qq));
            assert!(e < bound);
        }
        // λ slightly above sqrt(5): only finitely many, here none beyond the start
        let lam = q("1/100 + sqrt(5)");
        let few = count_approximations(&phi, &lam, 1000).unwrap();
        assert!(few.len() <= 2, "{few:?}");
    }
}
