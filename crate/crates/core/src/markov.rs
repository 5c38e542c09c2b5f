//! Markov triples `a^2 + b^2 + c^2 = 3abc`, the Markov tree, and the
//! quadratic irrationals and forms attached to each triple.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadExt, Rational};
use crate::forms::BinaryQuadraticForm;

pub fn is_markov(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    if !(a.is_positive() && b.is_positive() && c.is_positive()) {
        return false;
    }
    a * a + b * b + c * c == BigInt::from(3) * a * b * c
}

/// An ordered Markov triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkovTriple {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl MarkovTriple {
    pub fn new<T: Into<BigInt>>(a: T, b: T, c: T) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if !is_markov(&a, &b, &c) {
            return Err(Error::NotMarkov(a.to_string(), b.to_string(), c.to_string()));
        }
        Ok(MarkovTriple { a, b, c })
    }

    pub fn root() -> Self {
        MarkovTriple { a: BigInt::one(), b: BigInt::one(), c: BigInt::one() }
    }

    pub fn components(&self) -> [&BigInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn max(&self) -> &BigInt {
        self.components().into_iter().max().unwrap()
    }

    pub fn sorted(&self) -> Self {
        let mut v = [self.a.clone(), self.b.clone(), self.c.clone()];
        v.sort();
        let [a, b, c] = v;
        MarkovTriple { a, b, c }
    }

    pub fn is_sorted(&self) -> bool {
        self.a <= self.b && self.b <= self.c
    }

    /// The neighbor involution `sigma_k`, `k` in `1..=3`: replaces the k-th
    /// entry `x` by `3yz - x`.
    pub fn involution(&self, k: u8) -> Result<Self> {
        let three = BigInt::from(3);
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let t = match k {
            1 => MarkovTriple { a: &three * b * c - a, b: b.clone(), c: c.clone() },
            2 => MarkovTriple { a: a.clone(), b: &three * a * c - b, c: c.clone() },
            3 => MarkovTriple { a: a.clone(), b: b.clone(), c: &three * a * b - c },
            _ => return Err(Error::InvalidArgument(format!("involution index {k} not in 1..=3"))),
        };
        // the Vieta form x' = (y^2 + z^2)/x agrees
        debug_assert!({
            let [x, y, z] = match k {
                1 => [a, b, c],
                2 => [b, a, c],
                _ => [c, a, b],
            };
            let (q, r) = (y * y + z * z).div_rem(x);
            r.is_zero() && q == *t.components()[k as usize - 1]
        });
        Ok(t)
    }

    /// Children in the Markov tree of a sorted triple: the sorted neighbors
    /// whose maximum is larger.
    pub fn children(&self) -> Vec<MarkovTriple> {
        let s = self.sorted();
        let mut out: Vec<MarkovTriple> = Vec::with_capacity(2);
        for k in [1u8, 2] {
            let n = s.involution(k).expect("k in range").sorted();
            if n.c > s.c && !out.contains(&n) {
                out.push(n);
            }
        }
        out
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn order_key(t: &MarkovTriple) -> (BigInt, BigInt, BigInt) {
    (t.c.clone(), t.b.clone(), t.a.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// All sorted triples with `c <= c_max`, ordered by `(c, b, a)`.
pub fn enumerate_triples(c_max: &BigInt) -> Vec<MarkovTriple> {
    enumerate_triples_with(c_max, Traversal::BreadthFirst)
}

pub fn enumerate_triples_with(c_max: &BigInt, traversal: Traversal) -> Vec<MarkovTriple> {
    let mut found: BTreeMap<(BigInt, BigInt, BigInt), MarkovTriple> = BTreeMap::new();
    let root = MarkovTriple::root();
    if root.c > *c_max {
        return Vec::new();
    }
    let mut work = VecDeque::from([root]);
    while let Some(t) = match traversal {
        Traversal::BreadthFirst => work.pop_front(),
        Traversal::DepthFirst => work.pop_back(),
    } {
        for child in t.children() {
            if child.c <= *c_max {
                work.push_back(child);
            }
        }
        let prev = found.insert(order_key(&t), t);
        debug_assert!(prev.is_none(), "triple reached twice");
    }
    found.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub c_max: BigInt,
    /// Each Markov number that occurs as a maximum, with its multiplicity.
    pub max_values: BTreeMap<BigInt, usize>,
    /// Maxima realised by two or more sorted triples.
    pub duplicates: Vec<BigInt>,
    pub triples: usize,
}

pub fn uniqueness_scan(c_max: &BigInt) -> UniquenessReport {
    let triples = enumerate_triples(c_max);
    let mut max_values: BTreeMap<BigInt, usize> = BTreeMap::new();
    for t in &triples {
        *max_values.entry(t.c.clone()).or_default() += 1;
    }
    let duplicates = max_values.iter().filter(|(_, &n)| n > 1).map(|(c, _)| c.clone()).collect();
    UniquenessReport { c_max: c_max.clone(), max_values, duplicates, triples: triples.len() }
}

/// A walk through the Markov tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePath {
    pub start: MarkovTriple,
    pub moves: Vec<u8>,
}

impl TreePath {
    pub fn new(start: MarkovTriple, moves: Vec<u8>) -> Result<Self> {
        if let Some(&k) = moves.iter().find(|&&k| !(1..=3).contains(&k)) {
            return Err(Error::InvalidArgument(format!("move {k} not in 1..=3")));
        }
        if moves.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("path backtracks (repeated move)".into()));
        }
        Ok(TreePath { start, moves })
    }

    /// The visited triples, starting triple included.
    pub fn replay(&self) -> Vec<MarkovTriple> {
        let mut out = vec![self.start.clone()];
        for &k in &self.moves {
            let next = out.last().unwrap().involution(k).expect("validated move");
            out.push(next);
        }
        out
    }
}

/// Integers `(p1, p2)` with `p2*b - p1*a = c`.
///
/// Among the solutions (which differ by multiples of `(b, a)`), the one with
/// `x0 = p2/a + b/(ac) - 3/2` in `[0, 1)` is returned.
pub fn solve_p1p2(t: &MarkovTriple) -> (BigInt, BigInt) {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    // x0 >= 0  <=>  p2 >= (3ac - 2b) / (2c)
    let lower = Rational::new(BigInt::from(3) * a * c - BigInt::from(2) * b, BigInt::from(2) * c).ceil();
    let lower = lower.to_integer();
    let p2 = if a.is_one() {
        lower
    } else {
        let g = b.extended_gcd(a);
        debug_assert!(g.gcd.is_one());
        // p2 = c * b^{-1} mod a
        let residue = (c * &g.x).mod_floor(a);
        &lower + (residue - &lower).mod_floor(a)
    };
    let p1 = (&p2 * b - c) / a;
    debug_assert_eq!(&p2 * b - &p1 * a, *c);
    (p1, p2)
}

/// `x0 = p2/a + b/(ac) - 3/2`.
pub fn markov_x0(t: &MarkovTriple) -> Rational {
    let (_, p2) = solve_p1p2(t);
    Rational::new(p2, t.a.clone()) + Rational::new(t.b.clone(), &t.a * &t.c) - rat(3, 2)
}

/// `r = sqrt(9/4 - 1/c^2)`.
pub fn markov_r(t: &MarkovTriple) -> QuadExt {
    let c2 = Rational::from_integer(&t.c * &t.c);
    QuadExt::sqrt_rational(&(rat(9, 4) - c2.recip())).expect("positive radicand")
}

/// `r^2 = 9/4 - 1/c^2`.
pub fn markov_r_squared(t: &MarkovTriple) -> Rational {
    rat(9, 4) - Rational::from_integer(&t.c * &t.c).recip()
}

/// The quadratic irrational `x = x0 + r`.
pub fn markov_x(t: &MarkovTriple) -> QuadExt {
    markov_r(t).add_rational(&markov_x0(t))
}

/// `lambda = sqrt(9 - 4/c^2) = 2r`, the Lagrange number of `markov_x`.
pub fn markov_lambda(t: &MarkovTriple) -> QuadExt {
    markov_r(t).scale(&Rational::from_integer(BigInt::from(2)))
}

/// `f(p, q) = p^2 - 2 x0 pq + (x0^2 - r^2) q^2`.
pub fn markov_form(t: &MarkovTriple) -> BinaryQuadraticForm {
    let x0 = markov_x0(t);
    let c = &x0 * &x0 - markov_r_squared(t);
    BinaryQuadraticForm::new(Rational::one(), -x0, c)
}

/// The sorted triples of the five smallest Markov numbers as maxima.
pub fn first_triples() -> Vec<MarkovTriple> {
    [(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29)]
        .into_iter()
        .map(|(a, b, c)| MarkovTriple::new(a, b, c).expect("Markov"))
        .collect()
}

/// Markov numbers up to `c_max`.
pub fn markov_numbers(c_max: &BigInt) -> BTreeSet<BigInt> {
    enumerate_triples(c_max).into_iter().map(|t| t.c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn t(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn membership() {
        assert!(is_markov(&big(1), &big(1), &big(1)));
        assert!(is_markov(&big(1), &big(2), &big(5)));
        assert!(!is_markov(&big(2), &big(2), &big(2)));
        assert!(!is_markov(&big(0), &big(0), &big(0)));
        assert!(MarkovTriple::new(1, 1, 3).is_err());
    }

    #[test]
    fn involutions() {
        assert_eq!(t(1, 1, 1).involution(1).unwrap(), t(2, 1, 1));
        assert_eq!(t(1, 2, 5).involution(1).unwrap(), t(29, 2, 5));
        assert_eq!(t(1, 2, 5).involution(2).unwrap(), t(1, 13, 5));
        assert_eq!(t(1, 2, 5).involution(3).unwrap(), t(1, 2, 1));
        assert!(t(1, 2, 5).involution(4).is_err());
        for k in 1..=3 {
            let s = t(2, 5, 29);
            assert_eq!(s.involution(k).unwrap().involution(k).unwrap(), s);
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_triples(&big(5)), vec![t(1, 1, 1), t(1, 1, 2), t(1, 2, 5)]);
        let upto34 = enumerate_triples(&big(34));
        assert_eq!(
            upto34,
            vec![t(1, 1, 1), t(1, 1, 2), t(1, 2, 5), t(1, 5, 13), t(2, 5, 29), t(1, 13, 34)]
        );
        assert!(enumerate_triples(&big(0)).is_empty());
    }

    #[test]
    fn uniqueness_small() {
        let r = uniqueness_scan(&big(1));
        assert_eq!(r.max_values.into_iter().collect::<Vec<_>>(), vec![(big(1), 1)]);
        assert!(r.duplicates.is_empty());
        assert!(uniqueness_scan(&big(100)).duplicates.is_empty());
    }

    #[test]
    fn first_p1p2() {
        let expected = [(0, 1), (-1, 1), (-1, 2), (-3, 2), (-7, 3)];
        for (tr, (p1, p2)) in first_triples().iter().zip(expected) {
            assert_eq!(solve_p1p2(tr), (big(p1), big(p2)), "{tr}");
        }
    }

    #[test]
    fn p1p2_on_unsorted_and_large() {
        for tr in enumerate_triples(&big(100_000)) {
            for perm in [
                tr.clone(),
                MarkovTriple { a: tr.b.clone(), b: tr.a.clone(), c: tr.c.clone() },
                MarkovTriple { a: tr.c.clone(), b: tr.b.clone(), c: tr.a.clone() },
            ] {
                let (p1, p2) = solve_p1p2(&perm);
                assert_eq!(&p2 * &perm.b - &p1 * &perm.a, perm.c);
                let x0 = markov_x0(&perm);
                assert!(x0 >= int(0) && x0 < int(1));
            }
        }
    }

    #[test]
    fn first_x_values() {
        let q = |s: &str| s.parse::<QuadExt>().unwrap();
        assert_eq!(markov_x(&t(1, 1, 1)), q("1/2 + 1/2*sqrt(5)"));
        assert_eq!(markov_x(&t(1, 1, 2)), q("sqrt(2)"));
        assert_eq!(markov_x(&t(1, 2, 5)), q("9/10 + 1/10*sqrt(221)"));
        assert_eq!(markov_x(&t(1, 5, 13)), q("23/26 + 1/26*sqrt(1517)"));
        assert_eq!(markov_x(&t(2, 5, 29)), q("5/58 + 1/58*sqrt(7565)"));
        assert_eq!(markov_lambda(&t(1, 1, 1)), q("sqrt(5)"));
        assert_eq!(markov_lambda(&t(1, 1, 2)), q("2*sqrt(2)"));
        assert_eq!(markov_lambda(&t(1, 2, 5)), q("1/5*sqrt(221)"));
    }

    #[test]
    fn forms_of_first_triples() {
        let f = markov_form(&t(1, 1, 1));
        assert_eq!((f.a.clone(), f.b.clone(), f.c.clone()), (int(1), rat(-1, 2), int(-1)));
        let f = markov_form(&t(1, 1, 2));
        assert_eq!((f.a.clone(), f.b.clone(), f.c.clone()), (int(1), int(0), int(-2)));
        let f = markov_form(&t(1, 2, 5));
        assert_eq!((f.a.clone(), f.b.clone(), f.c.clone()), (int(1), rat(-9, 10), rat(-7, 5)));
        assert_eq!(f.det(), -rat(221, 100));
    }

    #[test]
    fn x_is_root_and_lambda_r_relation() {
        for tr in enumerate_triples(&big(10_000)) {
            let x = markov_x(&tr);
            let f = markov_form(&tr);
            assert!(f.eval_quad(&x, &QuadExt::one()).is_zero(), "{tr}");
            let lam = markov_lambda(&tr);
            assert_eq!(&lam * &markov_r(&tr).inv().unwrap(), QuadExt::from_int(2));
            assert!(lam < QuadExt::from_int(3));
        }
    }

    #[test]
    fn lambda_increases_with_c() {
        let ts = enumerate_triples(&big(1_000_000));
        for w in ts.windows(2) {
            assert!(markov_lambda(&w[0]) < markov_lambda(&w[1]));
        }
    }

    #[test]
    fn tree_paths() {
        let p = TreePath::new(t(1, 1, 1), vec![1, 2, 1, 3]).unwrap();
        let visited = p.replay();
        assert_eq!(visited.len(), 5);
        assert_eq!(visited[1], t(2, 1, 1));
        assert_eq!(visited[2], t(2, 5, 1));
        assert!(visited.iter().all(|x| is_markov(&x.a, &x.b, &x.c)));
        assert!(TreePath::new(t(1, 1, 1), vec![1, 1]).is_err());
        assert!(TreePath::new(t(1, 1, 1), vec![0]).is_err());
    }
}
