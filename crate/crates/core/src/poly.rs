//! Univariate and multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Polynomial in one variable `t`; `coeffs[k]` is the coefficient of `t^k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: Q, b: Q) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest `v` with `t^v` dividing the polynomial; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * t + c)
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self::constant(Q::one())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self + &(-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Exponent vector with trailing zeros trimmed, so that a monomial does not
/// depend on the number of ambient variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// One past the highest variable index that occurs.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        Monomial((0..len).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial::new((0..other.0.len()).map(|i| other.exponent(i) - self.exponent(i)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        Monomial((0..len).map(|i| self.exponent(i).max(other.exponent(i))).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Whether any variable with index `< block` occurs.
    pub fn involves_block(&self, block: usize) -> bool {
        self.0.iter().take(block).any(|&e| e > 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Product of grevlex on variables `0..block` and grevlex on the rest;
    /// eliminates the first block.
    Elimination { block: usize },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        let len = a.len().max(b.len());
        for i in (0..len).rev() {
            let (x, y) = (a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
            if x != y {
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.0, &b.0),
            MonomialOrder::Elimination { block } => {
                let split = |m: &Monomial| {
                    let k = block.min(m.0.len());
                    (m.0[..k].to_vec(), m.0[k..].to_vec())
                };
                let (a1, a2) = split(a);
                let (b1, b2) = split(b);
                grevlex(&a1, &b1).then_with(|| grevlex(&a2, &b2))
            }
        }
    }
}

/// Sparse polynomial: monomial to nonzero coefficient. Variables are
/// indexed positionally; names live in [`PolyRing`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MultiPoly {
    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// One past the highest variable index that occurs.
    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted decreasingly for `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(Monomial, Q)> {
        let mut v: Vec<(Monomial, Q)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        (0..e).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        if self.support_len() > point.len() {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables evaluated at a point with {} coordinates",
                self.support_len(),
                point.len()
            )));
        }
        Ok(self.eval_unchecked(point))
    }

    fn eval_unchecked(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            (e > 0).then(|| {
                let mut exps = m.exps().to_vec();
                exps[var] -= 1;
                (Monomial::new(exps), c * Q::from_integer(e.into()))
            })
        }))
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self, order: MonomialOrder) -> MultiPoly {
        let sorted = self.sorted_terms(order);
        let coeffs: Vec<Q> = sorted.iter().map(|(_, c)| c.clone()).collect();
        let prim = rational::primitive(&coeffs);
        MultiPoly::from_terms(sorted.into_iter().map(|(m, _)| m).zip(prim))
    }

    /// Whether any variable with index `< block` occurs.
    pub fn involves_block(&self, block: usize) -> bool {
        self.terms.keys().any(|m| m.involves_block(block))
    }

    /// Reindex variables: variable `i` becomes `map(i)`.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut exps = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = map(i);
                    if exps.len() <= j {
                        exps.resize(j + 1, 0);
                    }
                    exps[j] += e;
                }
            }
            (Monomial::new(exps), c.clone())
        }))
    }

    pub fn display<'a>(&'a self, ring: &'a PolyRing) -> impl fmt::Display + 'a {
        DisplayPoly { p: self, ring }
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Q::one())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            for (k, x) in &rhs.terms {
                out.add_term(m.mul(k), c * x);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// Variable names for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
}

impl PolyRing {
    pub fn new(names: Vec<String>) -> Self {
        PolyRing { names }
    }

    /// Variables `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        PolyRing::new((0..count).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, name: &str) -> Option<MultiPoly> {
        self.names.iter().position(|n| n == name).map(MultiPoly::var)
    }

    fn name(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("x{i}"))
    }
}

struct DisplayPoly<'a> {
    p: &'a MultiPoly,
    ring: &'a PolyRing,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.p.sorted_terms(MonomialOrder::Grevlex);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.ring.name(i)
                    } else {
                        format!("{}^{e}", self.ring.name(i))
                    }
                })
                .collect();
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { abs.to_string() };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(i)
    }

    #[test]
    fn unipoly_arithmetic() {
        let p = UniPoly::linear(q(1), q(1));
        let sq = &p * &p;
        assert_eq!(sq.coeffs(), &[q(1), q(2), q(1)]);
        assert_eq!((sq.clone() - sq).valuation(), None);
        let t2 = UniPoly::new(vec![q(0), q(0), q(3)]);
        assert_eq!(t2.valuation(), Some(2));
        assert_eq!(t2.eval(&q(2)), q(12));
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x0 > x1 > x2, and x1^2 > x0*x2 in grevlex
        assert_eq!(o.cmp(&Monomial::var(0), &Monomial::var(1)), Ordering::Greater);
        assert_eq!(
            o.cmp(&Monomial::new(vec![0, 2]), &Monomial::new(vec![1, 0, 1])),
            Ordering::Greater
        );
        assert_eq!(o.cmp(&Monomial::new(vec![0, 0, 2]), &Monomial::var(0)), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_block() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.cmp(&Monomial::var(0), &Monomial::new(vec![0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn multipoly_basics() {
        let p = &(&x(0) * &x(0)) - &(&x(0) * &x(1));
        assert_eq!(p.total_degree(), 2);
        assert!(p.is_homogeneous());
        assert_eq!(p.eval(&[q(2), q(3)]).unwrap(), q(-2));
        assert!(p.eval(&[q(2)]).is_err());
        assert_eq!(p.derivative(0), &x(0).scale(&q(2)) - &x(1));
        let z = &p - &p;
        assert!(z.is_zero());
        let ring = PolyRing::new(vec!["a".into(), "b".into()]);
        assert_eq!(p.display(&ring).to_string(), "a^2 - a*b");
    }

    #[test]
    fn primitive_strips_content() {
        let p = &x(0).scale(&crate::rational::q_frac(-2, 3)) + &x(1).scale(&q(4));
        let prim = p.primitive(MonomialOrder::Grevlex);
        assert_eq!(prim, &x(0) - &x(1).scale(&q(6)));
    }
}
