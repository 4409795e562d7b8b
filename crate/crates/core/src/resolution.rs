//! Layers of the Koszul-type resolution of the ideal sheaf of `S_r`, their
//! twisted sections, and the Grothendieck-ring identity behind the Euler
//! characteristic.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bwb::{bwb, fiberwise_pushforward, BundleWeight, Cohomology, Pushforward};
use crate::combinatorics::{
    check_standing, partitions_in_box, partitions_of, pieri_column, weyl_dim, GLWeight, Partition,
};
use crate::error::{invalid, Result};

/// `Σ_levi V_{n-d}^* ⊗ Σ_{λ^t} U_d^⊥ ⊗ O(twist)`, coming from `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafTerm {
    pub source: Partition,
    /// `ℓ(σ)` of the fiberwise pushforward.
    pub length: usize,
    pub levi_weight: GLWeight,
    #[serde(serialize_with = "crate::rational::decimal::serialize")]
    pub levi_dim: BigUint,
    pub bundle_partition: Partition,
    pub twist: i64,
}

impl SheafTerm {
    /// Layer index `|λ| - ℓ(σ)`.
    pub fn layer(&self) -> usize {
        self.source.size() as usize - self.length
    }

    pub fn bundle(&self, n: usize, d: usize) -> Result<BundleWeight> {
        BundleWeight::new(
            n,
            d,
            GLWeight::constant(d, self.twist),
            GLWeight::from_partition(&self.bundle_partition, n - d)?,
        )
    }

    pub fn twisted(&self, k: i64) -> SheafTerm {
        SheafTerm { twist: self.twist + k, ..self.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexLayer {
    pub index: usize,
    pub terms: Vec<SheafTerm>,
}

pub(crate) fn check_triple(n: usize, d: usize, r: usize) -> Result<()> {
    check_standing(n, d)?;
    if r == 0 || r > d {
        return Err(invalid(format!("need 1 <= r <= d, got r={r}, d={d}")));
    }
    Ok(())
}

/// Partitions indexing `Λ^k(U_r ⊗ U_d^⊥)`: at most `r` parts, each `<= n-d`,
/// of size `k`.
pub fn koszul_layer(k: u64, r: usize, n: usize, d: usize) -> Result<Vec<Partition>> {
    check_standing(n, d)?;
    Ok(partitions_of(k, r, (n - d) as u32))
}

/// Layers `F_0, …, F_{r²}` (longer only if some surviving term lands beyond
/// `r²`).
pub fn build_complex(n: usize, d: usize, r: usize) -> Result<Vec<ComplexLayer>> {
    check_triple(n, d, r)?;
    let big_n = n - d;
    let mut terms = Vec::new();
    for lambda in partitions_in_box(r, big_n as u32) {
        if let Pushforward::Regular { length, weight } = fiberwise_pushforward(&lambda, r, big_n)? {
            let levi_dim = weyl_dim(big_n, &weight)?;
            terms.push(SheafTerm {
                bundle_partition: lambda.transpose(),
                source: lambda,
                length,
                levi_weight: weight,
                levi_dim,
                twist: 0,
            });
        }
    }
    let top = terms.iter().map(SheafTerm::layer).max().unwrap_or(0).max(r * r);
    let mut layers: Vec<ComplexLayer> = (0..=top).map(|index| ComplexLayer { index, terms: Vec::new() }).collect();
    for t in terms {
        layers[t.layer()].terms.push(t);
    }
    Ok(layers)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedSection {
    pub m: usize,
    pub layer: usize,
    pub term: SheafTerm,
    /// `H^0` of the twisted bundle factor, as computed by Borel–Weil–Bott.
    pub sections: Cohomology,
    /// Levi dimension times `h^0` of the bundle factor.
    #[serde(serialize_with = "crate::rational::decimal::serialize")]
    pub section_dimension: BigUint,
}

/// Terms of the complex whose twist by `O(1)` has nonzero global sections,
/// found by running Borel–Weil–Bott on every term; `m = r - layer`.
pub fn twisted_h0_terms(n: usize, d: usize, r: usize) -> Result<Vec<TwistedSection>> {
    let mut out = Vec::new();
    for layer in build_complex(n, d, r)? {
        if layer.index == 0 {
            continue;
        }
        for term in &layer.terms {
            let twisted = term.twisted(1);
            let coh = bwb(&twisted.bundle(n, d)?)?;
            if coh.degree() != Some(0) {
                continue;
            }
            if layer.index > r {
                return Err(invalid(format!(
                    "term {} in layer {} > r has twisted sections",
                    term.source, layer.index
                )));
            }
            let section_dimension = &term.levi_dim * coh.h(0);
            out.push(TwistedSection { m: r - layer.index, layer: layer.index, term: twisted, sections: coh, section_dimension });
        }
    }
    out.sort_by_key(|t| t.m);
    Ok(out)
}

/// `Σ_m (-1)^{r-1-m} · section_dimension(m)`.
pub fn euler_char_sections(n: usize, d: usize, r: usize) -> Result<BigInt> {
    Ok(twisted_h0_terms(n, d, r)?
        .iter()
        .map(|t| {
            let v = BigInt::from(t.section_dimension.clone());
            if (r - 1 - t.m).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .sum())
}

/// `χ(I(1)) = Σ_{k>=1} (-1)^{k-1} χ(F_k(1))` with every cohomology degree
/// counted; agrees with [`euler_char_sections`] when the higher cohomology
/// of the twisted terms vanishes.
pub fn euler_char_full(n: usize, d: usize, r: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for layer in build_complex(n, d, r)? {
        if layer.index == 0 {
            continue;
        }
        for term in &layer.terms {
            let coh = bwb(&term.twisted(1).bundle(n, d)?)?;
            if let Cohomology::Nonzero { degree, dimension, .. } = coh {
                let v = BigInt::from(&term.levi_dim * dimension);
                if (layer.index - 1 + degree) % 2 == 0 {
                    total += v;
                } else {
                    total -= v;
                }
            }
        }
    }
    Ok(total)
}

/// Integer combination of `[Σ_α V_big] ⊗ [Σ_β V_small]`, keys sl-reduced.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrothElement {
    terms: BTreeMap<(GLWeight, GLWeight), BigInt>,
}

impl GrothElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn irreducible(big: &GLWeight, small: &GLWeight) -> Self {
        let mut g = Self::zero();
        g.add_term(big, small, BigInt::from(1));
        g
    }

    pub fn add_term(&mut self, big: &GLWeight, small: &GLWeight, c: BigInt) {
        let key = (big.sl_reduce(), small.sl_reduce());
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GLWeight, GLWeight), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for ((a, b), x) in &self.terms {
            out.add_term(a, b, x * c);
        }
        out
    }

    /// `Σ c · dim Σ_α · dim Σ_β`.
    pub fn dimension(&self) -> BigInt {
        self.terms
            .iter()
            .map(|((a, b), c)| {
                let da = weyl_dim(a.len(), a).expect("length matches");
                let db = weyl_dim(b.len(), b).expect("length matches");
                c * BigInt::from(da * db)
            })
            .sum()
    }

    /// Whether every coefficient is positive.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

impl Add for &GrothElement {
    type Output = GrothElement;
    fn add(self, rhs: &GrothElement) -> GrothElement {
        let mut out = self.clone();
        for ((a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Neg for &GrothElement {
    type Output = GrothElement;
    fn neg(self) -> GrothElement {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &GrothElement {
    type Output = GrothElement;
    fn sub(self, rhs: &GrothElement) -> GrothElement {
        self + &(-rhs)
    }
}

impl Serialize for GrothElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            big: &'a GLWeight,
            small: &'a GLWeight,
            coefficient: String,
        }
        let entries: Vec<Entry> = self
            .terms
            .iter()
            .map(|((a, b), c)| Entry { big: a, small: b, coefficient: c.to_string() })
            .collect();
        entries.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AppendixIdentity {
    pub lhs: GrothElement,
    pub rhs: GrothElement,
    pub equal: bool,
    /// Dimension of the right-hand side.
    #[serde(serialize_with = "crate::rational::decimal::serialize")]
    pub dimension: BigInt,
}

/// `[M_s] = Σ_{m<=s} [hook(r-s, 1^{N-r}) ⊗ Λ^{s-m} V_N] ⊗ [Λ^m V_d]`, the
/// first product expanded by the column Pieri rule.
pub fn m_class(n: usize, d: usize, r: usize, s: usize) -> Result<GrothElement> {
    check_triple(n, d, r)?;
    if s >= r {
        return Err(invalid(format!("need s < r, got s={s}, r={r}")));
    }
    let big_n = n - d;
    let hook = Partition::hook((r - s) as u32, big_n - r)?;
    let mut out = GrothElement::zero();
    for m in 0..=s {
        let small = GLWeight::wedge(d, m)?;
        for mu in pieri_column(&hook, s - m, big_n) {
            out.add_term(&GLWeight::from_partition(&mu, big_n)?, &small, BigInt::from(1));
        }
    }
    Ok(out)
}

pub fn appendix_euler(n: usize, d: usize, r: usize) -> Result<AppendixIdentity> {
    check_triple(n, d, r)?;
    let big_n = n - d;
    let mut lhs = GrothElement::zero();
    for s in 0..r {
        let sign = if (r - 1 - s).is_multiple_of(2) { 1 } else { -1 };
        lhs = &lhs + &m_class(n, d, r, s)?.scale(&BigInt::from(sign));
    }
    let mut rhs = GrothElement::zero();
    for m in 0..r {
        rhs.add_term(&GLWeight::wedge(big_n, big_n - m)?, &GLWeight::wedge(d, m)?, BigInt::from(1));
    }
    let equal = lhs == rhs;
    let dimension = rhs.dimension();
    Ok(AppendixIdentity { lhs, rhs, equal, dimension })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binomial, truncated_dim};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_layer(0, 2, 5, 2).unwrap(), vec![Partition::empty()]);
        assert_eq!(koszul_layer(1, 2, 5, 2).unwrap(), vec![p(&[1])]);
        let mut two = koszul_layer(2, 2, 4, 2).unwrap();
        two.sort();
        let mut expected = vec![p(&[2]), p(&[1, 1])];
        expected.sort();
        assert_eq!(two, expected);
    }

    #[test]
    fn divisor_case() {
        for (n, d) in [(2, 1), (4, 2), (7, 3)] {
            let layers = build_complex(n, d, 1).unwrap();
            assert_eq!(layers.len(), 2);
            assert_eq!(layers[0].terms.len(), 1);
            assert_eq!(layers[1].terms.len(), 1);
            let t = &layers[1].terms[0];
            assert_eq!(t.bundle_partition, Partition::rectangle(n - d, 1));
            assert_eq!(t.levi_dim, BigUint::from(1u32));
        }
    }

    #[test]
    fn complex_632() {
        let layers = build_complex(6, 3, 2).unwrap();
        assert_eq!(layers.len(), 5);
        let total: usize = layers.iter().map(|l| l.terms.len()).sum();
        assert_eq!(total, 6);
        let last = &layers[4].terms;
        assert_eq!(last.len(), 1);
        assert_eq!(last[0].source, Partition::rectangle(2, 3));
        // Σ_{(2,2,2)} U^⊥ = O(-2): the bundle is a power of the line bundle
        assert_eq!(last[0].bundle_partition, Partition::rectangle(3, 2));
    }

    #[test]
    fn twisted_terms_422() {
        let terms = twisted_h0_terms(4, 2, 2).unwrap();
        assert_eq!(terms.iter().map(|t| (t.m, t.layer)).collect::<Vec<_>>(), vec![(0, 2), (1, 1)]);
        for t in &terms {
            assert_eq!(t.sections.h(0), binomial(4, t.m));
        }
        assert_eq!(euler_char_sections(4, 2, 2).unwrap(), BigInt::from(5));
        assert_eq!(euler_char_sections(5, 2, 2).unwrap(), BigInt::from(7));
    }

    #[test]
    fn divisor_sections() {
        for (n, d) in [(2, 1), (4, 2), (6, 3)] {
            assert_eq!(euler_char_sections(n, d, 1).unwrap(), BigInt::from(1));
            assert_eq!(euler_char_full(n, d, 1).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn appendix_examples() {
        let one = appendix_euler(5, 2, 1).unwrap();
        assert!(one.equal);
        assert_eq!(one.rhs, GrothElement::irreducible(&GLWeight::zero(3), &GLWeight::zero(2)));
        let a = appendix_euler(4, 2, 2).unwrap();
        assert!(a.equal);
        assert_eq!(a.dimension, BigInt::from(5));
        let b = appendix_euler(6, 3, 2).unwrap();
        assert!(b.equal);
        assert_eq!(b.dimension, BigInt::from(truncated_dim(6, 3, 1).unwrap()));
    }

    #[test]
    fn groth_arithmetic() {
        let x = GrothElement::irreducible(&GLWeight::wedge(3, 1).unwrap(), &GLWeight::zero(2));
        let y = GrothElement::irreducible(&GLWeight::constant(3, 4), &GLWeight::wedge(2, 1).unwrap());
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &y).dimension(), BigInt::from(3 + 2));
        // determinant twists are invisible
        let shifted = GrothElement::irreducible(&GLWeight::wedge(3, 1).unwrap().shift(2), &GLWeight::constant(2, -1));
        assert_eq!(shifted, x);
    }
}
