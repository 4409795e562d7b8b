//! Borel–Weil–Bott on `Gr_d(V)` for bundles `Σ_a U* ⊗ Σ_b (V/U)*`.
//!
//! Convention: a [`BundleWeight`] `(a, b)` denotes `Σ_a U_d^* ⊗ Σ_b (V/U_d)^*`,
//! where `U_d` is the tautological subbundle. With `κ = (a, b)` and
//! `ρ = (n, …, 1)`, the cohomology vanishes when `κ + ρ` has a repeated entry;
//! otherwise it is `Σ_{σ(κ+ρ)-ρ} V^*` in degree `ℓ(σ)` only. For `P¹` this
//! gives `H⁰(O(1)) = V*` and `H¹(O(-2))` one-dimensional.
//!
//! A Schur functor written on the tautological bundle itself, `Σ_λ U`, enters
//! as `a = λ*` (reverse and negate); one written on `U^⊥ = (V/U)^*` enters
//! unchanged as `b`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::combinatorics::{check_ambient, weyl_dim, GLWeight, Partition};
use crate::error::{invalid, Result};

/// `ρ = (N, N-1, …, 1)`.
pub fn rho(n: usize) -> GLWeight {
    GLWeight::new((1..=n as i64).rev().collect()).expect("strictly decreasing")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sorted {
    /// Strictly decreasing rearrangement and the number of inversions.
    Regular { sorted: Vec<i64>, length: usize },
    /// Two entries coincide.
    Singular,
}

/// Sorts into strictly decreasing order, counting pairs `i < j` with
/// `w_i < w_j`.
pub fn sort_with_length(w: &[i64]) -> Sorted {
    let mut length = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] == w[j] {
                return Sorted::Singular;
            }
            if w[i] < w[j] {
                length += 1;
            }
        }
    }
    let mut sorted = w.to_vec();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    Sorted::Regular { sorted, length }
}

/// Weight of `Σ_a U_d^* ⊗ Σ_b (V/U_d)^*` on `Gr_d(V)`, `dim V = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleWeight {
    pub a: GLWeight,
    pub b: GLWeight,
    pub n: usize,
    pub d: usize,
}

impl BundleWeight {
    pub fn new(n: usize, d: usize, a: GLWeight, b: GLWeight) -> Result<Self> {
        check_ambient(n, d)?;
        if a.len() != d || b.len() != n - d {
            return Err(crate::Error::DimensionMismatch(format!(
                "bundle weight ({a}, {b}) on Gr_{d}(C^{n}) needs lengths {d} and {}",
                n - d
            )));
        }
        Ok(BundleWeight { a, b, n, d })
    }

    /// `Σ_λ U_d`, i.e. `a = λ*`.
    pub fn tautological(n: usize, d: usize, lambda: &GLWeight) -> Result<Self> {
        Self::new(n, d, lambda.dual(), GLWeight::zero(n.saturating_sub(d)))
    }

    /// `Σ_ν U_d^⊥`, i.e. `b = ν`.
    pub fn perp(n: usize, d: usize, nu: &GLWeight) -> Result<Self> {
        Self::new(n, d, GLWeight::zero(d), nu.clone())
    }

    /// `O(k)`, the `k`-th power of the Plücker line bundle.
    pub fn line_bundle(n: usize, d: usize, k: i64) -> Result<Self> {
        Self::new(n, d, GLWeight::constant(d, k), GLWeight::zero(n.saturating_sub(d)))
    }

    /// Tensor with `O(k)`.
    pub fn twist(&self, k: i64) -> Self {
        BundleWeight {
            a: self.a.shift(k),
            ..self.clone()
        }
    }

    pub fn kappa(&self) -> Vec<i64> {
        self.a.entries().iter().chain(self.b.entries()).copied().collect()
    }
}

/// The single nonvanishing cohomology group, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Cohomology {
    Vanishes,
    Nonzero {
        /// Cohomological degree `ℓ(σ)`.
        degree: usize,
        /// `σ(κ+ρ) - ρ`, a weight of `V^*`.
        weight: GLWeight,
        #[serde(serialize_with = "crate::rational::decimal::serialize")]
        dimension: BigUint,
    },
}

impl Cohomology {
    pub fn vanishes(&self) -> bool {
        matches!(self, Cohomology::Vanishes)
    }

    /// `dim H^k`.
    pub fn h(&self, k: usize) -> BigUint {
        match self {
            Cohomology::Nonzero { degree, dimension, .. } if *degree == k => dimension.clone(),
            _ => BigUint::default(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Cohomology::Nonzero { degree, .. } => Some(*degree),
            Cohomology::Vanishes => None,
        }
    }
}

pub fn bwb(bw: &BundleWeight) -> Result<Cohomology> {
    let n = bw.n;
    if bw.a.len() + bw.b.len() != n {
        return Err(crate::Error::DimensionMismatch(format!(
            "weight lengths {} + {} != {n}",
            bw.a.len(),
            bw.b.len()
        )));
    }
    let shifted: Vec<i64> = bw
        .kappa()
        .iter()
        .zip(rho(n).entries())
        .map(|(k, r)| k + r)
        .collect();
    Ok(match sort_with_length(&shifted) {
        Sorted::Singular => Cohomology::Vanishes,
        Sorted::Regular { sorted, length } => {
            let weight = GLWeight::new(
                sorted
                    .iter()
                    .zip(rho(n).entries())
                    .map(|(s, r)| s - r)
                    .collect(),
            )
            .expect("σ(κ+ρ)-ρ is dominant");
            let dimension = weyl_dim(n, &weight)?;
            Cohomology::Nonzero {
                degree: length,
                weight,
                dimension,
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Pushforward {
    Vanishes,
    Regular {
        /// `ℓ(σ)`; the Koszul layer index is `|λ| - length`.
        length: usize,
        /// `σ(λ*+ρ) - ρ` on `V_{n-d}`.
        weight: GLWeight,
    },
}

fn check_fiber_shape(lambda: &Partition, r: usize, big_n: usize) -> Result<()> {
    if r == 0 || r > big_n {
        return Err(invalid(format!("need 1 <= r <= N, got r={r}, N={big_n}")));
    }
    if !lambda.fits_box(r, big_n as u32) {
        return Err(invalid(format!("{lambda} does not fit the {r} x {big_n} box")));
    }
    Ok(())
}

/// Cohomology of `Σ_λ U_r` along `Gr_r(V_N)`: Borel–Weil–Bott applied to
/// `λ* + ρ = (N-λ_r, …, N-r+1-λ_1, N-r, …, 1)`.
pub fn fiberwise_pushforward(lambda: &Partition, r: usize, big_n: usize) -> Result<Pushforward> {
    check_fiber_shape(lambda, r, big_n)?;
    let lam = GLWeight::from_partition(lambda, r)?;
    let mut kappa = lam.dual().entries().to_vec();
    kappa.resize(big_n, 0);
    let shifted: Vec<i64> = kappa.iter().zip(rho(big_n).entries()).map(|(k, r)| k + r).collect();
    Ok(match sort_with_length(&shifted) {
        Sorted::Singular => Pushforward::Vanishes,
        Sorted::Regular { sorted, length } => Pushforward::Regular {
            length,
            weight: GLWeight::new(
                sorted.iter().zip(rho(big_n).entries()).map(|(s, r)| s - r).collect(),
            )
            .expect("σ(λ*+ρ)-ρ is dominant"),
        },
    })
}

/// `a·(N-r)` with `a` the number of nonpositive
/// `μ_i = N - i + 1 - λ_{r-i+1}`; `None` when `λ*+ρ` is singular.
pub fn shortcut_length(lambda: &Partition, r: usize, big_n: usize) -> Result<Option<usize>> {
    check_fiber_shape(lambda, r, big_n)?;
    let mu: Vec<i64> = (1..=r)
        .map(|i| big_n as i64 - i as i64 + 1 - lambda.part(r - i) as i64)
        .collect();
    let tail = 1..=(big_n - r) as i64;
    if mu.iter().any(|m| tail.contains(m)) {
        return Ok(None);
    }
    let a = mu.iter().filter(|&&m| m <= 0).count();
    Ok(Some(a * (big_n - r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    fn w(e: &[i64]) -> GLWeight {
        GLWeight::new(e.to_vec()).unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(2), w(&[2, 1]));
        assert_eq!(rho(1), w(&[1]));
        assert_eq!(rho(4), w(&[4, 3, 2, 1]));
    }

    #[test]
    fn sort_examples() {
        assert_eq!(
            sort_with_length(&[4, 1]),
            Sorted::Regular { sorted: vec![4, 1], length: 0 }
        );
        assert_eq!(
            sort_with_length(&[0, 1]),
            Sorted::Regular { sorted: vec![1, 0], length: 1 }
        );
        assert_eq!(sort_with_length(&[3, 3]), Sorted::Singular);
    }

    #[test]
    fn projective_line_examples() {
        let o1 = bwb(&BundleWeight::line_bundle(2, 1, 1).unwrap()).unwrap();
        assert_eq!(
            o1,
            Cohomology::Nonzero { degree: 0, weight: w(&[1, 0]), dimension: 2u32.into() }
        );
        let om2 = bwb(&BundleWeight::line_bundle(2, 1, -2).unwrap()).unwrap();
        assert_eq!(
            om2,
            Cohomology::Nonzero { degree: 1, weight: w(&[-1, -1]), dimension: 1u32.into() }
        );
        let om1 = bwb(&BundleWeight::line_bundle(2, 1, -1).unwrap()).unwrap();
        assert!(om1.vanishes());
    }

    #[test]
    fn plucker_line_bundle_sections() {
        for n in 2..=8 {
            for d in 1..=n / 2 {
                let h = bwb(&BundleWeight::line_bundle(n, d, 1).unwrap()).unwrap();
                assert_eq!(h.h(0), binomial(n, d), "n={n} d={d}");
                // O(1) is also Σ_{(-1,…,-1)} U^⊥
                let perp = BundleWeight::perp(n, d, &GLWeight::constant(n - d, -1)).unwrap();
                let h2 = bwb(&perp).unwrap();
                assert_eq!(h2.h(0), binomial(n, d));
            }
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(BundleWeight::new(4, 2, GLWeight::zero(1), GLWeight::zero(3)).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let (n_big, r) = (5, 2);
        assert_eq!(
            fiberwise_pushforward(&Partition::empty(), r, n_big).unwrap(),
            Pushforward::Regular { length: 0, weight: GLWeight::zero(5) }
        );
        let full = Partition::rectangle(r, n_big as u32);
        match fiberwise_pushforward(&full, r, n_big).unwrap() {
            Pushforward::Regular { length, weight } => {
                assert_eq!(length, r * (n_big - r));
                assert_eq!(full.size() as usize - length, r * r);
                assert_eq!(weight, GLWeight::constant(n_big, -(r as i64)));
            }
            other => panic!("{other:?}"),
        }
        let first = Partition::new(vec![(n_big - r + 1) as u32]).unwrap();
        match fiberwise_pushforward(&first, r, n_big).unwrap() {
            Pushforward::Regular { length, .. } => assert_eq!(first.size() as usize - length, 1),
            other => panic!("{other:?}"),
        }
        assert!(fiberwise_pushforward(&Partition::rectangle(3, 1), 2, 5).is_err());
        assert!(fiberwise_pushforward(&Partition::rectangle(1, 6), 2, 5).is_err());
    }

    #[test]
    fn shortcut_examples() {
        assert_eq!(shortcut_length(&Partition::empty(), 2, 4).unwrap(), Some(0));
        assert_eq!(
            shortcut_length(&Partition::rectangle(2, 4), 2, 4).unwrap(),
            Some(4)
        );
        // λ = (1): μ = (4, 2), and 2 ∈ {1, 2}
        assert_eq!(shortcut_length(&Partition::column(1), 2, 4).unwrap(), None);
    }
}
