//! Plücker and truncated Plücker coordinates, the unipotent radical, Schubert
//! conditions, minor maps and limits along polynomial curves.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{check_standing, enumerate_index_sets, IndexSet};
use crate::error::{invalid, Error, Result};
use crate::linalg::{Matrix, RationalMatrix, Ring};
use crate::poly::UniPoly;
use crate::rational::{self, Q};

pub fn minor(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> Result<Q> {
    m.minor(rows, cols)
}

/// Coordinates `Δ_I` for all `I` with `deg I <= level`, in lexicographic
/// order of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    n: usize,
    d: usize,
    level: usize,
    coords: Vec<(IndexSet, Q)>,
}

impl PluckerVector {
    pub fn from_values(n: usize, d: usize, level: usize, values: Vec<Q>) -> Result<Self> {
        let sets = enumerate_index_sets(n, d, level)?;
        if sets.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} coordinates",
                values.len(),
                sets.len()
            )));
        }
        Ok(PluckerVector { n, d, level, coords: sets.into_iter().zip(values).collect() })
    }

    /// `w_level`: `Δ_[d] = 1`, all other coordinates zero.
    pub fn highest_weight(n: usize, d: usize, level: usize) -> Result<Self> {
        let count = enumerate_index_sets(n, d, level)?.len();
        let mut values = vec![Q::zero(); count];
        values[0] = rational::q(1);
        Self::from_values(n, d, level, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn coords(&self) -> &[(IndexSet, Q)] {
        &self.coords
    }

    pub fn values(&self) -> Vec<Q> {
        self.coords.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn get(&self, set: &IndexSet) -> Option<&Q> {
        self.coords
            .binary_search_by(|(i, _)| i.cmp(set))
            .ok()
            .map(|k| &self.coords[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|(_, v)| v.is_zero())
    }

    /// Forget coordinates of degree above `level`.
    pub fn truncate(&self, level: usize) -> Result<Self> {
        if level > self.level {
            return Err(invalid(format!("cannot truncate level {} to {level}", self.level)));
        }
        Ok(PluckerVector {
            n: self.n,
            d: self.d,
            level,
            coords: self.coords.iter().filter(|(i, _)| i.degree() <= level).cloned().collect(),
        })
    }

    /// Whether every coordinate of degree `< r` vanishes.
    pub fn vanishes_below(&self, r: usize) -> bool {
        self.coords.iter().all(|(i, v)| i.degree() >= r || v.is_zero())
    }

    /// Equality up to a nonzero scalar.
    pub fn projectively_equal(&self, other: &PluckerVector) -> bool {
        if self.coords.len() != other.coords.len() || self.is_zero() || other.is_zero() {
            return false;
        }
        let a = self.values();
        let b = other.values();
        let k = a.iter().position(|x| !x.is_zero()).expect("nonzero");
        if b[k].is_zero() {
            return false;
        }
        let ratio = &b[k] / &a[k];
        a.iter().zip(&b).all(|(x, y)| &(x * &ratio) == y)
    }
}

impl Serialize for PluckerVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            n: usize,
            d: usize,
            level: usize,
            coordinates: Coords<'a>,
        }
        struct Coords<'a>(&'a [(IndexSet, Q)]);
        impl Serialize for Coords<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (i, v) in self.0 {
                    map.serialize_entry(&i.to_string(), &rational::to_string(v))?;
                }
                map.end()
            }
        }
        Wire { n: self.n, d: self.d, level: self.level, coordinates: Coords(&self.coords) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PluckerVector {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            d: usize,
            level: usize,
            coordinates: BTreeMap<String, String>,
        }
        let w = Wire::deserialize(de)?;
        let sets = enumerate_index_sets(w.n, w.d, w.level).map_err(D::Error::custom)?;
        if sets.len() != w.coordinates.len() {
            return Err(D::Error::custom("wrong number of coordinates"));
        }
        let values = sets
            .iter()
            .map(|i| {
                let raw = w
                    .coordinates
                    .get(&i.to_string())
                    .ok_or_else(|| D::Error::custom(format!("missing coordinate {i}")))?;
                rational::parse(raw).map_err(D::Error::custom)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PluckerVector::from_values(w.n, w.d, w.level, values).map_err(D::Error::custom)
    }
}

fn check_basis(u: &RationalMatrix) -> Result<(usize, usize)> {
    let (n, d) = u.shape();
    let rank = u.rank();
    if rank < d {
        return Err(Error::RankDeficient { rank, expected: d });
    }
    Ok((n, d))
}

/// Minors `Δ_I(Z)` over any commutative ring, for all `I` of degree at most
/// `level`. No rank condition.
pub fn truncated_minors<R: Ring>(z: &Matrix<R>, level: usize) -> Result<Vec<R>> {
    let (n, d) = z.shape();
    let cols: Vec<usize> = (0..d).collect();
    enumerate_index_sets(n, d, level)?
        .iter()
        .map(|i| z.minor_expand(&i.rows(), &cols))
        .collect()
}

/// Truncated Plücker vector of a rank-`d` basis matrix.
pub fn plucker(z: &RationalMatrix, level: usize) -> Result<PluckerVector> {
    let (n, d) = check_basis(z)?;
    let cols: Vec<usize> = (0..d).collect();
    let sets = enumerate_index_sets(n, d, level)?;
    let values = sets
        .iter()
        .map(|i| z.minor(&i.rows(), &cols))
        .collect::<Result<Vec<_>>>()?;
    PluckerVector::from_values(n, d, level, values)
}

/// `[[I_d, 0], [z, I_{n-d}]]` for a `(n-d) x d` block `z`.
pub fn unipotent<R: Ring>(z: &Matrix<R>) -> Matrix<R> {
    let (k, d) = z.shape();
    Matrix::from_fn(d + k, d + k, |i, j| {
        if i == j {
            R::one()
        } else if i >= d && j < d {
            z.get(i - d, j).clone()
        } else {
            R::zero()
        }
    })
}

/// `unipotent(z) [I_d; 0] = [I_d; z]`.
pub fn orbit_matrix<R: Ring>(z: &Matrix<R>) -> Matrix<R> {
    let (k, d) = z.shape();
    Matrix::from_fn(d + k, d, |i, j| {
        if i < d {
            if i == j {
                R::one()
            } else {
                R::zero()
            }
        } else {
            z.get(i - d, j).clone()
        }
    })
}

/// `[I_d; 0]`, the highest-weight point.
pub fn base_point(n: usize, d: usize) -> RationalMatrix {
    orbit_matrix(&RationalMatrix::zeros(n - d, d))
}

/// `dim(colspan(U) ∩ V_{n-d})`, where `V_{n-d}` is spanned by the last
/// `n-d` basis vectors.
pub fn intersection_dim(u: &RationalMatrix) -> Result<usize> {
    let (_, d) = check_basis(u)?;
    let top: Vec<usize> = (0..d).collect();
    let cols: Vec<usize> = (0..d).collect();
    Ok(d - u.submatrix(&top, &cols).rank())
}

pub fn schubert_member(u: &RationalMatrix, r: usize) -> Result<bool> {
    Ok(intersection_dim(u)? >= r)
}

/// Basis of the coordinate point `p_J = span(e_j : j ∈ J)`.
pub fn coordinate_point(set: &IndexSet) -> RationalMatrix {
    let rows = set.rows();
    RationalMatrix::from_fn(set.n(), set.d(), |i, j| rational::q(i64::from(rows[j] == i)))
}

fn check_s_list(m: usize, s_list: &[usize]) -> Result<()> {
    if s_list.is_empty()
        || s_list.windows(2).any(|w| w[0] >= w[1])
        || s_list[0] < 1
        || *s_list.last().expect("nonempty") > m
    {
        return Err(invalid(format!("{s_list:?} is not strictly increasing in [1, {m}]")));
    }
    Ok(())
}

/// Blocks of `s x s` minors, rows and columns indexed by lexicographic
/// subsets, flattened row-major.
pub fn minor_blocks<R: Ring>(phi: &Matrix<R>, s_list: &[usize]) -> Result<Vec<Vec<R>>> {
    let m = phi.rows();
    if phi.cols() != m {
        return Err(Error::DimensionMismatch(format!("minor map on a {:?} matrix", phi.shape())));
    }
    check_s_list(m, s_list)?;
    Ok(s_list.iter().map(|&s| phi.compound(s).entries().to_vec()).collect())
}

/// The point `(Λ^{s_1} φ, …, Λ^{s_k} φ)` of a full-rank `φ`.
pub fn collineation_point(phi: &RationalMatrix, s_list: &[usize]) -> Result<Vec<Vec<Q>>> {
    let rank = phi.rank();
    if rank < phi.rows() || phi.cols() != phi.rows() {
        return Err(Error::RankDeficient { rank, expected: phi.rows() });
    }
    minor_blocks(phi, s_list)
}

/// A polynomial map on matrices, evaluated over any commutative ring.
pub trait CoordinateMap {
    fn apply<R: Ring>(&self, m: &Matrix<R>) -> Result<Vec<R>>;
}

/// Truncated Plücker coordinates of an `n x d` matrix.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedPlucker {
    pub level: usize,
}

impl CoordinateMap for TruncatedPlucker {
    fn apply<R: Ring>(&self, m: &Matrix<R>) -> Result<Vec<R>> {
        let (n, d) = m.shape();
        check_standing(n, d)?;
        truncated_minors(m, self.level)
    }
}

/// All `s x s` minors for `s` in the list, concatenated.
#[derive(Clone, Debug)]
pub struct MinorMap {
    pub s_list: Vec<usize>,
}

impl CoordinateMap for MinorMap {
    fn apply<R: Ring>(&self, m: &Matrix<R>) -> Result<Vec<R>> {
        Ok(minor_blocks(m, &self.s_list)?.into_iter().flatten().collect())
    }
}

/// Matrix of polynomials in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCurve {
    matrix: Matrix<UniPoly>,
}

impl PolyCurve {
    pub fn new(matrix: Matrix<UniPoly>) -> Self {
        PolyCurve { matrix }
    }

    /// `Σ_k t^k coeffs[k]`.
    pub fn from_coefficients(coeffs: &[RationalMatrix]) -> Result<Self> {
        let shape = coeffs.first().map(RationalMatrix::shape).ok_or_else(|| invalid("curve without coefficients"))?;
        if coeffs.iter().any(|c| c.shape() != shape) {
            return Err(Error::DimensionMismatch("curve coefficients of different shapes".into()));
        }
        Ok(PolyCurve {
            matrix: Matrix::from_fn(shape.0, shape.1, |i, j| {
                UniPoly::new(coeffs.iter().map(|c| c.get(i, j).clone()).collect())
            }),
        })
    }

    pub fn constant(m: &RationalMatrix) -> Self {
        PolyCurve { matrix: m.map(|x| UniPoly::constant(x.clone())) }
    }

    /// `base + t·direction`.
    pub fn line(base: &RationalMatrix, direction: &RationalMatrix) -> Result<Self> {
        Self::from_coefficients(&[base.clone(), direction.clone()])
    }

    pub fn matrix(&self) -> &Matrix<UniPoly> {
        &self.matrix
    }

    pub fn eval(&self, t: &Q) -> RationalMatrix {
        self.matrix.map(|p| p.eval(t))
    }

    /// Every entry multiplied by the scalar polynomial `c(t)`.
    pub fn scaled(&self, c: &UniPoly) -> Self {
        PolyCurve { matrix: self.matrix.map(|p| p * c) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitPoint {
    /// Joint `t`-adic valuation of the coordinate vector.
    pub valuation: usize,
    #[serde(with = "rational::vec")]
    pub point: Vec<Q>,
}

/// `lim_{t→0} [F(curve(t))]`: divide by `t^v` for the joint minimal
/// valuation `v` and evaluate at `t = 0`.
pub fn limit_point(curve: &PolyCurve, map: &impl CoordinateMap) -> Result<LimitPoint> {
    let coords = map.apply(curve.matrix())?;
    let valuation = coords
        .iter()
        .filter_map(UniPoly::valuation)
        .min()
        .ok_or(Error::ZeroCurve)?;
    Ok(LimitPoint { valuation, point: coords.iter().map(|p| p.coeff(valuation)).collect() })
}

/// Labels of the blocks of `minor_blocks`: `(rows, cols)` subsets.
pub fn minor_labels(m: usize, s: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let sets: Vec<Vec<usize>> = (0..m).combinations(s).collect();
    sets.iter()
        .flat_map(|r| sets.iter().map(move |c| (r.clone(), c.clone())))
        .collect()
}
