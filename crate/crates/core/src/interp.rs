//! Interpolation of degree-bounded vanishing ideals, Jacobian ranks, and
//! determinantal dimensions.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::groebner::monomials_of_degree;
use crate::linalg::{Matrix, RationalMatrix};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};
use crate::rational::Q;
use crate::sampling::{random_q, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    /// Points of affine space: polynomials of degree `<= D`.
    Affine,
    /// Representatives of projective points: forms of degree exactly `D`.
    Projective,
}

fn monomial_basis(nvars: usize, degree: u32, kind: PointKind) -> Vec<Monomial> {
    match kind {
        PointKind::Projective => monomials_of_degree(nvars, degree),
        PointKind::Affine => (0..=degree).rev().flat_map(|e| monomials_of_degree(nvars, e)).collect(),
    }
}

fn eval_monomial(m: &Monomial, point: &[Q]) -> Q {
    point
        .iter()
        .zip(m.exps())
        .fold(Q::from_integer(1.into()), |acc, (x, &e)| acc * num_traits::pow(x.clone(), e as usize))
}

fn evaluation_matrix(points: &[Vec<Q>], degree: u32, kind: PointKind) -> Result<(RationalMatrix, Vec<Monomial>)> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let nvars = first.len();
    if points.iter().any(|p| p.len() != nvars) {
        return Err(Error::DimensionMismatch("points of different lengths".into()));
    }
    if degree == 0 {
        return Err(invalid("interpolation degree must be at least 1"));
    }
    let basis = monomial_basis(nvars, degree, kind);
    let m = Matrix::from_fn(points.len(), basis.len(), |i, j| eval_monomial(&basis[j], &points[i]));
    Ok((m, basis))
}

/// Basis of the polynomials of the given degree (see [`PointKind`])
/// vanishing on every point.
pub fn vanishing_space(points: &[Vec<Q>], degree: u32, kind: PointKind) -> Result<Vec<MultiPoly>> {
    let (m, basis) = evaluation_matrix(points, degree, kind)?;
    Ok(m.kernel()
        .into_iter()
        .map(|v| {
            MultiPoly::from_terms(basis.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()))
                .primitive(MonomialOrder::Grevlex)
        })
        .collect())
}

pub fn vanishing_dim(points: &[Vec<Q>], degree: u32, kind: PointKind) -> Result<usize> {
    let (m, basis) = evaluation_matrix(points, degree, kind)?;
    Ok(basis.len() - m.rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    /// `(number of points used, dimension of the vanishing space)`.
    pub history: Vec<(usize, usize)>,
    /// Final dimension, present only if the last two values agree.
    pub stable: Option<usize>,
}

/// Vanishing-space dimensions on growing prefixes of `points`, in steps of
/// `step` points (the full set is always the last prefix).
pub fn stabilize(points: &[Vec<Q>], degree: u32, kind: PointKind, step: usize) -> Result<Stabilization> {
    let (m, basis) = evaluation_matrix(points, degree, kind)?;
    let step = step.max(1);
    let mut sizes: Vec<usize> = (1..).map(|k| k * step).take_while(|&s| s < points.len()).collect();
    sizes.push(points.len());
    let cols: Vec<usize> = (0..basis.len()).collect();
    let history: Vec<(usize, usize)> = sizes
        .iter()
        .map(|&s| {
            let rows: Vec<usize> = (0..s).collect();
            (s, basis.len() - m.submatrix(&rows, &cols).rank())
        })
        .collect();
    let stable = match history.as_slice() {
        [.., (_, a), (_, b)] if a == b => Some(*b),
        _ => None,
    };
    Ok(Stabilization { history, stable })
}

/// Rank of the Jacobian matrix of `map` at `point`.
pub fn jacobian_rank(map: &[MultiPoly], point: &[Q]) -> Result<usize> {
    Ok(jacobian(map, point)?.rank())
}

pub fn jacobian(map: &[MultiPoly], point: &[Q]) -> Result<RationalMatrix> {
    let nvars = point.len();
    if let Some(p) = map.iter().find(|p| p.support_len() > nvars) {
        return Err(Error::DimensionMismatch(format!(
            "map component in {} variables, point has {nvars} coordinates",
            p.support_len()
        )));
    }
    let partials: Vec<Vec<MultiPoly>> = map.iter().map(|p| (0..nvars).map(|v| p.derivative(v)).collect()).collect();
    let mut out = RationalMatrix::zeros(map.len(), nvars);
    for (i, row) in partials.iter().enumerate() {
        for (j, dp) in row.iter().enumerate() {
            out.set(i, j, dp.eval(point)?);
        }
    }
    Ok(out)
}

/// Jacobian rank at one random integer point per seed; the ranks must
/// agree, otherwise the sample is reported as non-generic.
pub fn generic_jacobian_rank(map: &[MultiPoly], nvars: usize, seeds: &[u64], range: i64) -> Result<usize> {
    let mut ranks = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let mut g = rng(seed);
        let point: Vec<Q> = (0..nvars).map(|_| random_q(&mut g, range)).collect();
        ranks.push(jacobian_rank(map, &point)?);
    }
    match ranks.first() {
        None => Err(invalid("no seeds given")),
        Some(&r) if ranks.iter().all(|&x| x == r) => Ok(r),
        Some(_) => Err(Error::NonGenericSample(format!("Jacobian ranks {ranks:?} disagree across seeds {seeds:?}"))),
    }
}

/// Matrix whose entries are distinct variables `offset, offset+1, …`,
/// row-major.
pub fn variable_matrix(rows: usize, cols: usize, offset: usize) -> Matrix<MultiPoly> {
    Matrix::from_fn(rows, cols, |i, j| MultiPoly::var(offset + i * cols + j))
}

/// `dim Y_{N,c} = N² - (N-c)² = c(2N - c)`.
pub fn determinantal_dim(big_n: usize, c: usize) -> Result<usize> {
    if c > big_n {
        return Err(invalid(format!("rank bound {c} exceeds {big_n}")));
    }
    Ok(c * (2 * big_n - c))
}

/// Entries of `A B` for an `N x c` matrix `A` and a `c x N` matrix `B` of
/// independent variables (`2Nc` variables in total).
pub fn factorization_map(big_n: usize, c: usize) -> Vec<MultiPoly> {
    let a = variable_matrix(big_n, c, 0);
    let b = variable_matrix(c, big_n, big_n * c);
    a.matmul(&b).expect("shapes agree").entries().to_vec()
}
