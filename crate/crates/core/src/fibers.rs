//! Schubert cells and their intersections with `S_r`, collineation fibers,
//! orbit points, limit probes into exceptional fibers, and a sampled
//! smoothness check of the complete blow-up.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{binomial, check_standing, IndexSet};
use crate::error::{invalid, Error, Result};
use crate::interp::{determinantal_dim, jacobian, variable_matrix};
use crate::linalg::{rank_of_vectors, Matrix, RationalMatrix};
use crate::plucker::{
    intersection_dim, limit_point, minor_blocks, orbit_matrix, plucker, LimitPoint, MinorMap, PluckerVector, PolyCurve,
    TruncatedPlucker,
};
use crate::poly::MultiPoly;
use crate::rational::{self, Q};
use crate::sampling::{random_matrix, random_q, rng, SampleRng, DEFAULT_RANGE};

/// `Col_s(E_1, E_2)` with `dim E_1 = dim E_2 = m`. An empty `s_list` is a
/// point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollineationSpec {
    pub m: usize,
    pub s_list: Vec<usize>,
}

impl CollineationSpec {
    pub fn new(m: usize, s_list: Vec<usize>) -> Result<Self> {
        if s_list.windows(2).any(|w| w[0] >= w[1]) || s_list.first().is_some_and(|&s| s < 1) || s_list.last().is_some_and(|&s| s > m) {
            return Err(invalid(format!("{s_list:?} is not strictly increasing in [1, {m}]")));
        }
        Ok(CollineationSpec { m, s_list })
    }

    pub fn is_point(&self) -> bool {
        self.s_list.is_empty()
    }

    /// Sizes `C(m,s)²` of the coordinate blocks.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.s_list
            .iter()
            .map(|&s| {
                let c: usize = binomial(self.m, s).try_into().expect("small binomial");
                c * c
            })
            .collect()
    }

    /// The minor map in `m²` variables, blocks concatenated.
    pub fn minor_map(&self) -> Vec<MultiPoly> {
        if self.is_point() {
            return Vec::new();
        }
        let phi = variable_matrix(self.m, self.m, 0);
        minor_blocks(&phi, &self.s_list).expect("validated").into_iter().flatten().collect()
    }

    /// Projective dimension of the image of the minor map in the product of
    /// projective spaces, at the random full-rank point drawn from `rng`:
    /// `rank [J | E_1 … E_k] - k`, with `J` the Jacobian and `E_i` the
    /// Euler vector of block `i`.
    pub fn dimension_at(&self, map: &[MultiPoly], rng: &mut SampleRng, range: i64) -> Result<usize> {
        if self.is_point() {
            return Ok(0);
        }
        let point: Vec<Q> = loop {
            let p: Vec<Q> = (0..self.m * self.m).map(|_| random_q(rng, range)).collect();
            let phi = RationalMatrix::from_vec(self.m, self.m, p.clone())?;
            if phi.rank() == self.m {
                break p;
            }
        };
        let jac = jacobian(map, &point)?;
        let values: Vec<Q> = map.iter().map(|f| f.eval(&point)).collect::<Result<_>>()?;
        let k = self.s_list.len();
        let mut euler = RationalMatrix::zeros(map.len(), k);
        let mut offset = 0;
        for (b, size) in self.block_sizes().into_iter().enumerate() {
            for i in offset..offset + size {
                euler.set(i, b, values[i].clone());
            }
            offset += size;
        }
        Ok(jac.hstack(&euler)?.rank() - k)
    }

    /// [`Self::dimension_at`] at one point per seed; disagreement is reported
    /// as a non-generic sample.
    pub fn certified_dimension(&self, seeds: &[u64]) -> Result<usize> {
        let map = self.minor_map();
        let dims = seeds
            .iter()
            .map(|&s| self.dimension_at(&map, &mut rng(s), DEFAULT_RANGE))
            .collect::<Result<Vec<_>>>()?;
        match dims.first() {
            None => Err(invalid("no seeds given")),
            Some(&d) if dims.iter().all(|&x| x == d) => Ok(d),
            Some(_) => Err(Error::NonGenericSample(format!("collineation dimensions {dims:?} disagree"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Stratum {
    Empty,
    /// `A_J ∩ S_r` is an affine space (`m = r`).
    Affine,
    /// `Y_{m, rank_bound}` times an affine space.
    Determinantal { size: usize, rank_bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellIntersection {
    pub set: IndexSet,
    pub r: usize,
    pub m: usize,
    pub stratum: Stratum,
    pub dimension: Option<usize>,
}

/// `A_J ∩ S_r` for the cell `A_J` around the coordinate point `p_J`.
pub fn cell_intersection(set: &IndexSet, r: usize) -> Result<CellIntersection> {
    let (n, d) = (set.n(), set.d());
    check_standing(n, d)?;
    if r > d {
        return Err(invalid(format!("Schubert level {r} exceeds d = {d}")));
    }
    let m = set.degree();
    let (stratum, dimension) = if r > m {
        (Stratum::Empty, None)
    } else {
        let stratum = if r == m { Stratum::Affine } else { Stratum::Determinantal { size: m, rank_bound: m - r } };
        (stratum, Some(determinantal_dim(m, m - r)? + d * (n - d) - m * m))
    };
    Ok(CellIntersection { set: set.clone(), r, m, stratum, dimension })
}

/// Rows of the complement of `J`, 0-based.
fn complement_rows(set: &IndexSet) -> Vec<usize> {
    let rows = set.rows();
    (0..set.n()).filter(|i| !rows.contains(i)).collect()
}

/// `U_φ = span(v_j + φ v_j : j ∈ J)`, with `φ` an `(n-d) x d` matrix whose
/// rows are indexed by the complement of `J` and columns by `J`.
pub fn cell_point(set: &IndexSet, phi: &RationalMatrix) -> Result<RationalMatrix> {
    let (n, d) = (set.n(), set.d());
    if phi.shape() != (n - d, d) {
        return Err(Error::DimensionMismatch(format!("cell coordinates of shape {:?}", phi.shape())));
    }
    let rows = set.rows();
    let comp = complement_rows(set);
    let mut u = RationalMatrix::zeros(n, d);
    for k in 0..d {
        u.set(rows[k], k, Q::one());
        for (a, &i) in comp.iter().enumerate() {
            u.set(i, k, phi.get(a, k).clone());
        }
    }
    Ok(u)
}

/// The `m x m` block `X_φ`: rows `[d] ∖ J`, columns of `J_{>d}`.
pub fn x_phi(set: &IndexSet, phi: &RationalMatrix) -> RationalMatrix {
    let d = set.d();
    let comp = complement_rows(set);
    let rows: Vec<usize> = comp.iter().enumerate().filter(|(_, &i)| i < d).map(|(a, _)| a).collect();
    let cols: Vec<usize> = set.rows().iter().enumerate().filter(|(_, &i)| i >= d).map(|(k, _)| k).collect();
    phi.submatrix(&rows, &cols)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberClass {
    /// Levels `r_i <= m`, i.e. the centers through the point.
    pub active: Vec<usize>,
    pub spec: CollineationSpec,
}

fn check_r_list(r_list: &[usize]) -> Result<()> {
    if r_list.is_empty() || r_list[0] < 2 || r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("r-list {r_list:?} must be strictly increasing with entries > 1")));
    }
    Ok(())
}

/// Fiber of the mixed blow-up along `S_{r_1}, …, S_{r_k}` over a point with
/// intersection dimension `m`: `Col_s` with `s = (m+1-r_j, …, m+1-r_1)`.
pub fn fiber_classifier(m: usize, r_list: &[usize]) -> Result<FiberClass> {
    check_r_list(r_list)?;
    let active: Vec<usize> = r_list.iter().copied().filter(|&r| r <= m).collect();
    let s_list = active.iter().rev().map(|&r| m + 1 - r).collect();
    Ok(FiberClass { active, spec: CollineationSpec::new(m, s_list)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPoint {
    pub base: PluckerVector,
    pub components: Vec<PluckerVector>,
}

/// `exp(z)` applied to `[V_d] × [w_{r_1-1}] × …`, all coordinates read off
/// the single matrix `[I_d; z]`.
pub fn orbit_point(z: &RationalMatrix, r_list: &[usize]) -> Result<OrbitPoint> {
    let (k, d) = z.shape();
    check_standing(d + k, d)?;
    check_r_list(r_list)?;
    if r_list.iter().any(|&r| r > d) {
        return Err(invalid(format!("r-list {r_list:?} has entries above d = {d}")));
    }
    let u = orbit_matrix(z);
    let base = plucker(&u, d)?;
    let components = r_list.iter().map(|&r| base.truncate(r - 1)).collect::<Result<_>>()?;
    Ok(OrbitPoint { base, components })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Linear,
    Quadratic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub kind: CurveKind,
    pub valuation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub d: usize,
    pub level: usize,
    pub intersection_dim: usize,
    pub seed: u64,
    pub curves: Vec<CurveRecord>,
    #[serde(skip)]
    pub limits: Vec<LimitPoint>,
    pub span_rank: usize,
    /// `span_rank - 1`.
    pub projective_dim: usize,
    /// Smallest degree of a coordinate that is nonzero on some limit.
    pub min_limit_degree: Option<usize>,
}

fn probe_curves(u: &RationalMatrix, kind: CurveKind, count: usize, rng: &mut SampleRng) -> Result<Vec<PolyCurve>> {
    let (n, d) = u.shape();
    (0..count)
        .map(|_| {
            let mut coeffs = vec![u.clone(), random_matrix(rng, n, d, DEFAULT_RANGE)];
            if kind == CurveKind::Quadratic {
                coeffs.push(random_matrix(rng, n, d, DEFAULT_RANGE));
            }
            PolyCurve::from_coefficients(&coeffs)
        })
        .collect()
}

/// Limits at `t = 0` of the level-`level` truncated Plücker coordinates
/// along random curves through `U`. Quadratic curves replace linear ones if
/// all linear limits coincide.
pub fn probe_limits(u: &RationalMatrix, level: usize, curve_count: usize, seed: u64) -> Result<ProbeReport> {
    let (n, d) = u.shape();
    check_standing(n, d)?;
    if curve_count == 0 {
        return Err(invalid("at least one curve is needed"));
    }
    let m = intersection_dim(u)?;
    let map = TruncatedPlucker { level };
    let sets = crate::combinatorics::enumerate_index_sets(n, d, level)?;
    let mut g = rng(seed);
    let mut run = |kind| -> Result<(Vec<CurveRecord>, Vec<LimitPoint>, usize)> {
        let curves = probe_curves(u, kind, curve_count, &mut g)?;
        let limits = curves.iter().map(|c| limit_point(c, &map)).collect::<Result<Vec<_>>>()?;
        let rank = rank_of_vectors(&limits.iter().map(|l| l.point.clone()).collect::<Vec<_>>())?;
        let records = limits.iter().map(|l| CurveRecord { kind, valuation: l.valuation }).collect();
        Ok((records, limits, rank))
    };
    let (mut curves, mut limits, mut span_rank) = run(CurveKind::Linear)?;
    if span_rank == 1 && curve_count > 1 {
        let (c2, l2, _) = run(CurveKind::Quadratic)?;
        curves.extend(c2);
        limits.extend(l2);
        span_rank = rank_of_vectors(&limits.iter().map(|l| l.point.clone()).collect::<Vec<_>>())?;
    }
    let min_limit_degree = limits
        .iter()
        .flat_map(|l| l.point.iter().zip(&sets).filter(|(v, _)| !v.is_zero()).map(|(_, i)| i.degree()))
        .min();
    Ok(ProbeReport {
        n,
        d,
        level,
        intersection_dim: m,
        seed,
        curves,
        limits,
        span_rank,
        projective_dim: span_rank - 1,
        min_limit_degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalProbe {
    pub r: usize,
    pub fiber: CollineationSpec,
    /// Certified dimension of the fiber.
    pub fiber_dim: usize,
    pub probe: ProbeReport,
    /// `probe.projective_dim <= fiber_dim`.
    pub within_bound: bool,
    pub matches: bool,
}

/// Probe of the fiber of `Bl_{S_r} Gr_d(V)` over `U ∈ S_r`, through the
/// level-`(r-1)` coordinates.
pub fn exceptional_probe(u: &RationalMatrix, r: usize, curve_count: usize, seed: u64) -> Result<ExceptionalProbe> {
    let m = intersection_dim(u)?;
    if r == 0 || m < r {
        return Err(Error::NotInSchubert { r, intersection_dim: m });
    }
    let probe = probe_limits(u, r - 1, curve_count, seed)?;
    let fiber = if r == 1 {
        CollineationSpec::new(m, Vec::new())?
    } else {
        fiber_classifier(m, &[r])?.spec
    };
    let fiber_dim = fiber.certified_dimension(&crate::sampling::DEFAULT_SEEDS)?;
    Ok(ExceptionalProbe {
        r,
        within_bound: probe.projective_dim <= fiber_dim,
        matches: probe.projective_dim == fiber_dim,
        fiber,
        fiber_dim,
        probe,
    })
}

/// Parameter layout of the smoothness chart.
struct Chart {
    n: usize,
    d: usize,
}

impl Chart {
    fn chi_count(&self) -> usize {
        (self.n - 2 * self.d) * self.d
    }

    fn tri_count(&self) -> usize {
        self.d * (self.d - 1) / 2
    }

    fn nparams(&self) -> usize {
        self.d * (self.n - self.d)
    }

    /// Index of the first `λ` parameter.
    fn lambda_offset(&self) -> usize {
        self.chi_count() + self.tri_count()
    }

    /// Coordinates: `φ = g · diag(μ_1, …, μ_d) · h` with `μ_k = λ_1⋯λ_k`,
    /// the block `χ`, and the normalized compounds
    /// `C_s(g) · diag(Π_{k∈K} μ_k / Π_{k<=s} μ_k) · C_s(h)`, `s < d`.
    fn coordinates(&self) -> Vec<MultiPoly> {
        let d = self.d;
        let chi_count = self.chi_count();
        let tri = self.tri_count();
        let lam = |k: usize| MultiPoly::var(chi_count + tri + k);
        let mut next = chi_count;
        let mut g = Matrix::<MultiPoly>::identity(d);
        for i in 0..d {
            for j in 0..i {
                g.set(i, j, MultiPoly::var(next));
                next += 1;
            }
        }
        next = chi_count + tri + d;
        let mut h = Matrix::<MultiPoly>::identity(d);
        for i in 0..d {
            for j in i + 1..d {
                h.set(i, j, MultiPoly::var(next));
                next += 1;
            }
        }
        // ratio μ_b / μ_a = λ_{a+1} ⋯ λ_b for a <= b (0-based)
        let ratio = |a: usize, b: usize| (a + 1..=b).fold(MultiPoly::one(), |acc, k| &acc * &lam(k));
        let mu = |k: usize| ratio(0, k) * lam(0);
        let diag = Matrix::from_fn(d, d, |i, j| if i == j { mu(i) } else { MultiPoly::zero() });
        let phi = g.matmul(&diag).and_then(|x| x.matmul(&h)).expect("square");
        let mut coords: Vec<MultiPoly> = phi.entries().to_vec();
        coords.extend((0..chi_count).map(MultiPoly::var));
        for s in 1..d {
            use itertools::Itertools;
            let subsets: Vec<Vec<usize>> = (0..d).combinations(s).collect();
            let scale = Matrix::from_fn(subsets.len(), subsets.len(), |i, j| {
                if i != j {
                    return MultiPoly::zero();
                }
                subsets[i].iter().enumerate().fold(MultiPoly::one(), |acc, (pos, &k)| &acc * &ratio(pos, k))
            });
            let block = g.compound(s).matmul(&scale).and_then(|x| x.matmul(&h.compound(s))).expect("square");
            coords.extend(block.entries().iter().cloned());
        }
        coords
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartSample {
    #[serde(with = "rational::vec")]
    pub params: Vec<Q>,
    /// Indices `k` with `λ_k = 0` (points on exceptional divisors).
    pub zero_lambdas: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub expected_rank: usize,
    pub samples: Vec<ChartSample>,
    /// Jacobian rank of `z ↦ plucker([I; z])` at a random `z`.
    pub orbit_rank: usize,
    pub min_rank: usize,
    pub full_rank: bool,
}

/// Jacobian ranks of the chart of the complete blow-up over the deepest
/// cell, at `chart_samples` random points; the `λ` pattern cycles through
/// all subsets of vanishing `λ_k` so exceptional points are always hit.
pub fn smoothness_probe(n: usize, d: usize, chart_samples: usize, seed: u64) -> Result<SmoothnessReport> {
    check_standing(n, d)?;
    if d > 3 {
        return Err(invalid(format!("smoothness probe is limited to d <= 3, got d = {d}")));
    }
    let chart = Chart { n, d };
    let coords = chart.coordinates();
    let expected_rank = chart.nparams();
    let mut g = rng(seed);
    let mut samples = Vec::with_capacity(chart_samples);
    for k in 0..chart_samples {
        let pattern = k % (1 << d);
        let mut params: Vec<Q> = (0..expected_rank).map(|_| random_q(&mut g, DEFAULT_RANGE)).collect();
        let zero_lambdas: Vec<usize> = (0..d).filter(|b| pattern >> b & 1 == 1).collect();
        for &b in &zero_lambdas {
            params[chart.lambda_offset() + b] = Q::zero();
        }
        let rank = jacobian(&coords, &params)?.rank();
        samples.push(ChartSample { params, zero_lambdas, rank });
    }
    let orbit_map: Vec<MultiPoly> = crate::plucker::truncated_minors(&orbit_matrix(&variable_matrix(n - d, d, 0)), d)?;
    let z: Vec<Q> = (0..expected_rank).map(|_| random_q(&mut g, DEFAULT_RANGE)).collect();
    let orbit_rank = jacobian(&orbit_map, &z)?.rank();
    let min_rank = samples.iter().map(|s| s.rank).min().unwrap_or(expected_rank).min(orbit_rank);
    Ok(SmoothnessReport {
        n,
        d,
        seed,
        expected_rank,
        samples,
        orbit_rank,
        full_rank: min_rank == expected_rank,
        min_rank,
    })
}

/// `(m-1) x (m-1)` minors of an `m x m` matrix of variables.
pub fn adjugate_map(m: usize) -> Result<Vec<MultiPoly>> {
    if m < 2 {
        return Err(invalid("adjugate map needs m >= 2"));
    }
    crate::plucker::CoordinateMap::apply(&MinorMap { s_list: vec![m - 1] }, &variable_matrix(m, m, 0))
}
