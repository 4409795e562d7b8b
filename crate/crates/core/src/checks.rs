//! The acceptance checks, shared by the `verify` subcommand and the
//! acceptance test target.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bwb::{bwb, BundleWeight, Cohomology};
use crate::combinatorics::{binomial, enumerate_index_sets, truncated_dim, IndexSet, Partition};
use crate::error::{Error, Result};
use crate::fibers::{adjugate_map, cell_intersection, exceptional_probe, orbit_point, smoothness_probe, Stratum};
use crate::groebner::{implicitize, leading_ideal_count, monomials_of_degree, GroebnerConfig, DEFAULT_BUDGET, DEFAULT_VAR_CAP};
use crate::interp::{generic_jacobian_rank, stabilize, vanishing_dim, PointKind};
use crate::linalg::Matrix;
use crate::oracle;
use crate::plucker::{plucker, schubert_member, truncated_minors};
use crate::poly::{MonomialOrder, MultiPoly};
use crate::rational::Q;
use crate::resolution::{appendix_euler, build_complex, euler_char_sections};
use crate::sampling::{random_matrix, rng, sample_with_intersection, DEFAULT_RANGE, DEFAULT_SEEDS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub seeds: Vec<u64>,
    /// Sample points per instance for the interpolation check.
    pub samples: usize,
    /// Samples per `(n, d, r)` for the Schubert/Demazure check.
    pub membership_samples: usize,
    /// Orbit points tested against the Plücker relation.
    pub orbit_samples: usize,
    pub curves: usize,
    pub chart_samples: usize,
    pub budget: u64,
    pub var_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seeds: DEFAULT_SEEDS.to_vec(),
            samples: 200,
            membership_samples: 500,
            orbit_samples: 100,
            curves: 20,
            chart_samples: 50,
            budget: DEFAULT_BUDGET,
            var_cap: DEFAULT_VAR_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "message", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail(String),
    Diverged(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    #[serde(flatten)]
    pub outcome: Outcome,
}

pub const CHECKS: [(usize, &str); 11] = [
    (1, "dimension formula"),
    (2, "resolution shape"),
    (3, "bwb convention"),
    (4, "twisted ideal sections"),
    (5, "grothendieck identity"),
    (6, "plucker implicitization"),
    (7, "exceptional fiber over p34"),
    (8, "minor independence"),
    (9, "cell geometry"),
    (10, "schubert demazure duality"),
    (11, "smoothness spot check"),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg()))
    }
}

pub fn run_check(id: usize, config: &CheckConfig) -> Option<CheckResult> {
    let (_, name) = *CHECKS.iter().find(|(i, _)| *i == id)?;
    let result = match id {
        1 => dimension_formula(),
        2 => resolution_shape(),
        3 => bwb_convention(),
        4 => twisted_sections(config),
        5 => grothendieck_identity(),
        6 => plucker_implicitization(config),
        7 => exceptional_fiber(config),
        8 => minor_independence(config),
        9 => cell_geometry(),
        10 => schubert_duality(config),
        11 => smoothness(config),
        _ => unreachable!(),
    };
    let outcome = match result {
        Ok(()) => Outcome::Pass,
        Err(e @ Error::Diverged { .. }) => Outcome::Diverged(e.to_string()),
        Err(Error::InvalidParameters(msg)) => Outcome::Fail(msg),
        Err(e) => Outcome::Fail(e.to_string()),
    };
    Some(CheckResult { id, name, outcome })
}

pub fn run_all(config: &CheckConfig) -> Vec<CheckResult> {
    CHECKS.iter().filter_map(|&(id, _)| run_check(id, config)).collect()
}

/// Triples `1 <= r <= d <= n-d` with `n-d <= max_codim` and `n <= max_n`.
fn triples(max_n: usize, max_quotient: usize, max_r: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for d in 1..=n / 2 {
            if n - d > max_quotient {
                continue;
            }
            for r in 1..=d.min(max_r) {
                out.push((n, d, r));
            }
        }
    }
    out
}

fn dimension_formula() -> Result<()> {
    for n in 2..=8 {
        for d in 1..=(n / 2).min(4) {
            for r in 0..=d {
                let formula = truncated_dim(n, d, r)?;
                let listed = enumerate_index_sets(n, d, r)?.len();
                let scanned = oracle::count_truncated_basis(n, d, r);
                ensure(formula == listed.into() && listed == scanned, || {
                    format!("(n,d,r)=({n},{d},{r}): formula {formula}, enumeration {listed}, bitmask scan {scanned}")
                })?;
            }
        }
    }
    Ok(())
}

fn resolution_shape() -> Result<()> {
    for (n, d, r) in triples(12, 6, 6) {
        let big_n = n - d;
        let layers = build_complex(n, d, r)?;
        let tag = format!("(n,d,r)=({n},{d},{r})");
        ensure(layers.len() == r * r + 1, || format!("{tag}: layers run to {}", layers.len() - 1))?;
        let f0 = &layers[0].terms;
        ensure(
            f0.len() == 1 && f0[0].source.is_empty() && f0[0].levi_weight.entries().iter().all(|&x| x == 0),
            || format!("{tag}: F_0 is not the structure sheaf"),
        )?;
        let top = &layers[r * r].terms;
        ensure(
            top.len() == 1
                && top[0].source == Partition::rectangle(r, big_n as u32)
                && top[0].bundle_partition == Partition::rectangle(big_n, r as u32),
            || format!("{tag}: F_{{r²}} is not the O(-r) term"),
        )?;
        let total: usize = layers.iter().map(|l| l.terms.len()).sum();
        let expected = binomial(2 * r, r);
        ensure(expected == total.into(), || format!("{tag}: {total} terms, expected {expected}"))?;
        for layer in &layers {
            let listed = crate::resolution::koszul_layer(layer.index as u64, r, n, d)?.len();
            let brute = oracle::count_box_partitions(layer.index as u64, r, big_n as u32);
            ensure(listed == brute, || format!("{tag}: Λ^{} partitions {listed} vs {brute}", layer.index))?;
        }
    }
    Ok(())
}

fn bwb_convention() -> Result<()> {
    for k in -5..=5 {
        let coh = bwb(&BundleWeight::line_bundle(2, 1, k)?)?;
        let (h0, h1) = oracle::cech_p1(k);
        ensure(coh.h(0) == h0.into() && coh.h(1) == h1.into(), || {
            format!("O({k}) on P^1: bwb gives ({}, {}), Čech gives ({h0}, {h1})", coh.h(0), coh.h(1))
        })?;
    }
    for n in 2..=8 {
        for d in 1..n {
            let coh = bwb(&BundleWeight::line_bundle(n, d, 1)?)?;
            let ok = matches!(&coh, Cohomology::Nonzero { degree: 0, dimension, .. } if *dimension == binomial(n, d));
            ensure(ok, || format!("O(1) on Gr_{d}(C^{n}): {coh:?}"))?;
        }
    }
    Ok(())
}

/// Full Plücker vectors of points with intersection dimension `m`.
pub fn schubert_points(n: usize, d: usize, m: usize, count: usize, seed: u64) -> Result<Vec<Vec<Q>>> {
    let mut g = rng(seed);
    (0..count)
        .map(|_| Ok(plucker(&sample_with_intersection(&mut g, n, d, m, DEFAULT_RANGE)?, d)?.values()))
        .collect()
}

pub const SECTION_INSTANCES: [(usize, usize, usize); 5] = [(4, 2, 2), (5, 2, 2), (6, 2, 2), (6, 3, 2), (6, 3, 3)];

fn twisted_sections(config: &CheckConfig) -> Result<()> {
    for (n, d, r) in SECTION_INSTANCES {
        let euler = euler_char_sections(n, d, r)?;
        let truncated = BigInt::from(truncated_dim(n, d, r - 1)?);
        ensure(euler == truncated, || format!("({n},{d},{r}): Euler characteristic {euler}, truncated dim {truncated}"))?;
        for &seed in &config.seeds {
            let points = schubert_points(n, d, r, config.samples, seed)?;
            let st = stabilize(&points, 1, PointKind::Projective, (config.samples / 4).max(1))?;
            let stable = st
                .stable
                .ok_or_else(|| Error::InvalidParameters(format!("({n},{d},{r}) seed {seed}: no stabilization in {:?}", st.history)))?;
            ensure(BigInt::from(stable) == euler, || {
                format!("({n},{d},{r}) seed {seed}: interpolation gives {stable}, Euler characteristic {euler}")
            })?;
        }
    }
    Ok(())
}

fn grothendieck_identity() -> Result<()> {
    for (n, d, r) in triples(7, 6, 3) {
        let id = appendix_euler(n, d, r)?;
        let truncated = BigInt::from(truncated_dim(n, d, r - 1)?);
        ensure(id.equal, || format!("({n},{d},{r}): sides differ"))?;
        ensure(id.dimension == truncated && id.lhs.dimension() == truncated, || {
            format!("({n},{d},{r}): dimension {} vs {truncated}", id.dimension)
        })?;
    }
    Ok(())
}

/// Coordinates `Δ_I` of `[z_0 I_d; φ]` in `1 + d(n-d)` source variables.
pub fn homogeneous_plucker_parametrization(n: usize, d: usize) -> Result<Vec<(String, MultiPoly)>> {
    let z0 = MultiPoly::var(0);
    let mat = Matrix::from_fn(n, d, |i, j| {
        if i < d {
            if i == j {
                z0.clone()
            } else {
                MultiPoly::zero()
            }
        } else {
            MultiPoly::var(1 + (i - d) * d + j)
        }
    });
    let sets = enumerate_index_sets(n, d, d.min(n - d))?;
    let minors = truncated_minors(&mat, d.min(n - d))?;
    Ok(sets.iter().map(|i| format!("D{}", i.elements().iter().map(|e| e.to_string()).collect::<String>())).zip(minors).collect())
}

/// `Δ12Δ34 - Δ13Δ24 + Δ14Δ23` in the lexicographic coordinate order.
pub fn plucker_quadric() -> MultiPoly {
    let y = MultiPoly::var;
    &(&(&y(0) * &y(5)) - &(&y(1) * &y(4))) + &(&y(2) * &y(3))
}

fn plucker_implicitization(config: &CheckConfig) -> Result<()> {
    let param = homogeneous_plucker_parametrization(4, 2)?;
    let gcfg = GroebnerConfig { budget: config.budget, var_cap: config.var_cap };
    let imp = implicitize(5, &param, gcfg)?;
    let quadric = plucker_quadric();
    ensure(imp.relations.len() == 1, || format!("{} relations found", imp.relations.len()))?;
    let rel = &imp.relations[0];
    ensure(*rel == quadric || *rel == -quadric.clone(), || "relation is not the Plücker quadric".into())?;
    let seed = config.seeds.first().copied().unwrap_or(DEFAULT_SEEDS[0]);
    let mut g = rng(seed);
    let mut points = Vec::with_capacity(config.orbit_samples);
    for _ in 0..config.orbit_samples {
        let z = random_matrix(&mut g, 2, 2, DEFAULT_RANGE);
        let v = orbit_point(&z, &[2])?.base.values();
        ensure(rel.eval(&v)?.is_zero(), || "orbit point violates the relation".into())?;
        points.push(v);
    }
    let leading: Vec<_> = imp.relations.iter().filter_map(|p| p.leading_term(MonomialOrder::Grevlex).map(|t| t.0.clone())).collect();
    for degree in 1..=3 {
        let from_basis = leading_ideal_count(&leading, 6, degree);
        let from_points = vanishing_dim(&points, degree, PointKind::Projective)?;
        ensure(from_points == from_basis || points.len() < monomials_of_degree(6, degree).len(), || {
            format!("degree {degree}: elimination gives {from_basis}, interpolation {from_points}")
        })?;
    }
    Ok(())
}

fn exceptional_fiber(config: &CheckConfig) -> Result<()> {
    let p34 = crate::plucker::coordinate_point(&IndexSet::new(4, vec![3, 4])?);
    for &seed in &config.seeds {
        let probe = exceptional_probe(&p34, 2, config.curves.max(20), seed)?;
        ensure(probe.probe.projective_dim == 3, || {
            format!("seed {seed}: span has projective dimension {}", probe.probe.projective_dim)
        })?;
    }
    Ok(())
}

fn minor_independence(config: &CheckConfig) -> Result<()> {
    for m in 2..=4 {
        let rank = generic_jacobian_rank(&adjugate_map(m)?, m * m, &config.seeds, DEFAULT_RANGE)?;
        ensure(rank == m * m, || format!("m={m}: Jacobian rank {rank}"))?;
    }
    Ok(())
}

fn cell_geometry() -> Result<()> {
    for n in 2..=8 {
        for d in 1..=n / 2 {
            for set in enumerate_index_sets(n, d, d)? {
                for r in 0..=d {
                    let c = cell_intersection(&set, r)?;
                    let m = set.degree();
                    let tag = format!("J={set}, r={r}");
                    ensure((c.stratum == Stratum::Empty) == (r > m), || format!("{tag}: stratum {:?}", c.stratum))?;
                    ensure((c.stratum == Stratum::Affine) == (r == m), || format!("{tag}: stratum {:?}", c.stratum))?;
                    if r <= m {
                        ensure(c.dimension == Some(d * (n - d) - r * r), || format!("{tag}: dimension {:?}", c.dimension))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn schubert_duality(config: &CheckConfig) -> Result<()> {
    use rand::Rng;
    let seed = config.seeds.first().copied().unwrap_or(DEFAULT_SEEDS[0]);
    for (n, d, r) in triples(6, 5, 3) {
        let mut g = rng(seed.wrapping_mul(1_000_003).wrapping_add((n * 100 + d * 10 + r) as u64));
        for _ in 0..config.membership_samples {
            let m = g.gen_range(0..=d);
            let u = sample_with_intersection(&mut g, n, d, m, DEFAULT_RANGE)?;
            let member = schubert_member(&u, r)?;
            let demazure = plucker(&u, d)?.vanishes_below(r);
            ensure(member == demazure, || format!("({n},{d},{r}), m={m}: membership {member}, Demazure {demazure}"))?;
        }
    }
    Ok(())
}

fn smoothness(config: &CheckConfig) -> Result<()> {
    for &seed in &config.seeds {
        let rep = smoothness_probe(4, 2, config.chart_samples.max(50), seed)?;
        ensure(rep.full_rank && rep.samples.len() >= 50, || {
            format!("seed {seed}: minimal rank {} of {}", rep.min_rank, rep.expected_rank)
        })?;
    }
    Ok(())
}
