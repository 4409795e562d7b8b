//! Seeded random integer matrices and Schubert-variety samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::check_standing;
use crate::error::{invalid, Result};
use crate::linalg::RationalMatrix;
use crate::plucker::intersection_dim;
use crate::rational::{q, Q};

/// Entries are drawn from `[-DEFAULT_RANGE, DEFAULT_RANGE]`.
pub const DEFAULT_RANGE: i64 = 10;

pub const DEFAULT_SEEDS: [u64; 3] = [1, 2, 3];

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_q(rng: &mut SampleRng, range: i64) -> Q {
    q(rng.gen_range(-range..=range))
}

pub fn random_matrix(rng: &mut SampleRng, rows: usize, cols: usize, range: i64) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| random_q(rng, range))
}

/// Random matrix of rank `min(rows, cols)`, redrawn until it has full rank.
pub fn random_full_rank(rng: &mut SampleRng, rows: usize, cols: usize, range: i64) -> RationalMatrix {
    loop {
        let m = random_matrix(rng, rows, cols, range);
        if m.rank() == rows.min(cols) {
            return m;
        }
    }
}

/// Basis matrix `U` (`n x d`, rank `d`) with `dim(U ∩ V_{n-d}) = m` exactly.
///
/// Built as `[[T, 0], [B, C]] g` with `T` a full-rank `d x (d-m)` block, `C` a
/// full-rank `(n-d) x m` block and `g` a random invertible change of basis.
pub fn sample_with_intersection(rng: &mut SampleRng, n: usize, d: usize, m: usize, range: i64) -> Result<RationalMatrix> {
    check_standing(n, d)?;
    if m > d {
        return Err(invalid(format!("intersection dimension {m} exceeds d = {d}")));
    }
    loop {
        let t = random_full_rank(rng, d, d - m, range);
        let b = random_matrix(rng, n - d, d - m, range);
        let c = random_full_rank(rng, n - d, m, range);
        let top = t.hstack(&RationalMatrix::zeros(d, m))?;
        let bottom = b.hstack(&c)?;
        let g = random_full_rank(rng, d, d, range);
        let u = top.vstack(&bottom)?.matmul(&g)?;
        if u.rank() == d && intersection_dim(&u)? == m {
            return Ok(u);
        }
    }
}

/// A point of `S_r` with intersection dimension exactly `m`, deterministic
/// in `seed`.
pub fn sample_schubert(n: usize, d: usize, r: usize, m: usize, seed: u64) -> Result<RationalMatrix> {
    if r > m {
        return Err(invalid(format!("intersection dimension {m} is below the Schubert level {r}")));
    }
    sample_with_intersection(&mut rng(seed), n, d, m, DEFAULT_RANGE)
}
