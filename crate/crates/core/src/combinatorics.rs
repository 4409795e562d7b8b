//! Partitions, `gl_N` weights, index sets with their degree, and the
//! dimension and Pieri machinery used by every symbolic computation.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Binomial coefficient as an exact big integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// A weakly decreasing sequence of nonnegative integers, stored without
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self::from_sorted(parts))
    }

    fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(value^rows)`.
    pub fn rectangle(rows: usize, value: u32) -> Self {
        Self::from_sorted(vec![value; rows])
    }

    /// The single column `(1^k)`.
    pub fn column(k: usize) -> Self {
        Self::rectangle(k, 1)
    }

    /// The thin hook `(first, 1^ones)`; `first` must be at least 1 when `ones > 0`.
    pub fn hook(first: u32, ones: usize) -> Result<Self> {
        let mut parts = vec![first];
        parts.extend(std::iter::repeat_n(1, ones));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(0)
    }

    pub fn transpose(&self) -> Self {
        let cols = self.first() as usize;
        let parts = (0..cols)
            .map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Whether the diagram fits into `rows` rows of length at most `cols`.
    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.first() <= cols
    }

    /// Whether `self ⊆ other` as Young diagrams.
    pub fn contained_in(&self, other: &Partition) -> bool {
        (0..self.len()).all(|i| self.part(i) <= other.part(i))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = crate::Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// All partitions with at most `rows` parts, each at most `cols`, in
/// reverse-lexicographic order of parts starting from the empty one.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::from_sorted(prefix.clone()));
        if prefix.len() == rows {
            return;
        }
        for p in 1..=max {
            prefix.push(p);
            rec(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Partitions of `size` with at most `rows` parts and parts at most `cols`.
pub fn partitions_of(size: u64, rows: usize, cols: u32) -> Vec<Partition> {
    partitions_in_box(rows, cols)
        .into_iter()
        .filter(|p| p.size() == size)
        .collect()
}

/// A weakly decreasing integer vector of fixed length `N`: a highest weight
/// of `gl_N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GLWeight(Vec<i64>);

impl GLWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!("{entries:?} is not weakly decreasing")));
        }
        Ok(GLWeight(entries))
    }

    pub fn zero(len: usize) -> Self {
        GLWeight(vec![0; len])
    }

    pub fn constant(len: usize, c: i64) -> Self {
        GLWeight(vec![c; len])
    }

    /// The partition `λ` padded with zeros to length `len`.
    pub fn from_partition(lambda: &Partition, len: usize) -> Result<Self> {
        if lambda.len() > len {
            return Err(invalid(format!("{lambda} has more than {len} parts")));
        }
        Ok(GLWeight(
            (0..len).map(|i| lambda.part(i) as i64).collect(),
        ))
    }

    /// `(1^k, 0^{len-k})`, the weight of `Λ^k`.
    pub fn wedge(len: usize, k: usize) -> Result<Self> {
        if k > len {
            return Err(invalid(format!("Λ^{k} of a {len}-dimensional space")));
        }
        Ok(GLWeight((0..len).map(|i| (i < k) as i64).collect()))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn shift(&self, c: i64) -> Self {
        GLWeight(self.0.iter().map(|x| x + c).collect())
    }

    /// Reversed and negated: the weight of the dual representation.
    pub fn dual(&self) -> Self {
        GLWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Representative with last entry zero; two weights restrict to the same
    /// `sl_N` module iff their reductions agree.
    pub fn sl_reduce(&self) -> Self {
        match self.0.last() {
            Some(&last) => self.shift(-last),
            None => self.clone(),
        }
    }

    /// The partition obtained when all entries are nonnegative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.0.iter().any(|&x| x < 0) {
            return None;
        }
        Some(Partition::from_sorted(
            self.0.iter().map(|&x| x as u32).collect(),
        ))
    }
}

impl fmt::Display for GLWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl TryFrom<Vec<i64>> for GLWeight {
    type Error = crate::Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        GLWeight::new(v)
    }
}

impl From<GLWeight> for Vec<i64> {
    fn from(w: GLWeight) -> Self {
        w.0
    }
}

pub fn transpose(lambda: &Partition) -> Partition {
    lambda.transpose()
}

pub fn dual_weight(mu: &GLWeight) -> GLWeight {
    mu.dual()
}

pub fn sl_reduce(mu: &GLWeight) -> GLWeight {
    mu.sl_reduce()
}

pub(crate) fn check_ambient(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n {
        return Err(invalid(format!("need 1 <= d < n, got n={n}, d={d}")));
    }
    Ok(())
}

/// The standing assumption `1 <= d <= n - d`.
pub fn check_standing(n: usize, d: usize) -> Result<()> {
    check_ambient(n, d)?;
    if d > n - d {
        return Err(invalid(format!("need d <= n-d, got n={n}, d={d}")));
    }
    Ok(())
}

/// A `d`-element subset of `{1, …, n}`, labelling a Plücker coordinate and a
/// torus fixed point of `Gr_d(V)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IndexSet {
    elements: Vec<usize>,
    n: usize,
    d: usize,
}

impl IndexSet {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self> {
        let d = elements.len();
        check_ambient(n, d)?;
        if elements.windows(2).any(|w| w[0] >= w[1]) || elements[0] < 1 || elements[d - 1] > n {
            return Err(invalid(format!(
                "{elements:?} is not a strictly increasing subset of [1, {n}]"
            )));
        }
        Ok(IndexSet { elements, n, d })
    }

    /// `[d] = {1, …, d}`, the highest-weight set.
    pub fn top(n: usize, d: usize) -> Result<Self> {
        Self::new(n, (1..=d).collect())
    }

    /// `I(r) = (1, …, d-r, d+1, …, d+r)`.
    pub fn i_r(n: usize, d: usize, r: usize) -> Result<Self> {
        if r > d || d + r > n {
            return Err(invalid(format!("I({r}) undefined for n={n}, d={d}")));
        }
        Self::new(n, (1..=d - r).chain(d + 1..=d + r).collect())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// 0-based row indices.
    pub fn rows(&self) -> Vec<usize> {
        self.elements.iter().map(|i| i - 1).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of elements exceeding `d`.
    pub fn degree(&self) -> usize {
        self.elements.iter().filter(|&&i| i > self.d).count()
    }

    /// `|I ∩ [d]|`.
    pub fn lower_count(&self) -> usize {
        self.elements.iter().filter(|&&i| i <= self.d).count()
    }

    /// Elements `> d`.
    pub fn upper(&self) -> Vec<usize> {
        self.elements.iter().copied().filter(|&i| i > self.d).collect()
    }

    /// Elements `<= d`.
    pub fn lower(&self) -> Vec<usize> {
        self.elements.iter().copied().filter(|&i| i <= self.d).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.elements.iter().join(","))
    }
}

pub fn degree(i: &IndexSet) -> usize {
    i.degree()
}

/// All `I` with `deg I <= max_degree`, lexicographically ordered.
pub fn enumerate_index_sets(n: usize, d: usize, max_degree: usize) -> Result<Vec<IndexSet>> {
    check_ambient(n, d)?;
    if max_degree > d.min(n - d) {
        return Err(invalid(format!(
            "max_degree {max_degree} exceeds min(d, n-d) = {}",
            d.min(n - d)
        )));
    }
    Ok((1..=n)
        .combinations(d)
        .map(|elements| IndexSet { elements, n, d })
        .filter(|i| i.degree() <= max_degree)
        .collect())
}

/// `dim (Λ^d V)_r = Σ_{i<=r} C(d,i) C(n-d,i)`.
pub fn truncated_dim(n: usize, d: usize, r: usize) -> Result<BigUint> {
    check_standing(n, d)?;
    if r > d {
        return Err(invalid(format!("truncation level {r} exceeds d = {d}")));
    }
    Ok((0..=r).map(|i| binomial(d, i) * binomial(n - d, i)).sum())
}

/// Dimension of the irreducible `gl_N` module of highest weight `μ`, by the
/// product formula `Π_{i<j} (μ_i - μ_j + j - i) / (j - i)`.
pub fn weyl_dim(n: usize, mu: &GLWeight) -> Result<BigUint> {
    if mu.len() != n {
        return Err(invalid(format!("weight {mu} does not have length {n}")));
    }
    let e = mu.entries();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from((e[i] - e[j]) as u64 + (j - i) as u64);
            den *= BigUint::from((j - i) as u64);
        }
    }
    Ok(num / den)
}

/// Number of semistandard tableaux of shape `λ` with entries in `1..=N`.
pub fn ssyt_count(n: usize, lambda: &Partition) -> u64 {
    if lambda.len() > n {
        return 0;
    }
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();

    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut [Vec<usize>], n: usize) -> u64 {
        let Some(&(r, c)) = cells.get(k) else {
            return 1;
        };
        let mut lo = 1;
        if c > 0 {
            lo = lo.max(grid[r][c - 1]);
        }
        if r > 0 {
            lo = lo.max(grid[r - 1][c] + 1);
        }
        let mut total = 0;
        for v in lo..=n {
            grid[r][c] = v;
            total += fill(k + 1, cells, grid, n);
        }
        total
    }

    fill(0, &cells, &mut grid, n)
}

/// Column Pieri rule: all `μ ⊇ λ` with at most `N` parts such that `μ/λ` is
/// a vertical strip of `k` boxes. Each appears with multiplicity one.
pub fn pieri_column(lambda: &Partition, k: usize, n: usize) -> Vec<Partition> {
    if lambda.len() > n || k > n {
        return Vec::new();
    }
    let mut out: Vec<Partition> = (0..n)
        .combinations(k)
        .filter_map(|rows| {
            let mut parts: Vec<u32> = (0..n).map(|i| lambda.part(i)).collect();
            for &row in &rows {
                parts[row] += 1;
            }
            Partition::new(parts).ok()
        })
        .collect();
    out.sort();
    out
}
