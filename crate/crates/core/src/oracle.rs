//! Reference computations that share no code path with the main
//! implementations; the checks compare the two.

use crate::linalg::RationalMatrix;
use crate::rational::q;

/// `(h^0, h^1)` of `O(k)` on `P^1` from the Čech complex of the standard
/// two-chart cover.
///
/// In the trivialization by `x_0^k`, sections over `{x_0 != 0}` are the
/// monomials `t^j` with `j >= 0`, over `{x_1 != 0}` those with `j <= k`, and
/// over the overlap all Laurent monomials. The differential `(f, g) ↦ f - g`
/// is computed on the exponent window `[-w, w]`, outside of which it is an
/// isomorphism onto the complement.
pub fn cech_p1(k: i64) -> (usize, usize) {
    let w = k.abs() + 2;
    let c1: Vec<i64> = (-w..=w).collect();
    let c0: Vec<(i64, i64)> = (0..=w).map(|j| (j, 1)).chain((-w..=k.min(w)).map(|j| (j, -1))).collect();
    let mut m = RationalMatrix::zeros(c1.len(), c0.len());
    for (col, &(j, sign)) in c0.iter().enumerate() {
        let row = (j + w) as usize;
        m.set(row, col, q(sign));
    }
    let rank = m.rank();
    (c0.len() - rank, c1.len() - rank)
}

/// Number of `d`-subsets of `{1..n}` with at most `r` elements above `d`,
/// by scanning bitmasks.
pub fn count_truncated_basis(n: usize, d: usize, r: usize) -> usize {
    let low_mask: u64 = (1u64 << d) - 1;
    (0u64..1 << n)
        .filter(|mask| mask.count_ones() as usize == d && (mask & !low_mask).count_ones() as usize <= r)
        .count()
}

/// Nonincreasing sequences in `[0, cols]^rows` with sum `size`, by
/// exhaustive search over all tuples.
pub fn count_box_partitions(size: u64, rows: usize, cols: u32) -> usize {
    let mut count = 0;
    let mut tuple = vec![0u32; rows];
    loop {
        let decreasing = tuple.windows(2).all(|w| w[0] >= w[1]);
        if decreasing && tuple.iter().map(|&x| u64::from(x)).sum::<u64>() == size {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == rows {
                return count;
            }
            if tuple[i] < cols {
                tuple[i] += 1;
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// `#{i < j : w_i < w_j}` by brute force over pairs.
pub fn inversions(w: &[i64]) -> usize {
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] < w[j])
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cech_known_values() {
        assert_eq!(cech_p1(0), (1, 0));
        assert_eq!(cech_p1(1), (2, 0));
        assert_eq!(cech_p1(-1), (0, 0));
        assert_eq!(cech_p1(-2), (0, 1));
        assert_eq!(cech_p1(-5), (0, 4));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(count_truncated_basis(4, 2, 0), 1);
        assert_eq!(count_truncated_basis(4, 2, 1), 5);
        assert_eq!(count_truncated_basis(4, 2, 2), 6);
        assert_eq!(count_box_partitions(2, 2, 2), 2);
        assert_eq!(count_box_partitions(0, 3, 4), 1);
    }
}
