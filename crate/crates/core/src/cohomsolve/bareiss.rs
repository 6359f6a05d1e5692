//! Fraction-free Gaussian elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub(crate) struct Echelon {
    /// Reduced rows; the last entry of each row is the right-hand side.
    pub rows: Vec<Vec<BigInt>>,
    /// Pivot column of row `k`, for the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
    /// Original index of each reduced row.
    pub origin: Vec<usize>,
}

/// Bareiss elimination of an augmented `m × (ncols + 1)` matrix. Every
/// intermediate entry is a minor of the input, so the divisions are exact.
pub(crate) fn eliminate(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let m = a.len();
    let mut origin: Vec<usize> = (0..m).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        origin.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..=ncols {
                let lhs = &piv * &row[j];
                let v = if f.is_zero() || pivot_row[j].is_zero() { lhs } else { lhs - &f * &pivot_row[j] };
                row[j] = if v.is_zero() {
                    v
                } else {
                    let (q, rem) = v.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "inexact Bareiss division");
                    q
                };
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: a, pivots, origin }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_and_pivots() {
        let e = eliminate(m(&[&[2, 4, 1, 3], &[1, 2, 1, 1], &[3, 6, 2, 4]]), 3);
        assert_eq!(e.pivots, vec![0, 2]);
        assert!(e.rows[2].iter().all(Zero::is_zero));
    }

    #[test]
    fn inconsistent_row_survives() {
        let e = eliminate(m(&[&[1, 1, 1], &[2, 2, 3]]), 2);
        assert_eq!(e.pivots, vec![0]);
        assert!(e.rows[1][..2].iter().all(Zero::is_zero));
        assert!(!e.rows[1][2].is_zero());
    }
}
