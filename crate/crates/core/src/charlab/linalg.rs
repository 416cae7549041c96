//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Unimodular row reduction `U·A = H` over `Z`. Nonzero rows of `H` come
/// first and are in echelon form; the returned `rank` counts them. Rows of
/// `U` past `rank` span the integer left kernel of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub rank: usize,
}

pub fn integer_row_reduce(a: &[Vec<BigInt>], ncols: usize) -> RowReduction {
    let k = a.len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == k {
            break;
        }
        loop {
            let pivot = (r..k).filter(|&i| !h[i][c].is_zero()).min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = pivot else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..k {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                for j in 0..ncols {
                    let t = &q * &h[r][j];
                    h[i][j] -= t;
                }
                for j in 0..k {
                    let t = &q * &u[r][j];
                    u[i][j] -= t;
                }
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[r][c].is_zero() {
            r += 1;
        }
    }
    RowReduction { h, u, rank: r }
}

/// Rank over `Q` by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..ncols {
                let t = &f * &m[rank][j];
                m[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Index of the lattice spanned by `vectors` in `Z^n`; `None` when the span
/// has rank below `n`.
pub fn lattice_index(vectors: &[Vec<BigInt>], n: usize) -> Option<BigInt> {
    let red = integer_row_reduce(vectors, n);
    if red.rank < n {
        return None;
    }
    let mut det = BigInt::one();
    for (i, row) in red.h.iter().take(n).enumerate() {
        let lead = row.iter().find(|c| !c.is_zero())?;
        if row[i].is_zero() {
            return None;
        }
        det *= lead.abs();
    }
    Some(det)
}
