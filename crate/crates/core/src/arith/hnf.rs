//! Hermite normal form by unimodular row operations.
//!
//! Convention: `H = U·M` where `U` is unimodular and `H` is in row echelon
//! form with strictly increasing pivot columns, positive pivots, zero entries
//! below each pivot, and entries above each pivot reduced into `[0, pivot)`.
//! For a full-row-rank `M` this makes `H` upper triangular in the sense that
//! row `i` starts at its pivot column.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVector, Integer};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Echelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &Integer) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let v = m.get(dst, j) - q * m.get(src, j);
        m.set(dst, j, v);
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for v in m.row_mut(i) {
        *v = -&*v;
    }
}

/// Hermite echelon form of an arbitrary integer matrix.
pub fn echelon(m: &IntMatrix) -> Echelon {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()).then(a.cmp(&b)));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        h,
        u,
        rank: r,
        pivots,
    }
}

/// Hermite normal form `(H, U)` with `H = U·M` of a full-row-rank matrix.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let e = echelon(m);
    if e.rank < m.rows() {
        return Err(Error::RankDeficient {
            rank: e.rank,
            rows: m.rows(),
        });
    }
    Ok((e.h, e.u))
}

/// Lattice basis (as rows) of the integer kernel `{x ∈ Zⁿ : M·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let e = echelon(&m.transpose());
    let rows: Vec<IntVector> = (e.rank..n).map(|i| e.u.row(i).to_vec()).collect();
    IntMatrix::from_rows(rows, n).expect("consistent kernel rows")
}

/// One integer solution of `M·x = d`, or `None` when there is none.
pub fn solve_integer(m: &IntMatrix, d: &[Integer]) -> Result<Option<IntVector>> {
    if d.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: d.len(),
        });
    }
    let n = m.cols();
    // U·Mᵀ = H, so M·Uᵀ = Hᵀ and x = Uᵀ·y solves Hᵀ·y = d.
    let e = echelon(&m.transpose());
    let mut residual = d.to_vec();
    let mut y = vec![Integer::zero(); n];
    for (i, &p) in e.pivots.iter().enumerate() {
        let piv = e.h.get(i, p);
        let (q, rem) = residual[p].div_rem(piv);
        if !rem.is_zero() {
            return Ok(None);
        }
        for (j, r) in residual.iter_mut().enumerate() {
            *r -= &q * e.h.get(i, j);
        }
        y[i] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return Ok(None);
    }
    Ok(Some(e.u.combine_rows(&y)))
}
