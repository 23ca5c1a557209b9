//! Double description: extreme rays of `{x ∈ Rⁿ : h·x ≤ 0 for all rows h}`.

use num_traits::{Signed, Zero};

use crate::arith::{dot, primitive, rational_echelon, IntMatrix, IntVector, Integer, Rational};
use crate::{Error, Result};

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Self) -> Self {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn contains_all(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: IntVector,
    zeros: Bits,
}

/// Extreme rays of the pointed cone `{x : H x ≤ 0}` in `Rⁿ`, as primitive
/// integer vectors in deterministic order. Fails with [`Error::NotPointed`]
/// when the rows of `H` do not span `Rⁿ`.
pub(crate) fn extreme_rays(h: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = h.len();
    // first n independent rows, in input order
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            h.iter()
                .map(|r| Rational::from_integer(r[j].clone()))
                .collect()
        })
        .collect();
    let (_, pivots) = rational_echelon(&cols);
    if pivots.len() < n {
        return Err(Error::NotPointed);
    }
    let basis_rows: Vec<IntVector> = pivots.iter().map(|&i| h[i].clone()).collect();
    let b = IntMatrix::from_rows(basis_rows, n)?;
    let inv = b.inverse_rational()?;
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let col: Vec<Rational> = (0..n).map(|i| -inv[i][j].clone()).collect();
            let v = crate::arith::clear_denominators(&col);
            let mut zeros = Bits::new(m);
            for (k, &p) in pivots.iter().enumerate() {
                if k != j {
                    zeros.set(p);
                }
            }
            Ray { v, zeros }
        })
        .collect();
    let mut done = vec![false; m];
    for &p in &pivots {
        done[p] = true;
    }
    for (idx, row) in h.iter().enumerate() {
        if done[idx] {
            continue;
        }
        done[idx] = true;
        let vals: Vec<Integer> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.set(idx);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if (common.count() as usize) + 2 < n {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != q && r.zeros.contains_all(&common));
                if blocked {
                    continue;
                }
                let v: IntVector = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(a, c)| &vals[p] * a - &vals[q] * c)
                    .collect();
                let mut zeros = common;
                zeros.set(idx);
                fresh.push(Ray {
                    v: primitive(&v),
                    zeros,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_positive() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.zeros.set(idx);
            }
            next.push(r);
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out: Vec<IntVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int_vec;

    #[test]
    fn orthant() {
        let h: Vec<IntVector> = (0..3)
            .map(|i| (0..3).map(|j| Integer::from(-((i == j) as i64))).collect())
            .collect();
        let r = extreme_rays(&h, 3).unwrap();
        assert_eq!(
            r,
            vec![
                int_vec(&[0, 0, 1]),
                int_vec(&[0, 1, 0]),
                int_vec(&[1, 0, 0])
            ]
        );
    }

    #[test]
    fn square_cone() {
        // cone over the square [0,1]^2 at height 1: x>=0, y>=0, x<=s, y<=s
        let h = vec![
            int_vec(&[-1, 0, 0]),
            int_vec(&[0, -1, 0]),
            int_vec(&[1, 0, -1]),
            int_vec(&[0, 1, -1]),
        ];
        let r = extreme_rays(&h, 3).unwrap();
        assert_eq!(r.len(), 4);
        for v in [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]] {
            assert!(r.contains(&int_vec(&v)));
        }
    }

    #[test]
    fn redundant_rows_and_lines() {
        let h = vec![
            int_vec(&[-1, 0]),
            int_vec(&[0, -1]),
            int_vec(&[-1, -1]),
            int_vec(&[-2, 0]),
        ];
        assert_eq!(
            extreme_rays(&h, 2).unwrap(),
            vec![int_vec(&[0, 1]), int_vec(&[1, 0])]
        );
        assert_eq!(extreme_rays(&[int_vec(&[1, 0])], 2), Err(Error::NotPointed));
    }
}
