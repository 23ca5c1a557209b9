//! Barvinok's signed decomposition of a simplicial cone into unimodular
//! cones, valid modulo indicator functions of lower-dimensional cones.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{lll_reduce, rat, shortest_vector, IntMatrix, IntVector, Integer, Rational};
use crate::Result;

/// Dimension up to which an exact shortest vector is added to the candidates.
const EXACT_SVP_DIM: usize = 6;

fn adjugate(r: &IntMatrix, det: &Integer) -> Result<IntMatrix> {
    let n = r.rows();
    let inv = r.inverse_rational()?;
    let mut adj = IntMatrix::zeros(n, n);
    for (i, row) in inv.iter().enumerate() {
        for (j, q) in row.iter().enumerate() {
            let v = q * Rational::from_integer(det.clone());
            debug_assert!(v.is_integer());
            adj.set(i, j, v.to_integer());
        }
    }
    Ok(adj)
}

fn centered_mod(v: &[Integer], m: &Integer) -> IntVector {
    v.iter()
        .map(|x| {
            let mut y = x.mod_floor(m);
            if &y * 2 > *m {
                y -= m;
            }
            y
        })
        .collect()
}

fn score(b: &[Integer]) -> (Integer, Integer) {
    let linf = b.iter().map(|x| x.abs()).max().unwrap_or_default();
    let l1 = b.iter().map(|x| x.abs()).sum();
    (linf, l1)
}

/// A short nonzero vector `β` of the lattice spanned by the rows of `adj`,
/// reduced modulo `|det|`, minimizing `(ℓ∞, ℓ1)` among the candidates.
/// Index up to which every residue class is searched.
const EXHAUSTIVE_INDEX: u64 = 1 << 12;

/// The residues `Σ k_i · adj_i mod m`, a group of order `m`.
fn residue_group(adj: &IntMatrix, m: u64) -> Vec<Vec<u64>> {
    let gens: Vec<Vec<u64>> = adj
        .row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.mod_floor(&Integer::from(m))
                        .to_u64()
                        .expect("residue fits")
                })
                .collect()
        })
        .collect();
    let zero = vec![0u64; adj.cols()];
    let mut seen = std::collections::HashSet::from([zero.clone()]);
    let mut order = vec![zero];
    let mut i = 0;
    while i < order.len() {
        for g in &gens {
            let s: Vec<u64> = order[i].iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(s.clone()) {
                order.push(s);
            }
        }
        i += 1;
    }
    order
}

fn short_beta(adj: &IntMatrix, det: &Integer) -> Result<IntVector> {
    let m = det.abs();
    if let Some(small) = m.to_u64().filter(|&x| x <= EXHAUSTIVE_INDEX) {
        let mut best: Option<((Integer, Integer), IntVector)> = None;
        for c in residue_group(adj, small) {
            let b = centered_mod(&c.into_iter().map(Integer::from).collect::<Vec<_>>(), &m);
            if b.iter().all(Zero::is_zero) {
                continue;
            }
            let s = score(&b);
            if best
                .as_ref()
                .map_or(true, |(bs, bv)| s < *bs || (s == *bs && b > *bv))
            {
                best = Some((s, b));
            }
        }
        return Ok(best.expect("a nonunimodular cone has a nonzero residue").1);
    }
    let mut cands: Vec<IntVector> = Vec::new();
    let red = lll_reduce(adj, &rat(3, 4))?;
    cands.extend(red.row_vecs());
    cands.extend(adj.row_vecs());
    if adj.rows() <= EXACT_SVP_DIM {
        cands.push(shortest_vector(&red)?);
    }
    let mut best: Option<((Integer, Integer), IntVector)> = None;
    for c in cands {
        let b = centered_mod(&c, &m);
        if b.iter().all(Zero::is_zero) {
            continue;
        }
        let s = score(&b);
        if best
            .as_ref()
            .map_or(true, |(bs, bv)| s < *bs || (s == *bs && b > *bv))
        {
            best = Some((s, b));
        }
    }
    Ok(best.expect("a nonunimodular cone has a nonzero residue").1)
}

/// Recursive decomposition of the simplicial cone with generator rows `rays`.
/// Returns `(sign, generators)` pairs with unimodular generator matrices.
pub(crate) fn decompose(rays: Vec<IntVector>, sign: i8) -> Result<Vec<(i8, Vec<IntVector>)>> {
    let n = rays.len();
    let r = IntMatrix::from_rows(rays.clone(), n)?;
    let det = r.det()?;
    if det.abs().is_one() {
        return Ok(vec![(sign, rays)]);
    }
    let adj = adjugate(&r, &det)?;
    let beta = short_beta(&adj, &det)?;
    // z = β·R / det and its coordinates in the ray basis are λ = β / det
    let zs = r.combine_rows(&beta);
    let mut z: IntVector = zs.iter().map(|x| x / &det).collect();
    debug_assert!(zs.iter().zip(&z).all(|(a, b)| &(b * &det) == a));
    let mut lam_signs: Vec<i8> = beta
        .iter()
        .map(|b| crate::arith::sign(b) * crate::arith::sign(&det))
        .collect();
    if lam_signs.iter().all(|&s| s <= 0) {
        z = z.iter().map(|x| -x).collect();
        lam_signs = lam_signs.iter().map(|s| -s).collect();
    }
    let children: Vec<(i8, Vec<IntVector>)> = (0..n)
        .filter(|&i| lam_signs[i] != 0)
        .map(|i| {
            let mut g = rays.clone();
            g[i] = z.clone();
            (sign * lam_signs[i], g)
        })
        .collect();
    let parts: Vec<Vec<(i8, Vec<IntVector>)>> = children
        .into_par_iter()
        .map(|(s, g)| decompose(g, s))
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}
