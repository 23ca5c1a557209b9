//! Pointwise coefficient extraction and box expansion.
//!
//! After sign normalization with a direction `λ`, a term
//! `γ x^u / Π (1 − x^{c_j})` expands as `γ Σ_{k ≥ 0} x^{u + Σ k_j c_j}`, so the
//! coefficient of `x^a` is `γ` times the number of `k ∈ Z^m_{≥0}` with
//! `Σ k_j c_j = a − u`. Equal generators are merged and counted with the
//! multiplicity `Π C(N_i + e_i − 1, e_i − 1)`.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{dot_i64, generic_direction, normalize_signs, BasicTerm, Exponent, ShortRatFun};
use crate::arith::{binomial, rref_in_place, Integer, Rational};
use crate::{Error, Result};

pub(crate) struct TermCounter {
    coeff: Rational,
    numer: Exponent,
    gens: Vec<Exponent>,
    mult: Vec<usize>,
    lambda_gens: Vec<Integer>,
    /// Generators forming a basis of their span.
    basis: Vec<usize>,
    free: Vec<usize>,
    /// Coordinates on which the basis generators are independent.
    rows: Vec<usize>,
    /// Inverse of the basis generators restricted to `rows`.
    inv: Vec<Vec<Rational>>,
}

impl TermCounter {
    pub(crate) fn new(t: &BasicTerm, lambda: &[i64]) -> Result<Self> {
        let t = normalize_signs(t, lambda)?;
        let mut gens: Vec<Exponent> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for c in t.denoms.iter().sorted() {
            if gens.last() == Some(c) {
                *mult.last_mut().expect("nonempty") += 1;
            } else {
                gens.push(c.clone());
                mult.push(1);
            }
        }
        let n = t.dim();
        // pick independent generators greedily
        let mut basis = Vec::new();
        let mut free = Vec::new();
        let mut acc: Vec<Vec<Rational>> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut trial = acc.clone();
            trial.push(
                g.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect(),
            );
            let (rank, _) = rref_in_place(&mut trial.clone(), n);
            if rank == trial.len() {
                acc = trial;
                basis.push(i);
            } else {
                free.push(i);
            }
        }
        // coordinates: pivots of the transposed basis matrix
        let tr: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                basis
                    .iter()
                    .map(|&b| Rational::from_integer(gens[b][j].into()))
                    .collect()
            })
            .collect();
        let rows = pick_rows(&tr, basis.len());
        let r = basis.len();
        let sq: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&j| {
                basis
                    .iter()
                    .map(|&b| Rational::from_integer(gens[b][j].into()))
                    .collect()
            })
            .collect();
        let inv = invert(&sq, r)?;
        let lambda_gens = gens.iter().map(|g| dot_i64(lambda, g)).collect();
        Ok(Self {
            coeff: t.coeff,
            numer: t.numer,
            gens,
            mult,
            lambda_gens,
            basis,
            free,
            rows,
            inv,
        })
    }

    /// `γ` times the number of representations of `a`.
    pub(crate) fn count(&self, a: &[i64], lambda: &[i64]) -> Rational {
        let diff: Vec<i64> = a.iter().zip(&self.numer).map(|(x, y)| x - y).collect();
        if self.gens.is_empty() {
            return if diff.iter().all(|&x| x == 0) {
                self.coeff.clone()
            } else {
                Rational::zero()
            };
        }
        let budget = dot_i64(lambda, &diff);
        if budget.is_negative() {
            return Rational::zero();
        }
        let mut total = Integer::zero();
        let mut n = vec![Integer::zero(); self.gens.len()];
        let rest: Vec<Integer> = diff.iter().map(|&x| Integer::from(x)).collect();
        self.enumerate_free(0, &budget, rest, &mut n, &mut total);
        &self.coeff * Rational::from_integer(total)
    }

    fn enumerate_free(
        &self,
        idx: usize,
        budget: &Integer,
        rest: Vec<Integer>,
        n: &mut [Integer],
        total: &mut Integer,
    ) {
        if idx == self.free.len() {
            if let Some(m) = self.solve_basis(&rest, n) {
                *total += m;
            }
            return;
        }
        let f = self.free[idx];
        let step = &self.lambda_gens[f];
        let mut k = Integer::zero();
        let mut b = budget.clone();
        let mut r = rest;
        loop {
            n[f] = k.clone();
            self.enumerate_free(idx + 1, &b, r.clone(), n, total);
            b -= step;
            if b.is_negative() {
                break;
            }
            for (x, g) in r.iter_mut().zip(&self.gens[f]) {
                *x -= Integer::from(*g);
            }
            k += 1;
        }
        n[f] = Integer::zero();
    }

    fn solve_basis(&self, rest: &[Integer], n: &mut [Integer]) -> Option<Integer> {
        let rhs: Vec<Rational> = self
            .rows
            .iter()
            .map(|&j| Rational::from_integer(rest[j].clone()))
            .collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let v: Rational = self.inv[i].iter().zip(&rhs).map(|(x, y)| x * y).sum();
            if !v.is_integer() || v.is_negative() {
                return None;
            }
            n[b] = v.to_integer();
        }
        // full equality check
        for (j, want) in rest.iter().enumerate() {
            let got: Integer = self
                .basis
                .iter()
                .map(|&b| &n[b] * Integer::from(self.gens[b][j]))
                .sum();
            if &got != want {
                return None;
            }
        }
        let mut m = Integer::one();
        for (i, e) in self.mult.iter().enumerate() {
            if *e > 1 {
                m *= binomial(&(&n[i] + Integer::from(*e - 1)), *e - 1);
            }
        }
        Some(m)
    }
}

fn pick_rows(tr: &[Vec<Rational>], r: usize) -> Vec<usize> {
    // greedy: keep coordinate rows that raise the rank
    let mut chosen = Vec::new();
    let mut acc: Vec<Vec<Rational>> = Vec::new();
    for (j, row) in tr.iter().enumerate() {
        if chosen.len() == r {
            break;
        }
        let mut trial = acc.clone();
        trial.push(row.clone());
        let (rank, _) = rref_in_place(&mut trial.clone(), r);
        if rank == trial.len() {
            acc = trial;
            chosen.push(j);
        }
    }
    chosen
}

fn invert(m: &[Vec<Rational>], r: usize) -> Result<Vec<Vec<Rational>>> {
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            v
        })
        .collect();
    let (rank, _) = rref_in_place(&mut aug, r);
    if rank != r {
        return Err(Error::Internal("singular generator basis".into()));
    }
    Ok(aug.into_iter().map(|row| row[r..].to_vec()).collect())
}

/// The default expansion direction: generic with positive entries, so sets
/// contained in a pointed cone inside the nonnegative orthant expand as
/// themselves.
pub(crate) fn default_direction(f: &ShortRatFun) -> Result<Exponent> {
    let avoid: Vec<&Exponent> = f.terms().iter().flat_map(|t| t.denoms.iter()).collect();
    generic_direction(
        f.content_seed() ^ 0xe4a,
        f.dim(),
        avoid.iter().copied(),
        true,
    )
}

fn counters(f: &ShortRatFun, lambda: &[i64]) -> Result<Vec<TermCounter>> {
    f.terms()
        .par_iter()
        .map(|t| TermCounter::new(t, lambda))
        .collect()
}

/// Coefficient of `x^a` in the Laurent expansion of `f` in the direction
/// `λ`. For encodings of finite sets the direction does not matter.
pub fn coefficient_in_direction(f: &ShortRatFun, a: &[i64], lambda: &[i64]) -> Result<Rational> {
    if a.len() != f.dim() || lambda.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: a.len().min(lambda.len()),
        });
    }
    let cs = counters(f, lambda)?;
    Ok(cs.iter().map(|c| c.count(a, lambda)).sum())
}

/// Coefficient of `x^a` in `f`, expanded in a generic positive direction.
pub fn coefficient(f: &ShortRatFun, a: &[i64]) -> Result<Rational> {
    let lambda = default_direction(f)?;
    coefficient_in_direction(f, a, &lambda)
}

/// All nonzero coefficients with exponents in `[lo, hi]` (inclusive),
/// expanded in the direction `λ`, in lexicographic order.
pub fn expand_in_direction(
    f: &ShortRatFun,
    lo: &[i64],
    hi: &[i64],
    lambda: &[i64],
) -> Result<Vec<(Exponent, Rational)>> {
    let n = f.dim();
    if lo.len() != n || hi.len() != n || lambda.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lo.len().min(hi.len()).min(lambda.len()),
        });
    }
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return Ok(Vec::new());
    }
    lo.iter()
        .zip(hi)
        .try_fold(1u128, |acc, (l, h)| acc.checked_mul((h - l + 1) as u128))
        .filter(|&s| s <= 50_000_000)
        .ok_or_else(|| Error::InvalidArgument("expansion box too large".into()))?;
    let cs = counters(f, lambda)?;
    let points: Vec<Exponent> = lo
        .iter()
        .zip(hi)
        .map(|(&l, &h)| l..=h)
        .multi_cartesian_product()
        .collect();
    let points = if n == 0 { vec![Vec::new()] } else { points };
    let out: Vec<(Exponent, Rational)> = points
        .into_par_iter()
        .filter_map(|p| {
            let v: Rational = cs.iter().map(|c| c.count(&p, lambda)).sum();
            (!v.is_zero()).then_some((p, v))
        })
        .collect();
    Ok(out)
}

pub fn expand_in(f: &ShortRatFun, lo: &[i64], hi: &[i64]) -> Result<Vec<(Exponent, Rational)>> {
    let lambda = default_direction(f)?;
    expand_in_direction(f, lo, hi, &lambda)
}

/// Monomials of `f` with exponents in `[0, box]`.
pub fn expand(f: &ShortRatFun, bound: &[i64]) -> Result<Vec<(Exponent, Rational)>> {
    expand_in(f, &vec![0; bound.len()], bound)
}
