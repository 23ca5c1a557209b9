//! Degree-bounded binomial encodings of toric ideals.
//!
//! A binomial `x^u − x^v` is encoded as the monomial `x^u y^v` in `2n`
//! variables. The box-bounded set of all pairs with `A u = A v` contains a
//! universal Gröbner basis; Hadamard products against half-spaces select the
//! pairs that are correctly ordered for a matrix term order.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{max_subdeterminant, to_i64, IntMatrix, IntVector, Integer, Rational};
use crate::genfun::expand::{default_direction, TermCounter};
use crate::genfun::{linear_slice, BasicTerm, Exponent, ShortRatFun, TermOrder};
use crate::polytope::{brion_genfun, count, Polyhedron};
use crate::{Error, Result};

/// A configuration matrix `A ∈ Z^{d×n}` with its box bound
/// `M = (d + 1)(n − d)·D(A)`, `D(A)` the largest `d × d` minor.
#[derive(Clone, Debug)]
pub struct ToricInstance {
    a: IntMatrix,
    m: Integer,
}

impl ToricInstance {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let (d, n) = (a.rows(), a.cols());
        if d == 0 || n == 0 {
            return Err(Error::InvalidArgument("empty configuration matrix".into()));
        }
        let dd = max_subdeterminant(&a, d)?;
        let m = Integer::from((d + 1) as u64) * Integer::from((n - d) as u64) * dd;
        Ok(Self { a, m })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn bound(&self) -> &Integer {
        &self.m
    }

    pub fn num_vars(&self) -> usize {
        self.a.cols()
    }
}

/// A set of binomials encoded in the variables `x₁…x_n, y₁…y_n`.
#[derive(Clone, Debug)]
pub struct BinomialSet {
    genfun: ShortRatFun,
    a: IntMatrix,
    bound: Option<i64>,
}

impl BinomialSet {
    /// Wraps an encoding. `bound`, when known, is a box `[0, bound]^{2n}`
    /// containing the support.
    pub fn new(genfun: ShortRatFun, a: IntMatrix, bound: Option<i64>) -> Result<Self> {
        if genfun.dim() != 2 * a.cols() {
            return Err(Error::DimensionMismatch {
                expected: 2 * a.cols(),
                found: genfun.dim(),
            });
        }
        Ok(Self { genfun, a, bound })
    }

    pub fn genfun(&self) -> &ShortRatFun {
        &self.genfun
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn bound(&self) -> Option<i64> {
        self.bound
    }

    pub fn num_vars(&self) -> usize {
        self.a.cols()
    }

    /// The coefficient of `x^u y^v`; 1 for members of a set, 0 otherwise.
    pub fn coefficient(&self, u: &[i64], v: &[i64]) -> Result<Rational> {
        let point: Exponent = u.iter().chain(v).copied().collect();
        crate::genfun::coefficient(&self.genfun, &point)
    }

    pub fn contains(&self, u: &[i64], v: &[i64]) -> Result<bool> {
        Ok(self.coefficient(u, v)?.is_one())
    }
}

fn pair_rows(a: &IntMatrix) -> Vec<IntVector> {
    (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .cloned()
                .chain(a.row(i).iter().map(|x| -x))
                .collect()
        })
        .collect()
}

/// `Σ { x^u y^v : A u = A v, 0 ≤ u_i, v_i ≤ M }`.
pub fn universal_gb_genfun(inst: &ToricInstance) -> Result<BinomialSet> {
    let n = inst.num_vars();
    let m = to_i64(&inst.m)?;
    let p = Polyhedron::lattice_box(&vec![0; 2 * n], &vec![m; 2 * n])?;
    let d = vec![Integer::zero(); inst.a.rows()];
    let p = p.with_equations(IntMatrix::from_rows(pair_rows(&inst.a), 2 * n)?, d)?;
    BinomialSet::new(brion_genfun(&p)?, inst.a.clone(), Some(m))
}

/// The pairs `x^u y^v` of `g0` with `x^v ≺_W x^u`: the sum over rows `w_i`
/// of the slices `w_j u = w_j v (j < i), w_i u ≥ w_i v + 1`.
pub fn order_filter(g0: &BinomialSet, ord: &TermOrder) -> Result<BinomialSet> {
    let n = g0.num_vars();
    if ord.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ord.dim(),
        });
    }
    if g0.bound.is_none() {
        return Err(Error::InvalidArgument(
            "order filter needs a box-bounded binomial set".into(),
        ));
    }
    let rows = ord.weight_rows();
    let mut h = g0.genfun.clone();
    let mut parts: Vec<ShortRatFun> = Vec::with_capacity(n);
    for (i, w) in rows.iter().enumerate() {
        let ell: Exponent = w.iter().copied().chain(w.iter().map(|x| -x)).collect();
        let last = i + 1 == rows.len();
        let (gi, hi) = rayon::join(
            || linear_slice(&h, &ell, 1, true),
            || {
                if last {
                    Ok(ShortRatFun::zero(2 * n))
                } else {
                    linear_slice(&h, &ell, 0, false)
                }
            },
        );
        parts.push(gi?);
        h = hi?;
        if h.is_empty() {
            break;
        }
    }
    let sum = parts
        .iter()
        .try_fold(ShortRatFun::zero(2 * n), |acc, p| acc.add(p))?
        .simplify();
    BinomialSet::new(sum, g0.a.clone(), g0.bound)
}

/// How a binomial's degree is bounded by `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeBound {
    /// `g·u ≤ D` with `g` the first row of `A`.
    FirstRow,
    /// `g·u ≤ D` for the given grading `g`.
    Graded(IntVector),
    /// `0 ≤ u_i, v_i ≤ D` for every coordinate.
    Box,
}

/// Counts of pairs `(u, v) ≥ 0` with `A u = A v` and degree at most `D`
/// under the conventions a binomial count may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialCount {
    /// All pairs, including `u = v`.
    pub raw: Integer,
    /// Pairs with `u = v`.
    pub diagonal: Integer,
    /// Pairs with `u ≠ v`.
    pub off_diagonal: Integer,
    /// Pairs with `u ≠ v` up to swapping `u` and `v`; defined when the
    /// degree bound is symmetric in `u` and `v`.
    pub unordered: Option<Integer>,
}

fn neg_identity(k: usize) -> Vec<IntVector> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        -Integer::one()
                    } else {
                        Integer::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `{w ≥ 0 : g·(first half of w) ≤ D}` in `k` variables, or the box
/// `[0, D]^k`.
fn degree_region(
    k: usize,
    half: usize,
    bound: &Integer,
    g: Option<&IntVector>,
) -> Result<Polyhedron> {
    let mut rows = neg_identity(k);
    let mut b = vec![Integer::zero(); k];
    match g {
        Some(g) => {
            rows.push(
                g.iter()
                    .cloned()
                    .chain(std::iter::repeat(Integer::zero()).take(k - half))
                    .collect(),
            );
            b.push(bound.clone());
        }
        None => {
            for i in 0..k {
                rows.push(
                    (0..k)
                        .map(|j| {
                            if i == j {
                                Integer::one()
                            } else {
                                Integer::zero()
                            }
                        })
                        .collect(),
                );
                b.push(bound.clone());
            }
        }
    }
    Polyhedron::from_inequalities(IntMatrix::from_rows(rows, k)?, b)
}

/// Bounded binomial counts, computed as lattice-point counts of the pair
/// polytope and of its diagonal.
pub fn count_binomials_bounded(
    a: &IntMatrix,
    bound: &Integer,
    degree: &DegreeBound,
) -> Result<BinomialCount> {
    let n = a.cols();
    if a.rows() == 0 {
        return Err(Error::InvalidArgument("empty configuration matrix".into()));
    }
    let g: Option<IntVector> = match degree {
        DegreeBound::FirstRow => Some(a.row(0).to_vec()),
        DegreeBound::Graded(g) if g.len() != n => {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            })
        }
        DegreeBound::Graded(g) => Some(g.clone()),
        DegreeBound::Box => None,
    };
    if bound.is_negative() {
        let z = Integer::zero();
        return Ok(BinomialCount {
            raw: z.clone(),
            diagonal: z.clone(),
            off_diagonal: z.clone(),
            unordered: Some(z),
        });
    }
    let pairs = degree_region(2 * n, n, bound, g.as_ref())?.with_equations(
        IntMatrix::from_rows(pair_rows(a), 2 * n)?,
        vec![Integer::zero(); a.rows()],
    )?;
    let diag = degree_region(n, n, bound, g.as_ref())?;
    let (raw, diagonal) = rayon::join(|| count(&pairs), || count(&diag));
    let (raw, diagonal) = (raw?, diagonal?);
    let off_diagonal = &raw - &diagonal;
    // g·u = g·v on the fibers iff g lies in the row space of A
    let symmetric = g.as_ref().map_or(true, |g| {
        let mut ag = a.clone();
        ag.push_row(g);
        ag.rank() == a.rank()
    });
    let unordered = if symmetric {
        if (&off_diagonal % Integer::from(2)) != Integer::zero() {
            return Err(Error::Internal(
                "off-diagonal pairs are not closed under swapping".into(),
            ));
        }
        Some(&off_diagonal / Integer::from(2))
    } else {
        None
    };
    Ok(BinomialCount {
        raw,
        diagonal,
        off_diagonal,
        unordered,
    })
}

/// The pairs `(u, v)` of `g` with all entries in `[0, window]`, in
/// lexicographic order. Only the fibers of `A` are visited.
pub fn expand_binomials(g: &BinomialSet, window: i64) -> Result<Vec<(Exponent, Exponent)>> {
    let bound = g
        .bound
        .ok_or_else(|| Error::InvalidArgument("binomial set has no box bound".into()))?;
    let w = window.min(bound);
    if w < 0 {
        return Ok(Vec::new());
    }
    let n = g.num_vars();
    let side = (w as u64 + 1)
        .checked_pow(n as u32)
        .filter(|&s| s <= 20_000_000)
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "window {w} is too large to enumerate in {n} variables"
            ))
        })?;
    let points: Vec<Exponent> = (0..side)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = (k % (w as u64 + 1)) as i64;
                    k /= w as u64 + 1;
                    c
                })
                .rev()
                .collect()
        })
        .collect();
    let mut fibers: HashMap<IntVector, Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        let key =
            g.a.mul_vec(&p.iter().map(|&x| Integer::from(x)).collect::<Vec<_>>());
        fibers.entry(key).or_default().push(i);
    }
    let lambda = default_direction(&g.genfun)?;
    let counters: Vec<TermCounter> = g
        .genfun
        .terms()
        .iter()
        .map(|t| TermCounter::new(t, &lambda))
        .collect::<Result<_>>()?;
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for idx in fibers.values() {
        for &i in idx {
            for &j in idx {
                candidates.push((i, j));
            }
        }
    }
    let mut out: Vec<(Exponent, Exponent)> = candidates
        .into_par_iter()
        .filter_map(|(i, j)| {
            let point: Exponent = points[i].iter().chain(&points[j]).copied().collect();
            let c: Rational = counters.iter().map(|k| k.count(&point, &lambda)).sum();
            (!c.is_zero()).then(|| (points[i].clone(), points[j].clone()))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Repeatedly replaces `x^a` by `x^{a − u + v}` for the first pair `(u, v)`
/// with `u ≤ a` and `x^v ≺ x^u`, until no pair applies.
pub fn normal_form_desk(a: &[i64], pairs: &[(Exponent, Exponent)], ord: &TermOrder) -> Exponent {
    let usable: Vec<&(Exponent, Exponent)> = pairs.iter().filter(|(u, v)| ord.less(v, u)).collect();
    let mut cur = a.to_vec();
    'outer: loop {
        for (u, v) in &usable {
            if u.iter().zip(&cur).all(|(x, y)| x <= y) {
                for ((c, x), y) in cur.iter_mut().zip(u).zip(v) {
                    *c += y - x;
                }
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Binomial terms `x^u y^v` as a finite encoding, for building small sets.
pub fn binomial_set_from_pairs(
    a: IntMatrix,
    pairs: &[(Exponent, Exponent)],
    bound: Option<i64>,
) -> Result<BinomialSet> {
    let n = a.cols();
    let terms: Vec<BasicTerm> = pairs
        .iter()
        .map(|(u, v)| {
            if u.len() != n || v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.len().max(v.len()),
                });
            }
            Ok(BasicTerm::monomial(
                Rational::one(),
                u.iter().chain(v).copied().collect(),
            ))
        })
        .collect::<Result<_>>()?;
    BinomialSet::new(ShortRatFun::new(2 * n, terms)?.simplify(), a, bound)
}
