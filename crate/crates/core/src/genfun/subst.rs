//! Monomial substitutions `x_i ↦ y^{L e_i}`.
//!
//! When a denominator `1 − x^c` is sent to `1 − y^0`, the term has a pole
//! along the substitution. [`substitute_with_limit`] resolves this by
//! perturbing along a generic line `x_i = y^{L e_i} e^{τ μ_i}` and taking the
//! constant coefficient of the Laurent expansion in `τ`. Factors that do not
//! collapse are expanded with
//! `1/(1 − y e^{bτ}) = Σ_m (b^m/m!) · P_m(y)/(1 − y)^{m+1}`,
//! where `P_m(y)/(1 − y)^{m+1} = Σ_r r^m y^r`.

use cache::Cache;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::sign::direction_for;
use super::{checked_add, dot_i64, BasicTerm, Exponent, ShortRatFun};
use crate::arith::{binomial, factorial, Integer, Rational};
use crate::{Error, Result};

mod cache {
    use std::sync::Mutex;

    /// Grow-only table computed on demand.
    pub struct Cache<T> {
        items: Mutex<Vec<T>>,
    }

    impl<T: Clone> Cache<T> {
        pub const fn new() -> Self {
            Self {
                items: Mutex::new(Vec::new()),
            }
        }

        pub fn upto(&self, n: usize, mut next: impl FnMut(&[T]) -> T) -> Vec<T> {
            let mut items = self.items.lock().expect("cache poisoned");
            while items.len() <= n {
                let v = next(&items);
                items.push(v);
            }
            items[..=n].to_vec()
        }
    }
}

static BERNOULLI: Cache<Rational> = Cache::new();
static EULERIAN: Cache<Vec<Integer>> = Cache::new();

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`.
pub(crate) fn bernoulli(n: usize) -> Vec<Rational> {
    BERNOULLI.upto(n, |prev| {
        let m = prev.len();
        if m == 0 {
            return Rational::one();
        }
        let mut s = Rational::zero();
        for (j, b) in prev.iter().enumerate() {
            s += b * Rational::from_integer(binomial(&Integer::from(m + 1), j));
        }
        -s / Rational::from_integer(Integer::from(m + 1))
    })
}

/// Numerators `P_0..=P_n` with `Σ_r r^m y^r = P_m(y)/(1 − y)^{m+1}`.
pub(crate) fn eulerian_numerators(n: usize) -> Vec<Vec<Integer>> {
    EULERIAN.upto(n, |prev| {
        let Some(p) = prev.last() else {
            return vec![Integer::one()];
        };
        let m = prev.len() - 1;
        // P_{m+1} = y·(P_m'·(1 − y) + (m+1)·P_m)
        let mut inner = vec![Integer::zero(); p.len() + 1];
        for (s, c) in p.iter().enumerate() {
            if s > 0 {
                let d = c * Integer::from(s);
                inner[s - 1] += &d;
                inner[s] -= &d;
            }
            inner[s] += c * Integer::from(m + 1);
        }
        let mut out = vec![Integer::zero()];
        out.extend(inner);
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    })
}

pub(crate) fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Taylor coefficients of `e^{aτ}` up to `order`.
pub(crate) fn exp_series(a: &Integer, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut pow = Integer::one();
    for m in 0..=order {
        out.push(Rational::new(pow.clone(), factorial(m)));
        pow *= a;
    }
    out
}

/// Taylor coefficients of `τ/(1 − e^{bτ})` up to `order`, `b ≠ 0`.
pub(crate) fn pole_factor_series(b: &Integer, order: usize, bern: &[Rational]) -> Vec<Rational> {
    let br = Rational::from_integer(b.clone());
    let mut out = Vec::with_capacity(order + 1);
    let mut pow = br.recip();
    for (m, bm) in bern.iter().enumerate().take(order + 1) {
        out.push(-bm * &pow / Rational::from_integer(factorial(m)));
        pow *= &br;
    }
    out
}

fn map_exponent(e: &[i64], images: &[Exponent], target_dim: usize) -> Result<Exponent> {
    let mut out = vec![0i64; target_dim];
    for (&k, img) in e.iter().zip(images) {
        if k == 0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(img) {
            let p = k.checked_mul(v).ok_or(Error::Overflow)?;
            *o = o.checked_add(p).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

fn check_images(f: &ShortRatFun, images: &[Exponent], target_dim: usize) -> Result<()> {
    if images.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: images.len(),
        });
    }
    for img in images {
        if img.len() != target_dim {
            return Err(Error::DimensionMismatch {
                expected: target_dim,
                found: img.len(),
            });
        }
    }
    Ok(())
}

/// Substitutes `x_i ↦ y^{images[i]}` where `y` has `target_dim` variables.
/// Fails if a denominator exponent is mapped to zero.
pub fn monomial_substitution(
    f: &ShortRatFun,
    images: &[Exponent],
    target_dim: usize,
) -> Result<ShortRatFun> {
    check_images(f, images, target_dim)?;
    let mut terms = Vec::with_capacity(f.len());
    for (idx, t) in f.terms().iter().enumerate() {
        let numer = map_exponent(&t.numer, images, target_dim)?;
        let mut denoms = Vec::with_capacity(t.denoms.len());
        for c in &t.denoms {
            let m = map_exponent(c, images, target_dim)?;
            if m.iter().all(|&x| x == 0) {
                return Err(Error::CollapsedDenominator {
                    term: idx,
                    exponent: c.clone(),
                });
            }
            denoms.push(m);
        }
        terms.push(BasicTerm {
            coeff: t.coeff.clone(),
            numer,
            denoms,
        });
    }
    Ok(ShortRatFun::from_terms_unchecked(target_dim, terms))
}

/// Monomial substitution that resolves collapsed denominators by a limit
/// along a generic line. The result equals `f(y^L)` as a rational function
/// whenever `f` is regular along the image of the substitution.
pub fn substitute_with_limit(
    f: &ShortRatFun,
    images: &[Exponent],
    target_dim: usize,
) -> Result<ShortRatFun> {
    check_images(f, images, target_dim)?;
    let mut collapsed: Vec<Exponent> = Vec::new();
    for t in f.terms() {
        for c in &t.denoms {
            if map_exponent(c, images, target_dim)?.iter().all(|&x| x == 0) {
                collapsed.push(c.clone());
            }
        }
    }
    if collapsed.is_empty() {
        return monomial_substitution(f, images, target_dim);
    }
    let mu = super::generic_direction(f.content_seed() ^ 0x5b57, f.dim(), collapsed.iter(), false)?;
    let max_k = f.max_denominators();
    let bern = bernoulli(max_k + 1);
    let euler = eulerian_numerators(max_k + 1);
    let mut out = Vec::new();
    for t in f.terms() {
        regularized_term(t, images, target_dim, &mu, &bern, &euler, &mut out)?;
    }
    Ok(ShortRatFun::from_terms_unchecked(target_dim, out).simplify())
}

struct Active {
    image: Exponent,
    b: Integer,
}

fn regularized_term(
    t: &BasicTerm,
    images: &[Exponent],
    target_dim: usize,
    mu: &[i64],
    bern: &[Rational],
    euler: &[Vec<Integer>],
    out: &mut Vec<BasicTerm>,
) -> Result<()> {
    let numer = map_exponent(&t.numer, images, target_dim)?;
    let mut pole_bs = Vec::new();
    let mut active = Vec::new();
    let mut fixed = Vec::new();
    for c in &t.denoms {
        let img = map_exponent(c, images, target_dim)?;
        let b = dot_i64(mu, c);
        if img.iter().all(|&x| x == 0) {
            pole_bs.push(b);
        } else if b.is_zero() {
            fixed.push(img);
        } else {
            active.push(Active { image: img, b });
        }
    }
    let k = pole_bs.len();
    if k == 0 {
        let mut denoms = fixed;
        denoms.extend(active.into_iter().map(|a| a.image));
        out.push(BasicTerm {
            coeff: t.coeff.clone(),
            numer,
            denoms,
        });
        return Ok(());
    }
    let a = dot_i64(mu, &t.numer);
    let mut r = exp_series(&a, k);
    for b in &pole_bs {
        r = series_mul(&r, &pole_factor_series(b, k, bern), k);
    }
    let mut parts = vec![0usize; active.len()];
    compositions(k, &mut parts, 0, &mut |m0, parts| {
        let mut coeff = &t.coeff * &r[m0];
        if coeff.is_zero() {
            return Ok(());
        }
        for (act, &m) in active.iter().zip(parts.iter()) {
            coeff *= Rational::new(num_traits::pow(act.b.clone(), m), factorial(m));
        }
        let mut monos: Vec<(Exponent, Integer)> = vec![(numer.clone(), Integer::one())];
        let mut denoms = fixed.clone();
        for (act, &m) in active.iter().zip(parts.iter()) {
            let p = &euler[m];
            let mut next = Vec::with_capacity(monos.len() * p.len());
            for (e, c) in &monos {
                let mut shift = vec![0i64; target_dim];
                for (s, pc) in p.iter().enumerate() {
                    if s > 0 {
                        shift = checked_add(&shift, &act.image)?;
                    }
                    if pc.is_zero() {
                        continue;
                    }
                    next.push((checked_add(e, &shift)?, c * pc));
                }
            }
            monos = next;
            denoms.extend(std::iter::repeat(act.image.clone()).take(m + 1));
        }
        for (e, c) in monos {
            out.push(BasicTerm {
                coeff: &coeff * Rational::from_integer(c),
                numer: e,
                denoms: denoms.clone(),
            });
        }
        Ok(())
    })
}

/// Calls `f(m0, parts)` for every way to write `total = m0 + Σ parts`.
fn compositions<F>(total: usize, parts: &mut [usize], idx: usize, f: &mut F) -> Result<()>
where
    F: FnMut(usize, &[usize]) -> Result<()>,
{
    if idx == parts.len() {
        return f(total, parts);
    }
    for m in 0..=total {
        parts[idx] = m;
        compositions(total - m, parts, idx + 1, f)?;
    }
    parts[idx] = 0;
    Ok(())
}

/// The limit of `f(x)` as `x → (1, …, 1)`; for an encoding of a finite set
/// this is its cardinality.
pub fn specialize_all_ones(f: &ShortRatFun) -> Result<Rational> {
    if f.is_empty() {
        return Ok(Rational::zero());
    }
    let lambda = direction_for(f, 0x0e5)?;
    let kmax = f.max_denominators();
    let bern = bernoulli(kmax);
    let partials: Vec<Vec<Rational>> = {
        use rayon::prelude::*;
        f.terms()
            .par_iter()
            .map(|t| {
                let k = t.denoms.len();
                let mut s = exp_series(&dot_i64(&lambda, &t.numer), k);
                for c in &t.denoms {
                    let b: BigInt = dot_i64(&lambda, c);
                    s = series_mul(&s, &pole_factor_series(&b, k, &bern), k);
                }
                // order i - k lands at index kmax - k + i
                let mut acc = vec![Rational::zero(); kmax + 1];
                for (i, v) in s.into_iter().enumerate() {
                    acc[kmax - k + i] = v * &t.coeff;
                }
                acc
            })
            .collect()
    };
    let mut acc = vec![Rational::zero(); kmax + 1];
    for p in partials {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
    }
    if acc[..kmax].iter().any(|v| !v.is_zero()) {
        return Err(Error::NonSummable);
    }
    Ok(acc.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn term(c: i64, u: &[i64], d: &[&[i64]]) -> BasicTerm {
        BasicTerm::new(
            rat(c, 1),
            u.to_vec(),
            d.iter().map(|x| x.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn bernoulli_and_eulerian() {
        let b = bernoulli(4);
        assert_eq!(
            b,
            vec![rat(1, 1), rat(-1, 2), rat(1, 6), rat(0, 1), rat(-1, 30)]
        );
        let e = eulerian_numerators(3);
        let ints = |v: &[i64]| v.iter().map(|&x| Integer::from(x)).collect::<Vec<_>>();
        assert_eq!(e[0], ints(&[1]));
        assert_eq!(e[1], ints(&[0, 1]));
        assert_eq!(e[2], ints(&[0, 1, 1]));
        assert_eq!(e[3], ints(&[0, 1, 4, 1]));
    }

    #[test]
    fn substitution_examples() {
        let f = ShortRatFun::from_points(2, vec![vec![1, 1], vec![2, 0]]).unwrap();
        let g = monomial_substitution(&f, &[vec![2], vec![3]], 1).unwrap();
        let exps: Vec<_> = g.terms().iter().map(|t| t.numer.clone()).collect();
        assert_eq!(exps, vec![vec![5], vec![4]]);

        let h = ShortRatFun::new(1, vec![term(1, &[0], &[&[1]])]).unwrap();
        let s = monomial_substitution(&h, &[vec![2]], 1).unwrap();
        assert_eq!(s.terms()[0].denoms, vec![vec![2]]);
    }

    #[test]
    fn collapse_is_reported() {
        let h = ShortRatFun::new(2, vec![term(1, &[0, 0], &[&[1, -1]])]).unwrap();
        let err = monomial_substitution(&h, &[vec![1], vec![1]], 1).unwrap_err();
        assert!(matches!(err, Error::CollapsedDenominator { term: 0, .. }));
    }

    #[test]
    fn specialize_segment() {
        // Brion encoding of [0,2]: 1/(1-x) + x^2/(1-x^{-1})
        let f = ShortRatFun::new(1, vec![term(1, &[0], &[&[1]]), term(1, &[2], &[&[-1]])]).unwrap();
        assert_eq!(specialize_all_ones(&f).unwrap(), rat(3, 1));
        assert_eq!(
            specialize_all_ones(&ShortRatFun::zero(3)).unwrap(),
            rat(0, 1)
        );
        let g = ShortRatFun::from_points(1, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(specialize_all_ones(&g).unwrap(), rat(2, 1));
    }

    #[test]
    fn infinite_set_is_not_summable() {
        let f = ShortRatFun::new(1, vec![term(1, &[0], &[&[1]])]).unwrap();
        assert_eq!(specialize_all_ones(&f), Err(Error::NonSummable));
    }

    #[test]
    fn limit_substitution_matches_direct_grading() {
        // square [0,2]^2 as a Brion sum; grade by x1 - x2 collapses (1,1)-type
        // denominators only if present; use x_i -> t (total degree) where the
        // tangent cone at (0,2) has generator (1,-1).
        let f = ShortRatFun::new(
            2,
            vec![
                term(1, &[0, 0], &[&[1, 0], &[0, 1]]),
                term(1, &[2, 0], &[&[-1, 0], &[0, 1]]),
                term(1, &[0, 2], &[&[1, 0], &[0, -1]]),
                term(1, &[2, 2], &[&[-1, 0], &[0, -1]]),
            ],
        )
        .unwrap();
        // x1 -> t, x2 -> t^-1: every denominator survives
        let g = substitute_with_limit(&f, &[vec![1], vec![-1]], 1).unwrap();
        assert_eq!(specialize_all_ones(&g).unwrap(), rat(9, 1));
        // x1 -> t, x2 -> 1: (0,1) collapses
        let h = substitute_with_limit(&f, &[vec![1], vec![0]], 1).unwrap();
        for x in [rat(1, 3), rat(5, 2)] {
            let direct = (Rational::one() + &x + &x * &x) * rat(3, 1);
            assert_eq!(h.evaluate(&[x]).unwrap(), direct);
        }
    }
}
