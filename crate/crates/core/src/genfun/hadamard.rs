//! Hadamard products of short rational functions.
//!
//! For two sign-normalized terms `γ₁ x^{u₁} Σ_{ε₁ ≥ 0} x^{C₁ε₁}` and
//! `γ₂ x^{u₂} Σ_{ε₂ ≥ 0} x^{C₂ε₂}` the product collects the pairs with
//! `u₁ + C₁ε₁ = u₂ + C₂ε₂`. These form the lattice points of the pointed
//! polyhedron `Q = {(ε₁, ε₂) ≥ 0 : C₁ε₁ − C₂ε₂ = u₂ − u₁}`, whose generating
//! function is pushed forward along `ε ↦ u₁ + C₁ε₁`.

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use super::expand::TermCounter;
use super::{generic_direction, monomial_substitution, normalize_signs, substitute_with_limit};
use super::{BasicTerm, Exponent, ShortRatFun};
use crate::arith::{IntMatrix, Integer, Rational};
use crate::polytope::{pointed_genfun, Polyhedron};
use crate::{Error, Result};

/// `(t^p − t^{q+1}) / (1 − t)`, the encoding of `{p, …, q}`.
pub fn interval_polynomial(p: i64, q: i64) -> Result<ShortRatFun> {
    if p > q {
        return Err(Error::InvalidArgument(format!("empty interval [{p}, {q}]")));
    }
    let q1 = q.checked_add(1).ok_or(Error::Overflow)?;
    ShortRatFun::new(
        1,
        vec![
            BasicTerm::new(Rational::from_integer(1.into()), vec![p], vec![vec![1]])?,
            BasicTerm::new(Rational::from_integer((-1).into()), vec![q1], vec![vec![1]])?,
        ],
    )
}

fn pair_product(t1: &BasicTerm, t2: &BasicTerm, lambda: &[i64]) -> Result<Vec<BasicTerm>> {
    let n = t1.dim();
    if t2.denoms.is_empty() {
        let c = TermCounter::new(t1, lambda)?.count(&t2.numer, lambda);
        return Ok(if c.is_zero() {
            Vec::new()
        } else {
            vec![BasicTerm::monomial(c * &t2.coeff, t2.numer.clone())]
        });
    }
    if t1.denoms.is_empty() {
        let c = TermCounter::new(t2, lambda)?.count(&t1.numer, lambda);
        return Ok(if c.is_zero() {
            Vec::new()
        } else {
            vec![BasicTerm::monomial(c * &t1.coeff, t1.numer.clone())]
        });
    }
    let m1 = t1.denoms.len();
    let m2 = t2.denoms.len();
    let m = m1 + m2;
    let neg_id: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { -1 } else { 0 }).collect())
        .collect();
    let eq: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            t1.denoms
                .iter()
                .map(|c| c[r])
                .chain(t2.denoms.iter().map(|c| -c[r]))
                .collect()
        })
        .collect();
    let rhs: Vec<Integer> = (0..n)
        .map(|r| Integer::from(t2.numer[r]) - Integer::from(t1.numer[r]))
        .collect();
    let q = Polyhedron::new(
        IntMatrix::from_i64(&neg_id),
        vec![Integer::zero(); m],
        IntMatrix::from_i64(&eq),
        rhs,
    )?;
    let gq = pointed_genfun(&q)?;
    if gq.is_empty() {
        return Ok(Vec::new());
    }
    let images: Vec<Exponent> = t1
        .denoms
        .iter()
        .cloned()
        .chain(std::iter::repeat(vec![0; n]).take(m2))
        .collect();
    let pushed = match monomial_substitution(&gq, &images, n) {
        Ok(g) => g,
        Err(Error::CollapsedDenominator { .. }) => substitute_with_limit(&gq, &images, n)?,
        Err(e) => return Err(e),
    };
    let k = &t1.coeff * &t2.coeff;
    Ok(pushed.shift(&t1.numer)?.scale(&k).into_terms())
}

/// Hadamard product with both operands expanded in the direction `λ`.
pub fn hadamard_in_direction(
    f: &ShortRatFun,
    g: &ShortRatFun,
    lambda: &[i64],
) -> Result<ShortRatFun> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let n = f.dim();
    let fa: Vec<BasicTerm> = f
        .terms()
        .iter()
        .map(|t| normalize_signs(t, lambda))
        .collect::<Result<_>>()?;
    let ga: Vec<BasicTerm> = g
        .terms()
        .iter()
        .map(|t| normalize_signs(t, lambda))
        .collect::<Result<_>>()?;
    let pairs: Vec<(&BasicTerm, &BasicTerm)> = fa.iter().cartesian_product(ga.iter()).collect();
    let parts: Vec<Vec<BasicTerm>> = pairs
        .into_par_iter()
        .map(|(a, b)| pair_product(a, b, lambda))
        .collect::<Result<_>>()?;
    Ok(ShortRatFun::new(n, parts.into_iter().flatten().collect())?.simplify())
}

/// A direction with positive entries that is generic for both operands.
pub(crate) fn common_direction(f: &ShortRatFun, g: &ShortRatFun) -> Result<Exponent> {
    let avoid: Vec<&Exponent> = f
        .terms()
        .iter()
        .chain(g.terms())
        .flat_map(|t| t.denoms.iter())
        .collect();
    let seed = f.content_seed().rotate_left(17) ^ g.content_seed();
    generic_direction(seed, f.dim(), avoid.iter().copied(), true)
}

/// Coefficient-wise product `Σ f_a g_a x^a`, with both series expanded in a
/// generic positive direction. For encodings of sets this is the encoding
/// of the intersection.
pub fn hadamard(f: &ShortRatFun, g: &ShortRatFun) -> Result<ShortRatFun> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let lambda = common_direction(f, g)?;
    hadamard_in_direction(f, g, &lambda)
}

/// The part of `f` on `w·a = r`, or on `w·a ≥ r` with `at_least`, for `f`
/// supported in the nonnegative orthant. The exponent `w·a` is recorded in
/// an extra variable `t`, the lifted function is multiplied coefficient-wise
/// with `t^r / ((1 − t)^{[at_least]} Π (1 − x_i))` and `t` is set to 1.
pub fn linear_slice(f: &ShortRatFun, w: &[i64], r: i64, at_least: bool) -> Result<ShortRatFun> {
    let n = f.dim();
    if w.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.len(),
        });
    }
    let unit = |i: usize, len: usize| -> Exponent {
        let mut e = vec![0; len];
        e[i] = 1;
        e
    };
    let lifted: Vec<Exponent> = (0..n)
        .map(|i| {
            let mut e = unit(i, n + 1);
            e[n] = w[i];
            e
        })
        .collect();
    let fl = monomial_substitution(f, &lifted, n + 1)?;
    let mut numer = vec![0; n + 1];
    numer[n] = r;
    let denoms: Vec<Exponent> = (0..n + at_least as usize).map(|i| unit(i, n + 1)).collect();
    let aux = ShortRatFun::new(
        n + 1,
        vec![BasicTerm::new(
            Rational::from_integer(1.into()),
            numer,
            denoms,
        )?],
    )?;
    let avoid: Vec<&Exponent> = fl
        .terms()
        .iter()
        .chain(aux.terms())
        .flat_map(|t| t.denoms.iter())
        .collect();
    let seed = fl.content_seed() ^ (r as u64).rotate_left(7) ^ at_least as u64;
    let lambda = generic_direction(seed, n + 1, avoid.iter().copied(), true)?;
    let h = hadamard_in_direction(&fl, &aux, &lambda)?;
    let drop_t: Vec<Exponent> = (0..=n)
        .map(|i| if i < n { unit(i, n) } else { vec![0; n] })
        .collect();
    substitute_with_limit(&h, &drop_t, n)
}

/// Hadamard product where one operand is a Laurent polynomial (no
/// denominators), computed by pointwise coefficient extraction.
pub fn hadamard_finite(f: &ShortRatFun, g: &ShortRatFun) -> Result<ShortRatFun> {
    let (series, poly) = if g.terms().iter().all(|t| t.denoms.is_empty()) {
        (f, g)
    } else if f.terms().iter().all(|t| t.denoms.is_empty()) {
        (g, f)
    } else {
        return Err(Error::InvalidArgument(
            "neither operand is a polynomial".into(),
        ));
    };
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    let lambda = common_direction(f, g)?;
    let counters: Vec<TermCounter> = series
        .terms()
        .iter()
        .map(|t| TermCounter::new(t, &lambda))
        .collect::<Result<_>>()?;
    let terms: Vec<BasicTerm> = poly
        .simplify()
        .terms()
        .par_iter()
        .filter_map(|t| {
            let c: Rational = counters.iter().map(|k| k.count(&t.numer, &lambda)).sum();
            (!c.is_zero()).then(|| BasicTerm::monomial(c * &t.coeff, t.numer.clone()))
        })
        .collect();
    Ok(ShortRatFun::from_terms_unchecked(f.dim(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::genfun::{expand_in, specialize_all_ones};

    fn interval_brion(p: i64, q: i64) -> ShortRatFun {
        ShortRatFun::new(
            1,
            vec![
                BasicTerm::new(rat(1, 1), vec![p], vec![vec![1]]).unwrap(),
                BasicTerm::new(rat(1, 1), vec![q], vec![vec![-1]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_interval_example() {
        let h = hadamard(&interval_brion(-1, 1), &interval_brion(0, 2)).unwrap();
        let e = expand_in(&h, &[-5], &[5]).unwrap();
        assert_eq!(e, vec![(vec![0], rat(1, 1)), (vec![1], rat(1, 1))]);
        assert_eq!(specialize_all_ones(&h).unwrap(), rat(2, 1));
    }

    #[test]
    fn interval_polynomials() {
        assert!(interval_polynomial(3, 2).is_err());
        let i = interval_polynomial(0, 0).unwrap();
        assert_eq!(
            expand_in(&i, &[-3], &[3]).unwrap(),
            vec![(vec![0], rat(1, 1))]
        );
        assert_eq!(
            specialize_all_ones(&interval_polynomial(2, 5).unwrap()).unwrap(),
            rat(4, 1)
        );
        let h = hadamard(
            &interval_polynomial(0, 3).unwrap(),
            &interval_polynomial(2, 7).unwrap(),
        )
        .unwrap();
        assert_eq!(
            expand_in(&h, &[-2], &[10]).unwrap(),
            expand_in(&interval_polynomial(2, 3).unwrap(), &[-2], &[10]).unwrap()
        );
    }

    #[test]
    fn slices() {
        let f = ShortRatFun::from_points(
            2,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 2]],
        )
        .unwrap();
        let eq = linear_slice(&f, &[1, -1], 0, false).unwrap();
        assert_eq!(specialize_all_ones(&eq).unwrap(), rat(1, 1));
        let ge = linear_slice(&f, &[1, -1], 1, true).unwrap();
        assert_eq!(
            expand_in(&ge, &[0, 0], &[3, 3]).unwrap(),
            vec![(vec![1, 0], rat(1, 1)), (vec![2, 1], rat(1, 1))]
        );
    }

    #[test]
    fn monomial_rule() {
        let f = interval_brion(0, 4);
        let m = ShortRatFun::monomial(vec![3]);
        assert_eq!(
            hadamard(&f, &m).unwrap().terms(),
            ShortRatFun::monomial(vec![3]).terms()
        );
        assert!(hadamard(&f, &ShortRatFun::monomial(vec![7]))
            .unwrap()
            .is_empty());
        assert_eq!(hadamard_finite(&f, &m).unwrap().terms(), m.terms());
    }
}
