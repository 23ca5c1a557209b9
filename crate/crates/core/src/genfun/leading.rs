//! Leading monomials under a matrix term order.
//!
//! For each row `w` of `W` the encoded set is graded by `w`, the top degree
//! `r` is found by binary search with interval polynomials, and the set is
//! cut down to the slice `w·a = r`. After all rows a single point remains.

use num_traits::{One, Zero};

use super::hadamard::{hadamard_in_direction, linear_slice};
use super::univariate::to_quotient;
use super::{
    interval_polynomial, specialize_all_ones, substitute_with_limit, Exponent, ShortRatFun,
    TermOrder,
};
use crate::arith::{to_i64_vec, IntMatrix, Integer, Rational};
use crate::{Error, Result};

fn cardinality(f: &ShortRatFun) -> Result<Rational> {
    specialize_all_ones(f)
}

/// `f(x_i ↦ t^{w_i})`.
fn grade(f: &ShortRatFun, w: &[i64]) -> Result<ShortRatFun> {
    let images: Vec<Exponent> = w.iter().map(|&x| vec![x]).collect();
    substitute_with_limit(f, &images, 1)
}

/// `[ord N, deg N − deg D]` for `g = N / D`; `None` if `g = 0`.
fn degree_range(g: &ShortRatFun) -> Result<Option<(i64, i64)>> {
    let q = to_quotient(g)?;
    let (Some(lo), Some(hi)) = (q.numer.order(), q.numer.degree()) else {
        return Ok(None);
    };
    Ok(Some((lo, hi - q.denominator_degree())))
}

fn slice_count(g: &ShortRatFun, p: i64, q: i64) -> Result<Rational> {
    let i = interval_polynomial(p, q)?;
    cardinality(&hadamard_in_direction(g, &i, &[1])?)
}

/// Largest `r` with a nonzero coefficient in the univariate polynomial `g`.
fn top_degree(g: &ShortRatFun) -> Result<i64> {
    let (mut p, mut q) = degree_range(g)?.ok_or(Error::EmptySet)?;
    if p > q || slice_count(g, p, q)?.is_zero() {
        return Err(Error::EmptySet);
    }
    while p < q {
        let mid = p + (q - p) / 2;
        if slice_count(g, mid + 1, q)?.is_zero() {
            q = mid;
        } else {
            p = mid + 1;
        }
    }
    Ok(p)
}

fn slice(f: &ShortRatFun, w: &[i64], r: i64) -> Result<ShortRatFun> {
    linear_slice(f, w, r, false)
}

fn leading_core(f: &ShortRatFun, ord: &TermOrder) -> Result<Exponent> {
    let mut cur = f.clone();
    let mut r = Vec::with_capacity(f.dim());
    for w in ord.weight_rows() {
        let g = grade(&cur, w)?;
        let top = top_degree(&g)?;
        r.push(Integer::from(top));
        cur = slice(&cur, w, top)?;
    }
    let a = solve_order(ord.matrix(), &r)?;
    if cardinality(&cur)? != Rational::one() {
        return Err(Error::Internal(
            "leading slice is not a single point".into(),
        ));
    }
    Ok(a)
}

fn solve_order(w: &IntMatrix, r: &[Integer]) -> Result<Exponent> {
    if w.rows() == 0 {
        return Ok(Vec::new());
    }
    let rhs: Vec<Rational> = r
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect();
    let a = w.solve_rational(&rhs)?;
    if a.iter().any(|x| !x.is_integer()) {
        return Err(Error::Internal("non-integral leading exponent".into()));
    }
    to_i64_vec(&a.iter().map(|x| x.to_integer()).collect::<Vec<_>>())
}

/// Smallest coordinate value of each variable over the encoded finite set.
fn coordinate_minima(f: &ShortRatFun) -> Result<Exponent> {
    let n = f.dim();
    (0..n)
        .map(|i| {
            let w: Vec<i64> = (0..n).map(|j| (i == j) as i64).collect();
            let g = grade(f, &w)?;
            Ok(degree_range(&g)?.ok_or(Error::EmptySet)?.0)
        })
        .collect()
}

fn check_input(f: &ShortRatFun, ord: &TermOrder) -> Result<()> {
    if ord.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: ord.dim(),
        });
    }
    if cardinality(f)?.is_zero() {
        return Err(Error::EmptySet);
    }
    Ok(())
}

/// Exponent of the `≺_W`-largest monomial of a finite nonempty set in the
/// nonnegative orthant.
pub fn leading_monomial(f: &ShortRatFun, ord: &TermOrder) -> Result<Exponent> {
    check_input(f, ord)?;
    if coordinate_minima(f)?.iter().any(|&m| m < 0) {
        return Err(Error::NegativeExponent);
    }
    leading_core(f, ord)
}

/// Like [`leading_monomial`] but for finite sets anywhere in `Zⁿ`; the set is
/// shifted into the orthant first.
pub(crate) fn leading_monomial_shifted(f: &ShortRatFun, ord: &TermOrder) -> Result<Exponent> {
    check_input(f, ord)?;
    let mins = coordinate_minima(f)?;
    let shift: Exponent = mins.iter().map(|m| -m).collect();
    let a = leading_core(&f.shift(&shift)?, ord)?;
    super::checked_add(&a, &mins)
}

/// The exponent `a` of a function that equals the single monomial `x^a`.
pub fn recover_exponent(f: &ShortRatFun) -> Result<Exponent> {
    let n = f.dim();
    if cardinality(f)? != Rational::one() {
        return Err(Error::NotMonomial);
    }
    let ord = TermOrder::lex(n);
    match leading_monomial(f, &ord) {
        Err(Error::EmptySet) => Err(Error::NotMonomial),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::genfun::BasicTerm;

    #[test]
    fn small_examples() {
        let f = ShortRatFun::from_points(1, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(leading_monomial(&f, &TermOrder::lex(1)).unwrap(), vec![2]);
        let g = ShortRatFun::from_points(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            leading_monomial(&g, &TermOrder::lex(2)).unwrap(),
            vec![1, 0]
        );
        assert_eq!(
            leading_monomial(&ShortRatFun::zero(2), &TermOrder::lex(2)),
            Err(Error::EmptySet)
        );
        let neg = ShortRatFun::from_points(1, vec![vec![-1], vec![2]]).unwrap();
        assert_eq!(
            leading_monomial(&neg, &TermOrder::lex(1)),
            Err(Error::NegativeExponent)
        );
        assert_eq!(
            leading_monomial_shifted(&neg, &TermOrder::lex(1)).unwrap(),
            vec![2]
        );
    }

    #[test]
    fn recover_from_canceling_sum() {
        // x1^3 x2^5 + (x1 - x1) + (1/(1-x2) - 1/(1-x2))
        let t = |c: i64, u: Vec<i64>, d: Vec<Vec<i64>>| BasicTerm::new(rat(c, 1), u, d).unwrap();
        let f = ShortRatFun::new(
            2,
            vec![
                t(1, vec![3, 5], vec![]),
                t(1, vec![1, 0], vec![]),
                t(-1, vec![1, 0], vec![]),
                t(1, vec![0, 0], vec![vec![0, 1]]),
                t(-1, vec![0, 0], vec![vec![0, 1]]),
            ],
        )
        .unwrap();
        assert_eq!(recover_exponent(&f).unwrap(), vec![3, 5]);
        assert_eq!(
            recover_exponent(&ShortRatFun::monomial(vec![0, 0, 0])).unwrap(),
            vec![0, 0, 0]
        );
        let two = ShortRatFun::from_points(1, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(recover_exponent(&two), Err(Error::NotMonomial));
    }
}
