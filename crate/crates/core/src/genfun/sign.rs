use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{checked_add, checked_neg, dot_i64, BasicTerm, Exponent, ShortRatFun};
use crate::{Error, Result};

/// Rewrites every factor `1/(1 − x^c)` with `λ·c < 0` as
/// `−x^{−c}/(1 − x^{−c})`, so that afterwards every denominator exponent
/// satisfies `λ·c > 0` and the term expands as a series in the `λ` direction.
pub fn normalize_signs(t: &BasicTerm, direction: &[i64]) -> Result<BasicTerm> {
    if direction.len() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: direction.len(),
        });
    }
    let mut out = t.clone();
    for c in out.denoms.iter_mut() {
        let s = dot_i64(direction, c);
        if s.is_zero() {
            return Err(Error::NonGenericDirection);
        }
        if s.is_negative() {
            out.numer = checked_add(&out.numer, &checked_neg(c)?)?;
            *c = checked_neg(c)?;
            out.coeff = -out.coeff;
        }
    }
    Ok(out)
}

pub fn normalize_signs_fn(f: &ShortRatFun, direction: &[i64]) -> Result<ShortRatFun> {
    let terms = f
        .terms()
        .iter()
        .map(|t| normalize_signs(t, direction))
        .collect::<Result<_>>()?;
    Ok(ShortRatFun::from_terms_unchecked(f.dim(), terms))
}

/// A vector with nonzero inner product against every vector in `avoid`,
/// drawn from a fixed pseudorandom stream determined by `seed`. With
/// `positive`, all entries are strictly positive.
pub fn generic_direction<'a, I>(seed: u64, dim: usize, avoid: I, positive: bool) -> Result<Exponent>
where
    I: IntoIterator<Item = &'a Exponent> + Clone,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..48u32 {
        let range: i64 = 8i64 << (attempt / 4).min(40);
        let v: Exponent = (0..dim)
            .map(|_| {
                if positive {
                    rng.gen_range(1..=range)
                } else {
                    let mut x = 0;
                    while x == 0 {
                        x = rng.gen_range(-range..=range);
                    }
                    x
                }
            })
            .collect();
        if avoid.clone().into_iter().all(|c| !dot_i64(&v, c).is_zero()) {
            return Ok(v);
        }
    }
    Err(Error::NonGenericDirection)
}

/// A generic direction for all denominators of `f`.
pub(crate) fn direction_for(f: &ShortRatFun, salt: u64) -> Result<Exponent> {
    let avoid: Vec<&Exponent> = f.terms().iter().flat_map(|t| t.denoms.iter()).collect();
    generic_direction(
        f.content_seed() ^ salt,
        f.dim(),
        avoid.iter().copied(),
        false,
    )
}

#[allow(dead_code)]
pub(crate) fn is_normalized(f: &ShortRatFun, direction: &[i64]) -> bool {
    f.terms().iter().all(|t| {
        t.denoms
            .iter()
            .all(|c| dot_i64(direction, c) >= num_bigint::BigInt::one())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn flip_example() {
        // z^{-1}/(1-z) with direction (-1)
        let t = BasicTerm::new(rat(1, 1), vec![-1], vec![vec![1]]).unwrap();
        let n = normalize_signs(&t, &[-1]).unwrap();
        assert_eq!(
            n,
            BasicTerm::new(rat(-1, 1), vec![-2], vec![vec![-1]]).unwrap()
        );
    }

    #[test]
    fn already_normalized_unchanged() {
        let t = BasicTerm::new(rat(3, 2), vec![4, 1], vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(normalize_signs(&t, &[1, 1]).unwrap(), t);
    }

    #[test]
    fn double_flip_in_two_variables() {
        let t = BasicTerm::new(rat(1, 1), vec![0, 0], vec![vec![1, 0], vec![0, 1]]).unwrap();
        let n = normalize_signs(&t, &[-1, -1]).unwrap();
        assert_eq!(
            n,
            BasicTerm::new(rat(1, 1), vec![-1, -1], vec![vec![-1, 0], vec![0, -1]]).unwrap()
        );
        // equal as rational functions
        for p in [
            [rat(1, 3), rat(2, 5)],
            [rat(-4, 3), rat(7, 2)],
            [rat(5, 1), rat(-1, 9)],
        ] {
            assert_eq!(t.evaluate(&p), n.evaluate(&p));
        }
    }

    #[test]
    fn orthogonal_direction_is_error() {
        let t = BasicTerm::new(rat(1, 1), vec![0, 0], vec![vec![1, -1]]).unwrap();
        assert_eq!(
            normalize_signs(&t, &[1, 1]),
            Err(Error::NonGenericDirection)
        );
    }

    #[test]
    fn generic_directions_avoid_vectors() {
        let avoid = vec![vec![1, -1], vec![2, -2], vec![0, 1]];
        let v = generic_direction(7, 2, avoid.iter(), false).unwrap();
        assert!(avoid.iter().all(|c| dot_i64(&v, c) != 0.into()));
        let p = generic_direction(7, 3, std::iter::empty::<&Exponent>(), true).unwrap();
        assert!(p.iter().all(|&x| x > 0));
    }
}
