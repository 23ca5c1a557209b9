//! Short rational generating functions.
//!
//! A [`ShortRatFun`] is a finite sum of [`BasicTerm`]s
//! `γ · x^u / Π_j (1 − x^{c_j})` over `n` variables. Exponent vectors are
//! stored as `i64` and every arithmetic step on them is overflow-checked.

pub(crate) mod expand;
mod hadamard;
mod leading;
mod sign;
mod subst;
mod text;
pub(crate) mod univariate;

pub use expand::{coefficient, coefficient_in_direction, expand, expand_in, expand_in_direction};
pub use hadamard::{
    hadamard, hadamard_finite, hadamard_in_direction, interval_polynomial, linear_slice,
};
pub(crate) use leading::leading_monomial_shifted;
pub use leading::{leading_monomial, recover_exponent};
pub use sign::{generic_direction, normalize_signs, normalize_signs_fn};
pub use subst::{monomial_substitution, specialize_all_ones, substitute_with_limit};
pub use text::{format_short_rat_fun, parse_short_rat_fun};
pub use univariate::{specialize_univariate, to_quotient, LaurentPoly, Quotient};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{IntMatrix, Integer, Rational};
use crate::{Error, Result};

pub type Exponent = Vec<i64>;

pub(crate) fn checked_add(a: &[i64], b: &[i64]) -> Result<Exponent> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn checked_neg(a: &[i64]) -> Result<Exponent> {
    a.iter()
        .map(|x| x.checked_neg().ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn dot_i64(a: &[i64], b: &[i64]) -> Integer {
    a.iter()
        .zip(b)
        .map(|(x, y)| Integer::from(*x) * Integer::from(*y))
        .sum()
}

/// `γ · x^numer / Π (1 − x^{c})` for `c` in `denoms`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicTerm {
    pub coeff: Rational,
    pub numer: Exponent,
    pub denoms: Vec<Exponent>,
}

impl BasicTerm {
    pub fn new(coeff: Rational, numer: Exponent, denoms: Vec<Exponent>) -> Result<Self> {
        let n = numer.len();
        for c in &denoms {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
            if c.iter().all(|&x| x == 0) {
                return Err(Error::InvalidArgument("zero denominator exponent".into()));
            }
        }
        Ok(Self {
            coeff,
            numer,
            denoms,
        })
    }

    pub fn monomial(coeff: Rational, numer: Exponent) -> Self {
        Self {
            coeff,
            numer,
            denoms: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.numer.len()
    }

    /// Key used to merge terms with identical rational-function shape.
    fn shape_key(&self) -> (Exponent, Vec<Exponent>) {
        let mut d = self.denoms.clone();
        d.sort();
        (self.numer.clone(), d)
    }

    /// Exact value at a point; `None` at a pole.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let mono = |e: &[i64]| -> Option<Rational> {
            let mut v = Rational::one();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() {
                    return None;
                }
                let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
                v *= if k < 0 { p.recip() } else { p };
            }
            Some(v)
        };
        let mut val = &self.coeff * mono(&self.numer)?;
        for c in &self.denoms {
            let d = Rational::one() - mono(c)?;
            if d.is_zero() {
                return None;
            }
            val /= d;
        }
        Some(val)
    }
}

/// A signed, weighted sum of basic terms in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortRatFun {
    dim: usize,
    terms: Vec<BasicTerm>,
}

impl ShortRatFun {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn new(dim: usize, terms: Vec<BasicTerm>) -> Result<Self> {
        for t in &terms {
            if t.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: t.dim(),
                });
            }
        }
        Ok(Self { dim, terms })
    }

    pub(crate) fn from_terms_unchecked(dim: usize, terms: Vec<BasicTerm>) -> Self {
        debug_assert!(terms.iter().all(|t| t.dim() == dim));
        Self { dim, terms }
    }

    pub fn monomial(exp: Exponent) -> Self {
        Self {
            dim: exp.len(),
            terms: vec![BasicTerm::monomial(Rational::one(), exp)],
        }
    }

    /// Naive encoding of a finite point set as a sum of monomials.
    pub fn from_points<I: IntoIterator<Item = Exponent>>(dim: usize, points: I) -> Result<Self> {
        let terms: Vec<BasicTerm> = points
            .into_iter()
            .map(|p| BasicTerm::monomial(Rational::one(), p))
            .collect();
        Self::new(dim, terms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[BasicTerm] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<BasicTerm> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term-list concatenation.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self {
            dim: self.dim,
            terms,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| BasicTerm {
                coeff: &t.coeff * k,
                ..t.clone()
            })
            .collect();
        Self {
            dim: self.dim,
            terms,
        }
    }

    /// Multiplication by the monomial `x^s`.
    pub fn shift(&self, s: &[i64]) -> Result<Self> {
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(BasicTerm {
                    numer: checked_add(&t.numer, s)?,
                    ..t.clone()
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            dim: self.dim,
            terms,
        })
    }

    /// Merges terms with identical numerator and denominator multiset and
    /// drops zero coefficients. Output order is canonical.
    pub fn simplify(&self) -> Self {
        let mut acc: BTreeMap<(Exponent, Vec<Exponent>), Rational> = BTreeMap::new();
        for t in &self.terms {
            *acc.entry(t.shape_key()).or_insert_with(Rational::zero) += &t.coeff;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((numer, denoms), coeff)| BasicTerm {
                coeff,
                numer,
                denoms,
            })
            .collect();
        Self {
            dim: self.dim,
            terms,
        }
    }

    /// Exact value at a point; `None` if the point is a pole of some term.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        assert_eq!(point.len(), self.dim);
        let mut s = Rational::zero();
        for t in &self.terms {
            s += t.evaluate(point)?;
        }
        Some(s)
    }

    pub fn max_denominators(&self) -> usize {
        self.terms.iter().map(|t| t.denoms.len()).max().unwrap_or(0)
    }

    /// Deterministic seed derived from the content, used for generic vectors.
    pub fn content_seed(&self) -> u64 {
        let mut h = 0x9E37_79B9_7F4A_7C15u64 ^ self.dim as u64;
        let mut mix = |v: i64| {
            h ^= v as u64;
            h = h.wrapping_mul(0x100_0000_01B3).rotate_left(29);
        };
        for t in &self.terms {
            mix(t.denoms.len() as i64);
            t.numer.iter().for_each(|&x| mix(x));
            for c in &t.denoms {
                c.iter().for_each(|&x| mix(x));
            }
        }
        h
    }
}

/// A term order given by a nonsingular integer matrix `W`:
/// `x^α ≺ x^β` iff `W·α` is lexicographically smaller than `W·β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    w: IntMatrix,
    rows: Vec<Exponent>,
}

impl TermOrder {
    pub fn new(w: IntMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::InvalidArgument(
                "term order matrix must be square".into(),
            ));
        }
        if w.det()?.is_zero() {
            return Err(Error::InvalidArgument(
                "term order matrix must be nonsingular".into(),
            ));
        }
        let rows = w
            .row_vecs()
            .iter()
            .map(|r| crate::arith::to_i64_vec(r))
            .collect::<Result<_>>()?;
        Ok(Self { w, rows })
    }

    /// Whether the order is a well-ordering of `Nⁿ` with `1` smallest: the
    /// first nonzero entry of every column is positive.
    pub fn is_term_order(&self) -> bool {
        (0..self.w.cols()).all(|j| {
            self.rows
                .iter()
                .map(|r| r[j])
                .find(|&x| x != 0)
                .is_some_and(|x| x > 0)
        })
    }

    pub fn lex(n: usize) -> Self {
        Self::new(IntMatrix::identity(n)).expect("identity is nonsingular")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.w
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn weight_rows(&self) -> &[Exponent] {
        &self.rows
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        for r in &self.rows {
            match dot_i64(r, a).cmp(&dot_i64(r, b)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// `x^a ≺ x^b`.
    pub fn less(&self, a: &[i64], b: &[i64]) -> bool {
        self.cmp(a, b) == Ordering::Less
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn add_and_simplify() {
        let f = ShortRatFun::from_points(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let z = ShortRatFun::zero(2);
        assert_eq!(f.add(&z).unwrap(), f);
        let g = f.add(&f.neg()).unwrap();
        assert!(g.simplify().is_empty());
        let p = [rat(2, 3), rat(5, 7)];
        assert_eq!(g.evaluate(&p).unwrap(), Rational::zero());
        assert!(f.add(&ShortRatFun::zero(3)).is_err());
    }

    #[test]
    fn term_order_compare() {
        let lex = TermOrder::lex(2);
        assert!(lex.less(&[0, 5], &[1, 0]));
        let grevlex = TermOrder::new(IntMatrix::from_i64(&[[1, 1], [0, -1]])).unwrap();
        assert!(grevlex.less(&[1, 0], &[0, 2]));
        assert!(grevlex.less(&[0, 1], &[1, 0]));
        assert!(TermOrder::new(IntMatrix::from_i64(&[[1, 1], [1, 1]])).is_err());
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(BasicTerm::new(rat(1, 1), vec![0], vec![vec![0]]).is_err());
    }
}
