//! Exact integer and rational arithmetic plus the integer linear algebra
//! (Hermite normal form, LLL, short vectors, minors) the rest of the crate
//! is built on.
//!
//! `Integer` and `Rational` are the arbitrary-precision types from
//! `num-bigint` / `num-rational`; rationals are always kept in lowest terms
//! with a positive denominator.

mod hnf;
mod lattice;
mod matrix;

pub use hnf::{echelon, hnf, integer_kernel, solve_integer, Echelon};
pub use lattice::{enumerate_short, lll_reduce, max_subdeterminant, shortest_vector};
pub use matrix::IntMatrix;
pub(crate) use matrix::{rational_echelon, rational_kernel, rref_in_place};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;
pub type IntVector = Vec<Integer>;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_from_int(v: Integer) -> Rational {
    Rational::from_integer(v)
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| Integer::from(x)).collect()
}

/// Converts to `i64`, reporting overflow as an error.
pub fn to_i64(v: &Integer) -> crate::Result<i64> {
    v.to_i64().ok_or(crate::Error::Overflow)
}

pub fn to_i64_vec(v: &[Integer]) -> crate::Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

pub fn gcd_slice(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[Integer]) -> IntVector {
    let g = gcd_slice(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Integer], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rational::from_integer(x.clone()))
        .fold(Rational::zero(), |acc, v| acc + v)
}

pub fn floor_rat(q: &Rational) -> Integer {
    q.numer().div_floor(q.denom())
}

pub fn ceil_rat(q: &Rational) -> Integer {
    -((-q.numer()).div_floor(q.denom()))
}

/// Scales a rational vector by the lcm of its denominators and returns the
/// primitive integer vector pointing the same way.
pub fn clear_denominators(v: &[Rational]) -> IntVector {
    let l = v.iter().fold(Integer::one(), |l, q| l.lcm(q.denom()));
    let scaled: IntVector = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    primitive(&scaled)
}

pub fn is_zero_vec(v: &[Integer]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sign(v: &Integer) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// `n!` as an integer.
pub fn factorial(n: usize) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * Integer::from(k))
}

pub fn binomial(n: &Integer, k: usize) -> Integer {
    // n may be any integer; generalized binomial n(n-1)...(n-k+1)/k!
    let mut num = Integer::one();
    for i in 0..k {
        num *= n - Integer::from(i);
    }
    num / factorial(k)
}
