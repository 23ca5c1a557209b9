//! Univariate Laurent polynomials and exact summation of univariate short
//! rational functions into a single quotient `N(t) / Π (1 − t^c)^e`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{BasicTerm, ShortRatFun};
use crate::arith::{binomial, factorial, Integer, Rational};
use crate::{Error, Result};

/// `Σ_i coeffs[i] · t^{low + i}` with rational coefficients. The zero
/// polynomial has no coefficients; otherwise both ends are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// `(1 − t^c)^k` for `c > 0`.
    pub fn one_minus_power(c: i64, k: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); (c as usize) * (k as usize) + 1];
        let kk = Integer::from(k);
        for j in 0..=k as usize {
            let b = binomial(&kk, j);
            coeffs[j * c as usize] = Rational::from_integer(if j % 2 == 0 { b } else { -b });
        }
        Self::from_coeffs(0, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.low {
            return Rational::zero();
        }
        self.coeffs
            .get((e - self.low) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        let coeffs = (low..=high)
            .map(|e| self.coeff(e) + other.coeff(e))
            .collect();
        Self::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.low + other.low, coeffs)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn shift(&self, s: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + s,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `self / (1 − t^c)` for `c > 0` when the division is exact.
    pub fn div_one_minus_power(&self, c: i64) -> Option<Self> {
        assert!(c > 0);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let c = c as usize;
        if n <= c {
            return None;
        }
        // q_i = a_i + q_{i-c}
        let mut q = vec![Rational::zero(); n - c];
        for i in 0..n - c {
            let mut v = self.coeffs[i].clone();
            if i >= c {
                v += &q[i - c];
            }
            q[i] = v;
        }
        // remaining top coefficients must equal -q_{i-c}
        for i in n - c..n {
            let expect = if i >= c && i - c < q.len() {
                -q[i - c].clone()
            } else {
                Rational::zero()
            };
            let mut have = self.coeffs[i].clone();
            if i < q.len() {
                have -= &q[i];
            }
            if have != expect {
                return None;
            }
        }
        Some(Self::from_coeffs(self.low, q))
    }

    pub fn evaluate(&self, t: &Rational) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if t.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        let p = num_traits::pow(t.clone(), self.low.unsigned_abs() as usize);
        Some(if self.low < 0 { acc / p } else { acc * p })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// A univariate rational function `numer / Π_c (1 − t^c)^{e_c}` with all
/// `c > 0`, keyed by `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub numer: LaurentPoly,
    pub denom: BTreeMap<i64, u32>,
}

impl Quotient {
    pub fn denominator(&self) -> LaurentPoly {
        self.denom.iter().fold(
            LaurentPoly::monomial(Rational::one(), 0),
            |acc, (&c, &e)| acc.mul(&LaurentPoly::one_minus_power(c, e)),
        )
    }

    pub fn denominator_degree(&self) -> i64 {
        self.denom.iter().map(|(&c, &e)| c * e as i64).sum()
    }

    /// Cancels factors `(1 − t^c)` from the numerator and rewrites
    /// `(1 − t^c)` as `(1 − t)` whenever `[c] = 1 + … + t^{c−1}` divides the
    /// numerator.
    pub fn reduce(mut self) -> Self {
        if self.numer.is_zero() {
            self.denom.clear();
            return self;
        }
        let keys: Vec<i64> = self.denom.keys().rev().copied().collect();
        for c in keys {
            while self.denom.get(&c).copied().unwrap_or(0) > 0 {
                if let Some(q) = self.numer.div_one_minus_power(c) {
                    self.numer = q;
                    dec(&mut self.denom, c);
                    continue;
                }
                if c > 1 {
                    let lifted = self.numer.mul(&LaurentPoly::one_minus_power(1, 1));
                    if let Some(q) = lifted.div_one_minus_power(c) {
                        self.numer = q;
                        dec(&mut self.denom, c);
                        *self.denom.entry(1).or_insert(0) += 1;
                        continue;
                    }
                }
                break;
            }
        }
        // factors of (1 - t) may now cancel
        while self.denom.get(&1).copied().unwrap_or(0) > 0 {
            match self.numer.div_one_minus_power(1) {
                Some(q) => {
                    self.numer = q;
                    dec(&mut self.denom, 1);
                }
                None => break,
            }
        }
        self
    }

    /// The first `count` Laurent coefficients starting at exponent `from`.
    pub fn expand(&self, from: i64, count: usize) -> Vec<Rational> {
        if count == 0 {
            return Vec::new();
        }
        let to = from + count as i64 - 1;
        let start = self.numer.order().unwrap_or(from).min(from);
        let len = (to - start + 1).max(0) as usize;
        // series of 1/denominator = product of geometric-type series
        let mut series = vec![Rational::zero(); len];
        if len == 0 {
            return vec![Rational::zero(); count];
        }
        for (e, c) in self.numer.iter() {
            let idx = (e - start) as usize;
            if idx < len {
                series[idx] += c;
            }
        }
        for (&c, &e) in &self.denom {
            for _ in 0..e {
                // divide by (1 - t^c): s_i += s_{i-c}
                for i in c as usize..len {
                    let prev = series[i - c as usize].clone();
                    series[i] += prev;
                }
            }
        }
        ((from - start) as usize..len)
            .map(|i| series[i].clone())
            .collect()
    }
}

fn dec(m: &mut BTreeMap<i64, u32>, c: i64) {
    if let Some(e) = m.get_mut(&c) {
        *e -= 1;
        if *e == 0 {
            m.remove(&c);
        }
    }
}

/// Brings a one-variable short rational function over the common
/// denominator `Π_c (1 − t^c)^{max e_c}` with all `c > 0`.
pub fn to_quotient(f: &ShortRatFun) -> Result<Quotient> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: f.dim(),
        });
    }
    let normalized: Vec<BasicTerm> = f
        .terms()
        .iter()
        .map(|t| super::normalize_signs(t, &[1]))
        .collect::<Result<_>>()?;
    let mut denom: BTreeMap<i64, u32> = BTreeMap::new();
    let mut per_term: Vec<BTreeMap<i64, u32>> = Vec::with_capacity(normalized.len());
    for t in &normalized {
        let mut m = BTreeMap::new();
        for c in &t.denoms {
            *m.entry(c[0]).or_insert(0u32) += 1;
        }
        for (&c, &e) in &m {
            let slot = denom.entry(c).or_insert(0);
            *slot = (*slot).max(e);
        }
        per_term.push(m);
    }
    use rayon::prelude::*;
    let numer = normalized
        .par_iter()
        .zip(per_term.par_iter())
        .map(|(t, m)| {
            let mut p = LaurentPoly::monomial(t.coeff.clone(), t.numer[0]);
            for (&c, &e) in &denom {
                let k = e - m.get(&c).copied().unwrap_or(0);
                if k > 0 {
                    p = p.mul(&LaurentPoly::one_minus_power(c, k));
                }
            }
            p
        })
        .reduce(LaurentPoly::zero, |a, b| a.add(&b));
    Ok(Quotient { numer, denom })
}

/// Ring operations used by the specialization recurrence, so that it can run
/// in `i128` and fall back to big integers on overflow.
trait Ring: Clone + Zero + One {
    fn from_big(x: &Integer) -> Option<Self>;
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()>;
    fn checked_product(a: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> Integer;
}

impl Ring for i128 {
    fn from_big(x: &Integer) -> Option<Self> {
        num_traits::ToPrimitive::to_i128(x)
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc = acc.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    fn checked_product(a: &Self, b: &Self) -> Option<Self> {
        a.checked_mul(*b)
    }
    fn to_big(&self) -> Integer {
        Integer::from(*self)
    }
}

impl Ring for Integer {
    fn from_big(x: &Integer) -> Option<Self> {
        Some(x.clone())
    }
    fn mul_add(acc: &mut Self, a: &Self, b: &Self) -> Option<()> {
        *acc += a * b;
        Some(())
    }
    fn checked_product(a: &Self, b: &Self) -> Option<Self> {
        Some(a * b)
    }
    fn to_big(&self) -> Integer {
        self.clone()
    }
}

/// `V_M = M! · [λ^M] Π_j (1 − y_j)^{k+1} / (1 − y_j e^{λ b_j})` for
/// `M = 0..=k`, as dense polynomials in `t` with `y_j = t^{d_j}`.
fn scaled_products<T: Ring>(
    active: &[(i64, Integer)],
    k: usize,
    euler: &[Vec<Integer>],
) -> Option<Vec<Vec<T>>> {
    let binom: Vec<Vec<T>> = (0..=k)
        .map(|m| {
            (0..=m)
                .map(|j| T::from_big(&binomial(&Integer::from(m), j)))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    let mut v: Vec<Vec<T>> = vec![Vec::new(); k + 1];
    v[0] = vec![T::one()];
    for (d, b) in active {
        let d = *d as usize;
        // q_m(y) = b^m · P_m(y) · (1 − y)^{k−m}, coefficients in powers of y
        let mut qs: Vec<Vec<T>> = Vec::with_capacity(k + 1);
        let mut bpow = Integer::one();
        for m in 0..=k {
            let mut q = vec![Integer::zero(); k + 1];
            for (i, pc) in euler[m].iter().enumerate() {
                if pc.is_zero() {
                    continue;
                }
                for j in 0..=k - m {
                    let bj = binomial(&Integer::from(k - m), j);
                    let term = pc * &bj * &bpow;
                    if j % 2 == 0 {
                        q[i + j] += term;
                    } else {
                        q[i + j] -= term;
                    }
                }
            }
            qs.push(q.iter().map(T::from_big).collect::<Option<_>>()?);
            bpow *= b;
            if b.is_zero() {
                // higher orders vanish
                for _ in m + 1..=k {
                    qs.push(vec![T::zero(); k + 1]);
                }
                break;
            }
        }
        let mut next: Vec<Vec<T>> = vec![Vec::new(); k + 1];
        for big_m in 0..=k {
            let mut acc: Vec<T> = Vec::new();
            for m in 0..=big_m {
                let src = &v[big_m - m];
                if src.is_empty() || qs[m].iter().all(Zero::is_zero) {
                    continue;
                }
                let len = src.len() + d * k;
                if acc.len() < len {
                    acc.resize(len, T::zero());
                }
                for (i, qc) in qs[m].iter().enumerate() {
                    if qc.is_zero() {
                        continue;
                    }
                    let w = T::checked_product(qc, &binom[big_m][m])?;
                    for (e, sc) in src.iter().enumerate() {
                        if !sc.is_zero() {
                            T::mul_add(&mut acc[e + i * d], sc, &w)?;
                        }
                    }
                }
            }
            next[big_m] = acc;
        }
        v = next;
    }
    Some(v)
}

fn big_products(active: &[(i64, Integer)], k: usize, euler: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    match scaled_products::<i128>(active, k, euler) {
        Some(v) => v
            .into_iter()
            .map(|p| p.iter().map(Ring::to_big).collect())
            .collect(),
        None => scaled_products::<Integer>(active, k, euler)
            .expect("big integer arithmetic does not overflow"),
    }
}

/// Numerator and denominator of one term under `x ↦ t^w`, taking the
/// constant coefficient along the line `x = t^w e^{λ μ}`.
fn specialize_term(
    t: &BasicTerm,
    w: &[i64],
    mu: &[i64],
    bern: &[Rational],
    euler: &[Vec<Integer>],
) -> Result<(BTreeMap<i64, u32>, LaurentPoly)> {
    let degree = |e: &[i64]| -> Result<i64> {
        e.iter().zip(w).try_fold(0i64, |acc, (x, y)| {
            x.checked_mul(*y)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)
        })
    };
    let mut low = degree(&t.numer)?;
    let mut a = super::dot_i64(mu, &t.numer);
    let mut coeff = t.coeff.clone();
    let mut poles = Vec::new();
    let mut active: Vec<(i64, Integer)> = Vec::new();
    for g in &t.denoms {
        let d = degree(g)?;
        let b = super::dot_i64(mu, g);
        if d == 0 {
            if b.is_zero() {
                return Err(Error::Internal(
                    "limit direction is orthogonal to a collapsed generator".into(),
                ));
            }
            poles.push(b);
        } else if d < 0 {
            // 1/(1 − y e^{λb}) = −y^{-1} e^{−λb} / (1 − y^{-1} e^{−λb})
            coeff = -coeff;
            low = low.checked_sub(d).ok_or(Error::Overflow)?;
            a -= &b;
            active.push((-d, -b));
        } else {
            active.push((d, b));
        }
    }
    let k = poles.len();
    let mut r = super::subst::exp_series(&a, k);
    for b in &poles {
        r = super::subst::series_mul(&r, &super::subst::pole_factor_series(b, k, bern), k);
    }
    let v = big_products(&active, k, euler);
    // Σ_{m0} r_{m0} / (k − m0)! · V_{k − m0}, over a common denominator
    let weights: Vec<Rational> = (0..=k)
        .map(|m0| &r[m0] * &coeff / Rational::from_integer(factorial(k - m0)))
        .collect();
    let common = weights.iter().fold(Integer::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    let len = v.iter().map(Vec::len).max().unwrap_or(0);
    let mut numer = vec![Integer::zero(); len];
    for (m0, wt) in weights.iter().enumerate() {
        if wt.is_zero() {
            continue;
        }
        let scale = wt.numer() * (&common / wt.denom());
        for (x, c) in numer.iter_mut().zip(&v[k - m0]) {
            if !c.is_zero() {
                *x += c * &scale;
            }
        }
    }
    let coeffs = numer
        .into_iter()
        .map(|x| Rational::new(x, common.clone()))
        .collect();
    let mut denom = BTreeMap::new();
    for (d, _) in &active {
        *denom.entry(*d).or_insert(0u32) += k as u32 + 1;
    }
    Ok((denom, LaurentPoly::from_coeffs(low, coeffs)))
}

impl LaurentPoly {
    /// `self += other` in place.
    fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        if low < self.low {
            let pad = (self.low - low) as usize;
            self.coeffs
                .splice(0..0, std::iter::repeat(Rational::zero()).take(pad));
            self.low = low;
        }
        self.coeffs
            .resize((high - low + 1) as usize, Rational::zero());
        let off = (other.low - self.low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i] += c;
        }
        self.trim();
    }

    /// `self · (1 − t^c)^k` for `c > 0`.
    fn mul_one_minus_power(&self, c: i64, k: u32) -> Self {
        let mut out = self.clone();
        let c = c as usize;
        for _ in 0..k {
            let n = out.coeffs.len();
            out.coeffs.resize(n + c, Rational::zero());
            for i in (c..n + c).rev() {
                let prev = out.coeffs[i - c].clone();
                out.coeffs[i] -= prev;
            }
        }
        out.trim();
        out
    }
}

/// `f(t^{w_1}, …, t^{w_n})` as a single reduced quotient. Denominators
/// sent to `1 − t^0` are resolved by the limit along a generic line, so
/// the result is correct whenever `f` is regular along the substitution.
pub fn specialize_univariate(f: &ShortRatFun, w: &[i64]) -> Result<Quotient> {
    if w.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: w.len(),
        });
    }
    let collapsed: Vec<Vec<i64>> = f
        .terms()
        .iter()
        .flat_map(|t| t.denoms.iter())
        .filter(|g| super::dot_i64(g, w).is_zero())
        .cloned()
        .collect();
    let mu = if collapsed.is_empty() {
        vec![0; f.dim()]
    } else {
        super::generic_direction(f.content_seed() ^ 0x5b57, f.dim(), collapsed.iter(), false)?
    };
    let kmax = f.max_denominators();
    let bern = super::subst::bernoulli(kmax + 1);
    let euler = super::subst::eulerian_numerators(kmax + 1);
    use rayon::prelude::*;
    let groups: BTreeMap<Vec<(i64, u32)>, LaurentPoly> = f
        .terms()
        .par_iter()
        .map(|t| specialize_term(t, w, &mu, &bern, &euler))
        .try_fold(
            BTreeMap::new,
            |mut acc: BTreeMap<Vec<(i64, u32)>, LaurentPoly>, r| {
                let (denom, numer) = r?;
                acc.entry(denom.into_iter().collect())
                    .or_default()
                    .add_assign(&numer);
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (key, p) in b {
                a.entry(key).or_default().add_assign(&p);
            }
            Ok(a)
        })?;
    let parts: Vec<Quotient> = groups
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(key, numer)| {
            Quotient {
                numer,
                denom: key.into_iter().collect(),
            }
            .reduce()
        })
        .collect();
    let mut denom: BTreeMap<i64, u32> = BTreeMap::new();
    for q in &parts {
        for (&c, &e) in &q.denom {
            let slot = denom.entry(c).or_insert(0);
            *slot = (*slot).max(e);
        }
    }
    let mut numer = LaurentPoly::zero();
    for q in &parts {
        let mut p = q.numer.clone();
        for (&c, &e) in &denom {
            let have = q.denom.get(&c).copied().unwrap_or(0);
            if e > have {
                p = p.mul_one_minus_power(c, e - have);
            }
        }
        numer.add_assign(&p);
    }
    Ok(Quotient { numer, denom }.reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(low, c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = poly(-1, &[1, 2]);
        let b = poly(0, &[1, -1]);
        assert_eq!(a.mul(&b), poly(-1, &[1, 1, -2]));
        assert_eq!(a.sub(&a), LaurentPoly::zero());
        assert_eq!(a.degree(), Some(0));
        assert_eq!(a.order(), Some(-1));
        assert_eq!(a.evaluate(&rat(2, 1)), Some(rat(5, 2)));
    }

    #[test]
    fn exact_division() {
        let p = poly(0, &[1, 0, 0, -1]);
        assert_eq!(p.div_one_minus_power(3), Some(poly(0, &[1])));
        assert_eq!(p.div_one_minus_power(1), Some(poly(0, &[1, 1, 1])));
        assert_eq!(p.div_one_minus_power(2), None);
        assert_eq!(poly(2, &[1]).div_one_minus_power(1), None);
    }

    #[test]
    fn quotient_of_segment() {
        let f = ShortRatFun::new(
            1,
            vec![
                BasicTerm::new(rat(1, 1), vec![0], vec![vec![1]]).unwrap(),
                BasicTerm::new(rat(1, 1), vec![3], vec![vec![-1]]).unwrap(),
            ],
        )
        .unwrap();
        let q = to_quotient(&f).unwrap().reduce();
        assert!(q.denom.is_empty());
        assert_eq!(q.numer, poly(0, &[1, 1, 1, 1]));
    }

    #[test]
    fn reduce_to_one_minus_t() {
        // (1 + t) / (1 - t^2) = 1 / (1 - t)
        let q = Quotient {
            numer: poly(0, &[1, 1]),
            denom: BTreeMap::from([(2, 1)]),
        }
        .reduce();
        assert_eq!(q.numer, poly(0, &[1]));
        assert_eq!(q.denom, BTreeMap::from([(1, 1)]));
        let e = q.expand(0, 4);
        assert_eq!(e, vec![rat(1, 1); 4]);
    }

    #[test]
    fn univariate_specialization_matches_limit() {
        use crate::genfun::substitute_with_limit;
        use crate::polytope::{brion_genfun, Polyhedron};
        let polys = [
            Polyhedron::from_i64(&[[-1, 0], [0, -1], [2, 3]], &[0, 0, 12]).unwrap(),
            Polyhedron::from_i64(
                &[[-1, 0, 0], [0, -1, 0], [0, 0, -1], [1, 2, 1]],
                &[0, 0, 0, 4],
            )
            .unwrap(),
        ];
        for p in &polys {
            let f = brion_genfun(p).unwrap();
            let n = f.dim();
            for w in [vec![1; n], (0..n as i64).collect::<Vec<_>>(), vec![0; n]] {
                let images: Vec<Vec<i64>> = w.iter().map(|&x| vec![x]).collect();
                let old = to_quotient(&substitute_with_limit(&f, &images, 1).unwrap())
                    .unwrap()
                    .reduce();
                let new = specialize_univariate(&f, &w).unwrap();
                assert_eq!(old.expand(0, 12), new.expand(0, 12), "weights {w:?}");
                assert_eq!(new, old);
            }
        }
    }
}
