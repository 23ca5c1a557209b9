use itertools::Itertools;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{floor_rat, rat, IntMatrix, IntVector, Integer, Rational};
use crate::{Error, Result};

struct GramSchmidt {
    mu: Vec<Vec<Rational>>,
    /// Squared norms of the orthogonalized vectors.
    norms: Vec<Rational>,
}

fn gram_schmidt(b: &[IntVector]) -> GramSchmidt {
    let n = b.len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<Rational> = b[i]
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            if norms[j] == Rational::zero() {
                continue;
            }
            let num: Rational = b[i]
                .iter()
                .zip(&star[j])
                .map(|(x, s)| s * Rational::from_integer(x.clone()))
                .fold(Rational::zero(), |a, t| a + t);
            let m = num / &norms[j];
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &m * sk;
            }
            mu[i][j] = m;
        }
        let nn = v.iter().fold(Rational::zero(), |a, x| a + x * x);
        norms.push(nn);
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

fn norm2(v: &[Integer]) -> Integer {
    v.iter().map(|x| x * x).sum()
}

fn round_rat(q: &Rational) -> Integer {
    floor_rat(&(q + rat(1, 2)))
}

/// LLL reduction of the rows of `b` with Lovász parameter `delta ∈ (1/4, 1)`.
pub fn lll_reduce(b: &IntMatrix, delta: &Rational) -> Result<IntMatrix> {
    if !(delta > &rat(1, 4) && delta < &Rational::one()) {
        return Err(Error::InvalidArgument(format!(
            "LLL delta {delta} not in (1/4, 1)"
        )));
    }
    if b.rank() < b.rows() {
        return Err(Error::DependentRows);
    }
    let n = b.rows();
    let mut basis = b.row_vecs();
    if n <= 1 {
        return Ok(b.clone());
    }
    let mut k = 1;
    while k < n {
        let mut gs = gram_schmidt(&basis);
        for j in (0..k).rev() {
            let q = round_rat(&gs.mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let bj = basis[j].clone();
            for (x, y) in basis[k].iter_mut().zip(&bj) {
                *x -= &q * y;
            }
            let qr = Rational::from_integer(q);
            for i in 0..j {
                let t = &qr * &gs.mu[j][i];
                gs.mu[k][i] -= t;
            }
            gs.mu[k][j] -= &qr;
        }
        let lhs = gs.norms[k].clone();
        let m = &gs.mu[k][k - 1];
        let rhs = (delta - m * m) * &gs.norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    IntMatrix::from_rows(basis, b.cols())
}

/// Fincke–Pohst enumeration of lattice vectors with squared norm at most
/// `radius2`. Only one of `±v` is visited and the zero vector is skipped.
/// The visitor may return a smaller radius to prune the rest of the search.
pub fn enumerate_short<F>(basis: &IntMatrix, radius2: &Rational, mut visit: F) -> Result<()>
where
    F: FnMut(&IntVector, &Rational) -> Option<Rational>,
{
    let n = basis.rows();
    if n == 0 {
        return Ok(());
    }
    let rows = basis.row_vecs();
    let gs = gram_schmidt(&rows);
    if gs.norms.iter().any(Zero::is_zero) {
        return Err(Error::DependentRows);
    }
    let mut coeffs = vec![Integer::zero(); n];
    let mut radius = radius2.clone();
    let mut state = Enum {
        rows: &rows,
        gs: &gs,
        coeffs: &mut coeffs,
        radius: &mut radius,
        dim: basis.cols(),
    };
    state.recurse(n, Rational::zero(), true, &mut visit);
    Ok(())
}

struct Enum<'a> {
    rows: &'a [IntVector],
    gs: &'a GramSchmidt,
    coeffs: &'a mut [Integer],
    radius: &'a mut Rational,
    dim: usize,
}

impl Enum<'_> {
    fn recurse<F>(&mut self, level: usize, partial: Rational, all_zero: bool, visit: &mut F)
    where
        F: FnMut(&IntVector, &Rational) -> Option<Rational>,
    {
        if level == 0 {
            if all_zero {
                return;
            }
            let mut v = vec![Integer::zero(); self.dim];
            for (c, r) in self.coeffs.iter().zip(self.rows) {
                if c.is_zero() {
                    continue;
                }
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi += c * ri;
                }
            }
            if let Some(r) = visit(&v, &partial) {
                if r < *self.radius {
                    *self.radius = r;
                }
            }
            return;
        }
        let i = level - 1;
        let mut center = Rational::zero();
        for j in level..self.rows.len() {
            center -= &self.gs.mu[j][i] * Rational::from_integer(self.coeffs[j].clone());
        }
        let bi = &self.gs.norms[i];
        let rem = &*self.radius - &partial;
        if rem.is_negative() {
            return;
        }
        let span =
            (rem.to_f64().unwrap_or(f64::MAX) / bi.to_f64().unwrap_or(f64::MIN_POSITIVE)).sqrt();
        let c = center.to_f64().unwrap_or(0.0);
        let lo = (c - span).floor() as i64 - 1;
        let hi = (c + span).ceil() as i64 + 1;
        let lo = if all_zero { lo.max(0) } else { lo };
        for x in lo..=hi {
            let xr = Rational::from_integer(Integer::from(x));
            let d = &xr - &center;
            let p = &partial + &d * &d * bi;
            if p > *self.radius {
                continue;
            }
            self.coeffs[i] = Integer::from(x);
            self.recurse(i, p, all_zero && x == 0, visit);
        }
        self.coeffs[i] = Integer::zero();
    }
}

fn normalize_sign(v: &mut IntVector) {
    if v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

/// A nonzero lattice vector of minimum Euclidean norm.
///
/// Among all minimizers, each normalized so its first nonzero coordinate is
/// positive, the lexicographically largest is returned.
pub fn shortest_vector(b: &IntMatrix) -> Result<IntVector> {
    if b.rows() == 0 || b.cols() == 0 {
        return Err(Error::ZeroDimensional);
    }
    let reduced = lll_reduce(b, &rat(3, 4))?;
    let mut best: Option<(Integer, Vec<IntVector>)> = None;
    for v in reduced.row_vecs() {
        let n = norm2(&v);
        if best.as_ref().map_or(true, |(m, _)| n < *m) {
            best = Some((n, Vec::new()));
        }
    }
    let (bound, _) = best.clone().expect("nonempty basis");
    let mut min = bound;
    let mut winners: Vec<IntVector> = Vec::new();
    enumerate_short(&reduced, &Rational::from_integer(min.clone()), |v, _| {
        let n = norm2(v);
        if n < min {
            min = n.clone();
            winners.clear();
        }
        if n == min {
            let mut w = v.clone();
            normalize_sign(&mut w);
            winners.push(w);
        }
        Some(Rational::from_integer(min.clone()))
    })?;
    winners.into_iter().max().ok_or(Error::ZeroDimensional)
}

/// Largest absolute value of a `d × d` minor of `a`.
pub fn max_subdeterminant(a: &IntMatrix, d: usize) -> Result<Integer> {
    if d > a.rows() || d > a.cols() {
        return Err(Error::InvalidArgument(format!(
            "minor size {d} exceeds matrix dimensions {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut best = Integer::zero();
    if d == 0 {
        return Ok(Integer::one());
    }
    for rs in (0..a.rows()).combinations(d) {
        let sub = a.select_rows(&rs);
        for cs in (0..a.cols()).combinations(d) {
            let det = sub.select_cols(&cs).det()?.abs();
            if det > best {
                best = det;
            }
        }
    }
    Ok(best)
}
