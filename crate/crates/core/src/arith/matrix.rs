use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Integer, Rational};
use crate::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Integer>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Integer::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Integer::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Integer>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged matrix literal");
            data.extend(row.iter().map(|&v| Integer::from(v)));
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Integer) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Integer] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Integer>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| super::dot(self.row(i), v)).collect()
    }

    /// `vᵀ · self`, i.e. the integer combination of rows with coefficients `v`.
    pub fn combine_rows(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Integer::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                *o += c * x;
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn push_row(&mut self, row: &[Integer]) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Integer> {
        if !self.is_square() {
            return Err(Error::InvalidArgument(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Integer::one());
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = Integer::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(Integer::zero());
                };
                a.swap_rows(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if sign_flip { -d } else { d })
    }

    pub fn rank(&self) -> usize {
        rational_echelon(&self.to_rational()).1.len()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }

    /// Exact inverse of a nonsingular square matrix over the rationals.
    pub fn inverse_rational(&self) -> Result<Vec<Vec<Rational>>> {
        if !self.is_square() {
            return Err(Error::InvalidArgument(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rational>> = self
            .to_rational()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        let (_, pivots) = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Integer inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det()?;
        if d.abs() != Integer::one() {
            return Err(Error::NotUnimodular(d.abs()));
        }
        let inv = self.inverse_rational()?;
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for (i, r) in inv.into_iter().enumerate() {
            for (j, q) in r.into_iter().enumerate() {
                debug_assert!(q.is_integer());
                out.set(i, j, q.to_integer());
            }
        }
        Ok(out)
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve_rational(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rational>> = self
            .to_rational()
            .into_iter()
            .zip(b)
            .map(|(mut r, v)| {
                r.push(v.clone());
                r
            })
            .collect();
        let (_, pivots) = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::InvalidArgument("matrix is singular".into()));
        }
        Ok(aug.into_iter().map(|r| r[n].clone()).collect())
    }
}

/// Reduced row echelon form over the rationals on the first `ncols`
/// columns; returns the rank and the pivot columns.
pub(crate) fn rref_in_place(m: &mut [Vec<Rational>], ncols: usize) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub(crate) fn rational_echelon(m: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m = m.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let (r, pivots) = rref_in_place(&mut m, ncols);
    m.truncate(r);
    (m, pivots)
}

/// Basis of the rational null space `{x : M x = 0}` as primitive integer vectors.
pub(crate) fn rational_kernel(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Integer>> {
    let (e, pivots) = rational_echelon(m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in e.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            super::clear_denominators(&v)
        })
        .collect()
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn determinants() {
        assert_eq!(
            IntMatrix::from_i64(&[[2, 4], [1, 3]]).det().unwrap(),
            int(2)
        );
        assert_eq!(
            IntMatrix::from_i64(&[[0, 1], [1, 0]]).det().unwrap(),
            int(-1)
        );
        let m = IntMatrix::from_i64(&[[1, 2, 3], [4, 5, 6], [7, 8, 10]]);
        assert_eq!(m.det().unwrap(), int(-3));
        assert_eq!(
            IntMatrix::from_i64(&[[1, 2], [2, 4]]).det().unwrap(),
            int(0)
        );
    }

    #[test]
    fn inverse_and_solve() {
        let m = IntMatrix::from_i64(&[[2, 1], [1, 1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(inv, IntMatrix::from_i64(&[[1, -1], [-1, 2]]));
        let x = IntMatrix::from_i64(&[[2, 0], [0, 3]])
            .solve_rational(&[rat(1, 1), rat(1, 1)])
            .unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 3)]);
    }

    #[test]
    fn rank_and_kernel() {
        let m = IntMatrix::from_i64(&[[1, 1, 1, 1], [0, 1, 2, 3]]);
        assert_eq!(m.rank(), 2);
        let k = rational_kernel(&m.to_rational(), 4);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}
