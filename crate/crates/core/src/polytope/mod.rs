//! Polyhedra in H-representation, vertices, tangent cones and Brion's
//! signed sum of vertex-cone generating functions.
//!
//! Equations are eliminated first: the integer solutions of `E x = d` are
//! parametrized as `x = x₀ + z·K` with the rows of `K` a basis of the integer
//! kernel of `E`, so that all cone computations happen in the intrinsic
//! dimension. Implicit equalities found by the vertex computation are moved
//! to the equation block and the parametrization is repeated.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    dot, dot_rat, integer_kernel, primitive, solve_integer, to_i64_vec, IntMatrix, IntVector,
    Integer, Rational,
};
use crate::cone::{dd, decompose_from_dual, unimodular_genfun, Cone, VertexCone};
use crate::genfun::{specialize_all_ones, BasicTerm, ShortRatFun};
use crate::{Error, Result};

/// `{x : A x ≤ b, E x = d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    a: IntMatrix,
    b: IntVector,
    e: IntMatrix,
    d: IntVector,
}

impl Polyhedron {
    pub fn new(a: IntMatrix, b: IntVector, e: IntMatrix, d: IntVector) -> Result<Self> {
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: b.len(),
            });
        }
        if e.rows() != d.len() {
            return Err(Error::DimensionMismatch {
                expected: e.rows(),
                found: d.len(),
            });
        }
        if e.rows() > 0 && e.cols() != a.cols() {
            return Err(Error::DimensionMismatch {
                expected: a.cols(),
                found: e.cols(),
            });
        }
        let e = if e.rows() == 0 {
            IntMatrix::zeros(0, a.cols())
        } else {
            e
        };
        Ok(Self { a, b, e, d })
    }

    pub fn from_inequalities(a: IntMatrix, b: IntVector) -> Result<Self> {
        let n = a.cols();
        Self::new(a, b, IntMatrix::zeros(0, n), Vec::new())
    }

    /// Convenience constructor from `i64` rows `a·x ≤ β`.
    pub fn from_i64<R: AsRef<[i64]>>(a: &[R], b: &[i64]) -> Result<Self> {
        Self::from_inequalities(
            IntMatrix::from_i64(a),
            b.iter().map(|&x| x.into()).collect(),
        )
    }

    pub fn with_equations(self, e: IntMatrix, d: IntVector) -> Result<Self> {
        Self::new(self.a, self.b, e, d)
    }

    /// The box `[lo, hi]`.
    pub fn lattice_box(lo: &[i64], hi: &[i64]) -> Result<Self> {
        let n = lo.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            let mut r = vec![0i64; n];
            r[i] = 1;
            rows.push(r.clone());
            rhs.push(hi[i]);
            r[i] = -1;
            rows.push(r);
            rhs.push(-lo[i]);
        }
        let a = if n == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_i64(&rows)
        };
        Self::from_inequalities(a, rhs.into_iter().map(Integer::from).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.a.cols()
    }

    pub fn inequalities(&self) -> (&IntMatrix, &IntVector) {
        (&self.a, &self.b)
    }

    pub fn equations(&self) -> (&IntMatrix, &IntVector) {
        (&self.e, &self.d)
    }

    pub fn contains(&self, x: &[Integer]) -> bool {
        (0..self.a.rows()).all(|i| dot(self.a.row(i), x) <= self.b[i])
            && (0..self.e.rows()).all(|i| dot(self.e.row(i), x) == self.d[i])
    }

    /// `P + w`.
    pub fn translate(&self, w: &[Integer]) -> Self {
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(i, x)| x + dot(self.a.row(i), w))
            .collect();
        let d = self
            .d
            .iter()
            .enumerate()
            .map(|(i, x)| x + dot(self.e.row(i), w))
            .collect();
        Self {
            a: self.a.clone(),
            b,
            e: self.e.clone(),
            d,
        }
    }

    /// `k·P`.
    pub fn dilate(&self, k: &Integer) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.iter().map(|x| x * k).collect(),
            e: self.e.clone(),
            d: self.d.iter().map(|x| x * k).collect(),
        }
    }
}

/// Affine lattice parametrization `x = x₀ + z·K`.
#[derive(Clone, Debug)]
pub(crate) struct Param {
    pub x0: IntVector,
    pub k: IntMatrix,
}

impl Param {
    pub fn map_point(&self, z: &[Integer]) -> IntVector {
        let m = self.k.combine_rows(z);
        self.x0.iter().zip(m).map(|(a, b)| a + b).collect()
    }

    pub fn map_rational(&self, z: &[Rational]) -> Vec<Rational> {
        (0..self.x0.len())
            .map(|j| {
                let s: Rational = z
                    .iter()
                    .enumerate()
                    .map(|(i, zi)| zi * Rational::from_integer(self.k.get(i, j).clone()))
                    .sum();
                s + Rational::from_integer(self.x0[j].clone())
            })
            .collect()
    }

    pub fn map_direction(&self, g: &[Integer]) -> IntVector {
        self.k.combine_rows(g)
    }
}

/// A nonempty polyhedron in intrinsic coordinates, full-dimensional there.
#[derive(Clone, Debug)]
pub(crate) struct Reduced {
    pub param: Param,
    pub a: Vec<IntVector>,
    pub b: Vec<Integer>,
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<IntVector>,
    /// Nonzero iff the polyhedron contains a line; directions in x-space.
    pub lines: Vec<IntVector>,
}

impl Reduced {
    pub fn dim(&self) -> usize {
        self.param.k.rows()
    }

    /// Indices of the inequalities active at a vertex.
    pub fn active(&self, v: &[Rational]) -> Vec<usize> {
        (0..self.a.len())
            .filter(|&i| dot_rat(&self.a[i], v) == Rational::from_integer(self.b[i].clone()))
            .collect()
    }

    /// Normals of the active inequalities: generators of the polar of the
    /// tangent cone.
    fn dual_rays(&self, v: &[Rational]) -> Vec<IntVector> {
        let mut out: Vec<IntVector> = Vec::new();
        for i in self.active(v) {
            let p = primitive(&self.a[i]);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// Generating function of `apex v + tangent cone`, in x-space.
    fn vertex_genfun(&self, v: &[Rational]) -> Result<Vec<BasicTerm>> {
        let r = self.dim();
        let n = self.param.x0.len();
        if r == 0 {
            return Ok(vec![BasicTerm::monomial(
                Rational::from_integer(1.into()),
                to_i64_vec(&self.param.x0)?,
            )]);
        }
        let dual = self.dual_rays(v);
        let pieces = decompose_from_dual(&dual, r)?;
        let mut out = Vec::with_capacity(pieces.len());
        for mut c in pieces {
            c.apex = v.to_vec();
            let t = unimodular_genfun(&c)?;
            let u: IntVector = t.numer.iter().map(|&x| Integer::from(x)).collect();
            let numer = to_i64_vec(&self.param.map_point(&u))?;
            let denoms = t
                .denoms
                .iter()
                .map(|g| {
                    let gi: IntVector = g.iter().map(|&x| Integer::from(x)).collect();
                    to_i64_vec(&self.param.map_direction(&gi))
                })
                .collect::<Result<Vec<_>>>()?;
            debug_assert!(denoms.iter().all(|c| c.len() == n));
            out.push(BasicTerm {
                coeff: t.coeff,
                numer,
                denoms,
            });
        }
        Ok(out)
    }
}

fn compose(outer: &Param, inner: Param) -> Result<Param> {
    let x0 = outer.map_point(&inner.x0);
    let k = if inner.k.rows() == 0 {
        IntMatrix::zeros(0, outer.x0.len())
    } else {
        inner.k.mul(&outer.k)?
    };
    Ok(Param { x0, k })
}

/// Eliminates equations, detects emptiness, lines and implicit equalities.
/// `None` means there is no lattice point: either the equations have no
/// integer solution or the remaining polyhedron is empty.
pub(crate) fn reduce(p: &Polyhedron) -> Result<Option<Reduced>> {
    let n = p.ambient_dim();
    let a = p.a.row_vecs();
    let e = p.e.row_vecs();
    reduce_rows(&a, &p.b, &e, &p.d, n)
}

fn reduce_rows(
    a: &[IntVector],
    b: &[Integer],
    e: &[IntVector],
    d: &[Integer],
    n: usize,
) -> Result<Option<Reduced>> {
    let em = IntMatrix::from_rows(e.to_vec(), n)?;
    let Some(x0) = solve_integer(&em, d)? else {
        return Ok(None);
    };
    let k = integer_kernel(&em);
    let r = k.rows();
    let param = Param { x0, k };
    // inequalities in z-space, dropping rows that become trivial
    let mut az: Vec<IntVector> = Vec::new();
    let mut bz: Vec<Integer> = Vec::new();
    for (row, beta) in a.iter().zip(b) {
        let coeffs: IntVector = (0..r).map(|i| dot(row, param.k.row(i))).collect();
        let rhs = beta - dot(row, &param.x0);
        if coeffs.iter().all(Zero::is_zero) {
            if rhs.is_negative() {
                return Ok(None);
            }
            continue;
        }
        az.push(coeffs);
        bz.push(rhs);
    }
    if r == 0 {
        return Ok(Some(Reduced {
            param,
            a: az,
            b: bz,
            vertices: vec![Vec::new()],
            rays: Vec::new(),
            lines: Vec::new(),
        }));
    }
    let am = IntMatrix::from_rows(az.clone(), r)?;
    if am.rank() < r {
        // lines: restrict to the orthogonal complement of the lineality space to test emptiness
        let lin = crate::arith::rational_kernel(&am.to_rational(), r);
        let d2 = vec![Integer::zero(); lin.len()];
        let Some(inner) = reduce_rows(&az, &bz, &lin, &d2, r)? else {
            return Ok(None);
        };
        let lines = lin.iter().map(|l| param.map_direction(l)).collect();
        let param2 = compose(&param, inner.param.clone())?;
        return Ok(Some(Reduced {
            param: param2,
            lines,
            ..inner
        }));
    }
    // homogenized cone {(z, s) : a z − b s ≤ 0, s ≥ 0}
    let mut h: Vec<IntVector> = az
        .iter()
        .zip(&bz)
        .map(|(row, beta)| {
            let mut v = row.clone();
            v.push(-beta);
            v
        })
        .collect();
    let mut srow = vec![Integer::zero(); r + 1];
    srow[r] = Integer::from(-1);
    h.push(srow);
    let hrays = dd::extreme_rays(&h, r + 1)?;
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for ray in hrays {
        let s = ray[r].clone();
        if s.is_positive() {
            vertices.push(
                ray[..r]
                    .iter()
                    .map(|x| Rational::new(x.clone(), s.clone()))
                    .collect::<Vec<_>>(),
            );
        } else {
            rays.push(ray[..r].to_vec());
        }
    }
    if vertices.is_empty() {
        return Ok(None);
    }
    let implicit: Vec<usize> = (0..az.len())
        .filter(|&i| {
            let bi = Rational::from_integer(bz[i].clone());
            vertices.iter().all(|v| dot_rat(&az[i], v) == bi)
                && rays.iter().all(|g| dot(&az[i], g).is_zero())
        })
        .collect();
    if !implicit.is_empty() {
        let e2: Vec<IntVector> = implicit.iter().map(|&i| az[i].clone()).collect();
        let d2: Vec<Integer> = implicit.iter().map(|&i| bz[i].clone()).collect();
        let Some(inner) = reduce_rows(&az, &bz, &e2, &d2, r)? else {
            return Ok(None);
        };
        let param2 = compose(&param, inner.param.clone())?;
        return Ok(Some(Reduced {
            param: param2,
            ..inner
        }));
    }
    vertices.sort();
    Ok(Some(Reduced {
        param,
        a: az,
        b: bz,
        vertices,
        rays,
        lines: Vec::new(),
    }))
}

fn unbounded_error(red: &Reduced) -> Option<Error> {
    if let Some(l) = red.lines.first() {
        return Some(Error::Unbounded { ray: l.clone() });
    }
    red.rays.first().map(|g| Error::Unbounded {
        ray: red.param.map_direction(g),
    })
}

/// Vertices in lexicographic order. An empty polyhedron has no vertices.
pub fn enumerate_vertices(p: &Polyhedron) -> Result<Vec<Vec<Rational>>> {
    let Some(red) = reduce(p)? else {
        return Ok(Vec::new());
    };
    if let Some(e) = unbounded_error(&red) {
        return Err(e);
    }
    let mut out: Vec<Vec<Rational>> = red
        .vertices
        .iter()
        .map(|v| red.param.map_rational(v))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `v + cone of feasible directions at v`.
pub fn tangent_cone(p: &Polyhedron, v: &[Rational]) -> Result<VertexCone> {
    let red = reduce(p)?.ok_or(Error::NotAVertex)?;
    if !red.lines.is_empty() {
        return Err(Error::NotAVertex);
    }
    let z = red
        .vertices
        .iter()
        .find(|z| red.param.map_rational(z).as_slice() == v)
        .ok_or(Error::NotAVertex)?;
    let r = red.dim();
    let n = p.ambient_dim();
    let act: Vec<IntVector> = red
        .active(z)
        .into_iter()
        .map(|i| red.a[i].clone())
        .collect();
    let rays = if r == 0 {
        Vec::new()
    } else {
        dd::extreme_rays(&act, r)?
    };
    let mapped: Vec<IntVector> = rays.iter().map(|g| red.param.map_direction(g)).collect();
    let cone = if mapped.is_empty() {
        Cone::new(IntMatrix::zeros(0, n))?
    } else {
        Cone::from_rows(mapped, n)?
    };
    Ok(VertexCone {
        apex: v.to_vec(),
        cone,
    })
}

/// Brion's sum over the vertices of a pointed polyhedron, which may be
/// unbounded. Lines are an error.
pub(crate) fn pointed_genfun(p: &Polyhedron) -> Result<ShortRatFun> {
    let n = p.ambient_dim();
    let Some(red) = reduce(p)? else {
        return Ok(ShortRatFun::zero(n));
    };
    if !red.lines.is_empty() {
        return Err(Error::NotPointed);
    }
    genfun_of(&red, n)
}

pub(crate) fn genfun_of(red: &Reduced, n: usize) -> Result<ShortRatFun> {
    let parts: Vec<Vec<BasicTerm>> = red
        .vertices
        .par_iter()
        .map(|v| red.vertex_genfun(v))
        .collect::<Result<_>>()?;
    Ok(ShortRatFun::new(n, parts.into_iter().flatten().collect())?.simplify())
}

/// Generating function `Σ_{a ∈ P ∩ Zⁿ} x^a` of a bounded polyhedron.
pub fn brion_genfun(p: &Polyhedron) -> Result<ShortRatFun> {
    let n = p.ambient_dim();
    let Some(red) = reduce(p)? else {
        return Ok(ShortRatFun::zero(n));
    };
    if let Some(e) = unbounded_error(&red) {
        return Err(e);
    }
    genfun_of(&red, n)
}

/// Number of lattice points of a bounded polyhedron.
pub fn count(p: &Polyhedron) -> Result<Integer> {
    let f = brion_genfun(p)?;
    let c = specialize_all_ones(&f)?;
    if !c.is_integer() || c.is_negative() {
        return Err(Error::Internal(format!("non-integral count {c}")));
    }
    Ok(c.to_integer())
}
