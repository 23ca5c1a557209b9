//! Rational polyhedral cones: polarization, triangulation, Barvinok's
//! signed decomposition and lattice-point generating functions of
//! unimodular cones with a rational apex.
//!
//! The polar of `K` is `K* = {y : y·x ≤ 0 for all x ∈ K}`.

mod barvinok;
pub(crate) mod dd;
mod triangulate;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{ceil_rat, dot, primitive, IntMatrix, IntVector, Integer, Rational};
use crate::genfun::{BasicTerm, ShortRatFun};
use crate::{Error, Result};

/// A cone generated by primitive integer rays (the rows of `rays`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    rays: IntMatrix,
}

impl Cone {
    /// Primitivizes the rows and drops repeated rays, keeping input order.
    pub fn new(rays: IntMatrix) -> Result<Self> {
        let n = rays.cols();
        let mut rows: Vec<IntVector> = Vec::with_capacity(rays.rows());
        for r in rays.row_vecs() {
            if r.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArgument("zero ray".into()));
            }
            let p = primitive(&r);
            if !rows.contains(&p) {
                rows.push(p);
            }
        }
        Ok(Self {
            rays: IntMatrix::from_rows(rows, n)?,
        })
    }

    pub fn from_rows(rows: Vec<IntVector>, n: usize) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows, n)?)
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn rays(&self) -> &IntMatrix {
        &self.rays
    }

    pub fn ray_vecs(&self) -> Vec<IntVector> {
        self.rays.row_vecs()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rays.cols()
    }

    pub fn num_rays(&self) -> usize {
        self.rays.rows()
    }

    pub fn dim(&self) -> usize {
        self.rays.rank()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.num_rays()
    }

    /// `|det|` of a full-dimensional simplicial cone.
    pub fn index(&self) -> Result<Integer> {
        if !self.is_full_dimensional() || !self.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        Ok(self.rays.det()?.abs())
    }

    /// No nonzero `x` with `x` and `−x` both in the cone.
    pub fn is_pointed(&self) -> bool {
        // pointed iff {μ ≥ 0 : Σ μ_i r_i = 0} = {0}
        let m = self.num_rays();
        if m == 0 {
            return true;
        }
        let n = self.ambient_dim();
        let mut h: Vec<IntVector> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            -Integer::one()
                        } else {
                            Integer::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for j in 0..n {
            let col = self.rays.column(j);
            h.push(col.iter().map(|x| -x).collect());
            h.push(col);
        }
        dd::extreme_rays(&h, m)
            .map(|r| r.is_empty())
            .unwrap_or(false)
    }

    /// Outer facet normals, i.e. the extreme rays of the polar cone.
    pub fn facet_normals(&self) -> Result<Vec<IntVector>> {
        Ok(polarize(self)?.ray_vecs())
    }

    /// Membership of an integer point, for full-dimensional pointed cones.
    pub fn contains(&self, x: &[Integer]) -> Result<bool> {
        Ok(self
            .facet_normals()?
            .iter()
            .all(|h| !dot(h, x).is_positive()))
    }
}

/// A cone translated to a rational apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCone {
    pub apex: Vec<Rational>,
    pub cone: Cone,
}

impl VertexCone {
    /// Generating function of the lattice points of `apex + cone`, for a
    /// full-dimensional pointed cone.
    pub fn genfun(&self) -> Result<ShortRatFun> {
        let pieces = dual_decompose(&self.cone)?;
        let terms = pieces
            .into_iter()
            .map(|mut c| {
                c.apex = self.apex.clone();
                unimodular_genfun(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        ShortRatFun::new(self.cone.ambient_dim(), terms)
    }
}

/// `sign · [apex + cone(generators)]` with a unimodular generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedUnimodularCone {
    pub sign: i8,
    pub generators: IntMatrix,
    pub apex: Vec<Rational>,
}

impl SignedUnimodularCone {
    fn at_origin(sign: i8, generators: IntMatrix) -> Self {
        let n = generators.cols();
        Self {
            sign,
            generators,
            apex: vec![Rational::zero(); n],
        }
    }

    /// The polar of a unimodular cone is unimodular: its rays are the rows
    /// of `−(H⁻¹)ᵀ`.
    fn polar(&self) -> Result<Self> {
        let inv = self.generators.inverse_unimodular()?;
        let n = inv.rows();
        let rows: Vec<IntVector> = (0..n)
            .map(|i| inv.column(i).iter().map(|x| -x).collect())
            .collect();
        Ok(Self {
            sign: self.sign,
            generators: IntMatrix::from_rows(rows, n)?,
            apex: self.apex.clone(),
        })
    }

    fn sort_key(&self) -> (Vec<IntVector>, i8) {
        (self.generators.row_vecs(), self.sign)
    }
}

fn sorted(mut v: Vec<SignedUnimodularCone>) -> Vec<SignedUnimodularCone> {
    v.sort_by_key(SignedUnimodularCone::sort_key);
    v
}

/// The polar cone, computed by double description.
pub fn polarize(k: &Cone) -> Result<Cone> {
    let n = k.ambient_dim();
    if !k.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: k.dim(),
            ambient: n,
        });
    }
    let rays = dd::extreme_rays(&k.ray_vecs(), n)?;
    let polar = Cone::from_rows(rays, n)?;
    if !polar.is_full_dimensional() {
        return Err(Error::NotPointed);
    }
    Ok(polar)
}

/// Placing triangulation over the input ray order.
pub fn triangulate(k: &Cone) -> Result<Vec<Cone>> {
    let n = k.ambient_dim();
    if !k.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            dim: k.dim(),
            ambient: n,
        });
    }
    if !k.is_pointed() {
        return Err(Error::NotPointed);
    }
    let rays = k.ray_vecs();
    triangulate::placing(&rays, n)?
        .into_iter()
        .map(|s| Cone::from_rows(s.iter().map(|&i| rays[i].clone()).collect(), n))
        .collect()
}

/// Signed unimodular cones `K_i` with `Σ ε_i [K_i] = [K]` modulo indicator
/// functions of lower-dimensional cones.
pub fn barvinok_decompose(k: &Cone) -> Result<Vec<SignedUnimodularCone>> {
    if !k.is_full_dimensional() || !k.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let n = k.ambient_dim();
    let parts = barvinok::decompose(k.ray_vecs(), 1)?;
    let out = parts
        .into_iter()
        .map(|(s, g)| {
            Ok(SignedUnimodularCone::at_origin(
                s,
                IntMatrix::from_rows(g, n)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sorted(out))
}

/// Unimodular decomposition of the cone whose polar is generated by
/// `dual_rays`; the polar must be full-dimensional and pointed. The result
/// is an exact identity of generating functions.
pub(crate) fn decompose_from_dual(
    dual_rays: &[IntVector],
    n: usize,
) -> Result<Vec<SignedUnimodularCone>> {
    let simplices = triangulate::placing(dual_rays, n)?;
    let parts: Vec<Vec<SignedUnimodularCone>> = simplices
        .into_par_iter()
        .map(|s| {
            let rays: Vec<IntVector> = s.iter().map(|&i| dual_rays[i].clone()).collect();
            barvinok::decompose(rays, 1)?
                .into_iter()
                .map(|(sg, g)| {
                    SignedUnimodularCone::at_origin(sg, IntMatrix::from_rows(g, n)?).polar()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(sorted(parts.into_iter().flatten().collect()))
}

/// Polarize, triangulate, decompose each simplicial piece and polarize the
/// unimodular pieces back.
pub fn dual_decompose(k: &Cone) -> Result<Vec<SignedUnimodularCone>> {
    let polar = polarize(k)?;
    decompose_from_dual(&polar.ray_vecs(), k.ambient_dim())
}

/// `ε · x^u / Π (1 − x^{g_i})` where `u = Σ ⌈α_i⌉ g_i` for
/// `apex = Σ α_i g_i`.
pub fn unimodular_genfun(c: &SignedUnimodularCone) -> Result<BasicTerm> {
    let g = &c.generators;
    let n = g.cols();
    if c.apex.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.apex.len(),
        });
    }
    if !g.is_square() || !g.det()?.abs().is_one() {
        let d = if g.is_square() {
            g.det()?
        } else {
            Integer::zero()
        };
        return Err(Error::NotUnimodular(d));
    }
    // apex = α·G, so α = apex·G⁻¹
    let inv = g.inverse_unimodular()?;
    let mut u = vec![Integer::zero(); n];
    for i in 0..n {
        let a: Rational = (0..n)
            .map(|j| &c.apex[j] * Rational::from_integer(inv.get(j, i).clone()))
            .sum();
        let k = ceil_rat(&a);
        for (x, gij) in u.iter_mut().zip(g.row(i)) {
            *x += &k * gij;
        }
    }
    let numer = crate::arith::to_i64_vec(&u)?;
    let denoms = g
        .row_vecs()
        .iter()
        .map(|r| crate::arith::to_i64_vec(r))
        .collect::<Result<Vec<_>>>()?;
    BasicTerm::new(Rational::from_integer(c.sign.into()), numer, denoms)
}
