//! Ehrhart series of rational polytopes, Hilbert series of normal affine
//! semigroups and the Gorenstein test.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{dot, to_i64_vec, IntMatrix, IntVector, Integer, Rational};
use crate::cone::{decompose_from_dual, polarize, unimodular_genfun, Cone};
use crate::genfun::{
    generic_direction, hadamard_in_direction, leading_monomial_shifted, specialize_univariate,
    BasicTerm, Exponent, Quotient, ShortRatFun, TermOrder,
};
use crate::polytope::{brion_genfun, genfun_of, reduce, Polyhedron};
use crate::{Error, Result};

/// `N(t) / Π_k (1 − t^{d_k})` with integer numerator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    numerator: Vec<Integer>,
    denominator: Vec<i64>,
}

impl UniSeries {
    /// `numerator[i]` is the coefficient of `t^i`; every `d_k` must be
    /// positive.
    pub fn new(numerator: Vec<Integer>, mut denominator: Vec<i64>) -> Result<Self> {
        if let Some(&d) = denominator.iter().find(|&&d| d <= 0) {
            return Err(Error::InvalidArgument(format!(
                "denominator exponent {d} is not positive"
            )));
        }
        denominator.sort_unstable();
        let mut numerator = numerator;
        while numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &[Integer] {
        &self.numerator
    }

    /// The multiset `{d_k}` in ascending order.
    pub fn denominator(&self) -> &[i64] {
        &self.denominator
    }

    fn from_quotient(q: Quotient) -> Result<Self> {
        let q = q.reduce();
        let mut numerator = Vec::new();
        if let Some(lo) = q.numer.order() {
            if lo < 0 {
                return Err(Error::Internal(
                    "series numerator has negative exponents".into(),
                ));
            }
            let hi = q.numer.degree().unwrap_or(lo);
            for e in 0..=hi {
                let c = q.numer.coeff(e);
                if !c.is_integer() {
                    return Err(Error::Internal(format!(
                        "non-integral series numerator coefficient {c}"
                    )));
                }
                numerator.push(c.to_integer());
            }
        }
        let denominator = q
            .denom
            .iter()
            .flat_map(|(&c, &e)| std::iter::repeat(c).take(e as usize))
            .collect();
        Self::new(numerator, denominator)
    }

    /// The first `k` power series coefficients.
    pub fn expand(&self, k: usize) -> Vec<Integer> {
        let mut s = vec![Integer::zero(); k];
        for (i, c) in self.numerator.iter().enumerate().take(k) {
            s[i] = c.clone();
        }
        for &d in &self.denominator {
            let d = d as usize;
            for i in d..k {
                let prev = s[i - d].clone();
                s[i] += prev;
            }
        }
        s
    }

    /// `(−1)^{dim+1} · S(1/t)`. For the Ehrhart series of a
    /// `dim`-dimensional polytope this is `Σ_{m ≥ 1} #(int(mP) ∩ Zⁿ) t^m`.
    pub fn interior_series(&self, dim: usize) -> Result<Self> {
        // N(1/t) / Π(1 − t^{−d}) = (−1)^k t^{Σd} N(1/t) / Π(1 − t^d)
        let total: i64 = self.denominator.iter().sum();
        let deg = self.numerator.len() as i64 - 1;
        if deg > total {
            return Err(Error::InvalidArgument(
                "reciprocal series has negative exponents".into(),
            ));
        }
        let flip = (self.denominator.len() + dim + 1) % 2 == 1;
        let mut numer = vec![Integer::zero(); (total + 1) as usize];
        for (i, c) in self.numerator.iter().enumerate() {
            numer[(total - i as i64) as usize] = if flip { -c } else { c.clone() };
        }
        Self::new(numer, self.denominator.clone())
    }

    /// Whether `N₁ D₂ = N₂ D₁` as polynomials.
    pub fn same_function(&self, other: &Self) -> bool {
        let lhs = poly_mul(&self.numerator, &denominator_poly(&other.denominator));
        let rhs = poly_mul(&other.numerator, &denominator_poly(&self.denominator));
        trim(lhs) == trim(rhs)
    }

    /// Machine-readable form `c0 c1 … ; d1 d2 …`.
    pub fn to_text(&self) -> String {
        let n: Vec<String> = self.numerator.iter().map(|c| c.to_string()).collect();
        let d: Vec<String> = self.denominator.iter().map(|c| c.to_string()).collect();
        format!("{} ; {}", n.join(" "), d.join(" "))
    }
}

fn trim(mut v: Vec<Integer>) -> Vec<Integer> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn denominator_poly(ds: &[i64]) -> Vec<Integer> {
    ds.iter().fold(vec![Integer::one()], |acc, &d| {
        let mut f = vec![Integer::zero(); d as usize + 1];
        f[0] = Integer::one();
        f[d as usize] = -Integer::one();
        poly_mul(&acc, &f)
    })
}

impl FromStr for UniSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let (n, d) = s
            .split_once(';')
            .ok_or_else(|| bad("expected `numerator ; denominator`".into()))?;
        let numerator = n
            .split_whitespace()
            .map(|x| {
                x.parse::<Integer>()
                    .map_err(|e| bad(format!("bad coefficient {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let denominator = d
            .split_whitespace()
            .map(|x| {
                x.parse::<i64>()
                    .map_err(|e| bad(format!("bad exponent {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(numerator, denominator).map_err(|e| bad(e.to_string()))
    }
}

fn power(e: usize) -> String {
    match e {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{e}"),
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (mag.is_one(), i) {
                (_, 0) => mag.to_string(),
                (true, _) => power(i),
                (false, _) => format!("{mag}*{}", power(i)),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        let numer = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        };
        if self.denominator.is_empty() {
            return write!(f, "{numer}");
        }
        let numer = if parts.len() > 1 {
            format!("({numer})")
        } else {
            numer
        };
        let mut groups: Vec<(i64, usize)> = Vec::new();
        for &d in &self.denominator {
            match groups.last_mut() {
                Some((g, k)) if *g == d => *k += 1,
                _ => groups.push((d, 1)),
            }
        }
        let factors: Vec<String> = groups
            .iter()
            .map(|&(d, k)| {
                let base = format!("(1-{})", power(d as usize));
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        if factors.len() == 1 {
            write!(f, "{numer} / {}", factors[0])
        } else {
            write!(f, "{numer} / ({})", factors.join(" "))
        }
    }
}

fn to_univariate(f: &ShortRatFun, w: &[i64]) -> Result<UniSeries> {
    UniSeries::from_quotient(specialize_univariate(f, w)?)
}

/// The homogenization `{(x, s) : A x ≤ b s, E x = d s, s ≥ 0}`.
fn homogenize(p: &Polyhedron) -> Result<Polyhedron> {
    let n = p.ambient_dim();
    let (a, b) = p.inequalities();
    let (e, d) = p.equations();
    let lift = |m: &IntMatrix, r: &[Integer]| -> Vec<IntVector> {
        (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .cloned()
                    .chain(std::iter::once(-&r[i]))
                    .collect()
            })
            .collect()
    };
    let mut rows = lift(a, b);
    let mut s_row = vec![Integer::zero(); n + 1];
    s_row[n] = -Integer::one();
    rows.push(s_row);
    let m = rows.len();
    let eq = lift(e, d);
    let k = eq.len();
    Polyhedron::new(
        IntMatrix::from_rows(rows, n + 1)?,
        vec![Integer::zero(); m],
        IntMatrix::from_rows(eq, n + 1)?,
        vec![Integer::zero(); k],
    )
}

/// `Σ_m #(mP ∩ Zⁿ) t^m` for a nonempty bounded polyhedron. Equations and
/// implicit equalities are eliminated automatically.
pub fn ehrhart_series(p: &Polyhedron) -> Result<UniSeries> {
    let n = p.ambient_dim();
    let red = reduce(p)?.ok_or(Error::EmptySet)?;
    if let Some(l) = red.lines.first() {
        return Err(Error::Unbounded { ray: l.clone() });
    }
    if let Some(g) = red.rays.first() {
        return Err(Error::Unbounded {
            ray: red.param.map_direction(g),
        });
    }
    let h = homogenize(p)?;
    let hred = reduce(&h)?.ok_or_else(|| Error::Internal("homogenized cone is empty".into()))?;
    if !hred.lines.is_empty()
        || hred
            .rays
            .iter()
            .any(|g| !red_last_positive(&hred.param.map_direction(g)))
    {
        return Err(Error::Internal(
            "homogenized cone has rays at height zero".into(),
        ));
    }
    let f = genfun_of(&hred, n + 1)?;
    let w: Vec<i64> = (0..=n).map(|i| (i == n) as i64).collect();
    to_univariate(&f, &w)
}

fn red_last_positive(v: &[Integer]) -> bool {
    v.last().is_some_and(|x| x.is_positive())
}

/// The lattice points of a pointed full-dimensional rational cone, graded
/// by a linear form that is positive on every nonzero element.
#[derive(Clone, Debug)]
pub struct GradedSemigroup {
    cone: Cone,
    grading: IntVector,
}

impl GradedSemigroup {
    /// From the rays of the cone.
    pub fn new(rays: IntMatrix, grading: IntVector) -> Result<Self> {
        let cone = Cone::new(rays)?;
        let n = cone.ambient_dim();
        if grading.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: grading.len(),
            });
        }
        if !cone.is_full_dimensional() {
            return Err(Error::NotFullDimensional {
                dim: cone.dim(),
                ambient: n,
            });
        }
        if !cone.is_pointed() {
            return Err(Error::NotPointed);
        }
        if cone
            .ray_vecs()
            .iter()
            .any(|r| !dot(r, &grading).is_positive())
        {
            return Err(Error::NonPositiveGrading);
        }
        Ok(Self { cone, grading })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rays: &[R], grading: &[i64]) -> Result<Self> {
        Self::new(
            IntMatrix::from_i64(rays),
            grading.iter().map(|&x| Integer::from(x)).collect(),
        )
    }

    /// From facet inequalities: the cone `{x : A x ≥ 0}`.
    pub fn from_facets(a: &IntMatrix, grading: IntVector) -> Result<Self> {
        let n = a.cols();
        let neg: Vec<IntVector> = a
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect();
        let rays = crate::cone::dd::extreme_rays(&neg, n)?;
        if rays.is_empty() {
            return Err(Error::NotPointed);
        }
        Self::new(IntMatrix::from_rows(rays, n)?, grading)
    }

    /// The standard grading by `Σ_{h} −h·x` over the facet normals `h` of
    /// the polar; positive on every nonzero cone element.
    pub fn with_facet_grading(rays: IntMatrix) -> Result<Self> {
        let cone = Cone::new(rays)?;
        let n = cone.ambient_dim();
        let polar = polarize(&cone)?;
        let mut w = vec![Integer::zero(); n];
        for h in polar.ray_vecs() {
            for (x, y) in w.iter_mut().zip(h) {
                *x -= y;
            }
        }
        Self::new(cone.rays().clone(), w)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn grading(&self) -> &[Integer] {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.cone.ambient_dim()
    }

    /// `Σ_{a ∈ S} x^a`.
    pub fn genfun(&self) -> Result<ShortRatFun> {
        let n = self.dim();
        let polar = polarize(&self.cone)?;
        let pieces = decompose_from_dual(&polar.ray_vecs(), n)?;
        let terms: Vec<BasicTerm> = pieces
            .par_iter()
            .map(unimodular_genfun)
            .collect::<Result<_>>()?;
        Ok(ShortRatFun::new(n, terms)?.simplify())
    }

    fn grading_weights(&self) -> Result<Vec<i64>> {
        to_i64_vec(&self.grading)
    }

    /// Facet inequalities `h·x ≤ 0`.
    fn facets(&self) -> Result<Vec<IntVector>> {
        Ok(polarize(&self.cone)?.ray_vecs())
    }
}

/// `H_S(t) = Σ_r #{a ∈ S : deg a = r} t^r`.
pub fn hilbert_series(s: &GradedSemigroup) -> Result<UniSeries> {
    to_univariate(&s.genfun()?, &s.grading_weights()?)
}

/// `(−1)^n f(1/x)`, computed term by term.
fn reciprocal_genfun(f: &ShortRatFun) -> Result<ShortRatFun> {
    let n = f.dim();
    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let mut u: Exponent = t
                .numer
                .iter()
                .map(|&x| x.checked_neg().ok_or(Error::Overflow))
                .collect::<Result<_>>()?;
            for c in &t.denoms {
                u = crate::genfun::checked_add(&u, c)?;
            }
            let coeff = if (t.denoms.len() + n) % 2 == 1 {
                -t.coeff.clone()
            } else {
                t.coeff.clone()
            };
            BasicTerm::new(coeff, u, t.denoms.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    ShortRatFun::new(n, terms)
}

/// A direction that is positive on the cone and generic for `avoid`.
fn direction_on_cone(
    rays: &[IntVector],
    grading: &[Integer],
    avoid: &[&Exponent],
    seed: u64,
) -> Result<Exponent> {
    let n = grading.len();
    let w = to_i64_vec(grading)?;
    for salt in 0..32u64 {
        let delta = generic_direction(
            seed ^ salt.wrapping_mul(0x9e37_79b9),
            n,
            avoid.iter().copied(),
            false,
        )?;
        let spread: Integer = rays
            .iter()
            .map(|r| {
                dot(
                    r,
                    &delta.iter().map(|&x| Integer::from(x)).collect::<Vec<_>>(),
                )
                .abs()
            })
            .sum();
        let m = crate::arith::to_i64(&(spread + Integer::one()))?;
        let lambda: Exponent = w
            .iter()
            .zip(&delta)
            .map(|(&a, &b)| {
                a.checked_mul(m)
                    .and_then(|x| x.checked_add(b))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<_>>()?;
        if avoid
            .iter()
            .all(|c| !crate::genfun::dot_i64(&lambda, c).is_zero())
        {
            return Ok(lambda);
        }
    }
    Err(Error::NonGenericDirection)
}

/// Outcome of the Gorenstein test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gorenstein {
    pub gorenstein: bool,
    /// The exponent `a` with `int(S) = a + S`, when it exists.
    pub witness: Option<Exponent>,
}

fn evaluation_points(n: usize, count: usize, seed: u64) -> impl Iterator<Item = Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        (0..n)
            .map(|_| {
                Rational::new(
                    Integer::from(rng.gen_range(2..60i64)),
                    Integer::from(rng.gen_range(1..9i64)),
                )
            })
            .collect()
    })
    .take(count)
}

/// Decides whether the interior lattice points of the cone form a single
/// translate `a + S`. The candidate `a` is the unique interior point of
/// minimal degree; the identity `F_int = x^a F` is checked at `n + 3`
/// rational points and proved by the graded specialization, whose
/// coefficients count the nonnegative difference `int(S) \ (a + S)`.
pub fn gorenstein_check(s: &GradedSemigroup) -> Result<Gorenstein> {
    let no = Gorenstein {
        gorenstein: false,
        witness: None,
    };
    let n = s.dim();
    let f = s.genfun()?;
    let f_int = reciprocal_genfun(&f)?;
    let w = s.grading_weights()?;
    let graded = specialize_univariate(&f_int, &w)?;
    let r = graded
        .numer
        .order()
        .ok_or_else(|| Error::Internal("cone has no interior points".into()))?;
    if graded.numer.coeff(r) != Rational::one() {
        return Ok(no);
    }
    // interior points of degree r, cut out of F_int
    let facets = s.facets()?;
    let mut eq = IntMatrix::zeros(0, n);
    eq.push_row(s.grading());
    let slice = Polyhedron::new(
        IntMatrix::from_rows(facets.clone(), n)?,
        vec![Integer::zero(); facets.len()],
        eq,
        vec![Integer::from(r)],
    )?;
    let g_slice = brion_genfun(&slice)?;
    let avoid: Vec<&Exponent> = f_int
        .terms()
        .iter()
        .chain(g_slice.terms())
        .flat_map(|t| t.denoms.iter())
        .collect();
    let lambda = direction_on_cone(
        &s.cone.ray_vecs(),
        s.grading(),
        &avoid,
        f.content_seed() ^ 0x60e,
    )?;
    let bottom = hadamard_in_direction(&f_int, &g_slice, &lambda)?;
    let a = leading_monomial_shifted(&bottom, &TermOrder::lex(n))?;

    let shifted = f.shift(&a)?;
    let sample_ok = evaluation_points(n, 4 * (n + 3), f.content_seed() ^ 0xe7a1)
        .filter_map(|p| Some((f_int.evaluate(&p)?, shifted.evaluate(&p)?)))
        .take(n + 3)
        .all(|(x, y)| x == y);
    let diff = f_int.add(&shifted.neg())?;
    let proof = specialize_univariate(&diff, &w)?.numer.is_zero();
    match (sample_ok, proof) {
        (true, true) => Ok(Gorenstein {
            gorenstein: true,
            witness: Some(a),
        }),
        (false, false) => Ok(no),
        _ => Err(Error::Internal(
            "identity test and graded proof disagree".into(),
        )),
    }
}
