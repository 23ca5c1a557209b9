//! Placing triangulation of a pointed full-dimensional cone.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::arith::{
    clear_denominators, dot, rational_echelon, IntMatrix, IntVector, Integer, Rational,
};
use crate::{Error, Result};

struct FacetInfo {
    count: u32,
    opposite: usize,
    normal: IntVector,
}

/// Simplices (as sorted index lists into `rays`) of the placing
/// triangulation that inserts the rays in input order. The cone must be
/// pointed; a ray already inside the current cone is skipped.
pub(crate) fn placing(rays: &[IntVector], n: usize) -> Result<Vec<Vec<usize>>> {
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            rays.iter()
                .map(|r| Rational::from_integer(r[j].clone()))
                .collect()
        })
        .collect();
    let (_, first) = rational_echelon(&cols);
    if first.len() < n {
        return Err(Error::NotFullDimensional {
            dim: first.len(),
            ambient: n,
        });
    }
    let mut simplices: Vec<Vec<usize>> = vec![first.clone()];
    let mut facets: BTreeMap<Vec<usize>, FacetInfo> = BTreeMap::new();
    let add_simplex = |s: &[usize], facets: &mut BTreeMap<Vec<usize>, FacetInfo>| -> Result<()> {
        let mut inv: Option<Vec<Vec<Rational>>> = None;
        for (k, &opp) in s.iter().enumerate() {
            let f: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &x)| x)
                .collect();
            if let Some(info) = facets.get_mut(&f) {
                info.count += 1;
                continue;
            }
            // column k of the inverse vanishes on every ray but the k-th
            if inv.is_none() {
                let m = IntMatrix::from_rows(s.iter().map(|&i| rays[i].clone()).collect(), n)?;
                inv = Some(m.inverse_rational()?);
            }
            let col: Vec<Rational> = inv
                .as_ref()
                .unwrap()
                .iter()
                .map(|row| row[k].clone())
                .collect();
            let normal = clear_denominators(&col);
            facets.insert(
                f,
                FacetInfo {
                    count: 1,
                    opposite: opp,
                    normal,
                },
            );
        }
        Ok(())
    };
    add_simplex(&first, &mut facets)?;
    for (p, ray) in rays.iter().enumerate() {
        if first.contains(&p) {
            continue;
        }
        let mut visible: Vec<Vec<usize>> = Vec::new();
        for (f, info) in &facets {
            if info.count != 1 {
                continue;
            }
            let sp: Integer = dot(&info.normal, ray);
            if sp.is_zero() {
                continue;
            }
            let so = dot(&info.normal, &rays[info.opposite]);
            if sp.is_positive() != so.is_positive() {
                visible.push(f.clone());
            }
        }
        for f in visible {
            let mut s = f;
            s.push(p);
            s.sort_unstable();
            add_simplex(&s, &mut facets)?;
            simplices.push(s);
        }
    }
    for s in simplices.iter_mut() {
        s.sort_unstable();
    }
    Ok(simplices)
}
