//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's counting code.

#![allow(dead_code)]

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;

/// All integer points of the box `[lo, hi]`.
pub fn grid(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    lo.iter()
        .zip(hi)
        .map(|(&a, &b)| a..=b)
        .multi_cartesian_product()
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `{x : A x ≤ b}` membership.
pub fn satisfies(a: &[Vec<i64>], b: &[i64], x: &[i64]) -> bool {
    a.iter().zip(b).all(|(r, &c)| dot(r, x) <= c)
}

/// Lattice points of `{A x ≤ b}` inside the box `[lo, hi]`.
pub fn count_in_box(a: &[Vec<i64>], b: &[i64], lo: &[i64], hi: &[i64]) -> usize {
    grid(lo, hi).iter().filter(|x| satisfies(a, b, x)).count()
}

/// Convex hull of planar points, counter-clockwise, collinear points dropped.
pub fn hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p: Vec<(i64, i64)> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Inequalities `a·x ≤ b` of a counter-clockwise convex polygon.
pub fn polygon_inequalities(h: &[(i64, i64)]) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..h.len() {
        let p = h[i];
        let q = h[(i + 1) % h.len()];
        // outward normal of a ccw edge p→q
        let nx = q.1 - p.1;
        let ny = p.0 - q.0;
        a.push(vec![nx, ny]);
        b.push(nx * p.0 + ny * p.1);
    }
    (a, b)
}

/// `#{(u, v) : A u = A v, u, v in the region}` given the region's points.
pub fn fiber_pairs(a: &[Vec<i64>], region: &[Vec<i64>]) -> (u64, u64) {
    let mut fibers: HashMap<Vec<i64>, u64> = HashMap::new();
    for u in region {
        let key: Vec<i64> = a.iter().map(|r| dot(r, u)).collect();
        *fibers.entry(key).or_default() += 1;
    }
    let raw = fibers.values().map(|c| c * c).sum();
    (raw, region.len() as u64)
}

/// Number of `k × k` nonnegative integer matrices with all row, column and
/// both diagonal sums equal to `s`, by dynamic programming over rows.
pub fn magic_squares(k: usize, s: i64) -> BigInt {
    let rows: Vec<Vec<i64>> = grid(&vec![0; k], &vec![s; k])
        .into_iter()
        .filter(|r| r.iter().sum::<i64>() == s)
        .collect();
    // state: column sums then the two diagonal sums
    let mut states: HashMap<Vec<i64>, BigInt> = HashMap::new();
    states.insert(vec![0; k + 2], BigInt::from(1));
    for i in 0..k {
        let mut next: HashMap<Vec<i64>, BigInt> = HashMap::new();
        for (st, c) in &states {
            for r in &rows {
                let mut t = st.clone();
                let mut ok = true;
                for j in 0..k {
                    t[j] += r[j];
                    ok &= t[j] <= s;
                }
                t[k] += r[i];
                t[k + 1] += r[k - 1 - i];
                if ok && t[k] <= s && t[k + 1] <= s {
                    *next.entry(t).or_insert_with(|| BigInt::from(0)) += c;
                }
            }
        }
        states = next;
    }
    states.get(&vec![s; k + 2]).cloned().unwrap_or_default()
}

/// Lexicographic comparison of `W a` and `W b`.
pub fn order_cmp(w: &[Vec<i64>], a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    for r in w {
        let c = dot(r, a).cmp(&dot(r, b));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Inner normals `h` of a 2-D cone with rays `r1, r2`, so that the cone is
/// `{x : h·x ≥ 0}`.
pub fn cone2_normals(r1: (i64, i64), r2: (i64, i64)) -> [(i64, i64); 2] {
    let det = r1.0 * r2.1 - r1.1 * r2.0;
    let s = det.signum();
    [(-r1.1 * s, r1.0 * s), (r2.1 * s, -r2.0 * s)]
}

/// Gorenstein verdict and witness for a 2-D cone by comparing interior
/// points with translates of the semigroup on a box.
pub fn gorenstein_oracle(r1: (i64, i64), r2: (i64, i64), size: i64) -> Option<(i64, i64)> {
    let [h1, h2] = cone2_normals(r1, r2);
    let val = |h: (i64, i64), x: (i64, i64)| h.0 * x.0 + h.1 * x.1;
    let in_s = |x: (i64, i64)| val(h1, x) >= 0 && val(h2, x) >= 0;
    let in_int = |x: (i64, i64)| val(h1, x) > 0 && val(h2, x) > 0;
    let pts: Vec<(i64, i64)> = (-size..=size).cartesian_product(-size..=size).collect();
    let deg = |x: (i64, i64)| val(h1, x) + val(h2, x);
    let interior: Vec<(i64, i64)> = pts.iter().copied().filter(|&x| in_int(x)).collect();
    let min = interior.iter().map(|&x| deg(x)).min()?;
    let cands: Vec<(i64, i64)> = interior
        .iter()
        .copied()
        .filter(|&x| deg(x) == min)
        .collect();
    if cands.len() != 1 {
        return None;
    }
    let a = cands[0];
    pts.iter()
        .all(|&x| in_int(x) == in_s((x.0 - a.0, x.1 - a.1)))
        .then_some(a)
}
