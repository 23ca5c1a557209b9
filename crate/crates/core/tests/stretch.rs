//! Long-running reproductions. Run with `cargo test --release --test stretch -- --ignored`.

use num_traits::One;
use shortrat::arith::{int, IntMatrix, Integer};
use shortrat::polytope::{count, Polyhedron};
use shortrat::series::ehrhart_series;

fn nonneg(n: usize) -> Polyhedron {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| -((i == j) as i64)).collect())
        .collect();
    Polyhedron::from_i64(&rows, &vec![0; n]).unwrap()
}

#[test]
#[ignore]
fn semi_magic_hypercube_series() {
    // 3x3x3x3 arrays with every axis-parallel line summing to n
    let cells: Vec<[usize; 4]> = (0..81)
        .map(|x| [x / 27, (x / 9) % 3, (x / 3) % 3, x % 3])
        .collect();
    let mut eq: Vec<Vec<i64>> = Vec::new();
    for axis in 0..4 {
        for rest in 0..27usize {
            let fixed = [rest / 9, (rest / 3) % 3, rest % 3];
            eq.push(
                cells
                    .iter()
                    .map(|c| {
                        let others: Vec<usize> =
                            (0..4).filter(|&a| a != axis).map(|a| c[a]).collect();
                        (others == fixed) as i64
                    })
                    .collect(),
            );
        }
    }
    let p = nonneg(81)
        .with_equations(IntMatrix::from_i64(&eq), vec![Integer::one(); eq.len()])
        .unwrap();
    let s = ehrhart_series(&p).unwrap();
    let r: Vec<i64> = {
        let mut r = vec![0; 55];
        for (d, c) in [
            (0, 1),
            (3, 150),
            (6, 5837),
            (9, 63127),
            (12, 331124),
            (15, 1056374),
            (18, 2326380),
            (21, 3842273),
            (24, 5055138),
            (27, 5512456),
            (30, 5055138),
            (33, 3842273),
            (36, 2326380),
            (39, 1056374),
            (42, 331124),
            (45, 63127),
            (48, 5837),
            (51, 150),
            (54, 1),
        ] {
            r[d] = c;
        }
        r
    };
    // compare against the expansion of the reference quotient
    let mut q = vec![int(1)];
    let mul = |a: &[Integer], b: &[i64]| {
        let mut out = vec![int(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * int(y);
            }
        }
        out
    };
    for _ in 0..4 {
        q = mul(&q, &[1, 0, 0, 1]);
    }
    q = mul(&q, &[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1]);
    for _ in 0..9 {
        q = mul(&q, &[1, 0, 0, -1]);
    }
    q = mul(&q, &[1, 0, 0, 1, 0, 0, 1]);
    let terms = 40;
    let mut f = vec![int(0); terms];
    for n in 0..terms {
        let mut acc = if n < r.len() { int(r[n]) } else { int(0) };
        for k in 1..=n.min(q.len() - 1) {
            acc -= &q[k] * &f[n - k];
        }
        f[n] = acc;
    }
    assert_eq!(s.expand(terms), f);
}

#[test]
#[ignore]
fn symmetric_contingency_table() {
    let margins = [205i64, 600, 61, 17, 11, 152, 36];
    let k = margins.len();
    let vars: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let eq: Vec<Vec<i64>> = (0..k)
        .map(|r| {
            vars.iter()
                .map(|&(i, j)| {
                    if i == j && i == r {
                        2
                    } else {
                        (i == r || j == r) as i64
                    }
                })
                .collect()
        })
        .collect();
    let p = nonneg(vars.len())
        .with_equations(
            IntMatrix::from_i64(&eq),
            margins.iter().map(|&m| int(m)).collect(),
        )
        .unwrap();
    assert_eq!(
        count(&p).unwrap(),
        "8813835312287964978894".parse::<Integer>().unwrap()
    );
}
