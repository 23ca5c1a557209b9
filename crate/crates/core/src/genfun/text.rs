//! Plain-text form of a short rational function.
//!
//! ```text
//! dim 2
//! 1 ; 0,0 ; 1,0 | 0,1
//! -1/2 ; 3,-1 ; 1,1
//! ```
//!
//! Each term line is `coefficient ; numerator ; denominators` where the
//! vectors are comma-separated integers, denominators are separated by `|`
//! and the denominator field may be empty. Blank lines
//! and lines starting with `#` are ignored.

use std::fmt::Write as _;

use super::{BasicTerm, Exponent, ShortRatFun};
use crate::arith::Rational;
use crate::{Error, Result};

fn join(e: &[i64]) -> String {
    e.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

pub fn format_short_rat_fun(f: &ShortRatFun) -> String {
    let mut s = format!("dim {}\n", f.dim());
    for t in f.terms() {
        let dens = t
            .denoms
            .iter()
            .map(|c| join(c))
            .collect::<Vec<_>>()
            .join(" | ");
        let _ = writeln!(s, "{} ; {} ; {}", t.coeff, join(&t.numer), dens);
    }
    s
}

fn parse_exponent(field: &str, dim: usize, line: usize) -> Result<Exponent> {
    let v: Exponent = field
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<i64>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad exponent {x:?}: {e}"),
            })
        })
        .collect::<Result<_>>()?;
    if v.len() != dim {
        return Err(Error::Parse {
            line,
            msg: format!("expected {dim} entries, found {}", v.len()),
        });
    }
    Ok(v)
}

pub fn parse_short_rat_fun(text: &str) -> Result<ShortRatFun> {
    let mut dim: Option<usize> = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let Some(n) = dim else {
            let rest = l.strip_prefix("dim").ok_or_else(|| Error::Parse {
                line,
                msg: "expected `dim <n>` header".into(),
            })?;
            let n = rest.trim().parse::<usize>().map_err(|e| Error::Parse {
                line,
                msg: format!("bad dimension: {e}"),
            })?;
            dim = Some(n);
            continue;
        };
        let fields: Vec<&str> = l.split(';').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                msg: "expected `coeff ; numerator ; denominators`".into(),
            });
        }
        let coeff: Rational = fields[0].trim().parse().map_err(|_| Error::Parse {
            line,
            msg: format!("bad coefficient {:?}", fields[0].trim()),
        })?;
        let numer = parse_exponent(fields[1], n, line)?;
        let denoms = if fields[2].trim().is_empty() {
            Vec::new()
        } else {
            fields[2]
                .split('|')
                .map(|c| parse_exponent(c, n, line))
                .collect::<Result<_>>()?
        };
        let t = BasicTerm::new(coeff, numer, denoms).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        terms.push(t);
    }
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    ShortRatFun::new(dim, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn round_trip() {
        let f = ShortRatFun::new(
            2,
            vec![
                BasicTerm::new(rat(1, 1), vec![0, 0], vec![vec![1, 0], vec![0, 1]]).unwrap(),
                BasicTerm::new(rat(-1, 2), vec![3, -1], vec![]).unwrap(),
            ],
        )
        .unwrap();
        let s = format_short_rat_fun(&f);
        assert_eq!(parse_short_rat_fun(&s).unwrap(), f);
        assert_eq!(
            parse_short_rat_fun("dim 0\n").unwrap(),
            ShortRatFun::zero(0)
        );
    }

    #[test]
    fn rejects_garbage() {
        for s in [
            "",
            "dim x",
            "dim 1\n1 ; 0",
            "dim 1\n1 ; 0 ; 0",
            "dim 1\n1 ; 0 ; 1 2",
            "dim 1\nq ; 0 ;",
            "dim 2\n1 ; 0 ;",
        ] {
            assert!(
                matches!(parse_short_rat_fun(s), Err(Error::Parse { .. })),
                "{s:?}"
            );
        }
    }
}
