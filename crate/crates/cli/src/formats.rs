//! Input file formats.
//!
//! Polytope files follow the LattE convention: a header `m n+1`, then `m`
//! rows `β c₁ … c_n` meaning `β + c·x ≥ 0`, optionally followed by
//! `linearity k i₁ … i_k` (1-based rows that hold with equality) and
//! `nonnegative k j₁ … j_k` (1-based variables that are nonnegative).
//! Matrix files have a header `rows cols` followed by the rows.

use shortrat::arith::{IntMatrix, IntVector, Integer};
use shortrat::genfun::TermOrder;
use shortrat::polytope::Polyhedron;
use thiserror::Error;

/// Entry counts above this are rejected before allocation.
const MAX_ENTRIES: usize = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError {
        line,
        msg: msg.into(),
    }
}

/// Nonempty lines with `#` comments removed, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_int(tok: &str, line: usize) -> Result<Integer, FormatError> {
    tok.parse::<Integer>()
        .map_err(|_| err(line, format!("expected an integer, found {tok:?}")))
}

fn parse_count(tok: &str, line: usize, what: &str) -> Result<usize, FormatError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, format!("expected {what}, found {tok:?}")))
}

/// The integers of a whitespace-separated row.
fn parse_row(l: &str, line: usize) -> Result<IntVector, FormatError> {
    l.split_whitespace().map(|t| parse_int(t, line)).collect()
}

fn header(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
) -> Result<(usize, usize, usize), FormatError> {
    let (line, h) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let toks: Vec<&str> = h.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(err(line, "header must be `rows cols`"));
    }
    let r = parse_count(toks[0], line, "a row count")?;
    let c = parse_count(toks[1], line, "a column count")?;
    if r.checked_mul(c).is_none_or(|x| x > MAX_ENTRIES) {
        return Err(err(line, "matrix is too large"));
    }
    Ok((line, r, c))
}

fn rows(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    r: usize,
    c: usize,
) -> Result<Vec<IntVector>, FormatError> {
    let mut out = Vec::with_capacity(r);
    for k in 0..r {
        let (line, l) = lines
            .next()
            .ok_or_else(|| err(0, format!("expected {r} rows, found {k}")))?;
        let row = parse_row(l, line)?;
        if row.len() != c {
            return Err(err(
                line,
                format!("expected {c} entries, found {}", row.len()),
            ));
        }
        out.push(row);
    }
    Ok(out)
}

/// 1-based indices after a keyword, as 0-based indices below `limit`.
fn index_list(toks: &[&str], line: usize, limit: usize) -> Result<Vec<usize>, FormatError> {
    let k = parse_count(
        toks.first().ok_or_else(|| err(line, "missing count"))?,
        line,
        "a count",
    )?;
    if toks.len() != k + 1 {
        return Err(err(line, format!("expected {k} indices")));
    }
    toks[1..]
        .iter()
        .map(|t| {
            let i = parse_count(t, line, "an index")?;
            if i == 0 || i > limit {
                return Err(err(line, format!("index {i} out of range 1..={limit}")));
            }
            Ok(i - 1)
        })
        .collect()
}

/// Parses a LattE-style polytope file.
pub fn parse_polytope(text: &str) -> Result<Polyhedron, FormatError> {
    let mut lines = content_lines(text);
    let (hline, m, cols) = header(&mut lines)?;
    if cols == 0 {
        return Err(err(hline, "column count must be at least 1"));
    }
    let n = cols - 1;
    let body = rows(&mut lines, m, cols)?;
    let mut linear = vec![false; m];
    let mut nonneg: Vec<usize> = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "linearity" => {
                for i in index_list(&toks[1..], line, m)? {
                    linear[i] = true;
                }
            }
            "nonnegative" => nonneg.extend(index_list(&toks[1..], line, n)?),
            other => return Err(err(line, format!("unexpected {other:?} after the matrix"))),
        }
    }
    let (mut a, mut b, mut e, mut d) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (row, &lin) in body.iter().zip(&linear) {
        // β + c·x ≥ 0  ⇔  (−c)·x ≤ β
        let coeffs: IntVector = row[1..].iter().map(|x| -x).collect();
        if lin {
            e.push(coeffs);
            d.push(row[0].clone());
        } else {
            a.push(coeffs);
            b.push(row[0].clone());
        }
    }
    for j in nonneg {
        a.push(
            (0..n)
                .map(|k| {
                    if k == j {
                        Integer::from(-1)
                    } else {
                        Integer::from(0)
                    }
                })
                .collect(),
        );
        b.push(Integer::from(0));
    }
    let a = IntMatrix::from_rows(a, n).map_err(|x| err(hline, x.to_string()))?;
    let e = IntMatrix::from_rows(e, n).map_err(|x| err(hline, x.to_string()))?;
    Polyhedron::new(a, b, e, d).map_err(|x| err(hline, x.to_string()))
}

/// Parses a matrix file `rows cols` followed by the rows.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, FormatError> {
    let mut lines = content_lines(text);
    let (hline, r, c) = header(&mut lines)?;
    let body = rows(&mut lines, r, c)?;
    if let Some((line, _)) = lines.next() {
        return Err(err(line, "unexpected content after the matrix"));
    }
    IntMatrix::from_rows(body, c).map_err(|x| err(hline, x.to_string()))
}

/// Parses a term order file: `n` rows of `n` integers, no header.
pub fn parse_order(text: &str, n: usize) -> Result<TermOrder, FormatError> {
    let mut out = Vec::with_capacity(n);
    for (line, l) in content_lines(text) {
        let row = parse_row(l, line)?;
        if row.len() != n || out.len() == n {
            return Err(err(
                line,
                format!("term order must be {n} rows of {n} integers"),
            ));
        }
        out.push(row);
    }
    if out.len() != n {
        return Err(err(
            0,
            format!("term order must be {n} rows of {n} integers"),
        ));
    }
    let w = IntMatrix::from_rows(out, n).map_err(|x| err(0, x.to_string()))?;
    let ord = TermOrder::new(w).map_err(|x| err(0, x.to_string()))?;
    if !ord.is_term_order() {
        return Err(err(0, "matrix does not define a term order"));
    }
    Ok(ord)
}

/// Parses a comma- or space-separated integer vector such as `1,2,3`.
pub fn parse_vector(s: &str) -> Result<IntVector, FormatError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_int(t, 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use shortrat::arith::int_vec;

    #[test]
    fn cube_file() {
        let p = parse_polytope("6 4\n1 -1 0 0\n1 0 -1 0\n1 0 0 -1\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")
            .unwrap();
        assert_eq!(p.ambient_dim(), 3);
        assert!(p.contains(&int_vec(&[1, 1, 0])));
        assert!(!p.contains(&int_vec(&[2, 0, 0])));
    }

    #[test]
    fn linearity_and_nonnegative() {
        let p = parse_polytope("1 3\n2 -1 -1\nlinearity 1 1\nnonnegative 2 1 2\n").unwrap();
        assert_eq!(p.equations().0.rows(), 1);
        assert_eq!(p.inequalities().0.rows(), 2);
        assert!(parse_polytope("1 3\n2 -1 -1\nlinearity 1 2\n").is_err());
    }

    #[test]
    fn malformed() {
        for bad in [
            "",
            "2",
            "1 2\n1",
            "1 2\n1 x",
            "99999999 99999999\n",
            "1 0\n\n",
            "1 2\n1 1\nfoo 1 1",
        ] {
            assert!(parse_polytope(bad).is_err(), "{bad:?}");
        }
        assert!(parse_matrix("1 2\n1 2\n3 4").is_err());
        assert!(parse_order("1 0\n0 1", 2).is_ok());
        assert!(parse_order("1 0\n1 0", 2).is_err());
        assert!(parse_order("-1 0\n0 1", 2).is_err());
        assert_eq!(parse_vector("1, 2 3").unwrap(), int_vec(&[1, 2, 3]));
    }
}
