//! Command-line front end: argument definitions and command runners.

pub mod formats;

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use shortrat::arith::{to_i64, to_i64_vec, IntMatrix, Integer};
use shortrat::genfun::{
    expand_in, format_short_rat_fun, leading_monomial, parse_short_rat_fun, specialize_all_ones,
    TermOrder,
};
use shortrat::polytope::{brion_genfun, count, Polyhedron};
use shortrat::series::{
    ehrhart_series, gorenstein_check, hilbert_series, GradedSemigroup, UniSeries,
};
use shortrat::toric::{
    count_binomials_bounded, expand_binomials, normal_form_desk, order_filter, universal_gb_genfun,
    DegreeBound, ToricInstance,
};
use shortrat::Error;

#[derive(Debug, Parser)]
#[command(
    name = "shortrat",
    version,
    about = "Lattice points, Ehrhart and Hilbert series, toric binomial encodings"
)]
pub struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the lattice points of a polytope file.
    Count { file: PathBuf },
    /// Generating function of the lattice points of a polytope file.
    Brion { file: PathBuf },
    /// Ehrhart series of a polytope file.
    Ehrhart {
        file: PathBuf,
        /// Number of series coefficients to print.
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Hilbert series of the semigroup of lattice points in a cone given by
    /// its rays.
    Hilbert {
        file: PathBuf,
        /// Grading vector, e.g. `1,1`; defaults to the sum of the inner facet
        /// normals.
        #[arg(long)]
        grading: Option<String>,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Decide whether the semigroup ring of a cone given by its rays is
    /// Gorenstein.
    Gorenstein { file: PathBuf },
    /// Binomial encodings of the toric ideal of a matrix file.
    Toric {
        #[command(subcommand)]
        command: ToricCommand,
    },
    /// Operations on a short rational function file.
    Genfun {
        #[command(subcommand)]
        command: GenfunCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum ToricCommand {
    /// Box-bounded binomial generating function (universal Gröbner basis
    /// superset).
    Ugb { matrix: PathBuf },
    /// Binomials of the box-bounded set that are correctly ordered.
    Filter {
        matrix: PathBuf,
        /// Term order file; defaults to lex.
        #[arg(long)]
        order: Option<PathBuf>,
        /// List the pairs with all entries at most this value.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Count binomials of bounded degree.
    Count {
        matrix: PathBuf,
        #[arg(short = 'D', long = "degree")]
        degree: String,
        /// How the degree is bounded.
        #[arg(long, value_enum, default_value_t = Bound::Box)]
        bound: Bound,
        /// Grading for `--bound graded`.
        #[arg(long)]
        grading: Option<String>,
    },
    /// Normal form of a monomial by division with the correctly ordered
    /// binomials inside a window.
    Nf {
        matrix: PathBuf,
        /// Exponent vector, e.g. `1,0,1,0`.
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        window: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bound {
    /// Every entry of `u` and `v` at most `D`.
    Box,
    /// First row of the matrix applied to `u` at most `D`.
    FirstRow,
    /// `--grading` applied to `u` at most `D`.
    Graded,
}

#[derive(Debug, Subcommand)]
pub enum GenfunCommand {
    /// Number of encoded points (value at all ones).
    Count { file: PathBuf },
    /// Coefficients inside a box.
    Expand {
        file: PathBuf,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Leading exponent under a term order (lex by default).
    Leading {
        file: PathBuf,
        #[arg(long)]
        order: Option<PathBuf>,
    },
}

/// Result of a command: text for stdout, its JSON form and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            code: 0,
        }
    }
}

/// Exit code for empty input polytopes.
pub const EXIT_EMPTY: i32 = 2;

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn polytope(path: &Path) -> anyhow::Result<Polyhedron> {
    formats::parse_polytope(&read(path)?)
        .with_context(|| format!("invalid polytope file {}", path.display()))
}

fn matrix(path: &Path) -> anyhow::Result<IntMatrix> {
    formats::parse_matrix(&read(path)?)
        .with_context(|| format!("invalid matrix file {}", path.display()))
}

fn order(path: Option<&Path>, n: usize) -> anyhow::Result<TermOrder> {
    match path {
        None => Ok(TermOrder::lex(n)),
        Some(p) => formats::parse_order(&read(p)?, n)
            .with_context(|| format!("invalid term order file {}", p.display())),
    }
}

fn vector(s: &str, n: usize, what: &str) -> anyhow::Result<Vec<Integer>> {
    let v = formats::parse_vector(s).with_context(|| format!("invalid {what}"))?;
    if v.len() != n {
        bail!("{what} must have {n} entries, found {}", v.len());
    }
    Ok(v)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn series_outcome(s: &UniSeries, terms: usize) -> Outcome {
    let coeffs = s.expand(terms);
    let text = format!(
        "{s}\n{}\n{}",
        s.to_text(),
        coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let json = json!({
        "series": s.to_string(),
        "numerator": s.numerator().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "denominator": s.denominator(),
        "coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    Outcome::ok(text, json)
}

fn empty(text: &str) -> Outcome {
    Outcome {
        text: text.into(),
        json: json!({ "empty": true }),
        code: EXIT_EMPTY,
    }
}

fn semigroup(file: &Path, grading: Option<&str>) -> anyhow::Result<GradedSemigroup> {
    let rays = matrix(file)?;
    let s = match grading {
        None => GradedSemigroup::with_facet_grading(rays)?,
        Some(g) => {
            let g = vector(g, rays.cols(), "grading")?;
            GradedSemigroup::new(rays, g)?
        }
    };
    Ok(s)
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Count { file } => {
            let p = polytope(file)?;
            let c = count(&p)?;
            let out = Outcome::ok(c.to_string(), json!({ "count": c.to_string() }));
            Ok(if c == Integer::from(0) {
                Outcome {
                    code: EXIT_EMPTY,
                    ..out
                }
            } else {
                out
            })
        }
        Command::Brion { file } => {
            let f = brion_genfun(&polytope(file)?)?;
            let body = format_short_rat_fun(&f);
            Ok(Outcome::ok(
                body.trim_end().to_string(),
                json!({ "terms": f.len(), "genfun": body }),
            ))
        }
        Command::Ehrhart { file, terms } => {
            let p = polytope(file)?;
            match ehrhart_series(&p) {
                Err(Error::EmptySet) => Ok(empty("empty polytope")),
                r => Ok(series_outcome(&r?, *terms)),
            }
        }
        Command::Hilbert {
            file,
            grading,
            terms,
        } => {
            let s = semigroup(file, grading.as_deref())?;
            Ok(series_outcome(&hilbert_series(&s)?, *terms))
        }
        Command::Gorenstein { file } => {
            let s = semigroup(file, None)?;
            let g = gorenstein_check(&s)?;
            Ok(match g.witness {
                Some(a) if g.gorenstein => Outcome::ok(
                    format!("yes ({})", join(&a)),
                    json!({ "gorenstein": true, "witness": a }),
                ),
                _ => Outcome::ok("no".into(), json!({ "gorenstein": false })),
            })
        }
        Command::Toric { command } => run_toric(command),
        Command::Genfun { command } => run_genfun(command),
    }
}

fn pairs_text(pairs: &[(Vec<i64>, Vec<i64>)]) -> String {
    pairs
        .iter()
        .map(|(u, v)| format!("{} -> {}", join(u), join(v)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_toric(cmd: &ToricCommand) -> anyhow::Result<Outcome> {
    match cmd {
        ToricCommand::Ugb { matrix: path } => {
            let inst = ToricInstance::new(matrix(path)?)?;
            let g = universal_gb_genfun(&inst)?;
            let body = format_short_rat_fun(g.genfun());
            let text = format!(
                "# box bound M = {}\n# {} terms\n{}",
                inst.bound(),
                g.genfun().len(),
                body.trim_end()
            );
            Ok(Outcome::ok(
                text,
                json!({ "bound": inst.bound().to_string(), "terms": g.genfun().len(), "genfun": body }),
            ))
        }
        ToricCommand::Filter {
            matrix: path,
            order: ord,
            window,
        } => {
            let inst = ToricInstance::new(matrix(path)?)?;
            let ord = order(ord.as_deref(), inst.num_vars())?;
            let f = order_filter(&universal_gb_genfun(&inst)?, &ord)?;
            match window {
                Some(w) => {
                    let pairs = expand_binomials(&f, *w)?;
                    let text = pairs_text(&pairs);
                    Ok(Outcome::ok(text, json!({ "pairs": pairs })))
                }
                None => {
                    let body = format_short_rat_fun(f.genfun());
                    Ok(Outcome::ok(
                        body.trim_end().to_string(),
                        json!({ "terms": f.genfun().len(), "genfun": body }),
                    ))
                }
            }
        }
        ToricCommand::Count {
            matrix: path,
            degree,
            bound,
            grading,
        } => {
            let a = matrix(path)?;
            let d: Integer = degree
                .trim()
                .parse()
                .map_err(|_| anyhow!("degree must be an integer, found {degree:?}"))?;
            let kind = match (bound, grading) {
                (Bound::Box, None) => DegreeBound::Box,
                (Bound::FirstRow, None) => DegreeBound::FirstRow,
                (Bound::Graded, Some(g)) => DegreeBound::Graded(vector(g, a.cols(), "grading")?),
                (Bound::Graded, None) => bail!("--bound graded needs --grading"),
                (_, Some(_)) => bail!("--grading is only used with --bound graded"),
            };
            let c = count_binomials_bounded(&a, &d, &kind)?;
            let unordered = c
                .unordered
                .as_ref()
                .map_or("undefined".to_string(), |x| x.to_string());
            let text = format!(
                "raw {}\ndiagonal {}\noff_diagonal {}\nunordered {}",
                c.raw, c.diagonal, c.off_diagonal, unordered
            );
            let json = json!({
                "raw": c.raw.to_string(),
                "diagonal": c.diagonal.to_string(),
                "off_diagonal": c.off_diagonal.to_string(),
                "unordered": c.unordered.map(|x| x.to_string()),
            });
            Ok(Outcome::ok(text, json))
        }
        ToricCommand::Nf {
            matrix: path,
            point,
            order: ord,
            window,
        } => {
            let inst = ToricInstance::new(matrix(path)?)?;
            let n = inst.num_vars();
            let a = to_i64_vec(&vector(point, n, "point")?)?;
            let ord = order(ord.as_deref(), n)?;
            let f = order_filter(&universal_gb_genfun(&inst)?, &ord)?;
            let pairs = expand_binomials(&f, *window)?;
            let nf = normal_form_desk(&a, &pairs, &ord);
            Ok(Outcome::ok(join(&nf), json!({ "normal_form": nf })))
        }
    }
}

fn run_genfun(cmd: &GenfunCommand) -> anyhow::Result<Outcome> {
    let load = |p: &Path| -> anyhow::Result<_> {
        parse_short_rat_fun(&read(p)?)
            .with_context(|| format!("invalid generating function file {}", p.display()))
    };
    match cmd {
        GenfunCommand::Count { file } => {
            let c = specialize_all_ones(&load(file)?)?;
            Ok(Outcome::ok(
                c.to_string(),
                json!({ "count": c.to_string() }),
            ))
        }
        GenfunCommand::Expand { file, lo, hi } => {
            let f = load(file)?;
            let n = f.dim();
            let lo: Vec<i64> = vector(lo, n, "lower corner")?
                .iter()
                .map(to_i64)
                .collect::<Result<_, _>>()?;
            let hi: Vec<i64> = vector(hi, n, "upper corner")?
                .iter()
                .map(to_i64)
                .collect::<Result<_, _>>()?;
            let e = expand_in(&f, &lo, &hi)?;
            let text = e
                .iter()
                .map(|(a, c)| format!("{} : {c}", join(a)))
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!(e
                .iter()
                .map(|(a, c)| json!({ "exponent": a, "coefficient": c.to_string() }))
                .collect::<Vec<_>>());
            Ok(Outcome::ok(text, json))
        }
        GenfunCommand::Leading { file, order: ord } => {
            let f = load(file)?;
            let ord = order(ord.as_deref(), f.dim())?;
            let a = leading_monomial(&f, &ord)?;
            Ok(Outcome::ok(join(&a), json!({ "leading": a })))
        }
    }
}
