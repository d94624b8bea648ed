//! Command-line front end.
//!
//! Subcommands: `roots`, `paths`, `points`, `character`, `straighten`,
//! `verify`.  Output is deterministic for a fixed invocation; exit code 0
//! on success, 1 when a verification suite fails, 2 on usage errors.

use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::oracle::suites::{run_suite, SuiteOptions};
use crate::polytope::{enumerate_points, graded_character, DominantWeight, MultiExponent};
use crate::rootsys::{Family, PositiveRoot, RootSystem};
use crate::straighten::reduce_to_basis;
use crate::{dyck, Error};

#[derive(Parser, Debug)]
#[command(
    name = "pbwbasis",
    about = "Monomial bases, Dyck-path polytopes and straightening for PBW-graded modules in types A and C",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Root system family, A or C
    #[arg(long)]
    family: String,
    /// Rank (at least 1)
    #[arg(long)]
    rank: u32,
}

impl SystemArgs {
    fn build(&self) -> Result<RootSystem, Error> {
        RootSystem::new(Family::from_str(&self.family)?, self.rank)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the positive roots in canonical order
    Roots {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Enumerate the Dyck paths
    Paths {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Enumerate the lattice points of the polytope of a dominant weight
    Points {
        #[command(flatten)]
        sys: SystemArgs,
        /// Comma-separated fundamental-weight coefficients, e.g. 2,1
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// The graded character of a dominant weight
    Character {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Rewrite a divided-power monomial over the basis monomials
    Straighten {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        weight: String,
        /// Exponent assignment, e.g. "a[1,2]=2,a[2,2]=1" (unnamed roots are zero)
        #[arg(long)]
        exponent: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Run a verification suite against the oracle
    Verify {
        /// dims | table1 | basis | straighten | minkowski
        #[arg(long)]
        suite: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        max_rank: Option<u32>,
        #[arg(long)]
        max_coeff: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
}

fn parse_weight(sys: &RootSystem, input: &str) -> Result<DominantWeight, Error> {
    let mut coeffs = Vec::new();
    for tok in input.split(',') {
        let tok = tok.trim();
        coeffs.push(tok.parse::<u32>().map_err(|_| {
            Error::Parse(format!("malformed weight entry `{tok}` (expected a non-negative integer)"))
        })?);
    }
    let w = DominantWeight(coeffs);
    w.validate(sys)?;
    Ok(w)
}

/// Splits an exponent assignment on commas at bracket depth zero, so root
/// tokens like `a[1,2]` survive.
fn split_assignments(input: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in input.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_exponent(sys: &RootSystem, input: &str) -> Result<MultiExponent, Error> {
    let mut exp = MultiExponent::zero(sys);
    for part in split_assignments(input) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (root_tok, val) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed exponent entry `{part}` (expected a[i,j]=k)")))?;
        let root = PositiveRoot::parse_token(root_tok)?;
        let idx = sys.root_index(root)?;
        let v: u32 = val.trim().parse().map_err(|_| {
            Error::Parse(format!("malformed exponent value `{}` in `{part}`", val.trim()))
        })?;
        exp.0[idx] += v;
    }
    Ok(exp)
}

fn root_json(r: &PositiveRoot) -> serde_json::Value {
    json!({"i": r.row, "j": r.col.letter(), "barred": r.col.is_barred()})
}

/// JSON body of the `roots` subcommand; shared with the C ABI.
pub fn roots_body(sys: &RootSystem) -> serde_json::Value {
    serde_json::Value::Array(sys.positive_roots().iter().map(root_json).collect())
}

/// JSON body of the `paths` subcommand.
pub fn paths_body(sys: &RootSystem) -> serde_json::Value {
    let arr: Vec<Vec<_>> = dyck::enumerate_paths(sys)
        .iter()
        .map(|p| p.roots.iter().map(root_json).collect())
        .collect();
    serde_json::json!(arr)
}

/// JSON body of the `points` subcommand.
pub fn points_body(sys: &RootSystem, lam: &DominantWeight) -> Result<serde_json::Value, Error> {
    let points = enumerate_points(sys, lam)?;
    let tokens: Vec<String> = sys.positive_roots().iter().map(|r| r.token()).collect();
    Ok(json!({
        "family": sys.family().to_string(),
        "rank": sys.rank(),
        "weight": lam.0,
        "roots": tokens,
        "points": points.iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
    }))
}

/// JSON body of the `character` subcommand, sorted by total drop then
/// lexicographically.
pub fn character_body(sys: &RootSystem, lam: &DominantWeight) -> Result<serde_json::Value, Error> {
    let ch = graded_character(sys, lam)?;
    let mut records: Vec<_> = ch.entries.iter().collect();
    records.sort_by_key(|(drop, _)| (drop.iter().sum::<i64>(), (*drop).clone()));
    Ok(serde_json::Value::Array(
        records.iter().map(|(drop, poly)| json!({"drop": drop, "poly": poly})).collect(),
    ))
}

/// JSON body of the `straighten` subcommand.
pub fn straighten_body(
    sys: &RootSystem,
    lam: &DominantWeight,
    exp: &MultiExponent,
) -> Result<serde_json::Value, Error> {
    let reduction = reduce_to_basis(sys, lam, exp)?;
    let terms: Vec<_> = reduction
        .iter()
        .map(|(t, c)| json!({"exponent": t, "coeff": c.to_string()}))
        .collect();
    Ok(json!({
        "family": sys.family().to_string(),
        "rank": sys.rank(),
        "weight": lam.0,
        "input": exp.0,
        "terms": terms,
    }))
}

/// Parses the `--exponent` assignment syntax; shared with the C ABI.
pub fn parse_exponent_spec(sys: &RootSystem, input: &str) -> Result<MultiExponent, Error> {
    parse_exponent(sys, input)
}

fn execute(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Roots { sys, format } => {
            let sys = sys.build()?;
            match format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&roots_body(&sys)).unwrap());
                }
                _ => {
                    for r in sys.positive_roots() {
                        println!("{}", r.token());
                    }
                }
            }
            Ok(0)
        }
        Command::Paths { sys, format } => {
            let sys = sys.build()?;
            match format {
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&paths_body(&sys)).unwrap());
                }
                _ => {
                    for p in &dyck::enumerate_paths(&sys) {
                        println!("{}", p.tokens());
                    }
                }
            }
            Ok(0)
        }
        Command::Points { sys, weight, format } => {
            let sys = sys.build()?;
            let lam = parse_weight(&sys, &weight)?;
            match format {
                OutputFormat::Json => {
                    let body = points_body(&sys, &lam)?;
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
                _ => {
                    let tokens: Vec<String> =
                        sys.positive_roots().iter().map(|r| r.token()).collect();
                    println!("{}", tokens.join(","));
                    for p in &enumerate_points(&sys, &lam)? {
                        let row: Vec<String> = p.0.iter().map(|v| v.to_string()).collect();
                        println!("{}", row.join(","));
                    }
                }
            }
            Ok(0)
        }
        Command::Character { sys, weight, format } => {
            let sys = sys.build()?;
            let lam = parse_weight(&sys, &weight)?;
            match format {
                OutputFormat::Text => {
                    let ch = graded_character(&sys, &lam)?;
                    let mut records: Vec<_> = ch.entries.iter().collect();
                    records.sort_by_key(|(drop, _)| (drop.iter().sum::<i64>(), (*drop).clone()));
                    for (drop, poly) in records {
                        println!("{drop:?} {poly:?}");
                    }
                }
                _ => {
                    let body = character_body(&sys, &lam)?;
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
            }
            Ok(0)
        }
        Command::Straighten { sys, weight, exponent, format } => {
            let sys = sys.build()?;
            let lam = parse_weight(&sys, &weight)?;
            let exp = parse_exponent(&sys, &exponent)?;
            match format {
                OutputFormat::Text => {
                    for (t, c) in &reduce_to_basis(&sys, &lam, &exp)? {
                        println!("{c} {t:?}");
                    }
                }
                _ => {
                    let body = straighten_body(&sys, &lam, &exp)?;
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                }
            }
            Ok(0)
        }
        Command::Verify { suite, family, max_rank, max_coeff, seed, format } => {
            let opts = SuiteOptions {
                family: family.as_deref().map(Family::from_str).transpose()?,
                max_rank,
                max_coeff,
                seed,
            };
            let report = run_suite(&suite, &opts)?;
            match format {
                OutputFormat::Text => {
                    for c in &report.cases {
                        println!("[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.details);
                    }
                    println!("suite {}: {}", report.suite, if report.passed { "pass" } else { "FAIL" });
                }
                _ => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
            }
            Ok(if report.passed { 0 } else { 1 })
        }
    }
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

/// Test entry point: run with explicit arguments, capturing the exit code.
pub fn run_from<I, T>(args: I) -> Result<i32, Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Parse(e.to_string()))?;
    execute(cli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_splitting_respects_brackets() {
        let parts = split_assignments("a[1,2]=2,a[2,2]=1");
        assert_eq!(parts, vec!["a[1,2]=2", "a[2,2]=1"]);
    }

    #[test]
    fn exponent_parsing() {
        let sys = RootSystem::new(Family::C, 2).unwrap();
        let e = parse_exponent(&sys, "a[1,2]=2,a[1,~1]=1").unwrap();
        assert_eq!(e.0, vec![0, 2, 1, 0]);
        assert!(parse_exponent(&sys, "a[9,9]=1").is_err());
        assert!(parse_exponent(&sys, "a[1,2]").is_err());
    }

    #[test]
    fn weight_parsing_diagnostics() {
        let sys = RootSystem::new(Family::A, 2).unwrap();
        let err = parse_weight(&sys, "1,x").unwrap_err();
        assert!(err.to_string().contains("`x`"), "{err}");
        assert!(parse_weight(&sys, "1").is_err()); // wrong length
        assert_eq!(parse_weight(&sys, "2,1").unwrap().0, vec![2, 1]);
    }
}
