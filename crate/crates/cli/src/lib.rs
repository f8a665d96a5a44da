//! Command-line front end: argument parsing, job dispatch and output
//! formatting. `main.rs` only maps errors onto exit codes.

pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use flexlocus::flex::{
    certify, contact_order, degree_report, flex_line, flex_polynomial, is_flex,
};
use flexlocus::poly::{parse_point, parse_poly};
use flexlocus::resultant::{resultant_scalar, DegreeVector};
use flexlocus::{acceptance, Error, Field, Hypersurface, MultiPoly, PrimeField, Rationals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use report::{
    format_point, CertificateReport, Contact, ContactReport, CriterionReport, Degrees, ResultantReport, RhoReport,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "flexlocus", version, about = "Flex points and flex loci of projective hypersurfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient field: `q` for the rationals or `fp:P` for a prime P.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field_spec)]
    pub field: FieldSpec,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the flex polynomial rho of a hypersurface.
    Rho(PolyArg),
    /// Decide whether a point of the hypersurface is a flex point.
    Isflex(PointArgs),
    /// Order of contact of the line through --point and --dir.
    Contact {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long, value_name = "COORDS")]
        dir: String,
    },
    /// Flex line certificate at a flex point.
    Flexline(PointArgs),
    /// Degree formulas for dimension n and degree d.
    Degrees {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'd')]
        d: u32,
    },
    /// Resultant of n+1 forms in x0..xn.
    Res {
        #[arg(required = true, num_args = 1..)]
        polys: Vec<String>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct PolyArg {
    /// Polynomial text, or @FILE to read it from a file.
    pub poly: String,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub input: PolyArg,
    /// Comma-separated homogeneous coordinates.
    #[arg(long, value_name = "COORDS")]
    pub point: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

pub fn parse_field_spec(s: &str) -> Result<FieldSpec, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let p = s
        .strip_prefix("fp:")
        .ok_or_else(|| format!("expected `q` or `fp:P`, got `{s}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
    PrimeField::new(p).map_err(|e| e.to_string())?;
    Ok(FieldSpec::Prime(p))
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    /// 2 for anything caused by the input, 3 for internal inconsistencies.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !e.is_validation() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => f.write_str(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Runs a job and returns what it would print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Degrees { n, d } => {
            let report = Degrees::from(degree_report(n, d)?);
            return Ok(emit(cli.json, &report, report.text()));
        }
        Command::Selftest { criterion } => return selftest(cli, criterion),
        _ => {}
    }
    match cli.field {
        FieldSpec::Rationals => dispatch(cli, &Rationals),
        FieldSpec::Prime(p) => dispatch(cli, &PrimeField::new(p)?),
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) -> String {
    if json {
        serde_json::to_string_pretty(value).expect("reports serialize")
    } else {
        text
    }
}

fn read_source(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Small primes make the random choices inside the algorithms fail with
/// high probability, so fields must have at least `2d + 1` elements.
fn check_field_size<F: Field>(field: &F, d: u32) -> Result<(), CliError> {
    let p = field.characteristic();
    if p != 0 && p < 2 * d as u64 + 1 {
        return Err(Error::Usage(format!("prime {p} is too small for degree {d}: need p >= 2d + 1 = {}", 2 * d + 1)).into());
    }
    Ok(())
}

fn hypersurface<F: Field>(cli: &Cli, field: &F, src: &str, nvars: Option<usize>) -> Result<Hypersurface<F>, CliError> {
    let f = parse_poly(field, &read_source(src)?, nvars)?;
    if let Some(d) = f.homogeneous_degree() {
        check_field_size(field, d)?;
    }
    Ok(Hypersurface::with_seed(f, cli.seed)?)
}

fn with_point<F: Field>(cli: &Cli, field: &F, args: &PointArgs) -> Result<(Hypersurface<F>, Vec<F::Elem>), CliError> {
    let p = parse_point(field, &args.point)?;
    let v = hypersurface(cli, field, &args.input.poly, Some(p.len()))?;
    Ok((v, p))
}

fn dispatch<F: Field>(cli: &Cli, field: &F) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Rho(arg) => {
            let v = hypersurface(cli, field, &arg.poly, None)?;
            let degrees = Degrees::from(degree_report(v.dim(), v.degree())?);
            let start = Instant::now();
            let fp = flex_polynomial(&v, cli.seed)?;
            eprintln!("rho computed in {:.3}s", start.elapsed().as_secs_f64());
            let report = RhoReport {
                field: field.name(),
                rho: fp.rho.to_string(),
                ell: fp.ell.to_string(),
                degree: fp.rho.homogeneous_degree(),
                degrees,
            };
            Ok(emit(cli.json, &report, report.text()))
        }
        Command::Isflex(args) => {
            let (v, p) = with_point(cli, field, args)?;
            if cli.json {
                let report = CertificateReport::new(field, &certify(&v, &p, &mut rng)?);
                Ok(emit(true, &report, String::new()))
            } else {
                Ok(is_flex(&v, &p, &mut rng)?.to_string())
            }
        }
        Command::Flexline(args) => {
            let (v, p) = with_point(cli, field, args)?;
            let report = CertificateReport::new(field, &flex_line(&v, &p, &mut rng)?);
            Ok(emit(cli.json, &report, report.text()))
        }
        Command::Contact { at, dir } => {
            let (v, p) = with_point(cli, field, at)?;
            let q = parse_point(field, dir)?;
            if q.len() != p.len() {
                return Err(Error::Usage("--point and --dir have different lengths".into()).into());
            }
            let order = contact_order(&v, &p, &q)?;
            let report = ContactReport {
                field: field.name(),
                point: format_point(field, &p),
                direction: format_point(field, &q),
                contact_order: Contact(order),
            };
            Ok(emit(cli.json, &report, order.to_string()))
        }
        Command::Res { polys } => {
            let n = polys.len();
            let parsed: Vec<MultiPoly<F>> = polys
                .iter()
                .map(|s| Ok(parse_poly(field, &read_source(s)?, Some(n))?))
                .collect::<Result<_, CliError>>()?;
            let degrees: Vec<u32> = parsed
                .iter()
                .map(|f| match f.homogeneous_degree() {
                    Some(d) if d >= 1 => Ok(d),
                    _ => Err(Error::Usage("each form must be homogeneous of positive degree".into())),
                })
                .collect::<Result<_, Error>>()?;
            check_field_size(field, degrees.iter().copied().max().unwrap_or(1))?;
            let value = resultant_scalar(&parsed, &DegreeVector::new(degrees.clone())?, &mut rng)?;
            let report = ResultantReport {
                field: field.name(),
                degrees,
                resultant: field.format(&value),
            };
            Ok(emit(cli.json, &report, report.resultant.clone()))
        }
        Command::Degrees { .. } | Command::Selftest { .. } => unreachable!("handled before dispatch"),
    }
}

fn selftest(cli: &Cli, criterion: Option<usize>) -> Result<String, CliError> {
    let ids: Vec<usize> = match criterion {
        Some(k) if (1..=acceptance::CRITERIA.len()).contains(&k) => vec![k],
        Some(k) => return Err(Error::Usage(format!("no criterion {k}")).into()),
        None => (1..=acceptance::CRITERIA.len()).collect(),
    };
    let outcomes: Vec<_> = ids.into_iter().map(|k| acceptance::run(k, cli.seed)).collect();
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let reports: Vec<CriterionReport> = outcomes
        .iter()
        .map(|o| CriterionReport {
            id: o.id,
            title: o.title.to_string(),
            passed: o.passed,
            detail: o.detail.clone(),
            seconds: o.elapsed.as_secs_f64(),
        })
        .collect();
    let mut text: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
    text.push(format!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len()));
    let out = emit(cli.json, &reports, text.join("\n"));
    if failed > 0 {
        // the report still goes out before the failure exit
        println!("{out}");
        return Err(Error::Internal(format!("{failed} acceptance criteria failed")).into());
    }
    Ok(out)
}
