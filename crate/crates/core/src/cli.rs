//! The `curvehull` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use serde_json::json;

use crate::curve::{parse_curve_spec, to_projective, CurveSpec, ProjectiveCurve};
use crate::degrees::{report, CurveInvariants};
use crate::edgesurface::{
    edge_components, pencil_edge_surface, secant_coordinates, space_ring, stationary_form,
    EdgeOptions, Route, PLUCKER_INDEX,
};
use crate::error::{Error, Result};
use crate::groebner::GbOptions;
use crate::polyring::{parse_polynomial, parse_rational, Polynomial, Rational};
use crate::tritangent::{
    cache_dir_from_env, chow_form_with, squares_ideal_cached, tritangent_ideal, ChowOptions,
    ChowResult, DEFAULT_SQUARES_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "curvehull",
    version,
    about = "Algebraic boundary of the convex hull of a space curve"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Suppress progress lines on standard error.
    #[arg(long)]
    pub quiet: bool,
}

/// Settings shared by every command.
#[derive(Args, Debug, Clone)]
pub struct JobConfig {
    /// Write results here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    pub json: bool,
    /// Maximum number of S-pairs per Gröbner basis.
    #[arg(long, default_value_t = 2_000_000)]
    pub max_pairs: usize,
    /// Wall-clock limit per Gröbner basis, in seconds.
    #[arg(long)]
    pub time_limit: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest degree of a squares ideal computed from scratch.
    #[arg(long, default_value_t = DEFAULT_SQUARES_CAP)]
    pub degree_cap: u32,
}

impl JobConfig {
    fn gb(&self, quiet: bool) -> GbOptions {
        GbOptions {
            max_pairs: self.max_pairs,
            time_limit: self.time_limit.map(Duration::from_secs),
            progress: !quiet,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Components of the edge surface, one per factor of the stationary form.
    Edge {
        spec: PathBuf,
        #[arg(long, default_value = "grassmannian", value_parser = ["grassmannian", "direct"])]
        route: String,
        /// Print the elimination generators before squarefree reduction.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Tritangent planes: the specialised squares ideal, or its Chow form.
    Tritangents {
        spec: PathBuf,
        #[arg(long)]
        chow: bool,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Enumerative invariants from degree, genus, nodes and cusps.
    Degrees {
        #[arg(short)]
        d: i64,
        #[arg(short)]
        g: i64,
        #[arg(short, default_value_t = 0)]
        n: i64,
        #[arg(short, default_value_t = 0)]
        k: i64,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Secant coordinates and the stationary-bisecant form.
    Phi {
        spec: PathBuf,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Generators of the ideal of binary forms that are squares.
    SquaresIdeal {
        #[arg(short, default_value_t = 6)]
        d: u32,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Edge surface of the intersection of two quadrics.
    Pencil {
        spec: PathBuf,
        #[command(flatten)]
        job: JobConfig,
    },
    /// Grid cells where a polynomial in x, y, z changes sign, as CSV.
    Sample {
        poly: PathBuf,
        /// `lo,hi` for all three axes or `xlo,xhi,ylo,yhi,zlo,zhi`.
        #[arg(long, default_value = "-2,2", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, default_value_t = 50)]
        resolution: usize,
        #[command(flatten)]
        job: JobConfig,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_PARTIAL,
        Error::Parse { .. }
        | Error::Io(_)
        | Error::Invalid(_)
        | Error::InvalidProfile(_)
        | Error::DegreeMismatch { .. } => EXIT_INPUT,
        _ => EXIT_FAILURE,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<CurveSpec> {
    parse_curve_spec(&read(path)?).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn load_curve(path: &Path) -> Result<ProjectiveCurve> {
    match load_spec(path)? {
        CurveSpec::Trigonometric(t) => to_projective(&t),
        CurveSpec::BinaryForms(c) => Ok(c),
        CurveSpec::QuadricPencil(_) => Err(Error::Invalid(
            "a quadric pencil has no rational parametrization; use `pencil`".into(),
        )),
    }
}

/// Result text and exit code of one command.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            code: EXIT_OK,
        }
    }
}

fn lines<I: IntoIterator<Item = String>>(it: I) -> String {
    it.into_iter().map(|l| l + "\n").collect()
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let quiet = cli.quiet;
    match &cli.command {
        Command::Edge {
            spec,
            route,
            raw,
            threads,
            job,
        } => cmd_edge(spec, route.parse()?, *raw, *threads, job, quiet),
        Command::Tritangents { spec, chow, job } => cmd_tritangents(spec, *chow, job, quiet),
        Command::Degrees { d, g, n, k, job } => cmd_degrees(*d, *g, *n, *k, job),
        Command::Phi { spec, job } => cmd_phi(spec, job),
        Command::SquaresIdeal { d, job } => {
            let p = squares_ideal_cached(
                *d,
                cache_dir_from_env().as_deref(),
                job.degree_cap,
                &job.gb(quiet),
            )?;
            let gens: Vec<String> = p.generators().iter().map(|g| g.to_text()).collect();
            Ok(Outcome::ok(if job.json {
                json!({ "d": d, "generators": gens }).to_string() + "\n"
            } else {
                lines(gens)
            }))
        }
        Command::Pencil { spec, job } => cmd_pencil(spec, job),
        Command::Sample {
            poly,
            bbox,
            resolution,
            ..
        } => cmd_sample(poly, bbox, *resolution),
    }
}

fn cmd_edge(
    spec: &Path,
    route: Route,
    raw: bool,
    threads: usize,
    job: &JobConfig,
    quiet: bool,
) -> Result<Outcome> {
    let curve = match load_spec(spec)? {
        CurveSpec::QuadricPencil(_) => return cmd_pencil(spec, job),
        CurveSpec::Trigonometric(t) => to_projective(&t)?,
        CurveSpec::BinaryForms(c) => c,
    };
    let opts = EdgeOptions {
        route,
        gb: job.gb(quiet),
        threads: threads.max(1),
    };
    let es = edge_components(&curve, &opts)?;
    let code = if es.is_complete() {
        EXIT_OK
    } else {
        EXIT_PARTIAL
    };
    let text = if job.json {
        let comps: Vec<_> = es
            .components
            .iter()
            .map(|c| {
                let mut v = json!({
                    "phi_factor": c.phi_factor.to_text(),
                    "surface": c.surface.to_text(),
                    "degree": c.degree,
                    "reduced": c.reduced,
                });
                if raw {
                    v["raw"] = json!(c.raw.to_text());
                    v["raw_degree"] = json!(c.raw_degree);
                }
                if let Some(i) = &c.non_principal {
                    v["ideal"] = json!(i
                        .generators()
                        .iter()
                        .map(|g| g.to_text())
                        .collect::<Vec<_>>());
                }
                v
            })
            .collect();
        let failures: Vec<_> = es
            .failures
            .iter()
            .map(|(f, e)| json!({ "phi_factor": f.to_text(), "error": e.to_string() }))
            .collect();
        serde_json::to_string_pretty(&json!({
            "phi": es.phi.to_text(),
            "components": comps,
            "failures": failures,
        }))
        .unwrap()
            + "\n"
    } else {
        let mut out = vec![format!("phi = {}", es.phi)];
        for c in &es.components {
            out.push(format!(
                "# factor {} degree {}{}",
                c.phi_factor,
                c.degree,
                if c.reduced { "" } else { " (non-reduced)" }
            ));
            out.push(if raw {
                c.raw.to_text()
            } else {
                c.surface.to_text()
            });
        }
        for (f, e) in &es.failures {
            out.push(format!("# factor {f} failed: {e}"));
        }
        lines(out)
    };
    Ok(Outcome { text, code })
}

fn cmd_tritangents(spec: &Path, chow: bool, job: &JobConfig, quiet: bool) -> Result<Outcome> {
    let curve = load_curve(spec)?;
    let gb = job.gb(quiet);
    let p = squares_ideal_cached(
        curve.degree(),
        cache_dir_from_env().as_deref(),
        job.degree_cap,
        &gb,
    )?;
    let t = tritangent_ideal(&curve, &p)?;
    let texts = |gens: &[Polynomial]| gens.iter().map(|g| g.to_text()).collect::<Vec<_>>();
    if !chow {
        let gens = texts(t.ideal().generators());
        return Ok(Outcome::ok(if job.json {
            json!({ "ideal": gens }).to_string() + "\n"
        } else {
            lines(gens)
        }));
    }
    let opts = ChowOptions {
        gb,
        seed: job.seed,
        ..ChowOptions::default()
    };
    let text = match chow_form_with(&t, &opts)? {
        ChowResult::Form(f) if job.json => {
            json!({ "positive_dimensional": false, "chow": f.to_text(), "degree": f.total_degree() }).to_string() + "\n"
        }
        ChowResult::Form(f) => lines([f.to_text()]),
        ChowResult::PositiveDimensional(i) if job.json => {
            json!({ "positive_dimensional": true, "ideal": texts(i.generators()) }).to_string() + "\n"
        }
        ChowResult::PositiveDimensional(i) => {
            let mut out = vec!["# positive-dimensional family of tritangent planes".to_string()];
            out.extend(texts(i.generators()));
            lines(out)
        }
    };
    Ok(Outcome::ok(text))
}

fn cmd_degrees(d: i64, g: i64, n: i64, k: i64, job: &JobConfig) -> Result<Outcome> {
    let r = report(&CurveInvariants::new(d, g, n, k)?)?;
    if job.json {
        return Ok(Outcome::ok(
            serde_json::to_string_pretty(&r).unwrap() + "\n",
        ));
    }
    let value = serde_json::to_value(&r).unwrap();
    let rows = value
        .as_object()
        .unwrap()
        .iter()
        .filter(|(_, v)| !v.is_null())
        .map(|(name, v)| format!("{name:<26}{v}"))
        .collect::<Vec<_>>();
    Ok(Outcome::ok(lines(rows)))
}

fn cmd_phi(spec: &Path, job: &JobConfig) -> Result<Outcome> {
    let curve = load_curve(spec)?;
    let s = secant_coordinates(&curve)?;
    let phi = stationary_form(&curve)?;
    let names: Vec<String> = PLUCKER_INDEX
        .iter()
        .map(|(i, j)| format!("u{i}{j}"))
        .collect();
    let text = if job.json {
        let u: serde_json::Map<String, serde_json::Value> = names
            .iter()
            .zip(&s.u)
            .map(|(n, p)| (n.clone(), json!(p.to_text())))
            .collect();
        serde_json::to_string_pretty(&json!({ "u": u, "phi": phi.to_text() })).unwrap() + "\n"
    } else {
        let mut out: Vec<String> = names
            .iter()
            .zip(&s.u)
            .map(|(n, p)| format!("{n} = {p}"))
            .collect();
        out.push(format!("phi = {phi}"));
        lines(out)
    };
    Ok(Outcome::ok(text))
}

fn cmd_pencil(spec: &Path, job: &JobConfig) -> Result<Outcome> {
    let CurveSpec::QuadricPencil(p) = load_spec(spec)? else {
        return Err(Error::Invalid(
            "`pencil` needs a quadric_pencil spec".into(),
        ));
    };
    let s = pencil_edge_surface(&p)?;
    Ok(Outcome::ok(if job.json {
        json!({ "surface": s.to_text(), "degree": s.total_degree() }).to_string() + "\n"
    } else {
        lines([s.to_text()])
    }))
}

/// Axis ranges `[lo, hi]` for x, y and z.
/// A rational written as `p/q` or as a decimal like `-1.25`.
fn parse_decimal(s: &str) -> Result<Rational> {
    let Some((int, frac)) = s.split_once('.') else {
        return parse_rational(s);
    };
    let bad = || Error::Invalid(format!("not a number: `{s}`"));
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let n = if negative { -n } else { n };
    Ok(Rational::new(n, BigInt::from(10u32).pow(frac.len() as u32)))
}

pub fn parse_bbox(text: &str) -> Result<[(Rational, Rational); 3]> {
    let vals = text
        .split(',')
        .map(|s| parse_decimal(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    let pairs = match vals.len() {
        2 => vec![(vals[0].clone(), vals[1].clone()); 3],
        6 => vals
            .chunks(2)
            .map(|c| (c[0].clone(), c[1].clone()))
            .collect(),
        n => {
            return Err(Error::Invalid(format!(
                "bbox needs 2 or 6 numbers, got {n}"
            )))
        }
    };
    if pairs.iter().any(|(lo, hi)| lo >= hi) {
        return Err(Error::Invalid("bbox ranges must satisfy lo < hi".into()));
    }
    Ok(pairs.try_into().unwrap())
}

/// Centers of the grid cells on whose corners `f` takes both signs. Values
/// that are tiny in floating point are re-evaluated exactly.
pub fn sample_sign_changes(
    f: &Polynomial,
    bbox: &[(Rational, Rational); 3],
    resolution: usize,
) -> Result<Vec<[f64; 3]>> {
    if resolution == 0 {
        return Err(Error::Invalid("resolution must be positive".into()));
    }
    let sr = space_ring();
    let f = f.to_ring(&sr)?;
    let n = resolution;
    let step: Vec<Rational> = bbox
        .iter()
        .map(|(lo, hi)| (hi - lo) / Rational::from_integer((n as i64).into()))
        .collect();
    let coord = |axis: usize, i: usize| {
        &bbox[axis].0 + &step[axis] * Rational::from_integer((i as i64).into())
    };
    let to_f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    let grid: Vec<Vec<f64>> = (0..3)
        .map(|a| (0..=n).map(|i| to_f(&coord(a, i))).collect())
        .collect();
    let idx = |i: usize, j: usize, k: usize| (i * (n + 1) + j) * (n + 1) + k;
    let mut sign = vec![0i8; (n + 1).pow(3)];
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let p = [grid[0][i], grid[1][j], grid[2][k]];
                let v = f.eval_f64(&p);
                let scale = f.eval_abs_f64(&p);
                let s = if v.abs() > 1e-9 * scale.max(f64::MIN_POSITIVE) {
                    v.signum() as i8
                } else {
                    let exact = f.eval(&[coord(0, i), coord(1, j), coord(2, k)]);
                    match exact.cmp(&Rational::from_integer(0.into())) {
                        std::cmp::Ordering::Greater => 1,
                        std::cmp::Ordering::Less => -1,
                        std::cmp::Ordering::Equal => 0,
                    }
                };
                sign[idx(i, j, k)] = s;
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (mut pos, mut neg, mut zero) = (false, false, false);
                for (di, dj, dk) in (0..8).map(|c| (c & 1, (c >> 1) & 1, (c >> 2) & 1)) {
                    match sign[idx(i + di, j + dj, k + dk)] {
                        1 => pos = true,
                        -1 => neg = true,
                        _ => zero = true,
                    }
                }
                if (pos && neg) || zero {
                    out.push([
                        (grid[0][i] + grid[0][i + 1]) / 2.0,
                        (grid[1][j] + grid[1][j + 1]) / 2.0,
                        (grid[2][k] + grid[2][k + 1]) / 2.0,
                    ]);
                }
            }
        }
    }
    Ok(out)
}

fn cmd_sample(poly: &Path, bbox: &str, resolution: usize) -> Result<Outcome> {
    let f = parse_polynomial(&space_ring(), read(poly)?.trim())?;
    let points = sample_sign_changes(&f, &parse_bbox(bbox)?, resolution)?;
    if points.is_empty() {
        log::warn!("EmptyOutput: no sign changes of the polynomial inside the box");
    }
    let mut text = String::from("x,y,z\n");
    for p in points {
        text.push_str(&format!("{},{},{}\n", p[0], p[1], p[2]));
    }
    Ok(Outcome::ok(text))
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let level = if cli.quiet { "warn" } else { "info" };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp_secs()
        .try_init();
    let output = job_output(&cli.command);
    match run(&cli) {
        Ok(o) => {
            if let Err(e) = emit(output.as_deref(), &o.text) {
                eprintln!("error: {e}");
                return exit_code(&e);
            }
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn job_output(c: &Command) -> Option<PathBuf> {
    let job = match c {
        Command::Edge { job, .. }
        | Command::Tritangents { job, .. }
        | Command::Degrees { job, .. }
        | Command::Phi { job, .. }
        | Command::SquaresIdeal { job, .. }
        | Command::Pencil { job, .. }
        | Command::Sample { job, .. } => job,
    };
    job.output.clone()
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bbox_forms() {
        let b = parse_bbox("-2,2").unwrap();
        assert_eq!(b[2].0, Rational::from_integer((-2).into()));
        assert!(parse_bbox("0,1,0,1,0,1").is_ok());
        assert!(parse_bbox("1,0").is_err());
        assert!(parse_bbox("0,1,2").is_err());
        let b = parse_bbox("-1.5,0.25").unwrap();
        assert_eq!(
            b[0],
            (
                Rational::new((-3).into(), 2.into()),
                Rational::new(1.into(), 4.into())
            )
        );
        assert!(parse_bbox("1.,2").is_err());
    }

    #[test]
    fn sphere_shell() {
        let f = Polynomial::parse(&space_ring(), "x^2+y^2+z^2-1").unwrap();
        let pts = sample_sign_changes(&f, &parse_bbox("-2,2").unwrap(), 20).unwrap();
        assert!(!pts.is_empty());
        let cell = 4.0 / 20.0;
        for p in &pts {
            let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((r - 1.0).abs() < cell, "{r}");
        }
    }

    #[test]
    fn constant_has_no_sign_change() {
        let f = Polynomial::parse(&space_ring(), "1").unwrap();
        assert!(sample_sign_changes(&f, &parse_bbox("-2,2").unwrap(), 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::ResourceLimit("pairs".into())),
            EXIT_PARTIAL
        );
        assert_eq!(exit_code(&Error::Io("missing".into())), EXIT_INPUT);
        assert_eq!(
            main_with_args(["curvehull", "degrees", "-d", "3", "-g", "0"]),
            EXIT_INPUT
        );
        assert_eq!(main_with_args(["curvehull", "frobnicate"]), EXIT_INPUT);
    }
}
