//! The `qwalk` command line.
//!
//! Every subcommand builds a [`Table`] and writes it as CSV or JSON. Exit
//! status is 0 on success, 1 on invalid input and 2 when `verify` finds a
//! failing criterion.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::coin::{Coin, QubitState};
use crate::density::{cdf_mu, density_k, density_mu, limit_density, MeasureSpec};
use crate::error::{Error, Result};
use crate::jacobi::{jacobi_closed, jacobi_from_moments, jacobi_head_general};
use crate::moments::{moment_asym, moment_quadrature, MomentSeq};
use crate::orthopoly::{genfun_residual, gram_matrix, monic_coeffs};
use crate::output::Table;
use crate::stieltjes::{density, invert_measure, transform, DEFAULT_EPS_SCHEDULE};
use crate::walk::evolve;

/// Norm² slack accepted (and normalized away) for `--state`.
const STATE_NORM_SLACK: f64 = 1e-3;

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Quantum walks on the line and their spectral measures")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact distribution of the walk at time n (columns x, prob).
    Simulate(SimulateArgs),
    /// k, the weak-limit density, mu(r, c) and its CDF on a grid.
    Density(DensityArgs),
    /// Closed-form moments against quadrature.
    Moments(MomentsArgs),
    /// Closed-form Jacobi parameters against recovery from moments.
    Jacobi(JacobiArgs),
    /// Monic orthogonal polynomials: coefficients, Gram matrix or generating function residual.
    Poly(PolyArgs),
    /// Closed-form densities against Stieltjes inversion.
    Stieltjes(StieltjesArgs),
    /// Stieltjes transform along a horizontal line.
    Transform(TransformArgs),
    /// Run the acceptance suite; exit 2 if any criterion fails.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// `hadamard`, `identity`, or four entries `a,b,c,d` as `re:im`.
    #[arg(long, default_value = "hadamard")]
    coin: String,
    /// Initial coin state `alpha,beta` as `re:im` pairs.
    #[arg(long, default_value = "0.7071067811865476:0,0:0.7071067811865476")]
    state: String,
    #[arg(long)]
    steps: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct WalkMeasureArgs {
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
}

impl WalkMeasureArgs {
    fn spec(&self) -> Result<MeasureSpec> {
        MeasureSpec::asymmetric(self.r, self.c)
    }

    fn meta(&self, m: &mut Map<String, Value>) {
        m.insert("r".into(), json!(self.r));
        m.insert("c".into(), json!(self.c));
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    max: Option<f64>,
    #[arg(long, default_value_t = 41)]
    count: usize,
}

impl GridArgs {
    /// Evenly spaced points; bounds default to the given range.
    fn points(&self, default: (f64, f64)) -> Result<Vec<f64>> {
        let lo = self.min.unwrap_or(default.0);
        let hi = self.max.unwrap_or(default.1);
        if self.count < 2 {
            return Err(Error::invalid(format!("grid count {} must be at least 2", self.count)));
        }
        if !(lo < hi) {
            return Err(Error::invalid(format!("grid min {lo} must be below max {hi}")));
        }
        let step = (hi - lo) / (self.count - 1) as f64;
        Ok((0..self.count).map(|i| lo + step * i as f64).collect())
    }

    fn meta(&self, m: &mut Map<String, Value>, points: &[f64]) {
        m.insert("min".into(), json!(points[0]));
        m.insert("max".into(), json!(points[points.len() - 1]));
        m.insert("count".into(), json!(self.count));
    }
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    measure: WalkMeasureArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    measure: WalkMeasureArgs,
    /// Largest moment index.
    #[arg(long, default_value_t = 20)]
    max: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct JacobiArgs {
    #[command(flatten)]
    measure: WalkMeasureArgs,
    #[arg(long, default_value_t = 6)]
    levels: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyTable {
    Coeffs,
    Gram,
    Genfun,
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[command(flatten)]
    measure: WalkMeasureArgs,
    #[arg(long, value_enum, default_value_t = PolyTable::Coeffs)]
    table: PolyTable,
    /// Highest polynomial degree (coeffs, gram).
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Evaluation point x (genfun).
    #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
    x: f64,
    /// Series variable z (genfun).
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    z: f64,
    /// Number of series terms (genfun).
    #[arg(long, default_value_t = 40)]
    terms: usize,
    #[command(flatten)]
    out: OutputArgs,
}

/// Either a walk measure (`--r`, `--c`) or a general one (`--gammas`,
/// `--tail-gamma`, optional `--q0`, `--q`).
#[derive(Debug, Args)]
struct AnyMeasureArgs {
    #[arg(long)]
    r: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c: f64,
    /// Head recurrence coefficients `p0,p1,..`.
    #[arg(long, value_delimiter = ',', conflicts_with = "r")]
    gammas: Option<Vec<f64>>,
    #[arg(long, requires = "gammas")]
    tail_gamma: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    q0: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    q: f64,
}

impl AnyMeasureArgs {
    fn spec(&self) -> Result<MeasureSpec> {
        match (&self.gammas, self.r) {
            (Some(head), _) => {
                let tail = self
                    .tail_gamma
                    .ok_or_else(|| Error::invalid("--gammas needs --tail-gamma"))?;
                MeasureSpec::general_shifted(head.clone(), tail, self.q0, self.q)
            }
            (None, Some(r)) => MeasureSpec::asymmetric(r, self.c),
            (None, None) => Err(Error::invalid("give either --r or --gammas with --tail-gamma")),
        }
    }

    fn meta(&self, m: &mut Map<String, Value>) {
        match &self.gammas {
            Some(head) => {
                m.insert("gammas".into(), json!(head));
                m.insert("tail_gamma".into(), json!(self.tail_gamma));
                m.insert("q0".into(), json!(self.q0));
                m.insert("q".into(), json!(self.q));
            }
            None => {
                m.insert("r".into(), json!(self.r));
                m.insert("c".into(), json!(self.c));
            }
        }
    }
}

#[derive(Debug, Args)]
struct StieltjesArgs {
    #[command(flatten)]
    measure: AnyMeasureArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[command(flatten)]
    measure: AnyMeasureArgs,
    #[command(flatten)]
    grid: GridArgs,
    /// Imaginary part of every evaluation point.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    im: f64,
    #[command(flatten)]
    out: OutputArgs,
}

/// Parses `re:im` (or a bare real number).
fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::invalid(format!("cannot parse complex number {s:?}; expected re:im"));
    let (re, im) = match s.trim().split_once(':') {
        Some((re, im)) => (re, im),
        None => (s.trim(), "0"),
    };
    Ok(Complex64::new(
        re.trim().parse().map_err(|_| bad())?,
        im.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_complex_list(s: &str, len: usize, what: &str) -> Result<Vec<Complex64>> {
    let values = s.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    if values.len() != len {
        return Err(Error::invalid(format!(
            "{what} needs {len} comma-separated re:im values, got {}",
            values.len()
        )));
    }
    Ok(values)
}

pub fn parse_coin(s: &str) -> Result<Coin> {
    match s.trim() {
        "hadamard" => Ok(Coin::hadamard()),
        "identity" => Ok(Coin::identity()),
        other => {
            let v = parse_complex_list(other, 4, "--coin")?;
            Coin::new(v[0], v[1], v[2], v[3])
        }
    }
}

/// Parses `alpha,beta`; a norm² within 1e-3 of 1 is normalized.
pub fn parse_state(s: &str) -> Result<QubitState> {
    let v = parse_complex_list(s, 2, "--state")?;
    let norm_sq = v[0].norm_sqr() + v[1].norm_sqr();
    if (norm_sq - 1.0).abs() > STATE_NORM_SLACK {
        return Err(Error::NotNormalized { norm_sq });
    }
    let n = norm_sq.sqrt();
    QubitState::new(v[0] / n, v[1] / n)
}

fn meta_for(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m
}

fn simulate(a: &SimulateArgs) -> Result<(Table, Map<String, Value>)> {
    let coin = parse_coin(&a.coin)?;
    let state = parse_state(&a.state)?;
    let dist = evolve(&coin, &state, a.steps).distribution();
    let mut t = Table::new(["x", "prob"]);
    for (x, p) in dist.iter() {
        t.push(vec![x.into(), p.into()])?;
    }
    let mut m = meta_for("simulate");
    m.insert("coin".into(), json!(a.coin));
    m.insert("state".into(), json!(a.state));
    m.insert("steps".into(), json!(a.steps));
    Ok((t, m))
}

fn density_table(a: &DensityArgs) -> Result<(Table, Map<String, Value>)> {
    let spec = a.measure.spec()?;
    let (r, c) = (a.measure.r, a.measure.c);
    let points = a.grid.points((-1.0, 1.0))?;
    let mut t = Table::new(["x", "k", "limit", "density", "cdf"]);
    for &x in &points {
        t.push(vec![
            x.into(),
            density_k(x, r).into(),
            limit_density(x, r, c).into(),
            density_mu(x, &spec)?.into(),
            cdf_mu(x, &spec)?.into(),
        ])?;
    }
    let mut m = meta_for("density");
    a.measure.meta(&mut m);
    a.grid.meta(&mut m, &points);
    Ok((t, m))
}

fn moments_table(a: &MomentsArgs) -> Result<(Table, Map<String, Value>)> {
    let spec = a.measure.spec()?;
    let mut t = Table::new(["m", "closed_form", "quadrature", "abs_diff"]);
    for m in 0..=a.max {
        let closed = moment_asym(m, a.measure.r, a.measure.c);
        let quad = moment_quadrature(m, &spec)?;
        t.push(vec![m.into(), closed.into(), quad.into(), (closed - quad).abs().into()])?;
    }
    let mut m = meta_for("moments");
    a.measure.meta(&mut m);
    m.insert("max".into(), json!(a.max));
    Ok((t, m))
}

fn jacobi_table(a: &JacobiArgs) -> Result<(Table, Map<String, Value>)> {
    let spec = a.measure.spec()?;
    let (r, c) = (a.measure.r, a.measure.c);
    if a.levels == 0 {
        return Err(Error::invalid("--levels must be at least 1"));
    }
    let recovered = jacobi_from_moments(&MomentSeq::closed_form(&spec, 2 * a.levels)?, a.levels)?;
    let closed = jacobi_closed(r, c)?;
    // away from c = 0, ±1, ±1/r only the first two levels have closed forms
    let head = match closed {
        Some(_) => None,
        None => Some(jacobi_head_general(r, c)?),
    };
    let closed_at = |n: usize| -> (Option<f64>, Option<f64>) {
        match (&closed, &head) {
            (Some(j), _) => (Some(j.beta(n)), Some(j.gamma(n))),
            (None, Some(h)) if n == 0 => (Some(h.beta0), Some(h.gamma0)),
            (None, Some(h)) if n == 1 => (Some(h.beta1), Some(h.gamma1)),
            _ => (None, None),
        }
    };
    let mut t = Table::new([
        "n",
        "beta_closed",
        "gamma_closed",
        "beta_recovered",
        "gamma_recovered",
        "abs_diff",
    ]);
    for n in 0..a.levels {
        let (b, g) = closed_at(n);
        let (rb, rg) = (recovered.beta(n), recovered.gamma(n));
        let diff = b.zip(g).map(|(b, g)| (b - rb).abs().max((g - rg).abs()));
        t.push(vec![n.into(), b.into(), g.into(), rb.into(), rg.into(), diff.into()])?;
    }
    let mut m = meta_for("jacobi");
    a.measure.meta(&mut m);
    m.insert("levels".into(), json!(a.levels));
    Ok((t, m))
}

fn poly_table(a: &PolyArgs) -> Result<(Table, Map<String, Value>)> {
    let spec = a.measure.spec()?;
    let (r, c) = (a.measure.r, a.measure.c);
    let mut m = meta_for("poly");
    a.measure.meta(&mut m);
    m.insert("table".into(), json!(format!("{:?}", a.table).to_lowercase()));
    let jacobi = || {
        jacobi_closed(r, c)?.ok_or_else(|| {
            Error::invalid(format!(
                "c = {c} has no closed-form Jacobi parameters; use c = 0, ±1 or ±1/r"
            ))
        })
    };
    let t = match a.table {
        PolyTable::Coeffs => {
            let mut t = Table::new(["n", "power", "coefficient"]);
            for p in monic_coeffs(&jacobi()?, a.degree) {
                for (k, v) in p.coeffs().iter().enumerate() {
                    t.push(vec![p.degree().into(), k.into(), (*v).into()])?;
                }
            }
            m.insert("degree".into(), json!(a.degree));
            t
        }
        PolyTable::Gram => {
            let mut t = Table::new(["m", "n", "inner_product"]);
            for (i, row) in gram_matrix(&jacobi()?, &spec, a.degree)?.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    t.push(vec![i.into(), k.into(), (*v).into()])?;
                }
            }
            m.insert("degree".into(), json!(a.degree));
            t
        }
        PolyTable::Genfun => {
            if c != 0.0 {
                return Err(Error::invalid("the generating function table needs c = 0"));
            }
            let mut t = Table::new(["x", "z", "terms", "residual"]);
            let res = genfun_residual(a.x, a.z, r, a.terms)?;
            t.push(vec![a.x.into(), a.z.into(), a.terms.into(), res.into()])?;
            m.insert("x".into(), json!(a.x));
            m.insert("z".into(), json!(a.z));
            m.insert("terms".into(), json!(a.terms));
            t
        }
    };
    Ok((t, m))
}

/// Default grid: 41 points over the middle 95% of the support.
fn interior_default(spec: &MeasureSpec) -> (f64, f64) {
    let (lo, hi) = spec.support();
    let w = hi - lo;
    (lo + 0.025 * w, hi - 0.025 * w)
}

fn stieltjes_table(a: &StieltjesArgs) -> Result<(Table, Map<String, Value>)> {
    let spec = a.measure.spec()?;
    let points = a.grid.points(interior_default(&spec))?;
    let mut t = Table::new(["x", "rho_closed", "rho_inverted", "abs_diff"]);
    for &x in &points {
        let closed = density(&spec, x)?;
        let inverted = invert_measure(&spec, x, &DEFAULT_EPS_SCHEDULE)?;
        t.push(vec![x.into(), closed.into(), inverted.into(), (closed - inverted).abs().into()])?;
    }
    let mut m = meta_for("stieltjes");
    a.measure.meta(&mut m);
    a.grid.meta(&mut m, &points);
    Ok((t, m))
}

fn transform_table(a: &TransformArgs) -> Result<(Table, Map<String, Value>)> {
    let spec = a.measure.spec()?;
    let (lo, hi) = spec.support();
    let points = a.grid.points((lo - 0.5, hi + 0.5))?;
    let mut t = Table::new(["re_z", "im_z", "re_g", "im_g"]);
    for &x in &points {
        let g = transform(&spec, Complex64::new(x, a.im))?;
        t.push(vec![x.into(), a.im.into(), g.re.into(), g.im.into()])?;
    }
    let mut m = meta_for("transform");
    a.measure.meta(&mut m);
    a.grid.meta(&mut m, &points);
    m.insert("im".into(), json!(a.im));
    Ok((t, m))
}

fn emit(
    table: &Table,
    meta: Map<String, Value>,
    out_args: &OutputArgs,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    let text = match out_args.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(meta),
    };
    match &out_args.output {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn verify(out: &mut dyn Write) -> std::io::Result<i32> {
    let results = acceptance::run_all();
    for r in &results {
        writeln!(out, "{}", r.line())?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    writeln!(out, "{} of {} criteria passed", results.len() - failed, results.len())?;
    Ok(if failed == 0 { 0 } else { 2 })
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 1;
        }
    };

    let (built, out_args) = match &cli.command {
        Command::Simulate(a) => (simulate(a), &a.out),
        Command::Density(a) => (density_table(a), &a.out),
        Command::Moments(a) => (moments_table(a), &a.out),
        Command::Jacobi(a) => (jacobi_table(a), &a.out),
        Command::Poly(a) => (poly_table(a), &a.out),
        Command::Stieltjes(a) => (stieltjes_table(a), &a.out),
        Command::Transform(a) => (transform_table(a), &a.out),
        Command::Verify => {
            return verify(out).unwrap_or_else(|e| {
                let _ = writeln!(err, "error: {e}");
                1
            })
        }
    };
    match built {
        Ok((table, meta)) => match emit(&table, meta, out_args, out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5:-1").unwrap(), Complex64::new(0.5, -1.0));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert!(parse_complex("a:b").is_err());
        assert!(parse_complex_list("1:0,0:0", 4, "--coin").is_err());
    }

    #[test]
    fn state_parsing_normalizes_rounded_input() {
        let s = parse_state("0.7071:0,0:0.7071").unwrap();
        assert!((s.alpha().norm_sqr() + s.beta().norm_sqr() - 1.0).abs() < 1e-12);
        assert!(matches!(parse_state("1:0,1:0"), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn coin_parsing() {
        assert_eq!(parse_coin("hadamard").unwrap(), Coin::hadamard());
        assert_eq!(parse_coin("1:0,0:0,0:0,1:0").unwrap(), Coin::identity());
        assert!(parse_coin("1:0,1:0,0:0,1:0").is_err());
    }
}
