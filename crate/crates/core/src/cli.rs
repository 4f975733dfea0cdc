//! The `umbra` command line.
//!
//! Exit codes: 0 success, 1 verification failure (or inconclusive),
//! 2 usage or parameter error, 3 numeric non-convergence.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Result, UmbraError};
use crate::exact::{
    format_rational, parse_rational, parse_rational_list, Poly, Rational, DEFAULT_DEGREE,
};
use crate::model::{build_by_name, build_monomials, verify_model, Parity, UmbralModel};
use crate::numeric::{self, linspace, QuadratureSpec, ResidualReport, ScalarFn, DEFAULT_STEP};
use crate::report::{worst_status, Status, VerificationReport};
use crate::transform::{self, check_biorthogonal, check_transmutation_intertwining, check_w0};
use crate::translation::{self, translate_formal};
use crate::weyl::{self, sl2, DiscreteKernel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable overriding the default model index cap.
pub const DEGREE_ENV: &str = "UMBRA_DEFAULT_DEGREE";

#[derive(Parser, Debug)]
#[command(
    name = "umbra",
    version,
    about = "Exact umbral calculus and Bessel transmutations"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Residual tolerance for numeric checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Decimal, or `p/q` for convenience.
fn float_arg(s: &str) -> std::result::Result<f64, String> {
    if let Ok(v) = s.trim().parse::<f64>() {
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("not a finite number: {s}"))
        };
    }
    parse_rational(s)
        .map(|r| crate::exact::to_f64(&r))
        .map_err(|_| format!("not a number: {s}"))
}

/// Sample points from `--grid a:b:n`.
#[derive(Clone, Debug)]
struct Grid(Vec<f64>);

/// `a:b:n` → `n` equally spaced points.
fn grid_arg(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected a:b:n, got {s}"));
    }
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("bad point count in {s}"))?;
    Ok(Grid(linspace(
        float_arg(parts[0])?,
        float_arg(parts[1])?,
        n,
    )))
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    #[arg(long)]
    model: String,
    /// Bessel index, as p/q.
    #[arg(long, value_parser = rational_arg)]
    nu: Option<Rational>,
    /// Model index cap N.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog models and their first basis elements.
    Models {
        #[arg(long, value_parser = rational_arg, default_value = "2")]
        nu: Rational,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Run exact verification checks.
    Verify(VerifyArgs),
    /// Covariant transform onto the monomial model.
    W0 {
        #[command(flatten)]
        model: ModelArgs,
        /// Coefficients c0,c1,... as p/q.
        #[arg(long)]
        poly: String,
    },
    /// Umbral map sending each source basis element to the target's.
    Transmute {
        #[arg(long)]
        from: String,
        #[arg(long = "to")]
        to: String,
        #[arg(long, value_parser = rational_arg)]
        nu: Option<Rational>,
        /// Bessel index of the target, if different.
        #[arg(long, value_parser = rational_arg)]
        to_nu: Option<Rational>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        poly: String,
    },
    /// Generalized translation; without --y the result is bivariate.
    Translate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_parser = rational_arg)]
        y: Option<Rational>,
        #[arg(long)]
        poly: String,
    },
    /// Little Bessel function, Poisson operator, Hankel transform.
    Bessel {
        #[command(subcommand)]
        op: BesselOp,
    },
    /// Heat-kernel transforms.
    Heat {
        #[command(subcommand)]
        op: HeatOp,
    },
    /// Cosine transform over the real line.
    Cosine {
        #[arg(long, value_parser = float_arg, required_unless_present = "grid")]
        v: Option<f64>,
        #[arg(long, value_parser = grid_arg)]
        grid: Option<Grid>,
        #[arg(long = "f", default_value = "gauss")]
        function: String,
    },
    /// Coefficient table of the generating function.
    Genfun {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Twisted convolution of two kernels read from JSON files.
    Convolve {
        #[arg(long)]
        k1: PathBuf,
        #[arg(long)]
        k2: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Ladder,
    Vacuum,
    Commutator,
    Model,
    Binomial,
    W0,
    Biorthogonal,
    Intertwining,
    Character,
    Delsarte,
    Genfun,
    GroupLaw,
    Weyl,
    Twisted,
    Sl2,
    Metaplectic,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, required_unless_present = "all")]
    check: Option<Check>,
    /// Every check that applies to the model.
    #[arg(long, conflicts_with = "check")]
    all: bool,
    /// Formal order M (group-law, weyl, twisted) or series order.
    #[arg(long)]
    order: Option<usize>,
    /// Output degree d for formal checks.
    #[arg(long, default_value_t = 4)]
    output_degree: usize,
    /// Target model for intertwining.
    #[arg(long = "to")]
    to: Option<String>,
}

#[derive(Subcommand, Debug)]
enum BesselOp {
    /// j(nu, lambda; x).
    J {
        #[arg(long, value_parser = float_arg)]
        nu: f64,
        #[arg(long, value_parser = float_arg)]
        lambda: f64,
        #[arg(long, value_parser = float_arg, required_unless_present = "grid")]
        x: Option<f64>,
        #[arg(long, value_parser = grid_arg)]
        grid: Option<Grid>,
    },
    /// Poisson operator, or its intertwining residuals.
    Poisson {
        #[arg(long, value_parser = float_arg)]
        nu: f64,
        #[arg(long, value_parser = float_arg, required_unless_present = "grid")]
        x: Option<f64>,
        #[arg(long, value_parser = grid_arg)]
        grid: Option<Grid>,
        #[arg(long = "f", default_value = "cos")]
        function: String,
        #[arg(long)]
        intertwining: bool,
        /// Finite-difference step.
        #[arg(long, default_value_t = DEFAULT_STEP)]
        h: f64,
    },
    /// Hankel transform, or its intertwining residual.
    Hankel {
        #[arg(long, value_parser = float_arg)]
        nu: f64,
        #[arg(long, value_parser = float_arg, required_unless_present = "grid")]
        lambda: Option<f64>,
        #[arg(long, value_parser = grid_arg)]
        grid: Option<Grid>,
        #[arg(long = "f", default_value = "exp-neg")]
        function: String,
        #[arg(long)]
        intertwining: bool,
    },
}

#[derive(Subcommand, Debug)]
enum HeatOp {
    /// (1/(2 sqrt(pi u))) ∫ f(s) exp(-s²/4u) ds.
    Covariant {
        #[arg(long, value_parser = float_arg, required_unless_present = "grid")]
        u: Option<f64>,
        #[arg(long, value_parser = grid_arg)]
        grid: Option<Grid>,
        #[arg(long = "f", conflicts_with = "poly")]
        function: Option<String>,
        /// Polynomial coefficients c0,c1,... instead of a named function.
        #[arg(long)]
        poly: Option<String>,
    },
}

/// A command's result in every output format.
struct Rendered {
    json: Vec<Value>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    plain: String,
    status: Status,
}

impl Rendered {
    fn from_reports(reports: Vec<VerificationReport>) -> Self {
        let status = worst_status(&reports);
        let header = ["check", "model", "status", "first_failure", "params"]
            .map(String::from)
            .to_vec();
        let rows = reports
            .iter()
            .map(|r| {
                let params = r
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                vec![
                    r.check.clone(),
                    r.model.clone(),
                    r.status.to_string(),
                    r.first_failure.clone().unwrap_or_default(),
                    params,
                ]
            })
            .collect();
        let plain = reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n");
        Self {
            json: reports.iter().map(VerificationReport::to_json).collect(),
            header,
            rows,
            plain,
            status,
        }
    }

    fn from_residual(r: ResidualReport, tol: f64) -> Self {
        let status = if r.passed(tol) {
            Status::Pass
        } else {
            Status::Fail
        };
        let header = vec![
            "check".into(),
            "max_residual".into(),
            "direction_holding".into(),
        ];
        let dir = r.direction_holding.clone().unwrap_or_default();
        let rows = vec![vec![
            r.check.clone(),
            format!("{:e}", r.max_residual),
            dir.clone(),
        ]];
        let mut plain = format!(
            "{}: max residual {:e} ({status} at tol {tol:e})",
            r.check, r.max_residual
        );
        if !dir.is_empty() {
            plain.push_str(&format!(", holding: {dir}"));
        }
        for key in ["max_r1", "max_r2"] {
            if let Some(v) = r.params.get(key) {
                plain.push_str(&format!(", {key} {v}"));
            }
        }
        Self {
            json: vec![r.to_json()],
            header,
            rows,
            plain,
            status,
        }
    }

    fn samples(var: &str, params: Value, points: &[(f64, f64)]) -> Self {
        let header = vec![var.to_string(), "value".into()];
        let rows = points
            .iter()
            .map(|(x, v)| vec![format!("{x}"), format!("{v}")])
            .collect();
        let plain = if points.len() == 1 {
            format!("{}", points[0].1)
        } else {
            points
                .iter()
                .map(|(x, v)| format!("{x}\t{v}"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        let mut obj = params;
        obj["samples"] = points
            .iter()
            .map(|(x, v)| json!({ var: x, "value": v }))
            .collect();
        Self {
            json: vec![obj],
            header,
            rows,
            plain,
            status: Status::Pass,
        }
    }

    fn poly(p: &Poly, var: &str, mut meta: Value) -> Self {
        let coeffs: Vec<String> = trimmed(p).iter().map(format_rational).collect();
        meta["coeffs"] = json!(coeffs);
        meta["display"] = json!(p.display_in(var).to_string());
        let rows = coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| vec![j.to_string(), c.clone()])
            .collect();
        Self {
            json: vec![meta],
            header: vec!["degree".into(), "coeff".into()],
            rows,
            plain: p.display_in(var).to_string(),
            status: Status::Pass,
        }
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Plain => writeln!(out, "{}", self.plain),
            Format::Json => {
                for v in &self.json {
                    writeln!(out, "{}", serde_json::to_string(v).expect("json"))?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

fn trimmed(p: &Poly) -> Vec<Rational> {
    let len = p.degree().map_or(1, |d| d + 1);
    p.coeffs()[..len].to_vec()
}

fn default_degree() -> Result<usize> {
    match std::env::var(DEGREE_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            UmbraError::InvalidParameter(format!(
                "{DEGREE_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_DEGREE),
    }
}

fn build(args: &ModelArgs, fallback: usize) -> Result<UmbralModel> {
    build_by_name(
        &args.model,
        args.degree.unwrap_or(fallback),
        args.nu.as_ref(),
    )
}

fn parse_poly(m: &UmbralModel, text: &str) -> Result<Poly> {
    let coeffs = parse_rational_list(text)
        .map_err(|e| UmbraError::InvalidParameter(format!("--poly: {e}")))?;
    Poly::from_coeffs(m.poly_cap(), coeffs)
}

/// Parses `argv` (including the program name), runs the command and writes
/// to stdout/stderr. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                UmbraError::NonConvergence { .. } | UmbraError::TailBound(_) => EXIT_NUMERIC,
                _ => EXIT_USAGE,
            };
        }
    };
    let written = match &cli.out {
        Some(path) => {
            std::fs::File::create(path).and_then(|mut f| rendered.write(cli.format, &mut f))
        }
        None => rendered.write(cli.format, out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    match rendered.status {
        Status::Pass => EXIT_OK,
        Status::Fail | Status::Inconclusive => EXIT_FAIL,
    }
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let tol = cli.tol.unwrap_or(1e-6);
    if tol.is_nan() || tol <= 0.0 {
        return Err(UmbraError::InvalidParameter(
            "--tol must be positive".into(),
        ));
    }
    let q = QuadratureSpec::default();
    match &cli.command {
        Command::Models { nu, degree } => models(nu, *degree),
        Command::Verify(args) => verify(args),
        Command::W0 { model, poly } => {
            let m = build(model, default_degree()?)?;
            let f = parse_poly(&m, poly)?;
            let image = transform::covariant_w0(&m, &f)?;
            Ok(Rendered::poly(
                &image,
                "u",
                json!({ "model": m.label(), "transform": "w0" }),
            ))
        }
        Command::Transmute {
            from,
            to,
            nu,
            to_nu,
            degree,
            poly,
        } => {
            let n = degree.unwrap_or(default_degree()?);
            let src = build_by_name(from, n, nu.as_ref())?;
            let dst = build_by_name(to, n, to_nu.as_ref().or(nu.as_ref()))?;
            let f = parse_poly(&src, poly)?;
            let image = transform::umbral_map(&src, &dst, &f)?;
            Ok(Rendered::poly(
                &image,
                "t",
                json!({ "from": src.label(), "to": dst.label() }),
            ))
        }
        Command::Translate { model, y, poly } => {
            let m = build(model, default_degree()?)?;
            let f = parse_poly(&m, poly)?;
            match y {
                Some(y) => {
                    let image = translation::generalized_translate(&m, y, &f)?;
                    Ok(Rendered::poly(
                        &image,
                        "t",
                        json!({ "model": m.label(), "y": format_rational(y) }),
                    ))
                }
                None => {
                    let b = translate_formal(&m, &f)?;
                    let mut rows = Vec::new();
                    for j in 0..=b.t_cap() {
                        for k in 0..=b.y_cap() {
                            let c = b.coeff(j, k);
                            if !num::Zero::is_zero(c) {
                                rows.push(vec![j.to_string(), k.to_string(), format_rational(c)]);
                            }
                        }
                    }
                    let terms: Vec<Value> = rows
                        .iter()
                        .map(|r| json!({ "t": r[0], "y": r[1], "coeff": r[2] }))
                        .collect();
                    Ok(Rendered {
                        json: vec![json!({ "model": m.label(), "terms": terms })],
                        header: vec!["t_degree".into(), "y_degree".into(), "coeff".into()],
                        rows,
                        plain: b.to_string(),
                        status: Status::Pass,
                    })
                }
            }
        }
        Command::Bessel { op } => bessel(op, &q, tol),
        Command::Heat {
            op:
                HeatOp::Covariant {
                    u,
                    grid,
                    function,
                    poly,
                },
        } => {
            let f = match (function, poly) {
                (_, Some(text)) => {
                    let coeffs = parse_rational_list(text)
                        .map_err(|e| UmbraError::InvalidParameter(format!("--poly: {e}")))?;
                    let cap = coeffs.len().saturating_sub(1);
                    ScalarFn::polynomial(&Poly::from_coeffs(cap, coeffs)?)
                }
                (Some(name), None) => ScalarFn::named(name)?,
                (None, None) => ScalarFn::one(),
            };
            let points = points_of(*u, grid);
            let values = sample(&points, |u| numeric::heat_covariant(&f, u, &q))?;
            Ok(Rendered::samples(
                "u",
                json!({ "transform": "heat-covariant", "f": f.name() }),
                &values,
            ))
        }
        Command::Cosine { v, grid, function } => {
            let f = ScalarFn::named(function)?;
            let values = sample(&points_of(*v, grid), |v| {
                numeric::cosine_transform(&f, v, &q)
            })?;
            Ok(Rendered::samples(
                "v",
                json!({ "transform": "cosine", "f": f.name() }),
                &values,
            ))
        }
        Command::Genfun { model, order } => {
            let m = build(model, default_degree()?.max(*order))?;
            let g = transform::generating_function(&m, *order)?;
            let mut rows = Vec::new();
            for (k, row) in g.rows.iter().enumerate() {
                for (j, c) in row.coeffs().iter().enumerate() {
                    if !num::Zero::is_zero(c) {
                        rows.push(vec![k.to_string(), j.to_string(), format_rational(c)]);
                    }
                }
            }
            let plain = g
                .rows
                .iter()
                .enumerate()
                .map(|(k, p)| format!("s^{k}: {p}"))
                .chain(std::iter::once(g.eigen_check.to_string()))
                .collect::<Vec<_>>()
                .join("\n");
            let table: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "s": r[0], "t": r[1], "coeff": r[2] }))
                .collect();
            Ok(Rendered {
                json: vec![
                    json!({ "model": m.label(), "order": order, "terms": table, "eigen_check": g.eigen_check.to_json() }),
                ],
                header: vec!["s_degree".into(), "t_degree".into(), "coeff".into()],
                rows,
                plain,
                status: g.eigen_check.status,
            })
        }
        Command::Convolve { k1, k2 } => {
            let read = |p: &PathBuf| {
                std::fs::read_to_string(p)
                    .map_err(|e| {
                        UmbraError::InvalidParameter(format!("cannot read {}: {e}", p.display()))
                    })
                    .and_then(|text| DiscreteKernel::from_json(&text))
            };
            let k = weyl::twisted_convolve(&read(k1)?, &read(k2)?);
            let rows: Vec<Vec<String>> = k
                .atoms()
                .iter()
                .map(|a| {
                    [&a.coef, &a.log_weight, &a.x, &a.y]
                        .map(format_rational)
                        .to_vec()
                })
                .collect();
            let plain = if rows.is_empty() {
                "0".to_string()
            } else {
                rows.iter()
                    .map(|r| r.join(" "))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Rendered {
                json: vec![k.to_json()],
                header: ["coef", "log_weight", "x", "y"].map(String::from).to_vec(),
                rows,
                plain,
                status: Status::Pass,
            })
        }
    }
}

fn points_of(single: Option<f64>, grid: &Option<Grid>) -> Vec<f64> {
    match (single, grid) {
        (_, Some(g)) => g.0.clone(),
        (Some(x), None) => vec![x],
        (None, None) => vec![],
    }
}

fn sample(points: &[f64], mut f: impl FnMut(f64) -> Result<f64>) -> Result<Vec<(f64, f64)>> {
    points.iter().map(|&x| f(x).map(|v| (x, v))).collect()
}

fn bessel(op: &BesselOp, q: &QuadratureSpec, tol: f64) -> Result<Rendered> {
    match op {
        BesselOp::J {
            nu,
            lambda,
            x,
            grid,
        } => {
            let values = sample(&points_of(*x, grid), |t| {
                numeric::little_bessel_j(*nu, *lambda, t)
            })?;
            Ok(Rendered::samples(
                "x",
                json!({ "function": "little-bessel-j", "nu": nu, "lambda": lambda }),
                &values,
            ))
        }
        BesselOp::Poisson {
            nu,
            x,
            grid,
            function,
            intertwining,
            h,
        } => {
            let f = ScalarFn::named(function)?;
            let points = points_of(*x, grid);
            if *intertwining {
                // fixed rule: smooth in x under finite differences
                let fixed = QuadratureSpec::fixed(24, 8);
                let r = numeric::poisson_intertwining_check(*nu, &f, &points, &fixed, *h, tol)?;
                return Ok(Rendered::from_residual(r, tol));
            }
            let values = sample(&points, |x| numeric::poisson_transform(*nu, &f, x, q))?;
            Ok(Rendered::samples(
                "x",
                json!({ "transform": "poisson", "nu": nu, "f": f.name() }),
                &values,
            ))
        }
        BesselOp::Hankel {
            nu,
            lambda,
            grid,
            function,
            intertwining,
        } => {
            let f = ScalarFn::named(function)?;
            let points = points_of(*lambda, grid);
            if *intertwining {
                let r = numeric::hankel_intertwining_check(*nu, &f, &points, q)?;
                return Ok(Rendered::from_residual(r, tol));
            }
            let values = sample(&points, |lam| numeric::hankel_transform(*nu, &f, lam, q))?;
            Ok(Rendered::samples(
                "lambda",
                json!({ "transform": "hankel", "nu": nu, "f": f.name() }),
                &values,
            ))
        }
    }
}

fn models(nu: &Rational, degree: usize) -> Result<Rendered> {
    let names = [
        "monomial",
        "lower-factorial",
        "upper-factorial",
        "hermite",
        "heat",
        "bessel",
    ];
    let mut json_rows = Vec::new();
    let mut rows = Vec::new();
    let mut plain = Vec::new();
    for name in names {
        let m = build_by_name(name, degree, Some(nu))?;
        let basis: Vec<String> = m.basis.iter().map(|p| p.to_string()).collect();
        let parity = match m.parity {
            Parity::AllDegrees => "all",
            Parity::EvenOnly => "even",
        };
        let binomial = m.shift_invariant && m.vacuum_is_evaluation_at_zero();
        json_rows.push(json!({ "model": m.label(), "parity": parity, "binomial_type": binomial, "basis": basis }));
        rows.push(vec![
            m.label(),
            parity.to_string(),
            binomial.to_string(),
            basis.join(" | "),
        ]);
        plain.push(format!(
            "{} ({parity}, binomial type: {binomial})\n  {}",
            m.label(),
            basis.join("\n  ")
        ));
    }
    Ok(Rendered {
        json: json_rows,
        header: ["model", "parity", "binomial_type", "basis"]
            .map(String::from)
            .to_vec(),
        rows,
        plain: plain.join("\n"),
        status: Status::Pass,
    })
}

const FORMAL_DEFAULT_ORDER: usize = 4;

fn is_formal(check: Check) -> bool {
    matches!(check, Check::GroupLaw | Check::Weyl | Check::Twisted)
}

fn applicable(m: &UmbralModel) -> Vec<Check> {
    let mut checks = vec![
        Check::Ladder,
        Check::Vacuum,
        Check::Commutator,
        Check::W0,
        Check::Biorthogonal,
        Check::Intertwining,
        Check::Genfun,
        Check::Character,
    ];
    if m.vacuum_is_evaluation_at_zero() {
        checks.push(Check::Delsarte);
        if m.shift_invariant {
            checks.push(Check::Binomial);
        }
    }
    if m.max_index() >= 2 {
        checks.extend([Check::Metaplectic, Check::Sl2]);
    }
    checks.extend([Check::GroupLaw, Check::Weyl, Check::Twisted]);
    checks
}

fn verify(args: &VerifyArgs) -> Result<Rendered> {
    let explicit_degree = args.model.degree;
    let n = explicit_degree.unwrap_or(default_degree()?);
    let m = build(&args.model, n)?;
    let checks = match args.check {
        Some(c) => vec![c],
        None => applicable(&m),
    };
    let mut reports = Vec::new();
    for check in checks {
        if is_formal(check) {
            // the formal checks build their own working model at N = d + M unless N was given
            let order = args.order.unwrap_or(FORMAL_DEFAULT_ORDER);
            let work = match explicit_degree {
                Some(_) => m.clone(),
                None => build(&args.model, args.output_degree + order)?,
            };
            reports.push(match check {
                Check::GroupLaw => weyl::group_law_check(&work, order, args.output_degree)?,
                Check::Weyl => weyl::weyl_relation_check(&work, order, args.output_degree)?,
                _ => weyl::composition_check_formal(&work, order, args.output_degree)?,
            });
            continue;
        }
        match check {
            Check::Model => reports.extend(verify_model(&m).all().into_iter().cloned()),
            Check::Ladder => reports.push(verify_model(&m).ladder),
            Check::Vacuum => reports.push(verify_model(&m).vacuum),
            Check::Commutator => reports.push(verify_model(&m).commutator),
            Check::Binomial => reports.push(translation::binomial_check(&m, m.max_index())?),
            Check::W0 => reports.push(check_w0(&m)?),
            Check::Biorthogonal => reports.push(check_biorthogonal(&m)?),
            Check::Intertwining => {
                let target = match &args.to {
                    Some(name) => build_by_name(name, m.max_index(), args.model.nu.as_ref())?,
                    None if m.kind.name() == "monomial" => {
                        crate::model::build_lower_factorial(m.max_index())?
                    }
                    None => build_monomials(m.max_index())?,
                };
                reports.push(check_transmutation_intertwining(&m, &target)?);
            }
            Check::Character => reports.push(translation::character_check(
                &m,
                args.order.unwrap_or(m.max_index()),
            )?),
            Check::Delsarte => reports.push(translation::delsarte_eigen_check(
                &m,
                args.order.unwrap_or(m.max_index()),
            )?),
            Check::Genfun => reports.push(
                transform::generating_function(&m, args.order.unwrap_or(m.max_index()))?
                    .eigen_check,
            ),
            Check::Metaplectic => {
                reports.push(sl2::metaplectic_check(&m, m.max_index().saturating_sub(2))?)
            }
            Check::Sl2 => {
                let (a, b, c) = sl2::metaplectic_sequences(&m)?;
                let mut r = sl2::generic_sl2_ladder(&a, &b, &c)?.report().clone();
                r.model = m.label();
                reports.push(r);
            }
            Check::GroupLaw | Check::Weyl | Check::Twisted => unreachable!("handled above"),
        }
    }
    Ok(Rendered::from_reports(reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("umbra").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn commutator_json() {
        let (code, out, _) = call(&[
            "verify",
            "--check",
            "commutator",
            "--model",
            "bessel",
            "--nu",
            "5/2",
            "--degree",
            "16",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["check"], "commutator");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["params"]["nu"], "5/2");
    }

    #[test]
    fn little_bessel_plain() {
        let (code, out, _) = call(&[
            "bessel",
            "j",
            "--nu",
            "2",
            "--lambda",
            "1",
            "--x",
            "3.14159265358979",
            "--format",
            "plain",
        ]);
        assert_eq!(code, 0);
        assert!(out.trim().parse::<f64>().unwrap().abs() < 1e-10);
    }

    #[test]
    fn binomial_precondition() {
        let (code, _, err) = call(&["verify", "--check", "binomial", "--model", "hermite"]);
        assert_eq!(code, 2);
        assert!(
            err.contains("not binomial type: vacuum is not evaluation at 0"),
            "{err}"
        );
    }

    #[test]
    fn malformed_rational_names_flag() {
        let (code, _, err) = call(&[
            "translate",
            "--model",
            "monomial",
            "--y",
            "1/0",
            "--poly",
            "0,1",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("--y"), "{err}");
    }
}
