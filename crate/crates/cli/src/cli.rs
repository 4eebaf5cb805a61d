//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification finds violations, 2 for
//! malformed or out-of-domain input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use schwarz::bounds::{
    bound_comparison_table, ruscheweyh_bound, szasz_bound, theorem31_bound_at, BoundResult,
    ComparisonRow,
};
use schwarz::disks::{
    dieudonne_disk, mercer_disk, rogosinski_disk, schwarz_pick_disk, second_derivative_disk,
    second_order_dieudonne_disk,
};
use schwarz::{
    verify_attainment, AttainmentReport, ClosedDiskPoint, ComplexValue, Disk, Extremal,
    ExtremalKind, FunctionExpr, PrescribedData, UnitDiskPoint,
};

use crate::harness::{
    run_attainment_suite, run_membership_suite, run_tightness_search, tightness_extremal,
    AttainmentOptions, HarnessConfig, HarnessReport, MembershipSuite,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "schwarz",
    version,
    about = "Variability regions and sharp bounds for self-maps of the unit disk"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed disk of attainable values.
    Disk {
        #[arg(value_enum)]
        which: DiskCommand,
        #[command(flatten)]
        opts: Opts,
    },
    /// Sharp bounds on |g''(z0)|.
    Bound {
        #[arg(value_enum)]
        which: BoundCommand,
        #[command(flatten)]
        opts: Opts,
    },
    /// Extremal functions.
    Extremal {
        #[arg(value_enum)]
        which: ExtremalCommand,
        #[command(flatten)]
        opts: Opts,
    },
    /// Randomized verification suites.
    Verify {
        #[arg(value_enum)]
        which: VerifyCommand,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiskCommand {
    SchwarzPick,
    Rogosinski,
    Mercer,
    Dieudonne,
    Second,
    Dieudonne2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundCommand {
    Thm31,
    Szasz,
    Ruscheweyh,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExtremalCommand {
    Emit,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyCommand {
    Membership,
    Attainment,
    Tightness,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z0: Option<ComplexValue>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub delta0: Option<ComplexValue>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub delta1: Option<ComplexValue>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w0: Option<ComplexValue>,
    /// g'(0), for the Rogosinski disk.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub gprime0: Option<ComplexValue>,
    /// Evaluation point, for the Mercer disk.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: Option<ComplexValue>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<ComplexValue>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// |z0|
    #[arg(long = "r", allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// |g(z0)|
    #[arg(long = "R", allow_hyphen_values = true)]
    pub big_r: Option<f64>,
    /// Derivative order for the Ruscheweyh bound.
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Comma-separated r values for `bound table`.
    #[arg(long = "r-grid", value_delimiter = ',')]
    pub r_grid: Option<Vec<f64>>,
    /// Comma-separated R values for `bound table`.
    #[arg(long = "R-grid", value_delimiter = ',')]
    pub big_r_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub kind: Option<String>,
    /// Membership suite name, or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long = "alpha-scale", default_value_t = 1.0)]
    pub alpha_scale: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub parallel: bool,
    #[arg(long)]
    pub timing: bool,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include the function tree in the output.
    #[arg(long = "emit-function")]
    pub emit_function: bool,
}

/// Parses `re,im`.
pub fn parse_complex(s: &str) -> Result<ComplexValue, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im but got {s:?}"))?;
    let part = |p: &str| {
        p.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("malformed complex literal {s:?}"))
    };
    Ok(ComplexValue::new(part(re)?, part(im)?))
}

/// Failure that maps to exit status 2.
#[derive(Debug)]
pub struct InvalidInput(pub String);

impl From<schwarz::Error> for InvalidInput {
    fn from(e: schwarz::Error) -> Self {
        InvalidInput(e.to_string())
    }
}

impl From<std::io::Error> for InvalidInput {
    fn from(e: std::io::Error) -> Self {
        InvalidInput(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, InvalidInput>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

/// A rendered document plus whether it records violations.
pub struct Output {
    pub body: String,
    pub violations: bool,
}

fn format_of(opts: &Opts) -> Format {
    if opts.json {
        Format::Json
    } else if opts.csv {
        Format::Csv
    } else {
        Format::Text
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| InvalidInput(format!("missing required --{flag}")))
}

fn open_point(value: Option<ComplexValue>, flag: &'static str) -> CliResult<UnitDiskPoint> {
    Ok(UnitDiskPoint::named(flag, need(value, flag)?)?)
}

fn closed_point(value: Option<ComplexValue>, flag: &'static str) -> CliResult<ClosedDiskPoint> {
    Ok(ClosedDiskPoint::named(flag, need(value, flag)?)?)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_rows<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| InvalidInput(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| InvalidInput(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[derive(Serialize)]
struct DiskRow {
    center_re: f64,
    center_im: f64,
    radius: f64,
}

#[derive(Serialize)]
struct DiskWithW1 {
    center: ComplexValue,
    radius: f64,
    w1: ComplexValue,
}

fn render_disk(d: &Disk, w1: Option<ComplexValue>, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => match w1 {
            Some(w1) => json(&DiskWithW1 {
                center: d.center,
                radius: d.radius,
                w1,
            }),
            None => json(d),
        },
        Format::Csv => csv_rows(&[DiskRow {
            center_re: d.center.re,
            center_im: d.center.im,
            radius: d.radius,
        }])?,
        Format::Text => {
            let mut s = format!(
                "center {},{}\nradius {}\n",
                d.center.re, d.center.im, d.radius
            );
            if let Some(w1) = w1 {
                let _ = writeln!(s, "w1 {},{}", w1.re, w1.im);
            }
            s
        }
    })
}

fn run_disk(which: DiskCommand, opts: &Opts) -> CliResult<Output> {
    let mut w1 = None;
    let d = match which {
        DiskCommand::SchwarzPick => schwarz_pick_disk(
            open_point(opts.z0, "z0")?,
            open_point(opts.delta0, "delta0")?,
        ),
        DiskCommand::Rogosinski => rogosinski_disk(
            open_point(opts.z0, "z0")?,
            open_point(opts.gprime0, "gprime0")?,
        ),
        DiskCommand::Mercer => mercer_disk(
            open_point(opts.z0, "z0")?,
            need(opts.w0, "w0")?,
            open_point(opts.z, "z")?,
        )?,
        DiskCommand::Dieudonne => dieudonne_disk(open_point(opts.z0, "z0")?, need(opts.w0, "w0")?)?,
        DiskCommand::Second => second_derivative_disk(&PrescribedData {
            z0: open_point(opts.z0, "z0")?,
            delta0: open_point(opts.delta0, "delta0")?,
            delta1: closed_point(opts.delta1, "delta1")?,
        }),
        DiskCommand::Dieudonne2 => {
            let (v, d) = second_order_dieudonne_disk(
                open_point(opts.z0, "z0")?,
                need(opts.w0, "w0")?,
                closed_point(opts.delta1, "delta1")?,
            )?;
            w1 = Some(v);
            d
        }
    };
    Ok(Output {
        body: render_disk(&d, w1, format_of(opts))?,
        violations: false,
    })
}

#[derive(Serialize)]
struct BoundRow<'a> {
    value: f64,
    branch: &'a str,
}

fn render_bound(b: &BoundResult, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => json(b),
        Format::Csv => csv_rows(&[BoundRow {
            value: b.value,
            branch: b.branch.name(),
        }])?,
        Format::Text => format!("{}\n", b.value),
    })
}

/// `z0` from `--z0`, else `--r` on the positive axis.
fn z0_or_r(opts: &Opts) -> CliResult<UnitDiskPoint> {
    match (opts.z0, opts.r) {
        (Some(z0), _) => open_point(Some(z0), "z0"),
        (None, Some(r)) => {
            check_radius(r, "r").and_then(|r| open_point(Some(ComplexValue::new(r, 0.0)), "r"))
        }
        (None, None) => Err(InvalidInput("missing required --z0 or --r".into())),
    }
}

/// `delta0` from `--delta0`, else `--R` on the positive axis.
fn delta0_or_big_r(opts: &Opts) -> CliResult<UnitDiskPoint> {
    match (opts.delta0, opts.big_r) {
        (Some(d), _) => open_point(Some(d), "delta0"),
        (None, Some(big_r)) => {
            check_radius(big_r, "R").and_then(|r| open_point(Some(ComplexValue::new(r, 0.0)), "R"))
        }
        (None, None) => Err(InvalidInput("missing required --delta0 or --R".into())),
    }
}

fn check_radius(v: f64, flag: &str) -> CliResult<f64> {
    if v.is_finite() && (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(InvalidInput(format!(
            "--{flag} must lie in [0, 1), got {v}"
        )))
    }
}

fn default_grid() -> Vec<f64> {
    (0..20).map(|k| k as f64 * 0.05).collect()
}

fn run_bound(which: BoundCommand, opts: &Opts) -> CliResult<Output> {
    let format = format_of(opts);
    let body = match which {
        BoundCommand::Thm31 => render_bound(
            &theorem31_bound_at(z0_or_r(opts)?, delta0_or_big_r(opts)?)?,
            format,
        )?,
        BoundCommand::Szasz => render_bound(&szasz_bound(z0_or_r(opts)?.modulus())?, format)?,
        BoundCommand::Ruscheweyh => render_bound(
            &ruscheweyh_bound(
                opts.n,
                z0_or_r(opts)?.modulus(),
                delta0_or_big_r(opts)?.modulus(),
            )?,
            format,
        )?,
        BoundCommand::Table => {
            let r_grid = opts.r_grid.clone().unwrap_or_else(default_grid);
            let big_r_grid = opts.big_r_grid.clone().unwrap_or_else(default_grid);
            let rows: Vec<ComparisonRow> = bound_comparison_table(&r_grid, &big_r_grid)?;
            match format {
                Format::Json => json(&rows),
                _ => csv_rows(&rows)?,
            }
        }
    };
    Ok(Output {
        body,
        violations: false,
    })
}

fn extremal_from_opts(opts: &Opts) -> CliResult<Extremal> {
    let name = opts
        .kind
        .as_deref()
        .ok_or_else(|| InvalidInput("missing required --kind".into()))?;
    let kind = ExtremalKind::from_name(name).ok_or_else(|| {
        let names: Vec<_> = ExtremalKind::ALL.iter().map(|k| k.name()).collect();
        InvalidInput(format!(
            "unknown kind {name:?}; expected one of {}",
            names.join(", ")
        ))
    })?;
    let alpha = || -> CliResult<ClosedDiskPoint> {
        match opts.alpha {
            Some(a) => Ok(ClosedDiskPoint::named("alpha", a)?),
            None => Ok(ClosedDiskPoint::unimodular(opts.theta.unwrap_or(0.0))),
        }
    };
    let theta = opts.theta.unwrap_or(0.0);
    Ok(match kind {
        ExtremalKind::SchwarzPickAuto => Extremal::SchwarzPickAuto {
            z0: open_point(opts.z0, "z0")?,
            delta0: open_point(opts.delta0, "delta0")?,
            alpha: alpha()?,
        },
        ExtremalKind::DieudonneBoundary => Extremal::DieudonneBoundary {
            z0: open_point(opts.z0, "z0")?,
            w0: need(opts.w0, "w0")?,
            alpha: alpha()?,
        },
        ExtremalKind::Thm21Degenerate => Extremal::Thm21Degenerate {
            z0: open_point(opts.z0, "z0")?,
            delta0: open_point(opts.delta0, "delta0")?,
            delta1: closed_point(opts.delta1, "delta1")?,
        },
        ExtremalKind::Thm21Boundary => Extremal::Thm21Boundary {
            z0: open_point(opts.z0, "z0")?,
            delta0: open_point(opts.delta0, "delta0")?,
            delta1: open_point(opts.delta1, "delta1")?,
            alpha: alpha()?,
        },
        ExtremalKind::Cor22Degenerate => Extremal::Cor22Degenerate {
            z0: open_point(opts.z0, "z0")?,
            w0: need(opts.w0, "w0")?,
            delta1: closed_point(opts.delta1, "delta1")?,
        },
        ExtremalKind::Cor22Boundary => Extremal::Cor22Boundary {
            z0: open_point(opts.z0, "z0")?,
            w0: need(opts.w0, "w0")?,
            delta1: open_point(opts.delta1, "delta1")?,
            alpha: alpha()?,
        },
        ExtremalKind::Thm31Deg1 => Extremal::Thm31Deg1 {
            z0: z0_or_r(opts)?,
            delta0: delta0_or_big_r(opts)?,
        },
        ExtremalKind::Thm31Deg2 => Extremal::Thm31Deg2 {
            z0: z0_or_r(opts)?,
            delta0: delta0_or_big_r(opts)?,
            theta,
        },
        ExtremalKind::SzaszExtremal => Extremal::SzaszExtremal {
            z0: z0_or_r(opts)?,
            theta,
        },
    })
}

#[derive(Serialize)]
struct AttainmentDocument<'a> {
    kind: &'static str,
    z0: ComplexValue,
    value: ComplexValue,
    first: ComplexValue,
    second: ComplexValue,
    measured: ComplexValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    disk: Option<Disk>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<f64>,
    margin: f64,
    interpolation_error: f64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    function: Option<&'a FunctionExpr>,
}

fn run_extremal(which: ExtremalCommand, opts: &Opts) -> CliResult<Output> {
    let ex = extremal_from_opts(opts)?;
    let f = ex.build()?;
    match which {
        ExtremalCommand::Emit => Ok(Output {
            body: json(&f),
            violations: false,
        }),
        ExtremalCommand::Verify => {
            let expected = ex.predicted()?;
            let tol = opts.tol.unwrap_or(1e-8);
            let report: AttainmentReport = verify_attainment(&ex, expected, tol)?;
            let (disk, bound) = match expected {
                schwarz::Attainment::Boundary(d) => (Some(d), None),
                schwarz::Attainment::Bound(b) => (None, Some(b)),
            };
            let doc = AttainmentDocument {
                kind: report.kind.name(),
                z0: ex.z0().value(),
                value: report.jet.f0,
                first: report.jet.f1,
                second: report.jet.f2,
                measured: report.measured,
                disk,
                bound,
                margin: report.margin,
                interpolation_error: report.interpolation_error,
                passed: report.passed,
                function: opts.emit_function.then_some(&f),
            };
            let body = match format_of(opts) {
                Format::Text => format!(
                    "{} measured {},{} margin {} {}\n",
                    doc.kind,
                    doc.measured.re,
                    doc.measured.im,
                    doc.margin,
                    if doc.passed { "PASS" } else { "FAIL" }
                ),
                _ => json(&doc),
            };
            Ok(Output {
                body,
                violations: !report.passed,
            })
        }
    }
}

#[derive(Serialize)]
struct ReportRow<'a> {
    suite: &'a str,
    seed: u64,
    samples: u64,
    violations: u64,
    worst_margin: Option<f64>,
    wall_time: Option<f64>,
}

#[derive(Serialize)]
struct WithFunction<'a> {
    report: &'a HarnessReport,
    function: FunctionExpr,
}

fn render_reports(reports: &[HarnessReport], opts: &Opts) -> CliResult<String> {
    Ok(match format_of(opts) {
        Format::Json if reports.len() == 1 => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => {
            let rows: Vec<_> = reports
                .iter()
                .map(|r| ReportRow {
                    suite: &r.suite,
                    seed: r.seed,
                    samples: r.samples,
                    violations: r.violations,
                    worst_margin: r.worst_margin,
                    wall_time: r.wall_time,
                })
                .collect();
            csv_rows(&rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let margin = r.worst_margin.map_or("none".to_string(), |m| m.to_string());
                let _ = write!(
                    s,
                    "{} samples={} violations={} worst_margin={}",
                    r.suite, r.samples, r.violations, margin
                );
                if let Some(t) = &r.tightness {
                    let _ = write!(s, " bound={} best={}", t.bound, t.best);
                }
                if let Some(w) = r.wall_time {
                    let _ = write!(s, " wall_time={w}");
                }
                s.push('\n');
            }
            s
        }
    })
}

fn run_verify(which: VerifyCommand, opts: &Opts) -> CliResult<Output> {
    let mut cfg = HarnessConfig {
        seed: opts.seed,
        samples: opts.samples,
        parallel: opts.parallel,
        timing: opts.timing,
        ..HarnessConfig::default()
    };
    if let Some(tol) = opts.tol {
        cfg.tol_membership = tol;
        cfg.tol_attainment = tol;
    }
    cfg.validate()?;
    let reports = match which {
        VerifyCommand::Membership => {
            let suites = if opts.suite == "all" {
                MembershipSuite::ALL.to_vec()
            } else {
                vec![MembershipSuite::from_name(&opts.suite)
                    .ok_or_else(|| InvalidInput(format!("unknown suite {:?}", opts.suite)))?]
            };
            suites
                .into_iter()
                .map(|s| run_membership_suite(&cfg, s))
                .collect()
        }
        VerifyCommand::Attainment => {
            let kinds = match opts.kind.as_deref() {
                None | Some("all") => ExtremalKind::ALL.to_vec(),
                Some(name) => vec![ExtremalKind::from_name(name)
                    .ok_or_else(|| InvalidInput(format!("unknown kind {name:?}")))?],
            };
            let opts = AttainmentOptions {
                kinds,
                alpha_scale: opts.alpha_scale,
            };
            vec![run_attainment_suite(&cfg, &opts)?]
        }
        VerifyCommand::Tightness => {
            let r = check_radius(need(opts.r, "r")?, "r")?;
            let big_r = check_radius(need(opts.big_r, "R")?, "R")?;
            vec![run_tightness_search(&cfg, r, big_r)?]
        }
    };
    let violations = reports.iter().any(|r| !r.passed());
    let body = match (&reports[..], opts.emit_function && opts.json) {
        ([report], true) if report.tightness.is_some() => {
            let f = tightness_extremal(report.tightness.as_ref().expect("checked"))?.build()?;
            json(&WithFunction {
                report,
                function: f,
            })
        }
        _ => render_reports(&reports, opts)?,
    };
    Ok(Output { body, violations })
}

/// Runs a parsed command, returning the document to print.
pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Disk { which, opts } => run_disk(*which, opts),
        Command::Bound { which, opts } => run_bound(*which, opts),
        Command::Extremal { which, opts } => run_extremal(*which, opts),
        Command::Verify { which, opts } => run_verify(*which, opts),
    }
}

fn out_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Disk { opts, .. }
        | Command::Bound { opts, .. }
        | Command::Extremal { opts, .. }
        | Command::Verify { opts, .. } => opts.out.as_ref(),
    }
}

/// Parses `argv` (including the program name), runs it and returns the exit status.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let output = match run(&cli) {
        Ok(o) => o,
        Err(InvalidInput(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_INVALID;
        }
    };
    let written = match out_path(&cli) {
        Some(path) => std::fs::write(path, &output.body),
        None => std::io::stdout().write_all(output.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INVALID;
    }
    if output.violations {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    }
}
