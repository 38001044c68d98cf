//! `conedet` — evaluate zeta-regularized determinants of Laplacians on the
//! sphere with three conical singularities, sweep them over divisor grids,
//! analyze the extremal structure, and run the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input validation failure.

mod record;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use conedet::determinant::{logdet, logdet_quadrature, logdet_round_sphere, logdet_spindle};
use conedet::diff::richardson_sequence;
use conedet::extremal::{classify, hessian_symmetric};
use conedet::verify::{run_suite, Suite};
use conedet::{ConeDivisor, SurfaceSpec};

use record::{g17, record_csv, record_json, ResultRecord, CSV_HEADER};

#[derive(Parser)]
#[command(
    name = "conedet",
    about = "Determinants of Laplacians for constant-curvature metrics with three conical singularities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate log det for one divisor and area.
    Eval(EvalArgs),
    /// Tabulate log det over a divisor grid.
    Sweep(SweepArgs),
    /// Threshold area and stationary-point classification at fixed degree.
    Extremal(ExtremalArgs),
    /// Run the module invariant suites.
    Verify(VerifyArgs),
    /// Spindle and round-sphere extrapolation report.
    Limits(LimitsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    Closed,
    Quadrature,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    FixedSum,
    FlatLine,
    SpindleLine,
}

#[derive(Args)]
struct EvalArgs {
    /// Cone orders as beta1,beta2,beta3 (each in (-1,0)).
    #[arg(long, value_parser = parse_beta)]
    beta: BetaTriple,
    /// Surface area S.
    #[arg(long, default_value_t = 1.0)]
    area: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Determinant formula: the closed form, the quadrature anomaly
    /// formula, or both (adds the cross-path residual).
    #[arg(long, value_enum, default_value_t = PathChoice::Closed)]
    path: PathChoice,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: SweepMode,
    /// Fixed degree |beta| (required for fixed-sum).
    #[arg(long, allow_hyphen_values = true)]
    sum: Option<f64>,
    /// Grid resolution per axis.
    #[arg(long, default_value_t = 25)]
    grid: usize,
    #[arg(long, default_value_t = 1.0)]
    area: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, value_enum, default_value_t = PathChoice::Closed)]
    path: PathChoice,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Degree |beta| in (-3, 0).
    #[arg(long, allow_hyphen_values = true)]
    sum: f64,
    /// Area at which to classify the symmetric point.
    #[arg(long)]
    area: Option<f64>,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// specfun | uniformization | action | determinant | extremal | all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Multiply every tolerance by this factor.
    #[arg(long, default_value_t = 1.0)]
    tol_scale: f64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct LimitsArgs {
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy)]
struct BetaTriple([f64; 3]);

fn parse_beta(s: &str) -> Result<BetaTriple, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated orders, got '{s}'"));
    }
    let mut beta = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        beta[i] = p
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad order '{p}': {e}"))?;
    }
    Ok(BetaTriple(beta))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Limits(args) => cmd_limits(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<String>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| format!("writing {path}: {e}")),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| e.to_string())
        }
    }
}

fn evaluate_cell(beta: [f64; 3], area: f64, path: PathChoice) -> ResultRecord {
    let divisor = match ConeDivisor::new(beta) {
        Ok(d) => d,
        Err(e) => return ResultRecord::failed(beta, area, e.to_string()),
    };
    let spec = match SurfaceSpec::new(divisor, area) {
        Ok(s) => s,
        Err(e) => return ResultRecord::failed(beta, area, e.to_string()),
    };
    let closed = match logdet(&spec) {
        Ok(r) => r,
        Err(e) => return ResultRecord::failed(beta, area, e.to_string()),
    };
    match path {
        PathChoice::Closed => ResultRecord::from_result(beta, area, &closed),
        PathChoice::Quadrature | PathChoice::Both => match logdet_quadrature(&divisor) {
            Ok(mut q) => {
                let scaling = -q.zeta0 * area.ln();
                q.terms.push(("area_scaling", scaling));
                q.log_det += scaling;
                if path == PathChoice::Quadrature {
                    ResultRecord::from_result(beta, area, &q)
                } else {
                    let mut r = ResultRecord::from_result(beta, area, &closed);
                    r.dual_residual = Some((closed.log_det - q.log_det).abs());
                    r
                }
            }
            Err(e) => ResultRecord::failed(beta, area, e.to_string()),
        },
    }
}

fn render_records(records: &[ResultRecord], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Json => {
            s.push_str("[\n");
            for (i, r) in records.iter().enumerate() {
                s.push_str("  ");
                s.push_str(&record_json(r));
                if i + 1 < records.len() {
                    s.push(',');
                }
                s.push('\n');
            }
            s.push_str("]\n");
        }
        Format::Csv => {
            s.push_str(CSV_HEADER);
            s.push('\n');
            for r in records {
                s.push_str(&record_csv(r));
                s.push('\n');
            }
        }
    }
    s
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode, String> {
    let r = evaluate_cell(args.beta.0, args.area, args.path);
    if let Some(e) = &r.error {
        return Err(e.clone());
    }
    let content = match args.format {
        Format::Json => format!("{}\n", record_json(&r)),
        Format::Csv => format!("{CSV_HEADER}\n{}\n", record_csv(&r)),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

/// Interior grid nodes −1 + (i+1)/(n+1), i = 0..n.
fn grid_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| -1.0 + (i + 1) as f64 / (n + 1) as f64)
        .collect()
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, String> {
    if args.grid < 2 {
        return Err("grid must be at least 2".into());
    }
    if args.area.is_nan() || args.area <= 0.0 {
        return Err("area must be positive".into());
    }
    let records: Vec<ResultRecord> = match args.mode {
        SweepMode::FixedSum | SweepMode::FlatLine => {
            let sum = match args.mode {
                SweepMode::FlatLine => -2.0,
                _ => args
                    .sum
                    .ok_or_else(|| "fixed-sum sweep requires --sum".to_string())?,
            };
            if !(-3.0 < sum && sum < 0.0) {
                return Err(format!("sum must lie in (-3, 0), got {sum}"));
            }
            let nodes = grid_nodes(args.grid);
            let cells: Vec<(usize, usize)> = (0..args.grid)
                .flat_map(|i| (0..args.grid).map(move |k| (i, k)))
                .collect();
            // parallel evaluation; output order is the lexicographic cell order
            cells
                .par_iter()
                .map(|&(i, k)| {
                    let b1 = nodes[i];
                    let b3 = nodes[k];
                    let b2 = sum - b1 - b3;
                    // grid roundoff can land an intended boundary cell a few
                    // ulp inside (-1,0); reject it as out of range, never
                    // emit a degenerate near-boundary row
                    if (b2 + 1.0).abs() < 1e-9 || b2.abs() < 1e-9 {
                        ResultRecord::failed(
                            [b1, b2, b3],
                            args.area,
                            "order must lie in (-1,0): beta_2 on the boundary".into(),
                        )
                    } else {
                        evaluate_cell([b1, b2, b3], args.area, args.path)
                    }
                })
                .collect()
        }
        SweepMode::SpindleLine => {
            let nodes = grid_nodes(args.grid);
            nodes
                .par_iter()
                .map(|&b| spindle_record(b, args.area))
                .collect()
        }
    };
    emit(&args.out, &render_records(&records, args.format))?;
    Ok(ExitCode::SUCCESS)
}

/// Row of the spindle line: the two-singularity limit surface at order b.
fn spindle_record(b: f64, area: f64) -> ResultRecord {
    let beta = [b, 0.0, b];
    match logdet_spindle(b) {
        Ok(unit) => {
            // ζ(0) of the limit surface: the β₂ → 0 limit of the three-point
            // formula (the vanishing order contributes nothing)
            let zeta0 = (2.0 * b + 2.0) / 6.0 - (b + 1.0 - 1.0 / (b + 1.0)) / 6.0 - 1.0;
            let log_det = unit - zeta0 * area.ln();
            let ln2 = std::f64::consts::LN_2;
            let pi = std::f64::consts::PI;
            let action = 4.0
                * pi
                * (-(b + 1.0) * (2.0 + conedet::config::LN_PI) - (b * b + 2.0 * b) * ln2
                    + (1.0 + b) * (1.0 + b).ln());
            let log_h = 4.0
                * (b + 1.0 - 1.0 / (b + 1.0))
                * (-b * ln2 + 0.5 * ((b + 1.0) / (4.0 * pi)).ln());
            let c_b = conedet::specfun::c_of_beta(b, &conedet::config::DEFAULT).ok();
            ResultRecord {
                beta,
                area,
                curvature: 4.0 * pi * (b + 1.0) / area,
                geometry: "spherical",
                log_det: Some(log_det),
                zeta0: Some(zeta0),
                action: Some(action),
                log_h: Some(log_h),
                c_terms: [c_b, Some(0.0), c_b],
                path: "closed",
                resum_residual: c_b.map(|c| {
                    let resum = -(2.0 * b + 1.0) / 6.0 - (action - pi * log_h) / (12.0 * pi)
                        - 2.0 * c
                        - 4.0 / 3.0 * ln2
                        - 4.0 * conedet::config::ZETA_PRIME_M1
                        - conedet::config::LN_PI
                        - zeta0 * area.ln();
                    (resum - log_det).abs()
                }),
                dual_residual: None,
                error: None,
            }
        }
        Err(e) => ResultRecord::failed(beta, area, e.to_string()),
    }
}

fn cmd_extremal(args: ExtremalArgs) -> Result<ExitCode, String> {
    if !(-3.0 < args.sum && args.sum < 0.0) {
        return Err(format!("sum must lie in (-3, 0), got {}", args.sum));
    }
    let area = args.area.unwrap_or(1.0);
    if area.is_nan() || area <= 0.0 {
        return Err("area must be positive".into());
    }
    let h = hessian_symmetric(args.sum, area).map_err(|e| e.to_string())?;
    let b = args.sum / 3.0;
    let divisor = ConeDivisor::new([b, b, b]).map_err(|e| e.to_string())?;
    let class = classify(&divisor, area).map_err(|e| e.to_string())?;
    let content = format!(
        "{{\"sum\":{},\"beta_symmetric\":{},\"area\":{},\"s0\":{},\"d11\":{},\"d13\":{},\
\"eigenvalues\":[{},{}],\"classification\":\"{}\"}}\n",
        g17(args.sum),
        g17(b),
        g17(area),
        g17(h.s0),
        g17(h.d11),
        g17(h.d13),
        g17(h.eigenvalues.0),
        g17(h.eigenvalues.1),
        class.as_str(),
    );
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.tol_scale.is_nan() || args.tol_scale < 1.0 {
        return Err("tol-scale must be >= 1".into());
    }
    let suite = Suite::parse(&args.suite).map_err(|e| e.to_string())?;
    let checks = run_suite(suite, args.tol_scale).map_err(|e| e.to_string())?;
    let mut content = String::new();
    let mut failures = 0usize;
    for c in &checks {
        let status = if c.passed() {
            "PASS"
        } else {
            failures += 1;
            "FAIL"
        };
        content.push_str(&format!(
            "{status} {}/{} residual={} tol={}\n",
            c.suite,
            c.name,
            g17(c.residual),
            g17(c.tolerance)
        ));
    }
    content.push_str(&format!(
        "{} checks, {} failed\n",
        checks.len(),
        failures
    ));
    emit(&args.out, &content)?;
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_limits(args: LimitsArgs) -> Result<ExitCode, String> {
    let mut spindle_rows = Vec::new();
    for &b in &[-0.2, -0.5, -0.8] {
        let closed = logdet_spindle(b).map_err(|e| e.to_string())?;
        let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
            .iter()
            .map(|&e| {
                let d = ConeDivisor::new([b, e, b]).map_err(|e| e.to_string())?;
                Ok(conedet::determinant::logdet_unit(&d)
                    .map_err(|e| e.to_string())?
                    .log_det)
            })
            .collect::<Result<_, String>>()?;
        let extrapolated = richardson_sequence(&vals, 10.0);
        spindle_rows.push(format!(
            "{{\"b\":{},\"closed\":{},\"extrapolated\":{},\"residual\":{}}}",
            g17(b),
            g17(closed),
            g17(extrapolated),
            g17((closed - extrapolated).abs())
        ));
    }
    let area = 4.0 * std::f64::consts::PI;
    let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
        .iter()
        .map(|&e| {
            let d = ConeDivisor::new([e, e, e]).map_err(|e| e.to_string())?;
            let spec = SurfaceSpec::new(d, area).map_err(|e| e.to_string())?;
            Ok(logdet(&spec).map_err(|e| e.to_string())?.log_det)
        })
        .collect::<Result<_, String>>()?;
    let extrapolated = richardson_sequence(&vals, 10.0);
    let expected = logdet_round_sphere();
    let content = format!(
        "{{\"spindle\":[{}],\"round_sphere\":{{\"expected\":{},\"extrapolated\":{},\"residual\":{}}}}}\n",
        spindle_rows.join(","),
        g17(expected),
        g17(extrapolated),
        g17((expected - extrapolated).abs())
    );
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}
