//! Command-line surface: one subcommand per capability, machine-readable
//! output.
//!
//! Every subcommand is a pure function of its flags — runs are
//! byte-identical at `--jobs 1`, and numeric results are bitwise
//! independent of `--jobs` altogether.  Output goes to stdout or `--out`,
//! as JSON (floats in shortest round-trip form) or CSV (floats with 17
//! significant digits, `#`-prefixed footer rows for scalars).  Errors are
//! reported as a JSON object `{"error": {"kind", "message"}}` on stderr
//! with exit code 1; flag misuse exits 2.
//!
//! The environment variable `ZETA_COVER_SEED` is reserved for future
//! randomized features and is currently ignored — nothing in the crate
//! draws random numbers.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::analysis;
use crate::graph::{Monodromy, TwistAngle, VoltageGraph};
use crate::numerics::{hermitian_eigenvalues, DEFAULT_ZERO_TOL_REL};
use crate::torus::{self, ModularParameter};
use crate::zeta::{self, ConvergenceSeries, SeriesEntry};
use crate::{Error, Result};

/// Output format of a subcommand.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Pretty-printed JSON; floats as shortest round-trip decimals.
    Json,
    /// Comma-separated rows; floats with 17 significant digits.
    Csv,
}

/// Heat times exercised by `deck-check`, chosen to straddle the crossover
/// from spectral (small `t`) to gap-dominated (large `t`) behaviour.
const DECK_TIMES: [f64; 3] = [0.5, 1.0, 2.0];

/// Fit window used by `gap-scan` (the library maximum).
const GAP_FIT_WINDOW: (f64, f64) = (0.0, analysis::MAX_FIT_WINDOW);

#[derive(Parser, Debug)]
#[command(
    name = "zeta-cover",
    version,
    about = "Zeta-regularized determinants on cyclic covers of voltage graphs",
    long_about = "Zeta-regularized determinants on cyclic covers of voltage graphs.\n\n\
        Graph files: `v <count>` once, then `e <u> <v> <voltage>` per edge; `#` comments.\n\
        Monodromy files: `diag <angle>...` or `n <rank>` followed by <rank> rows of\n\
        comma-separated re,im entries.\n\n\
        ZETA_COVER_SEED is reserved (currently ignored; no subcommand is randomized)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of the N-sheet cover Laplacian (N = 1: the base graph).
    Spectrum {
        /// Voltage graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Sheet count of the cyclic cover.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalues of the twisted Laplacian Δ_θ.
    TwistSpectrum {
        /// Voltage graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Twist angle θ in radians.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spanning-tree count K and the Kirchhoff identity det′ = |V|·K.
    TreeCount {
        /// Voltage graph file (voltages are ignored for counting).
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence sweep of the density f_N toward its twist-integral limit.
    Converge {
        /// Voltage graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Sheet counts: comma list ("4,16,64") or one maximum, expanded to
        /// powers of two up to it.
        #[arg(long, default_value = "64")]
        n: String,
        /// Absolute tolerance of the limit integral.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Worker threads (results are bitwise independent of this).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bottom-band order 2p, amplitude, certified lower constant and gap ε₀.
    GapScan {
        /// Voltage graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Uniform grid steps over θ ∈ [0, π] (minimum 256).
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Worker threads (results are bitwise independent of this).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Kernel angles of the bundle Laplacian for a unitary monodromy.
    BundleScan {
        /// Voltage graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Monodromy file.
        #[arg(long)]
        monodromy: PathBuf,
        /// Full-circle scan resolution (minimum 16).
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residuals of the deck-orbit heat-trace identity at t ∈ {0.5, 1, 2}.
    DeckCheck {
        /// Voltage graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Sheet counts: comma list or one maximum (powers of two).
        #[arg(long, default_value = "2,3,5")]
        n: String,
        /// Orbit-sum truncation and kernel quadrature tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Flat-torus determinant (Im τ)²·|η(τ)|⁴, optionally cross-checked
    /// against the Mellin-split ζ′(0).
    Torus {
        /// Modulus "re,im" of the torus ℂ/(ℤ ⊕ τℤ), e.g. "0,1" for τ = i.
        #[arg(long, value_parser = parse_tau)]
        tau: ModularParameter,
        /// Also run the heat-trace route and compare.
        #[arg(long)]
        check_mellin: bool,
        /// Absolute tolerance of the Mellin route.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stretch-family torus densities f_N → −π/3.
    TorusLimit {
        /// Stretch step ℓ; the row at N uses τ = i·Nℓ.
        #[arg(long = "L", default_value_t = 1.0)]
        ell: f64,
        /// Stretch factors: comma list or one maximum (powers of two).
        #[arg(long, default_value = "10,100")]
        n: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tree entropy of the square lattice via the nested twist integral.
    Lattice2d {
        /// Absolute tolerance of the double integral.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// McKay spanning-tree growth constants c_k for k-regular graphs.
    Mckay {
        /// Degrees k ≥ 3, comma-separated.
        #[arg(long, default_value = "3,4,6")]
        n: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Entry point behind the `zeta-cover` binary.
///
/// Returns the process exit code: 0 on success (output written), 1 on a
/// computation error (JSON error object on stderr), 2 on flag misuse.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version render on stdout with exit 0; genuine usage
            // errors render on stderr with clap's exit code 2.
            let code = err.exit_code();
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            1
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Spectrum { graph, n, output } => {
            let g = load_graph(&graph)?;
            if n == 0 {
                return Err(Error::InvalidParameter("sheet count must be positive".into()));
            }
            let h = if n == 1 {
                g.twisted_laplacian(TwistAngle::new(0.0))
            } else {
                g.cyclic_cover(n)?.laplacian()
            };
            let spectrum = hermitian_eigenvalues(&h, DEFAULT_ZERO_TOL_REL)?;
            let doc = SpectrumDoc {
                sheets: n,
                zero_modes: spectrum.zero_count(),
                eigenvalues: spectrum.values().to_vec(),
            };
            let text = match output.format {
                Format::Json => to_json(&doc),
                Format::Csv => indexed_csv("eigenvalue", &doc.eigenvalues),
            };
            emit(&output, text)
        }
        Command::TwistSpectrum { graph, theta, output } => {
            let g = load_graph(&graph)?;
            let spectrum =
                hermitian_eigenvalues(&g.twisted_laplacian(TwistAngle::new(theta)), DEFAULT_ZERO_TOL_REL)?;
            let doc = TwistSpectrumDoc { theta, eigenvalues: spectrum.values().to_vec() };
            let text = match output.format {
                Format::Json => to_json(&doc),
                Format::Csv => indexed_csv("eigenvalue", &doc.eigenvalues),
            };
            emit(&output, text)
        }
        Command::TreeCount { graph, output } => {
            let g = load_graph(&graph)?;
            let trees = g.spanning_tree_count();
            let spectrum = hermitian_eigenvalues(
                &g.twisted_laplacian(TwistAngle::new(0.0)),
                DEFAULT_ZERO_TOL_REL,
            )?;
            let log_det = zeta::log_det_prime(&spectrum)?;
            let det_prime = log_det.exp();
            // Compare in log form so huge counts cannot overflow a double.
            let log_target = (g.vertex_count() as f64).ln() + log_big(&trees);
            let kirchhoff_ok = (log_det - log_target).abs() <= 1e-7;
            let text = match output.format {
                Format::Json => to_json(&TreeCountDoc {
                    k: big_to_value(&trees),
                    det_prime,
                    kirchhoff_ok,
                }),
                Format::Csv => format!(
                    "K,det_prime,kirchhoff_ok\n{},{},{}\n",
                    trees,
                    csv_float(det_prime),
                    kirchhoff_ok
                ),
            };
            emit(&output, text)
        }
        Command::Converge { graph, n, tol, jobs, output } => {
            let g = load_graph(&graph)?;
            let sheets = parse_count_list(&n)?;
            let series = zeta::convergence_series(&g, &sheets, tol, jobs)?;
            emit(&output, emit_series(&series, output.format)?)
        }
        Command::GapScan { graph, grid, jobs, output } => {
            let g = load_graph(&graph)?;
            let report = analysis::gap_scan_with_jobs(&g, grid, GAP_FIT_WINDOW, jobs)?;
            let text = match output.format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut text = String::from("theta,lambda0,lambda1\n");
                    for s in &report.grid {
                        let l1 = s.lambda1.map(csv_float).unwrap_or_default();
                        text.push_str(&format!(
                            "{},{},{}\n",
                            csv_float(s.theta),
                            csv_float(s.lambda0),
                            l1
                        ));
                    }
                    text.push_str(&format!("# epsilon0,{}\n", csv_float(report.epsilon0)));
                    text.push_str(&format!("# p,{}\n", report.p));
                    text.push_str(&format!("# amplitude,{}\n", csv_float(report.amplitude)));
                    text.push_str(&format!("# lower,{}\n", csv_float(report.lower)));
                    text.push_str(&format!("# eta,{}\n", csv_float(report.eta)));
                    text.push_str(&format!(
                        "# fitted_exponent,{}\n",
                        csv_float(report.fitted_exponent)
                    ));
                    text
                }
            };
            emit(&output, text)
        }
        Command::BundleScan { graph, monodromy, grid, output } => {
            let g = load_graph(&graph)?;
            let m = Monodromy::parse(&fs::read_to_string(&monodromy)?)?;
            let zeros = analysis::monodromy_zero_locus(&g, &m, grid)?;
            let text = match output.format {
                Format::Json => to_json(&BundleScanDoc { rank: m.rank(), zeros: zeros.clone() }),
                Format::Csv => indexed_csv("zero", &zeros),
            };
            emit(&output, text)
        }
        Command::DeckCheck { graph, n, tol, output } => {
            let g = load_graph(&graph)?;
            let sheets = parse_count_list(&n)?;
            let mut checks = Vec::new();
            for &count in &sheets {
                for &t in &DECK_TIMES {
                    let residual = analysis::verify_deck_sum(&g, count, t, tol)?;
                    checks.push(DeckCheckRow { sheets: count, t, residual });
                }
            }
            let max_residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
            let text = match output.format {
                Format::Json => to_json(&DeckCheckDoc { tol, max_residual, checks }),
                Format::Csv => {
                    let mut text = String::from("sheets,t,residual\n");
                    for c in &checks {
                        text.push_str(&format!(
                            "{},{},{}\n",
                            c.sheets,
                            csv_float(c.t),
                            csv_float(c.residual)
                        ));
                    }
                    text.push_str(&format!("# max_residual,{}\n", csv_float(max_residual)));
                    text
                }
            };
            emit(&output, text)
        }
        Command::Torus { tau, check_mellin, tol, output } => {
            let det_closed = torus::det_zeta(&tau)?;
            let text = if check_mellin {
                let det_mellin = (-torus::zeta_prime_numeric(&tau, tol)?).exp();
                // ζ′(0) carries absolute error ≤ tol, so the determinant
                // carries ≈ det·tol; allow 10× headroom.
                let agree = (det_closed - det_mellin).abs() <= 10.0 * tol * det_closed.max(1.0);
                match output.format {
                    Format::Json => to_json(&TorusDoc { det_closed, det_mellin, agree }),
                    Format::Csv => format!(
                        "det_closed,det_mellin,agree\n{},{},{}\n",
                        csv_float(det_closed),
                        csv_float(det_mellin),
                        agree
                    ),
                }
            } else {
                match output.format {
                    Format::Json => to_json(&json!({ "det_closed": det_closed })),
                    Format::Csv => format!("det_closed\n{}\n", csv_float(det_closed)),
                }
            };
            emit(&output, text)
        }
        Command::TorusLimit { ell, n, output } => {
            let factors = parse_count_list(&n)?;
            let series = torus::limit_series(ell, &factors)?;
            emit(&output, emit_series(&series, output.format)?)
        }
        Command::Lattice2d { tol, output } => {
            let alpha = zeta::lattice2d_limit(tol)?;
            let log_c4 = zeta::mckay_constant(4)?.ln();
            let within_bound = 0.0 < alpha && alpha < log_c4;
            let text = match output.format {
                Format::Json => to_json(&LatticeDoc { alpha, log_c4, within_bound }),
                Format::Csv => format!(
                    "alpha,log_c4,within_bound\n{},{},{}\n",
                    csv_float(alpha),
                    csv_float(log_c4),
                    within_bound
                ),
            };
            emit(&output, text)
        }
        Command::Mckay { n, output } => {
            let degrees = parse_count_list(&n)?;
            let mut constants = Vec::new();
            for &k in &degrees {
                let value = zeta::mckay_constant(k)?;
                constants.push(McKayRow { degree: k, value, log: value.ln() });
            }
            let text = match output.format {
                Format::Json => to_json(&McKayDoc { constants }),
                Format::Csv => {
                    let mut text = String::from("degree,constant,log_constant\n");
                    for c in &constants {
                        text.push_str(&format!(
                            "{},{},{}\n",
                            c.degree,
                            csv_float(c.value),
                            csv_float(c.log)
                        ));
                    }
                    text
                }
            };
            emit(&output, text)
        }
    }
}

// ---------------------------------------------------------------------------
// Series rendering

/// Render a convergence series: CSV with header `N,density,abs_error` and
/// `#` footer rows for the limit, or a JSON object with `entries`,
/// `limit`, `limit_error`.
///
/// Errors with [`Error::InvalidParameter`] on an empty series.
pub fn emit_series(series: &ConvergenceSeries, format: Format) -> Result<String> {
    if series.entries.is_empty() {
        return Err(Error::InvalidParameter("refusing to emit an empty series".into()));
    }
    Ok(match format {
        Format::Json => to_json(series),
        Format::Csv => {
            let mut text = String::from("N,density,abs_error\n");
            for e in &series.entries {
                text.push_str(&format!(
                    "{},{},{}\n",
                    e.sheets,
                    csv_float(e.density),
                    csv_float(e.abs_error)
                ));
            }
            text.push_str(&format!("# limit,{}\n", csv_float(series.limit)));
            text.push_str(&format!("# limit_error,{}\n", csv_float(series.limit_error)));
            text
        }
    })
}

/// Parse a document produced by [`emit_series`] (either format; detected
/// by the leading byte).  CSV uses 17 significant digits and JSON uses
/// shortest round-trip decimals, so `parse_series(emit_series(s)) == s`
/// bit for bit.
pub fn parse_series(text: &str) -> Result<ConvergenceSeries> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() });
    }
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "N,density,abs_error")) => {}
        _ => {
            return Err(Error::Parse { line: 1, msg: "expected header N,density,abs_error".into() })
        }
    }
    let mut entries = Vec::new();
    let mut limit = None;
    let mut limit_error = None;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let bad = |msg: &str| Error::Parse { line: line_no, msg: msg.into() };
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# limit,") {
            limit = Some(parse_float(rest, line_no)?);
        } else if let Some(rest) = line.strip_prefix("# limit_error,") {
            limit_error = Some(parse_float(rest, line_no)?);
        } else {
            let mut parts = line.split(',');
            let sheets = parts
                .next()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .ok_or_else(|| bad("bad sheet count"))?;
            let density = parse_float(parts.next().unwrap_or(""), line_no)?;
            let abs_error = parse_float(parts.next().unwrap_or(""), line_no)?;
            if parts.next().is_some() {
                return Err(bad("trailing fields"));
            }
            entries.push(SeriesEntry { sheets, density, abs_error });
        }
    }
    if entries.is_empty() {
        return Err(Error::InvalidParameter("series document has no rows".into()));
    }
    let limit = limit.ok_or(Error::Parse { line: 0, msg: "missing `# limit` row".into() })?;
    let limit_error =
        limit_error.ok_or(Error::Parse { line: 0, msg: "missing `# limit_error` row".into() })?;
    Ok(ConvergenceSeries { limit, limit_error, entries })
}

// ---------------------------------------------------------------------------
// Output documents

#[derive(Serialize)]
struct SpectrumDoc {
    sheets: usize,
    zero_modes: usize,
    eigenvalues: Vec<f64>,
}

#[derive(Serialize)]
struct TwistSpectrumDoc {
    theta: f64,
    eigenvalues: Vec<f64>,
}

#[derive(Serialize)]
struct TreeCountDoc {
    #[serde(rename = "K")]
    k: serde_json::Value,
    det_prime: f64,
    kirchhoff_ok: bool,
}

#[derive(Serialize)]
struct BundleScanDoc {
    rank: usize,
    zeros: Vec<f64>,
}

#[derive(Serialize)]
struct DeckCheckRow {
    sheets: usize,
    t: f64,
    residual: f64,
}

#[derive(Serialize)]
struct DeckCheckDoc {
    tol: f64,
    max_residual: f64,
    checks: Vec<DeckCheckRow>,
}

#[derive(Serialize)]
struct TorusDoc {
    det_closed: f64,
    det_mellin: f64,
    agree: bool,
}

#[derive(Serialize)]
struct LatticeDoc {
    alpha: f64,
    log_c4: f64,
    within_bound: bool,
}

#[derive(Serialize)]
struct McKayRow {
    degree: usize,
    value: f64,
    log: f64,
}

#[derive(Serialize)]
struct McKayDoc {
    constants: Vec<McKayRow>,
}

// ---------------------------------------------------------------------------
// Helpers

fn load_graph(path: &PathBuf) -> Result<VoltageGraph> {
    VoltageGraph::parse(&fs::read_to_string(path)?)
}

fn parse_tau(text: &str) -> std::result::Result<ModularParameter, String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("expected re,im — got '{text}'"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part '{re}'"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
    ModularParameter::new(re, im).map_err(|e| e.to_string())
}

/// Parse "4,16,64" literally, or a single maximum into the doubling
/// sequence 2, 4, 8, … capped by (and always including) the maximum.
fn parse_count_list(text: &str) -> Result<Vec<usize>> {
    let parse_one = |s: &str| -> Result<usize> {
        let n: usize = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad count '{}'", s.trim())))?;
        if n == 0 {
            return Err(Error::InvalidParameter("counts must be positive".into()));
        }
        Ok(n)
    };
    if text.contains(',') {
        return text.split(',').map(parse_one).collect();
    }
    let max = parse_one(text)?;
    if max == 1 {
        return Ok(vec![1]);
    }
    let mut counts = Vec::new();
    let mut n = 2;
    while n <= max {
        counts.push(n);
        n *= 2;
    }
    if *counts.last().unwrap() != max {
        counts.push(max);
    }
    Ok(counts)
}

fn parse_float(text: &str, line: usize) -> Result<f64> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("bad float '{}'", text.trim()) })
}

/// 17 significant digits — enough to reconstruct any f64 exactly.
fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

fn indexed_csv(label: &str, values: &[f64]) -> String {
    let mut text = format!("index,{label}\n");
    for (i, v) in values.iter().enumerate() {
        text.push_str(&format!("{},{}\n", i, csv_float(*v)));
    }
    text
}

/// JSON value for an arbitrary-precision count: a number when it fits
/// u64, a decimal string beyond that.
fn big_to_value(k: &BigInt) -> serde_json::Value {
    match u64::try_from(k) {
        Ok(small) => serde_json::Value::from(small),
        Err(_) => serde_json::Value::String(k.to_string()),
    }
}

/// Natural log of a positive big integer via its decimal digits.
fn log_big(k: &BigInt) -> f64 {
    let digits = k.to_string();
    let head_len = digits.len().min(17);
    let head: f64 = digits[..head_len].parse().expect("decimal digits parse");
    head.ln() + (digits.len() - head_len) as f64 * std::f64::consts::LN_10
}

fn emit(output: &OutputArgs, text: String) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample_series() -> ConvergenceSeries {
        ConvergenceSeries {
            limit: -std::f64::consts::FRAC_PI_3,
            limit_error: 0.0,
            entries: vec![
                SeriesEntry { sheets: 10, density: -0.586680532597788609, abs_error: 0.46 },
                SeriesEntry { sheets: 100, density: -0.955094147476835919, abs_error: 0.092 },
            ],
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let series = sample_series();
        let text = emit_series(&series, Format::Csv).unwrap();
        assert!(text.starts_with("N,density,abs_error\n"));
        let back = parse_series(&text).unwrap();
        assert_eq!(back.limit.to_bits(), series.limit.to_bits());
        assert_eq!(back.limit_error.to_bits(), series.limit_error.to_bits());
        for (a, b) in back.entries.iter().zip(series.entries.iter()) {
            assert_eq!(a.sheets, b.sheets);
            assert_eq!(a.density.to_bits(), b.density.to_bits());
            assert_eq!(a.abs_error.to_bits(), b.abs_error.to_bits());
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let series = sample_series();
        let text = emit_series(&series, Format::Json).unwrap();
        let back = parse_series(&text).unwrap();
        assert_eq!(back.limit.to_bits(), series.limit.to_bits());
        assert_eq!(back.entries.len(), series.entries.len());
        assert_eq!(back.entries[1].density.to_bits(), series.entries[1].density.to_bits());
    }

    #[test]
    fn empty_series_is_refused() {
        let empty = ConvergenceSeries { limit: 0.0, limit_error: 0.0, entries: vec![] };
        assert!(matches!(emit_series(&empty, Format::Csv), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn malformed_series_documents_are_rejected() {
        assert!(matches!(parse_series("x,y,z\n1,2,3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_series("N,density,abs_error\n1,nope,3\n").is_err());
        assert!(parse_series("N,density,abs_error\n2,1.0,0.5\n").is_err()); // no limit rows
    }

    #[test]
    fn count_lists_parse_both_forms() {
        assert_eq!(parse_count_list("4,16,64").unwrap(), vec![4, 16, 64]);
        assert_eq!(parse_count_list("64").unwrap(), vec![2, 4, 8, 16, 32, 64]);
        assert_eq!(parse_count_list("100").unwrap(), vec![2, 4, 8, 16, 32, 64, 100]);
        assert_eq!(parse_count_list("1").unwrap(), vec![1]);
        assert!(parse_count_list("0").is_err());
        assert!(parse_count_list("4,zebra").is_err());
    }

    #[test]
    fn tau_parser_reads_re_comma_im() {
        let tau = parse_tau("0.5, 1.25").unwrap();
        assert_eq!(tau.re(), 0.5);
        assert_eq!(tau.im(), 1.25);
        assert!(parse_tau("1").is_err());
        assert!(parse_tau("0,-1").is_err());
    }

    #[test]
    fn csv_floats_carry_seventeen_significant_digits() {
        let x = -0.586680532597788609;
        let printed = csv_float(x);
        assert_eq!(printed.parse::<f64>().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn big_counts_render_as_numbers_until_u64_overflows() {
        assert_eq!(big_to_value(&BigInt::from(5u32)), serde_json::Value::from(5u64));
        let huge = BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        assert_eq!(
            big_to_value(&huge),
            serde_json::Value::String("123456789012345678901234567890".into())
        );
        assert_abs_diff_eq!(
            log_big(&huge),
            123456789012345678901234567890f64.ln(),
            epsilon = 1e-9
        );
    }
}
