//! Command-line front end: spectral tables, comparisons, edge profiles and
//! phase scans as CSV or JSON files. All energies are emitted in units of
//! 1/T with T recorded in the metadata.

mod output;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use floqlat::duality::{self, ComparisonReport, Side, Verdict};
use floqlat::model;
use floqlat::params::momentum_grid;
use floqlat::staticlat;
use floqlat::{floquet, CoreError, ModelParams, OpenDirection, Variant};
use output::{Cell, Format, Table};

/// Environment variable holding the output-directory override applied to
/// relative `-o` paths.
const OUT_DIR_ENV: &str = "FLOQLAT_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "floqlat",
    version,
    about = "Driven-lattice vs discrete-time spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Parse a momentum or drive parameter that may carry a "pi" suffix:
/// "1.5pi", "pi", "0.25" are all accepted.
fn parse_pi_token(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(prefix) = t.strip_suffix("pi") {
        let factor = if prefix.is_empty() {
            1.0
        } else {
            prefix
                .parse::<f64>()
                .map_err(|_| format!("not a number: {s:?}"))?
        };
        Ok(factor * PI)
    } else {
        t.parse::<f64>().map_err(|_| format!("not a number: {s:?}"))
    }
}

fn parse_open(s: &str) -> Result<OpenDirection, String> {
    match s {
        "x-minus" => Ok(OpenDirection::XMinus),
        "x-plus" => Ok(OpenDirection::XPlus),
        other => Err(format!("expected x-minus or x-plus, got {other:?}")),
    }
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    match s {
        "a" => Ok(Variant::A),
        "b" => Ok(Variant::B),
        other => Err(format!("expected a or b, got {other:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue table over the periodic Brillouin zone.
    PbcSpectrum {
        /// Model name: floquet, static-a or static-b.
        #[arg(long)]
        model: String,
        /// Drive strength times period; accepts pi tokens like 1.5pi.
        #[arg(long, value_parser = parse_pi_token)]
        jt: f64,
        /// Drive period.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Even grid size per momentum axis.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Strip eigenvalues against the conserved momentum.
    StripSpectrum {
        #[arg(long)]
        model: String,
        #[arg(long, value_parser = parse_pi_token)]
        jt: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Transverse cell count.
        #[arg(long, default_value_t = 6)]
        sites: usize,
        /// Open direction: x-minus or x-plus.
        #[arg(long, value_parser = parse_open, default_value = "x-minus")]
        open: OpenDirection,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Periodic-zone and strip comparison between the shifted driven
    /// spectrum and the static one.
    Compare {
        #[arg(long, value_parser = parse_pi_token)]
        jt: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_parser = parse_open, default_value = "x-minus")]
        open: OpenDirection,
        #[arg(long, default_value_t = 6)]
        sites: usize,
        /// Static chain variant backing the comparison.
        #[arg(long, value_parser = parse_variant, default_value = "a")]
        variant: Variant,
        /// Periodic-zone grid size.
        #[arg(long, default_value_t = 48)]
        grid: usize,
        /// Strip momentum grid size.
        #[arg(long, default_value_t = 32)]
        strip_grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        pbc_tol: f64,
        /// Strip verdict threshold; finite-size corrections scale like 1/N.
        #[arg(long, default_value_t = 0.05)]
        strip_tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Edge-state density profiles of the driven strip and both static
    /// variants at one conserved momentum.
    EdgeWavefunction {
        #[arg(long, value_parser = parse_pi_token)]
        jt: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 7)]
        sites: usize,
        /// Conserved momentum k+; accepts pi tokens.
        #[arg(long, value_parser = parse_pi_token, default_value = "0")]
        k: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Bulk gap and edge censuses across a drive-strength range.
    PhaseScan {
        #[arg(long, value_parser = parse_pi_token)]
        jt_min: f64,
        #[arg(long, value_parser = parse_pi_token)]
        jt_max: f64,
        #[arg(long, default_value_t = 37)]
        steps: usize,
        #[arg(long, default_value_t = 6)]
        sites: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Constraint sweep ruling out the isotropic Wilson-Dirac candidate.
    NogoCheck {
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Number of mass samples across [-1, 1].
        #[arg(long, default_value_t = 2001)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(short, long)]
        output: PathBuf,
    },
}

enum CliError {
    /// Bad parameter value; exits 2 and names the flag.
    Validation(String),
    /// Computation or I/O failure; exits 1.
    Runtime(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn check_jt(jt: f64) -> Result<(), CliError> {
    if jt <= 0.0 || jt >= 2.0 * PI {
        return Err(CliError::Validation(format!(
            "invalid --jt: {jt} is outside (0, 2pi)"
        )));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<(), CliError> {
    if t <= 0.0 {
        return Err(CliError::Validation(format!(
            "invalid --t: {t} must be positive"
        )));
    }
    Ok(())
}

fn check_grid(grid: usize, flag: &str) -> Result<(), CliError> {
    if grid < 2 || !grid.is_multiple_of(2) {
        return Err(CliError::Validation(format!(
            "invalid {flag}: {grid} must be even and at least 2"
        )));
    }
    Ok(())
}

fn check_sites(sites: usize) -> Result<(), CliError> {
    if sites < 2 {
        return Err(CliError::Validation(format!(
            "invalid --sites: {sites} must be at least 2"
        )));
    }
    Ok(())
}

fn resolve_output(path: PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path,
    }
}

fn base_meta(jt: f64, t: f64) -> Value {
    json!({ "jt": jt, "T": t, "unit": "1/T" })
}

fn merge(meta: Value, extra: Value) -> Value {
    let mut m = meta;
    if let (Some(obj), Some(add)) = (m.as_object_mut(), extra.as_object()) {
        for (k, v) in add {
            obj.insert(k.clone(), v.clone());
        }
    }
    m
}

fn report_json(r: &ComparisonReport) -> Value {
    json!({
        "max_abs_dev": r.max_abs_dev,
        "mean_abs_dev": r.mean_abs_dev,
        "pairs_matched": r.pairs_matched,
        "degeneracy_factor": r.degeneracy_factor,
        "max_pair_split": r.max_pair_split,
        "tol": r.tol,
        "verdict": if r.verdict == Verdict::Pass { "pass" } else { "fail" },
    })
}

fn report_row(name: &str, r: &ComparisonReport) -> Vec<Cell> {
    vec![
        Cell::Text(name.to_string()),
        Cell::Text(
            if r.verdict == Verdict::Pass {
                "pass"
            } else {
                "fail"
            }
            .to_string(),
        ),
        Cell::Num(r.max_abs_dev),
        Cell::Num(r.mean_abs_dev),
        Cell::Int(r.pairs_matched as i64),
        Cell::Int(r.degeneracy_factor as i64),
        Cell::Num(r.max_pair_split),
        Cell::Num(r.tol),
    ]
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::PbcSpectrum {
            model,
            jt,
            t,
            grid,
            format,
            output,
        } => {
            check_jt(jt)?;
            check_t(t)?;
            check_grid(grid, "--grid")?;
            let m = model::lookup(&model)
                .map_err(|e| CliError::Validation(format!("invalid --model: {e}")))?;
            let p = ModelParams::new(jt, t);
            let table = model::pbc_table(m, grid, &p)?;
            let mut rows = Vec::with_capacity(table.points.len() * table.bands());
            for (point, values) in table.points.iter().zip(&table.values) {
                for (band, &v) in values.iter().enumerate() {
                    rows.push(vec![
                        Cell::Num(point.k_plus),
                        Cell::Num(point.k_minus),
                        Cell::Int(band as i64),
                        Cell::Num(v * t),
                    ]);
                }
            }
            let meta = merge(
                base_meta(jt, t),
                json!({ "model": model, "grid": grid, "bands": m.bands() }),
            );
            let out = Table {
                columns: vec!["k_plus", "k_minus", "band", "value"],
                rows,
            };
            output::emit(&meta, &out, format, &resolve_output(output))?;
        }
        Command::StripSpectrum {
            model,
            jt,
            t,
            sites,
            open,
            grid,
            format,
            output,
        } => {
            check_jt(jt)?;
            check_t(t)?;
            check_grid(grid, "--grid")?;
            check_sites(sites)?;
            let m = model::lookup(&model)
                .map_err(|e| CliError::Validation(format!("invalid --model: {e}")))?;
            let p = ModelParams::new(jt, t).with_sites(sites, sites);
            let strip = m.strip(&momentum_grid(grid), open, &p, false)?;
            let k_column = match open {
                OpenDirection::XMinus => "k_plus",
                OpenDirection::XPlus => "k_minus",
            };
            let mut rows = Vec::new();
            for (i, &k) in strip.momenta.iter().enumerate() {
                for (index, &v) in strip.values[i].iter().enumerate() {
                    rows.push(vec![
                        Cell::Num(floqlat::params::wrap_momentum(k)),
                        Cell::Int(index as i64),
                        Cell::Num(v * t),
                    ]);
                }
            }
            let meta = merge(
                base_meta(jt, t),
                json!({
                    "model": model,
                    "open": open.label(),
                    "sites": sites,
                    "grid": grid,
                }),
            );
            let out = Table {
                columns: vec![k_column, "index", "value"],
                rows,
            };
            output::emit(&meta, &out, format, &resolve_output(output))?;
        }
        Command::Compare {
            jt,
            t,
            open,
            sites,
            variant,
            grid,
            strip_grid,
            pbc_tol,
            strip_tol,
            format,
            output,
        } => {
            check_jt(jt)?;
            check_t(t)?;
            check_grid(grid, "--grid")?;
            check_grid(strip_grid, "--strip-grid")?;
            check_sites(sites)?;
            let p = ModelParams::new(jt, t)
                .with_sites(sites, sites)
                .with_variant(variant);
            let strip_momenta = match open {
                OpenDirection::XMinus => momentum_grid(strip_grid),
                // keep off the exactly dimerized zone boundary
                OpenDirection::XPlus => floqlat::params::offset_momentum_grid(strip_grid),
            };
            let summary =
                duality::equivalence_summary(&p, open, grid, &strip_momenta, pbc_tol, strip_tol)?;
            let meta = merge(
                base_meta(jt, t),
                json!({
                    "open": open.label(),
                    "sites": sites,
                    "variant": variant.label(),
                    "grid": grid,
                    "strip_grid": strip_grid,
                }),
            );
            let sections = json!({
                "pbc": report_json(&summary.pbc),
                "strip": report_json(&summary.strip),
            });
            let csv = Table {
                columns: vec![
                    "check",
                    "verdict",
                    "max_abs_dev",
                    "mean_abs_dev",
                    "pairs_matched",
                    "degeneracy_factor",
                    "max_pair_split",
                    "tol",
                ],
                rows: vec![
                    report_row("pbc", &summary.pbc),
                    report_row("strip", &summary.strip),
                ],
            };
            output::emit_report(&meta, &sections, &csv, format, &resolve_output(output))?;
        }
        Command::EdgeWavefunction {
            jt,
            t,
            sites,
            k,
            format,
            output,
        } => {
            check_jt(jt)?;
            check_t(t)?;
            check_sites(sites)?;
            let p = ModelParams::new(jt, t).with_sites(sites, sites);
            let left_profile = |strip: &floqlat::StripSpectrum,
                                pv: &ModelParams|
             -> Result<(Vec<f64>, Option<f64>), CliError> {
                let reports = duality::edge_report(strip, pv)?;
                let state = reports[0]
                    .states
                    .iter()
                    .find(|s| s.side == Side::Left && s.edge_localized)
                    .ok_or_else(|| {
                        CliError::Runtime(format!(
                            "no left edge state at k = {k}; is JT below the transition?"
                        ))
                    })?;
                Ok((state.cell_density.clone(), state.decay_length))
            };
            let fs = floquet::strip_quasienergies(&[k], &p, OpenDirection::XMinus, true)?;
            let (floq, floq_decay) = left_profile(&fs, &p)?;
            let pa = p.with_variant(Variant::A);
            let sa = staticlat::strip_energies(&[k], &pa, OpenDirection::XMinus, true)?;
            let (stat_a, decay_a) = left_profile(&sa, &pa)?;
            let pb = p.with_variant(Variant::B);
            let sb = staticlat::strip_energies(&[k], &pb, OpenDirection::XMinus, true)?;
            let (stat_b, decay_b) = left_profile(&sb, &pb)?;

            let mut rows = Vec::with_capacity(sites);
            for cell in 0..sites {
                rows.push(vec![
                    Cell::Int(cell as i64),
                    Cell::Num(floq[cell]),
                    Cell::Num(stat_a[cell]),
                    Cell::Num(stat_b[cell]),
                ]);
            }
            let decay = |d: Option<f64>| d.map_or(Value::Null, |x| json!(x));
            let meta = merge(
                base_meta(jt, t),
                json!({
                    "sites": sites,
                    "k_plus": k,
                    "decay_lengths": {
                        "floquet": decay(floq_decay),
                        "static_a": decay(decay_a),
                        "static_b": decay(decay_b),
                    },
                }),
            );
            let out = Table {
                columns: vec!["cell", "floquet", "static_a", "static_b"],
                rows,
            };
            output::emit(&meta, &out, format, &resolve_output(output))?;
        }
        Command::PhaseScan {
            jt_min,
            jt_max,
            steps,
            sites,
            t,
            format,
            output,
        } => {
            check_t(t)?;
            check_sites(sites)?;
            if steps < 2 {
                return Err(CliError::Validation(format!(
                    "invalid --steps: {steps} must be at least 2"
                )));
            }
            if jt_min <= 0.0 || jt_max >= 2.0 * PI || jt_min >= jt_max {
                return Err(CliError::Validation(format!(
                    "invalid --jt-min/--jt-max: need 0 < {jt_min} < {jt_max} < 2pi"
                )));
            }
            let grid: Vec<f64> = (0..steps)
                .map(|i| jt_min + (jt_max - jt_min) * i as f64 / (steps - 1) as f64)
                .collect();
            let p = ModelParams::new(PI, t).with_sites(sites, sites);
            let scan = duality::phase_scan(&grid, &p)?;
            let count_cell = |c: Option<usize>| c.map_or(Cell::Empty, |n| Cell::Int(n as i64));
            let rows = scan
                .iter()
                .map(|row| {
                    vec![
                        Cell::Num(row.jt),
                        Cell::Num(row.gap * t),
                        count_cell(row.floquet_edge_modes),
                        count_cell(row.static_edge_modes),
                    ]
                })
                .collect();
            let meta = json!({
                "T": t,
                "unit": "1/T",
                "jt_min": jt_min,
                "jt_max": jt_max,
                "steps": steps,
                "sites": sites,
                "census_momentum": duality::CENSUS_MOMENTUM,
            });
            let out = Table {
                columns: vec!["jt", "gap", "floquet_edge_modes", "static_edge_modes"],
                rows,
            };
            output::emit(&meta, &out, format, &resolve_output(output))?;
        }
        Command::NogoCheck {
            t,
            steps,
            format,
            output,
        } => {
            check_t(t)?;
            if steps < 2 {
                return Err(CliError::Validation(format!(
                    "invalid --steps: {steps} must be at least 2"
                )));
            }
            let mut rows = Vec::with_capacity(steps);
            let mut all_incompatible = true;
            for i in 0..steps {
                let m = -1.0 + 2.0 * i as f64 / (steps - 1) as f64;
                let r = staticlat::wd2p1_nogo(m, t)?;
                all_incompatible &= !r.compatible;
                rows.push(vec![
                    Cell::Num(m),
                    Cell::Num(r.forced[0].0),
                    Cell::Num(r.forced[0].1),
                    Cell::Num(r.required_mass),
                    Cell::Int(r.compatible as i64),
                ]);
            }
            let meta = json!({
                "T": t,
                "steps": steps,
                "all_incompatible": all_incompatible,
            });
            let out = Table {
                columns: vec!["m", "m_forced", "r_forced", "required_abs_m", "compatible"],
                rows,
            };
            output::emit(&meta, &out, format, &resolve_output(output))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(), // clap uses exit code 2 for usage errors
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
