use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use qudit_sorter::{
    awg_design, build, decompose, efficiency, fourier, reconstruct, simulate, sorting_matrix,
    sweep_perturbations, AwgDesign, BeamsplitterMesh, Efficiency, Error, SortingMatrix, SweepResult,
    UnitaryMatrix,
};
use serde::Serialize;

use crate::cascade::{compare_cascade, CascadeComparison};
use crate::config::{
    self, AwgConfig, CascadeConfig, DecomposeConfig, Format, RunConfig, SweepConfig, DEFAULT_SEARCH_BOUND,
};
use crate::report::{fmt_short, sorting_matrix_csv, sweep_csv, to_json};
use crate::{CliError, Command, FormatArg, RunArgs};

/// Input tolerance for matrices read from file.
pub const MATRIX_FILE_TOL: f64 = 1e-10;

/// Runs one command; returns what should be printed on stdout.
pub fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Sweep {
            run,
            sigmas,
            trials,
            seed,
        } => cmd_sweep(&run, sigmas, trials, seed),
        Command::AwgDesign {
            config,
            out,
            d,
            wavelengths,
            search_bound,
        } => cmd_awg_design(config.as_deref(), out.as_deref(), d, wavelengths, search_bound),
        Command::Decompose {
            config,
            out,
            gate,
            matrix,
        } => cmd_decompose(config.as_deref(), out.as_deref(), gate, matrix),
        Command::CompareCascade { config, out, d } => cmd_compare_cascade(config.as_deref(), out.as_deref(), d),
    }
}

fn numerical(e: Error) -> CliError {
    CliError::Numerical(e.to_string())
}

fn complex_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Writes `text` to `path`, or returns it for stdout when there is no path.
fn emit(path: Option<&Path>, text: String) -> Result<String, CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn json(value: &impl Serialize) -> Result<String, CliError> {
    to_json(value).map_err(|e| CliError::Io(e.to_string()))
}

/// Loads a run config and applies the shared flag overrides.
fn load_run_config(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg: RunConfig = config::load(&args.config)?;
    if let Some(out) = &args.out {
        cfg.output = Some(out.clone());
    }
    if let Some(f) = args.format {
        cfg.format = match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
    }
    Ok(cfg)
}

fn csv_with_config(cfg: &impl Serialize, body: String) -> Result<String, CliError> {
    let header = to_json(cfg).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(format!("# config: {header}{body}"))
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

#[derive(Debug, Serialize)]
pub struct SimulateReport<'a> {
    pub config: &'a RunConfig,
    pub sorting_matrix: &'a [Vec<f64>],
    pub efficiency: Efficiency,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub awg_design: Option<&'a AwgDesign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub fn cmd_simulate(args: &RunArgs) -> Result<String, CliError> {
    let start = Instant::now();
    let cfg = load_run_config(args)?;
    let prepared = cfg.prepare()?;
    let u = build(&prepared.spec).map_err(numerical)?;
    let p = sorting_matrix(&u).map_err(numerical)?;
    let eff = efficiency(&p);
    let state = match &prepared.input {
        Some(input) => Some(complex_pairs(simulate(&u, input).map_err(numerical)?.amplitudes())),
        None => None,
    };
    let text = match cfg.format {
        Format::Json => json(&SimulateReport {
            config: &cfg,
            sorting_matrix: p.rows(),
            efficiency: eff,
            awg_design: prepared.design.as_ref(),
            state,
            timing_ms: args.timing.then(|| elapsed_ms(start)),
        })?,
        Format::Csv => csv_with_config(&cfg, sorting_matrix_csv(&p))?,
    };
    let mut stdout = format!("efficiency: worst {} mean {}\n", fmt_short(eff.worst), fmt_short(eff.mean));
    stdout.push_str(&emit(cfg.output.as_deref(), text)?);
    Ok(stdout)
}

#[derive(Debug, Serialize)]
pub struct Nominal<'a> {
    pub sorting_matrix: &'a [Vec<f64>],
    pub efficiency: Efficiency,
}

#[derive(Debug, Serialize)]
pub struct SweepReport<'a> {
    pub config: &'a RunConfig,
    pub nominal: Nominal<'a>,
    pub sweep: &'a [SweepResult],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

pub fn cmd_sweep(
    args: &RunArgs,
    sigmas: Option<Vec<f64>>,
    trials: Option<usize>,
    seed: Option<u64>,
) -> Result<String, CliError> {
    let start = Instant::now();
    let mut cfg = load_run_config(args)?;
    let mut sweep = cfg.sweep.clone().unwrap_or(SweepConfig {
        sigmas: Vec::new(),
        trials: 0,
        seed: 0,
    });
    if let Some(s) = sigmas {
        sweep.sigmas = s;
    }
    if let Some(t) = trials {
        sweep.trials = t;
    }
    if let Some(s) = seed {
        sweep.seed = s;
    }
    config::validate_sweep(&sweep)?;
    cfg.sweep = Some(sweep.clone());
    let prepared = cfg.prepare()?;

    let p: SortingMatrix = sorting_matrix(&build(&prepared.spec).map_err(numerical)?).map_err(numerical)?;
    let results = sweep
        .sigmas
        .iter()
        .map(|&sigma| sweep_perturbations(&prepared.spec, sigma, sweep.trials, sweep.seed))
        .collect::<Result<Vec<_>, _>>()
        .map_err(numerical)?;

    let text = match cfg.format {
        Format::Json => json(&SweepReport {
            config: &cfg,
            nominal: Nominal {
                sorting_matrix: p.rows(),
                efficiency: efficiency(&p),
            },
            sweep: &results,
            timing_ms: args.timing.then(|| elapsed_ms(start)),
        })?,
        Format::Csv => csv_with_config(&cfg, sweep_csv(&results))?,
    };
    let mut stdout = String::new();
    for r in &results {
        stdout.push_str(&format!(
            "sigma {}: worst {} mean {} (+/- {})\n",
            fmt_short(r.sigma),
            fmt_short(r.worst),
            fmt_short(r.mean),
            fmt_short(r.mean_std_error)
        ));
    }
    stdout.push_str(&emit(cfg.output.as_deref(), text)?);
    Ok(stdout)
}

#[derive(Debug, Serialize)]
pub struct AwgReport<'a> {
    pub config: &'a AwgConfig,
    #[serde(flatten)]
    pub design: &'a AwgDesign,
}

pub fn cmd_awg_design(
    config_path: Option<&Path>,
    out: Option<&Path>,
    d: Option<usize>,
    wavelengths: Option<Vec<f64>>,
    search_bound: Option<u32>,
) -> Result<String, CliError> {
    let mut cfg = match config_path {
        Some(p) => config::load::<AwgConfig>(p)?,
        None => {
            let w = wavelengths
                .clone()
                .ok_or_else(|| CliError::Usage("wavelengths: required (--wavelengths or --config)".into()))?;
            AwgConfig {
                d: d.unwrap_or(w.len()),
                wavelengths: w,
                search_bound: DEFAULT_SEARCH_BOUND,
            }
        }
    };
    if let Some(w) = wavelengths {
        cfg.wavelengths = w;
    }
    if let Some(d) = d {
        cfg.d = d;
    }
    if let Some(b) = search_bound {
        cfg.search_bound = b;
    }
    let design = awg_design(cfg.d, &cfg.wavelengths, cfg.search_bound).map_err(|e| {
        let field = match e {
            Error::ZeroSearchBound => "search_bound",
            Error::DimensionMismatch { .. } => "d",
            _ => "wavelengths",
        };
        CliError::Usage(format!("{field}: {e}"))
    })?;
    let text = json(&AwgReport {
        config: &cfg,
        design: &design,
    })?;
    let lengths: Vec<String> = design.lengths.iter().map(|&l| fmt_short(l)).collect();
    let mut stdout = format!(
        "residual: {}{}\nlengths: [{}]\n",
        fmt_short(design.residual),
        if design.is_exact() { " (exact)" } else { "" },
        lengths.join(", ")
    );
    stdout.push_str(&emit(out, text)?);
    Ok(stdout)
}

/// Parses a named gate such as `fourier:8`.
pub fn named_gate(name: &str) -> Result<UnitaryMatrix, CliError> {
    let bad = || CliError::Usage(format!("gate: unknown gate {name:?} (expected fourier:<d>)"));
    let (kind, arg) = name.split_once(':').ok_or_else(bad)?;
    let d: usize = arg.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "fourier" => fourier(d).map_err(|e| CliError::Usage(format!("gate: {e}"))),
        _ => Err(bad()),
    }
}

/// Reads a matrix file: a JSON array of rows, each an array of `[re, im]` pairs.
pub fn load_matrix(path: &Path) -> Result<UnitaryMatrix, CliError> {
    let rows: Vec<Vec<[f64; 2]>> = config::load(path).map_err(|e| match e {
        CliError::Usage(m) => CliError::Usage(format!("matrix: {m}")),
        other => other,
    })?;
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .collect();
    UnitaryMatrix::from_rows_with_tolerance(rows, MATRIX_FILE_TOL).map_err(|e| CliError::Usage(format!("matrix: {e}")))
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport<'a> {
    pub config: &'a DecomposeConfig,
    #[serde(flatten)]
    pub mesh: &'a BeamsplitterMesh,
    pub beamsplitter_count: usize,
    pub reconstruction_error: f64,
}

pub fn cmd_decompose(
    config_path: Option<&Path>,
    out: Option<&Path>,
    gate: Option<String>,
    matrix: Option<PathBuf>,
) -> Result<String, CliError> {
    let mut cfg = match config_path {
        Some(p) => config::load::<DecomposeConfig>(p)?,
        None => DecomposeConfig { gate: None, matrix: None },
    };
    if gate.is_some() || matrix.is_some() {
        cfg.gate = gate;
        cfg.matrix = matrix;
    }
    let u = match (&cfg.gate, &cfg.matrix) {
        (Some(g), None) => named_gate(g)?,
        (None, Some(m)) => load_matrix(m)?,
        (Some(_), Some(_)) => return Err(CliError::Usage("gate: give either gate or matrix, not both".into())),
        (None, None) => return Err(CliError::Usage("gate: a gate or matrix file is required".into())),
    };
    let mesh = decompose(&u).map_err(|e| CliError::Usage(format!("matrix: {e}")))?;
    let error = reconstruct(&mesh).map_err(numerical)?.max_abs_diff(&u);
    let report = DecomposeReport {
        config: &cfg,
        mesh: &mesh,
        beamsplitter_count: mesh.beamsplitter_count(),
        reconstruction_error: error,
    };
    let text = json(&report)?;
    let mut stdout = format!(
        "beamsplitters: {}\nphase shifters: {}\nreconstruction error: {}\n",
        mesh.beamsplitter_count(),
        mesh.phase_shifter_count(),
        fmt_short(error)
    );
    stdout.push_str(&emit(out, text)?);
    Ok(stdout)
}

#[derive(Debug, Serialize)]
pub struct CascadeReport<'a> {
    pub config: &'a CascadeConfig,
    #[serde(flatten)]
    pub comparison: &'a CascadeComparison,
}

pub fn cmd_compare_cascade(config_path: Option<&Path>, out: Option<&Path>, d: Option<usize>) -> Result<String, CliError> {
    let cfg = match (config_path, d) {
        (_, Some(d)) => CascadeConfig { d },
        (Some(p), None) => config::load::<CascadeConfig>(p)?,
        (None, None) => return Err(CliError::Usage("d: required (--d or --config)".into())),
    };
    if cfg.d < 2 {
        return Err(CliError::Usage("d: must be at least 2".into()));
    }
    let comparison = compare_cascade(cfg.d);
    let mut stdout = comparison.summary();
    if let Some(path) = out {
        emit(
            Some(path),
            json(&CascadeReport {
                config: &cfg,
                comparison: &comparison,
            })?,
        )?;
    } else {
        stdout.push_str(&json(&CascadeReport {
            config: &cfg,
            comparison: &comparison,
        })?);
    }
    Ok(stdout)
}
