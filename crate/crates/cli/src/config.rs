//! JSON configuration documents for every command.
//!
//! Precedence: command-line flags override the matching config fields, and
//! config fields override built-in defaults.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qudit_sorter::{
    awg_design, awg_module, oam_module, pbs_module, AwgDesign, CompositeState, OamBasisMap,
    OutputGate, PhaseModule, Reflector, SorterSpec,
};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

/// Observable being sorted and how its phases are realized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Observable {
    /// Dove-prism OAM sorter; `levels` defaults to `0..d`.
    Oam {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        levels: Option<Vec<i64>>,
    },
    /// AWG wavelength sorter, either from a ready design or from a wavelength grid.
    Wavelength {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        wavelengths: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        search_bound: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        design: Option<AwgDesign>,
    },
    /// Polarizing beam-splitter sorter (`d = 2`).
    Pbs {},
    /// Ideal `Z_d^k` phases on arm `k`.
    Ideal {},
    /// Phase table indexed `[arm][observable]`, radians.
    Custom { phases: Vec<Vec<f64>> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArchitectureConfig {
    #[default]
    Mzi,
    Michelson(Reflector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub sigmas: Vec<f64>,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
}

/// Default AWG search bound when a wavelength grid is given without one.
pub const DEFAULT_SEARCH_BOUND: u32 = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub d: usize,
    pub observable: Observable,
    #[serde(default)]
    pub architecture: ArchitectureConfig,
    #[serde(default)]
    pub output_gate: OutputGate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbations: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    /// Input amplitudes as `[re, im]` pairs: `d` entries for a superposition
    /// of observable values on port 0, or `d^2` for a full two-qudit state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn usage(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{field}: {msg}"))
}

/// Reads and parses a JSON config file.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
}

/// A validated run: the sorter to build plus everything needed to report on it.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub spec: SorterSpec,
    pub input: Option<CompositeState>,
    /// AWG design solved from a wavelength grid, when applicable.
    pub design: Option<AwgDesign>,
}

impl RunConfig {
    /// Checks every field and builds the sorter specification.
    pub fn prepare(&self) -> Result<Prepared, CliError> {
        let d = self.d;
        if d == 0 {
            return Err(usage("d", "must be at least 1"));
        }
        let mut design = None;
        let module = match &self.observable {
            Observable::Oam { levels } => {
                let levels = levels.clone().unwrap_or_else(|| (0..d as i64).collect());
                if levels.len() != d {
                    return Err(usage("observable.levels", format!("expected {d} levels, found {}", levels.len())));
                }
                oam_module(OamBasisMap::new(levels).map_err(|e| usage("observable.levels", e))?)
            }
            Observable::Wavelength {
                wavelengths,
                search_bound,
                design: given,
            } => {
                let solved = match (wavelengths, given) {
                    (Some(_), Some(_)) => {
                        return Err(usage("observable", "give either wavelengths or design, not both"))
                    }
                    (None, None) => return Err(usage("observable", "wavelengths or design required")),
                    (None, Some(g)) => g.clone(),
                    (Some(w), None) => {
                        if w.len() != d {
                            return Err(usage(
                                "observable.wavelengths",
                                format!("expected {d} wavelengths, found {}", w.len()),
                            ));
                        }
                        let bound = search_bound.unwrap_or(DEFAULT_SEARCH_BOUND);
                        let solved = awg_design(d, w, bound).map_err(|e| match e {
                            qudit_sorter::Error::ZeroSearchBound => usage("observable.search_bound", e),
                            _ => usage("observable.wavelengths", e),
                        })?;
                        design = Some(solved.clone());
                        solved
                    }
                };
                if solved.d != d {
                    return Err(usage("observable.design.d", format!("expected {d}, found {}", solved.d)));
                }
                awg_module(solved).map_err(|e| usage("observable.design", e))?
            }
            Observable::Pbs {} => {
                if d != 2 {
                    return Err(usage("d", "the pbs observable requires d = 2"));
                }
                pbs_module()
            }
            Observable::Ideal {} => PhaseModule::ideal(d).map_err(|e| usage("d", e))?,
            Observable::Custom { phases } => {
                if phases.len() != d {
                    return Err(usage("observable.phases", format!("expected a {d}x{d} table")));
                }
                if phases.iter().flatten().any(|p| !p.is_finite()) {
                    return Err(usage("observable.phases", "phases must be finite"));
                }
                PhaseModule::table(phases.clone()).map_err(|e| usage("observable.phases", e))?
            }
        };

        let spec = match self.architecture {
            ArchitectureConfig::Mzi => SorterSpec::new(module).with_output_gate(self.output_gate),
            ArchitectureConfig::Michelson(r) => {
                if self.output_gate != OutputGate::FDagger {
                    return Err(usage("output_gate", "only applies to the mzi architecture"));
                }
                SorterSpec::michelson(module, r).map_err(|e| usage("architecture", e))?
            }
        };

        if self.perturbations.is_some() && self.sweep.is_some() {
            return Err(usage("perturbations", "cannot be combined with sweep"));
        }
        let spec = match &self.perturbations {
            None => spec,
            Some(p) => {
                if p.iter().any(|x| !x.is_finite()) {
                    return Err(usage("perturbations", "offsets must be finite"));
                }
                spec.with_perturbations(p.clone())
                    .map_err(|e| usage("perturbations", e))?
            }
        };
        if let Some(sweep) = &self.sweep {
            validate_sweep(sweep)?;
        }

        let input = match &self.input {
            None => None,
            Some(pairs) => {
                let amps: Vec<Complex64> = pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                let state = if amps.len() == d {
                    CompositeState::observable_superposition(&amps, 0)
                } else if amps.len() == d * d {
                    CompositeState::normalized(d, amps)
                } else {
                    return Err(usage("input", format!("expected {d} or {} amplitudes, found {}", d * d, amps.len())));
                };
                Some(state.map_err(|e| usage("input", e))?)
            }
        };

        Ok(Prepared { spec, input, design })
    }
}

pub fn validate_sweep(sweep: &SweepConfig) -> Result<(), CliError> {
    if sweep.sigmas.is_empty() {
        return Err(usage("sweep.sigmas", "at least one sigma required"));
    }
    if let Some(s) = sweep.sigmas.iter().find(|s| !(**s >= 0.0 && s.is_finite())) {
        return Err(usage("sweep.sigmas", format!("sigma must be non-negative, got {s}")));
    }
    if sweep.trials == 0 {
        return Err(usage("sweep.trials", "must be positive"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AwgConfig {
    pub d: usize,
    pub wavelengths: Vec<f64>,
    #[serde(default = "default_search_bound")]
    pub search_bound: u32,
}

fn default_search_bound() -> u32 {
    DEFAULT_SEARCH_BOUND
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecomposeConfig {
    /// Named gate, currently `fourier:<d>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
    /// Path of a JSON matrix file: rows of `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CascadeConfig {
    pub d: usize,
}
