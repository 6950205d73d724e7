//! Sorter assembly and sorting statistics.
//!
//! A Mach-Zehnder sorter is `(1 (x) G_out) . D . (1 (x) F)`: a Fourier gate
//! spreads the particle over `d` arms, each arm applies the phase module to
//! the observable, and an output Fourier gate recombines the arms. With the
//! ideal module and `G_out = F^dag` this is exactly `C(X_d)`, so a particle
//! with observable value `s` entering port 0 leaves on port `s`.
//!
//! The Michelson sorter folds the interferometer: the arms are traversed
//! twice with half the phase each way, a reflector sits at the end of every
//! arm, and the same Fourier gate is crossed again on the way back.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::omega_pow;
use crate::matrix::UnitaryMatrix;
use crate::phase::PhaseModule;
use crate::state::{apply, CompositeState};

/// Column-sum tolerance for sorting matrices.
pub const PROBABILITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reflector {
    /// Corner retroreflector: two reflections, observable unchanged.
    Retroreflector,
    /// Plane mirror: flips the sign of orbital angular momentum.
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Architecture {
    MachZehnder,
    Michelson(Reflector),
}

/// Gate closing a Mach-Zehnder sorter. `F` instead of `F^dag` sends value
/// `s` to port `(-s) mod d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputGate {
    #[default]
    FDagger,
    F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SorterSpec {
    d: usize,
    architecture: Architecture,
    module: PhaseModule,
    perturbations: Vec<f64>,
    output_gate: OutputGate,
}

impl SorterSpec {
    /// Mach-Zehnder sorter with `F^dag` output and no perturbations.
    pub fn new(module: PhaseModule) -> Self {
        let d = module.d();
        Self {
            d,
            architecture: Architecture::MachZehnder,
            module,
            perturbations: vec![0.0; d],
            output_gate: OutputGate::FDagger,
        }
    }

    /// Michelson sorter. A mirror is only accepted for the OAM module.
    pub fn michelson(module: PhaseModule, reflector: Reflector) -> Result<Self> {
        if reflector == Reflector::Mirror && !matches!(module, PhaseModule::Oam(_)) {
            return Err(Error::MirrorRequiresOam);
        }
        Ok(Self {
            architecture: Architecture::Michelson(reflector),
            ..Self::new(module)
        })
    }

    pub fn with_output_gate(mut self, gate: OutputGate) -> Self {
        self.output_gate = gate;
        self
    }

    /// Per-arm phase offsets in radians, one per arm.
    pub fn with_perturbations(mut self, perturbations: Vec<f64>) -> Result<Self> {
        if perturbations.len() != self.d {
            return Err(Error::PerturbationLength {
                expected: self.d,
                found: perturbations.len(),
            });
        }
        self.perturbations = perturbations;
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn architecture(&self) -> Architecture {
        self.architecture
    }

    pub fn module(&self) -> &PhaseModule {
        &self.module
    }

    pub fn perturbations(&self) -> &[f64] {
        &self.perturbations
    }

    pub fn output_gate(&self) -> OutputGate {
        self.output_gate
    }
}

/// Assembles a `d^2 x d^2` matrix from `d x d` blocks; `blocks[(s_out, s_in)]`
/// maps mode amplitudes of observable `s_in` to those of `s_out`.
fn assemble_blocks(d: usize, blocks: impl IntoIterator<Item = ((usize, usize), UnitaryMatrix)>) -> UnitaryMatrix {
    let n = d * d;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for ((s_out, s_in), block) in blocks {
        for r in 0..d {
            let start = (s_out * d + r) * n + s_in * d;
            entries[start..start + d].copy_from_slice(block.row(r));
        }
    }
    UnitaryMatrix::from_raw(n, entries)
}

/// `G . diag(e^{i phases}) . F` with `G = F` (`sign = 1`) or `G = F^dag`
/// (`sign = -1`): entry `[j][m] = (1/d) sum_k e^{i phases[k]} omega^{k (m + sign j)}`.
///
/// Evaluated directly with exponents reduced mod `d` and a single `1/d`
/// normalization, which keeps ideal sorters exact where the arithmetic allows.
fn fourier_sandwich(phases: &[f64], sign: i64) -> UnitaryMatrix {
    let d = phases.len();
    let roots: Vec<Complex64> = (0..d as i64).map(|m| omega_pow(m, d)).collect();
    let arm: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    let scale = 1.0 / d as f64;
    let mut entries = Vec::with_capacity(d * d);
    for j in 0..d as i64 {
        for m in 0..d as i64 {
            let step = (m + sign * j).rem_euclid(d as i64) as usize;
            let sum: Complex64 = arm
                .iter()
                .enumerate()
                .map(|(k, a)| a * roots[(k * step) % d])
                .sum();
            entries.push(sum * scale);
        }
    }
    UnitaryMatrix::from_raw(d, entries)
}

/// Mach-Zehnder sorter `(1 (x) G_out) . D . (1 (x) F)` where `D` applies
/// `e^{i (phase(k, s) + perturbation[k])}` to `|s, k>`.
pub fn build_mzi(spec: &SorterSpec) -> Result<UnitaryMatrix> {
    if spec.architecture != Architecture::MachZehnder {
        return Err(Error::ArchitectureMismatch {
            expected: "Mach-Zehnder",
        });
    }
    let d = spec.d;
    let sign = match spec.output_gate {
        OutputGate::FDagger => -1,
        OutputGate::F => 1,
    };
    let blocks = (0..d).map(|s| {
        let phases: Vec<f64> = (0..d)
            .map(|k| spec.module.phase(k, s) + spec.perturbations[k])
            .collect();
        ((s, s), fourier_sandwich(&phases, sign))
    });
    Ok(assemble_blocks(d, blocks))
}

/// Michelson sorter `(1 (x) F) . D_back . (R (x) 1) . D_out . (1 (x) F)`.
///
/// Each pass applies half of `phase + perturbation` (no reduction mod 2 pi
/// before halving). `R` is the identity for a retroreflector and
/// `|l> -> |-l>` for a mirror, in which case the return pass sees the
/// flipped angular momentum. The return Fourier gate is `F^T = F`.
pub fn build_michelson(spec: &SorterSpec) -> Result<UnitaryMatrix> {
    let reflector = match spec.architecture {
        Architecture::Michelson(r) => r,
        Architecture::MachZehnder => {
            return Err(Error::ArchitectureMismatch {
                expected: "Michelson",
            })
        }
    };
    let d = spec.d;
    let mut blocks = Vec::with_capacity(d);
    for s in 0..d {
        let mut phases = Vec::with_capacity(d);
        let s_out = match reflector {
            Reflector::Retroreflector => s,
            Reflector::Mirror => (d - s) % d,
        };
        for k in 0..d {
            let pert = spec.perturbations[k];
            let out = (spec.module.phase(k, s) + pert) / 2.0;
            let back = match reflector {
                Reflector::Retroreflector => spec.module.phase(k, s_out),
                Reflector::Mirror => spec.module.mirrored_phase(k, s_out)?,
            };
            phases.push(out + (back + pert) / 2.0);
        }
        blocks.push(((s_out, s), fourier_sandwich(&phases, 1)));
    }
    Ok(assemble_blocks(d, blocks))
}

/// Builds the sorter for either architecture.
pub fn build(spec: &SorterSpec) -> Result<UnitaryMatrix> {
    match spec.architecture {
        Architecture::MachZehnder => build_mzi(spec),
        Architecture::Michelson(_) => build_michelson(spec),
    }
}

/// Exit-port probabilities: `p[j][s]` for a particle with observable `s`
/// entering port 0 and leaving port `j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SortingMatrix {
    d: usize,
    p: Vec<Vec<f64>>,
}

impl SortingMatrix {
    pub fn new(p: Vec<Vec<f64>>) -> Result<Self> {
        let d = p.len();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if p.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.iter().map(Vec::len).find(|&l| l != d).unwrap_or(d),
            });
        }
        for s in 0..d {
            let col: f64 = p.iter().map(|row| row[s]).sum();
            if col.is_nan() || (col - 1.0).abs() > PROBABILITY_TOL {
                return Err(Error::NotNormalized(col));
            }
        }
        if p.iter().flatten().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::NotNormalized(f64::NAN));
        }
        Ok(Self { d, p })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, port: usize, s: usize) -> f64 {
        self.p[port][s]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.p
    }

    /// Max-entry distance to the permutation sending observable `s` to port `perm[s]`.
    pub fn distance_to_permutation(&self, perm: &[usize]) -> f64 {
        let mut worst = 0.0f64;
        for (j, row) in self.p.iter().enumerate() {
            for (s, &x) in row.iter().enumerate() {
                let target = if perm[s] == j { 1.0 } else { 0.0 };
                worst = worst.max((x - target).abs());
            }
        }
        worst
    }
}

/// Sorting matrix of a `d^2 x d^2` sorter unitary.
pub fn sorting_matrix(u: &UnitaryMatrix) -> Result<SortingMatrix> {
    let n = u.dim();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::NotPerfectSquare(n));
    }
    let mut p = vec![vec![0.0; d]; d];
    for s in 0..d {
        let col = s * d;
        for s_out in 0..d {
            for (j, row) in p.iter_mut().enumerate() {
                row[s] += u.get(s_out * d + j, col).norm_sqr();
            }
        }
    }
    for x in p.iter_mut().flatten() {
        *x = x.clamp(0.0, 1.0);
    }
    SortingMatrix::new(p)
}

/// Worst-case and mean probability of leaving on the matching port.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiency {
    pub worst: f64,
    pub mean: f64,
}

pub fn efficiency(p: &SortingMatrix) -> Efficiency {
    let diag = (0..p.d).map(|s| p.p[s][s]);
    let worst = diag.clone().fold(f64::INFINITY, f64::min);
    let mean = diag.sum::<f64>() / p.d as f64;
    Efficiency { worst, mean }
}

/// Propagates `input` through the sorter.
pub fn simulate(u: &UnitaryMatrix, input: &CompositeState) -> Result<CompositeState> {
    apply(u, input)
}
