//! Concrete realizations of the phase module: polarizing beam-splitters,
//! Dove prisms for orbital angular momentum, and arrayed-waveguide gratings.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::PhaseModule;

/// Arm residuals below this many radians count as an exact AWG design.
pub const AWG_EXACT_TOL: f64 = 1e-9 * 2.0 * PI;

/// Phase module of the two-arm polarization sorter.
pub fn pbs_module() -> PhaseModule {
    PhaseModule::Pbs
}

/// Phase `2 l alpha` picked up by OAM level `l` through a pair of Dove prisms
/// rotated by `alpha` relative to each other.
pub fn dove_phase(l: i64, alpha: f64) -> f64 {
    2.0 * l as f64 * alpha
}

/// Assignment of OAM levels to computational indices `0..d`.
///
/// Sorter phases only see `l mod d`, so `levels[s]` must be congruent to `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct OamBasisMap {
    levels: Vec<i64>,
}

impl OamBasisMap {
    pub fn new(levels: Vec<i64>) -> Result<Self> {
        let d = levels.len();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        for (s, &l) in levels.iter().enumerate() {
            if l.rem_euclid(d as i64) != s as i64 {
                return Err(Error::InvalidOamMap(format!(
                    "level {l} at index {s} is not congruent to {s} mod {d}"
                )));
            }
        }
        // congruence to distinct indices already forces distinct levels
        Ok(Self { levels })
    }

    /// Levels `0, 1, ..., d-1`.
    pub fn canonical(d: usize) -> Result<Self> {
        Self::new((0..d as i64).collect())
    }

    /// Levels closest to zero: `0, 1, ..., -2, -1`.
    pub fn centered(d: usize) -> Result<Self> {
        let d_i = d as i64;
        Self::new((0..d_i).map(|s| if 2 * s <= d_i { s } else { s - d_i }).collect())
    }

    pub fn d(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, s: usize) -> i64 {
        self.levels[s]
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }
}

impl TryFrom<Vec<i64>> for OamBasisMap {
    type Error = Error;

    fn try_from(levels: Vec<i64>) -> Result<Self> {
        Self::new(levels)
    }
}

impl From<OamBasisMap> for Vec<i64> {
    fn from(map: OamBasisMap) -> Self {
        map.levels
    }
}

/// Dove-prism sorter module: arm `k` rotates by `k pi / d`.
pub fn oam_module(map: OamBasisMap) -> PhaseModule {
    PhaseModule::Oam(map)
}

/// Phase `2 pi L / lambda` of a waveguide of length `L` at wavelength `lambda`.
pub fn awg_phase(length: f64, wavelength: f64) -> Result<f64> {
    if !(wavelength > 0.0 && wavelength.is_finite()) {
        return Err(Error::InvalidWavelengths(format!(
            "wavelength must be positive, got {wavelength}"
        )));
    }
    Ok(awg_phase_unchecked(length, wavelength))
}

pub(crate) fn awg_phase_unchecked(length: f64, wavelength: f64) -> f64 {
    2.0 * PI * length / wavelength
}

/// Waveguide design for a wavelength sorter.
///
/// `lengths[k] = wavelengths[s] * (k s / d + integers[k][s]) + e[k][s]` and
/// `residual = max |2 pi e[k][s] / wavelengths[s]|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AwgDesign {
    pub d: usize,
    pub wavelengths: Vec<f64>,
    pub lengths: Vec<f64>,
    pub integers: Vec<Vec<i64>>,
    pub residual: f64,
}

impl AwgDesign {
    pub fn is_exact(&self) -> bool {
        self.residual < AWG_EXACT_TOL
    }

    fn check_shape(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::ZeroDimension);
        }
        for found in [self.wavelengths.len(), self.lengths.len(), self.integers.len()] {
            if found != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    found,
                });
            }
        }
        validate_wavelengths(&self.wavelengths)
    }
}

fn validate_wavelengths(wavelengths: &[f64]) -> Result<()> {
    if wavelengths.is_empty() {
        return Err(Error::InvalidWavelengths("empty wavelength list".into()));
    }
    for &w in wavelengths {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::InvalidWavelengths(format!(
                "wavelength must be positive and finite, got {w}"
            )));
        }
    }
    for (i, a) in wavelengths.iter().enumerate() {
        if wavelengths[i + 1..].contains(a) {
            return Err(Error::InvalidWavelengths(format!("duplicate wavelength {a}")));
        }
    }
    Ok(())
}

/// Phase module of an AWG design: `phase(k, s) = 2 pi L_k / lambda_s`.
pub fn awg_module(design: AwgDesign) -> Result<PhaseModule> {
    design.check_shape()?;
    Ok(PhaseModule::Awg(design))
}

/// Best waveguide length found for one arm.
#[derive(Debug, Clone, PartialEq)]
struct ArmFit {
    length: f64,
    integers: Vec<i64>,
    residual: f64,
}

/// Fits the integers and residual of arm `k` at a given length.
fn fit_arm(length: f64, k: usize, wavelengths: &[f64], bound: i64) -> ArmFit {
    let d = wavelengths.len();
    let mut residual = 0.0f64;
    let integers = wavelengths
        .iter()
        .enumerate()
        .map(|(s, &w)| {
            let target = (k * s) as f64 / d as f64;
            let x = length / w - target;
            let n = (x.round() as i64).clamp(-bound, bound);
            residual = residual.max(2.0 * PI * (x - n as f64).abs());
            n
        })
        .collect();
    ArmFit {
        length,
        integers,
        residual,
    }
}

/// Searches the length of arm `k`.
///
/// Within a region of fixed integers the worst residual is a convex
/// piecewise-linear function of the length, so its minima sit where one
/// wavelength is matched exactly or where a rising residual meets a falling
/// one. Both candidate families are enumerated for integers within `bound`.
fn search_arm(k: usize, wavelengths: &[f64], bound: i64) -> ArmFit {
    let d = wavelengths.len();
    let target = |s: usize| (k * s) as f64 / d as f64;
    let min_len = 1e-12 * wavelengths.iter().cloned().fold(0.0, f64::max);

    let mut exact: Option<ArmFit> = None;
    for (s, &w) in wavelengths.iter().enumerate() {
        for n in -bound..=bound {
            let length = w * (target(s) + n as f64);
            if length <= min_len {
                continue;
            }
            let fit = fit_arm(length, k, wavelengths, bound);
            if fit.residual < AWG_EXACT_TOL && better_exact(&fit, exact.as_ref()) {
                exact = Some(fit);
            }
        }
    }
    if let Some(fit) = exact {
        return fit;
    }

    let mut best: Option<ArmFit> = None;
    let mut consider = |length: f64| {
        if length <= min_len {
            return;
        }
        let fit = fit_arm(length, k, wavelengths, bound);
        let replace = match &best {
            None => true,
            Some(b) => fit.residual < b.residual || (fit.residual == b.residual && fit.length < b.length),
        };
        if replace {
            best = Some(fit);
        }
    };
    for (s, &w) in wavelengths.iter().enumerate() {
        for n in -bound..=bound {
            consider(w * (target(s) + n as f64));
        }
    }
    for s in 0..d {
        for t in s + 1..d {
            let slope = 1.0 / wavelengths[s] + 1.0 / wavelengths[t];
            for m in -2 * bound..=2 * bound {
                consider((target(s) + target(t) + m as f64) / slope);
            }
        }
    }
    best.unwrap_or_else(|| fit_arm(wavelengths[0], k, wavelengths, bound))
}

/// Among exact fits prefer the shortest waveguide; lengths equal to rounding
/// are resolved by the smaller residual.
fn better_exact(fit: &ArmFit, current: Option<&ArmFit>) -> bool {
    match current {
        None => true,
        Some(c) => {
            let scale = fit.length.abs().max(c.length.abs());
            if (fit.length - c.length).abs() <= 1e-12 * scale {
                fit.residual < c.residual
            } else {
                fit.length < c.length
            }
        }
    }
}

/// Designs waveguide lengths for a `d`-wavelength sorter.
///
/// Each arm is solved independently (the consistency constraints couple arm
/// `k` and wavelength `s` only through `L_k`). The shortest positive exact
/// length is chosen when one exists within `search_bound`; otherwise the
/// length minimizing the worst phase residual.
pub fn awg_design(d: usize, wavelengths: &[f64], search_bound: u32) -> Result<AwgDesign> {
    validate_wavelengths(wavelengths)?;
    if d != wavelengths.len() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: wavelengths.len(),
        });
    }
    if search_bound == 0 {
        return Err(Error::ZeroSearchBound);
    }
    if d == 1 {
        return Ok(AwgDesign {
            d,
            wavelengths: wavelengths.to_vec(),
            lengths: vec![0.0],
            integers: vec![vec![0]],
            residual: 0.0,
        });
    }
    let bound = i64::from(search_bound);
    let arms: Vec<ArmFit> = (0..d)
        .into_par_iter()
        .map(|k| search_arm(k, wavelengths, bound))
        .collect();
    let residual = arms.iter().map(|a| a.residual).fold(0.0, f64::max);
    let (lengths, integers) = arms.into_iter().map(|a| (a.length, a.integers)).unzip();
    Ok(AwgDesign {
        d,
        wavelengths: wavelengths.to_vec(),
        lengths,
        integers,
        residual,
    })
}
