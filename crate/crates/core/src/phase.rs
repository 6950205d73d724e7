//! Per-arm phase modules: the diagonal action on the observable inside each
//! interferometer arm.

use std::f64::consts::PI;

use crate::devices::{dove_phase, AwgDesign, OamBasisMap};
use crate::error::{Error, Result};

/// Phase `phase(k, s)` imprinted on observable value `s` travelling in arm `k`.
#[derive(Debug, Clone, PartialEq)]
pub enum PhaseModule {
    /// `Z_d^k` on arm `k`: phase `2 pi k s / d`.
    Ideal { d: usize },
    /// Polarizing beam-splitter pair, `d = 2`: arm 1 applies `Z` to polarization.
    Pbs,
    /// Dove prisms rotated by `k pi / d` in arm `k`.
    Oam(OamBasisMap),
    /// Waveguide lengths of an arrayed-waveguide grating.
    Awg(AwgDesign),
    /// Arbitrary table, `phases[k][s]`.
    Table { phases: Vec<Vec<f64>> },
}

impl PhaseModule {
    pub fn ideal(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self::Ideal { d })
    }

    /// A custom module from a square table indexed `[arm][observable]`.
    pub fn table(phases: Vec<Vec<f64>>) -> Result<Self> {
        let d = phases.len();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if phases.iter().any(|row| row.len() != d) {
            return Err(Error::PhaseTableShape { d });
        }
        Ok(Self::Table { phases })
    }

    pub fn d(&self) -> usize {
        match self {
            Self::Ideal { d } => *d,
            Self::Pbs => 2,
            Self::Oam(map) => map.d(),
            Self::Awg(design) => design.d,
            Self::Table { phases } => phases.len(),
        }
    }

    /// Phase in radians for arm `k` and observable value `s`; both must be below `d`.
    pub fn phase(&self, k: usize, s: usize) -> f64 {
        let d = self.d();
        assert!(k < d && s < d, "phase({k}, {s}) outside a {d}-arm module");
        match self {
            Self::Ideal { d } => 2.0 * PI * (k * s) as f64 / *d as f64,
            Self::Pbs => PI * (k * s) as f64,
            Self::Oam(map) => dove_phase(map.level(s), oam_rotation(k, d)),
            Self::Awg(design) => crate::devices::awg_phase_unchecked(design.lengths[k], design.wavelengths[s]),
            Self::Table { phases } => phases[k][s],
        }
    }

    /// Phase acquired in arm `k` after a mirror reflection has flipped the
    /// angular momentum, indexed by the outgoing observable value `s_out`.
    ///
    /// The outgoing value `s_out` carries level `-l` where `l` is the level of
    /// index `(-s_out) mod d`. Only defined for the OAM module.
    pub fn mirrored_phase(&self, k: usize, s_out: usize) -> Result<f64> {
        match self {
            Self::Oam(map) => {
                let d = map.d();
                let incoming = (d - s_out % d) % d;
                Ok(dove_phase(-map.level(incoming), oam_rotation(k, d)))
            }
            _ => Err(Error::MirrorRequiresOam),
        }
    }
}

/// Dove prism rotation `alpha_k = k pi / d` for arm `k`.
pub fn oam_rotation(k: usize, d: usize) -> f64 {
    k as f64 * PI / d as f64
}
