//! Compilation of mode unitaries into meshes of two-mode beamsplitters and
//! single-mode phase shifters.
//!
//! Beamsplitter convention on modes `(a, b)`:
//!
//! ```text
//! T(theta, phi) = [[cos theta,            -e^{-i phi} sin theta],
//!                  [e^{i phi} sin theta,   cos theta           ]]
//! ```
//!
//! A phase shifter multiplies one mode by `e^{i phase}`. Elements are applied
//! in list order, so the mesh unitary is `E_last ... E_1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;

/// Input tolerance for [`decompose`].
pub const DECOMPOSE_TOL: f64 = 1e-10;

/// Entries smaller than this are treated as already eliminated.
const ELIMINATION_EPS: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawElement", into = "RawElement")]
pub enum MeshElement {
    Beamsplitter {
        mode_a: usize,
        mode_b: usize,
        theta: f64,
        phi: f64,
    },
    PhaseShifter {
        mode: usize,
        phase: f64,
    },
}

/// Wire form: `{"kind": "bs"|"ps", "modes": [...], "theta": .., "phi": ..}`.
/// Phase shifters carry their phase in `phi` and `theta = 0`.
#[derive(Serialize, Deserialize)]
struct RawElement {
    kind: String,
    modes: Vec<usize>,
    theta: f64,
    phi: f64,
}

impl TryFrom<RawElement> for MeshElement {
    type Error = String;

    fn try_from(raw: RawElement) -> std::result::Result<Self, String> {
        match (raw.kind.as_str(), raw.modes.as_slice()) {
            ("bs", &[a, b]) if a != b => Ok(Self::Beamsplitter {
                mode_a: a,
                mode_b: b,
                theta: raw.theta,
                phi: raw.phi,
            }),
            ("bs", &[a, b]) if a == b => Err(format!("beamsplitter with repeated mode {a}")),
            ("bs", _) => Err("beamsplitter needs exactly two modes".into()),
            ("ps", &[m]) => Ok(Self::PhaseShifter {
                mode: m,
                phase: raw.phi,
            }),
            ("ps", _) => Err("phase shifter needs exactly one mode".into()),
            (other, _) => Err(format!("unknown element kind {other:?}")),
        }
    }
}

impl From<MeshElement> for RawElement {
    fn from(e: MeshElement) -> Self {
        match e {
            MeshElement::Beamsplitter {
                mode_a,
                mode_b,
                theta,
                phi,
            } => Self {
                kind: "bs".into(),
                modes: vec![mode_a, mode_b],
                theta,
                phi,
            },
            MeshElement::PhaseShifter { mode, phase } => Self {
                kind: "ps".into(),
                modes: vec![mode],
                theta: 0.0,
                phi: phase,
            },
        }
    }
}

impl MeshElement {
    fn check_modes(&self, d: usize) -> Result<()> {
        match *self {
            Self::Beamsplitter { mode_a, mode_b, .. } => {
                for mode in [mode_a, mode_b] {
                    if mode >= d {
                        return Err(Error::ModeOutOfRange { mode, d });
                    }
                }
                if mode_a == mode_b {
                    return Err(Error::SameModes(mode_a));
                }
                Ok(())
            }
            Self::PhaseShifter { mode, .. } if mode >= d => Err(Error::ModeOutOfRange { mode, d }),
            Self::PhaseShifter { .. } => Ok(()),
        }
    }
}

/// Ordered list of elements acting on `d` modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamsplitterMesh {
    pub d: usize,
    pub elements: Vec<MeshElement>,
}

impl BeamsplitterMesh {
    pub fn beamsplitter_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, MeshElement::Beamsplitter { .. }))
            .count()
    }

    pub fn phase_shifter_count(&self) -> usize {
        self.elements.len() - self.beamsplitter_count()
    }
}

fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// Left-multiplies rows `a`, `b` of a row-major `d x d` buffer by `T(theta, phi)`.
fn rotate_rows(m: &mut [Complex64], d: usize, a: usize, b: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, phi);
    for col in 0..d {
        let (ua, ub) = (m[a * d + col], m[b * d + col]);
        m[a * d + col] = ua * c - e.conj() * s * ub;
        m[b * d + col] = e * s * ua + ub * c;
    }
}

/// Right-multiplies columns `a`, `b` by `T(theta, phi)`.
fn rotate_cols(m: &mut [Complex64], d: usize, a: usize, b: usize, theta: f64, phi: f64) {
    let (c, s) = (theta.cos(), theta.sin());
    let e = Complex64::from_polar(1.0, phi);
    for row in 0..d {
        let (ua, ub) = (m[row * d + a], m[row * d + b]);
        m[row * d + a] = ua * c + ub * e * s;
        m[row * d + b] = -(ua * e.conj() * s) + ub * c;
    }
}

/// Product of the mesh elements in application order.
pub fn reconstruct(mesh: &BeamsplitterMesh) -> Result<UnitaryMatrix> {
    let d = mesh.d;
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut m = UnitaryMatrix::identity(d).entries().to_vec();
    for e in &mesh.elements {
        e.check_modes(d)?;
        match *e {
            MeshElement::Beamsplitter {
                mode_a,
                mode_b,
                theta,
                phi,
            } => rotate_rows(&mut m, d, mode_a, mode_b, theta, phi),
            MeshElement::PhaseShifter { mode, phase } => {
                let z = Complex64::from_polar(1.0, phase);
                for v in &mut m[mode * d..(mode + 1) * d] {
                    *v *= z;
                }
            }
        }
    }
    Ok(UnitaryMatrix::from_raw(d, m))
}

/// Triangular elimination into nearest-neighbour beamsplitters.
///
/// Rows are cleared from the bottom up: row `i` is reduced to its diagonal
/// entry by rotating column pairs `(j, j + 1)` for `j < i`, one entry at a
/// time. This leaves a diagonal matrix whose phases become output-side phase
/// shifters. At most `d (d - 1) / 2` beamsplitters are emitted; entries that
/// are already zero need none.
pub fn decompose(u: &UnitaryMatrix) -> Result<BeamsplitterMesh> {
    let d = u.dim();
    let deviation = u.unitarity_deviation();
    if deviation.is_nan() || deviation > DECOMPOSE_TOL {
        return Err(Error::NotUnitary {
            deviation,
            tolerance: DECOMPOSE_TOL,
        });
    }
    let mut w = u.entries().to_vec();
    // rotations (mode, theta, phi) such that U T_1 T_2 ... = diagonal
    let mut rotations = Vec::with_capacity(d * d.saturating_sub(1) / 2);
    for i in (1..d).rev() {
        for j in 0..i {
            let x = w[i * d + j];
            if x.norm() < ELIMINATION_EPS {
                continue;
            }
            let y = w[i * d + j + 1];
            let theta = x.norm().atan2(y.norm());
            let phi = if y.norm() > 0.0 { (-x / y).arg() } else { 0.0 };
            rotate_cols(&mut w, d, j, j + 1, theta, phi);
            w[i * d + j] = Complex64::new(0.0, 0.0);
            rotations.push((j, theta, phi));
        }
    }
    // U = D T_m^dag ... T_1^dag, and T(theta, phi)^dag = T(theta, phi + pi)
    let mut elements: Vec<MeshElement> = rotations
        .into_iter()
        .map(|(j, theta, phi)| MeshElement::Beamsplitter {
            mode_a: j,
            mode_b: j + 1,
            theta,
            phi: wrap_phase(phi + PI),
        })
        .collect();
    elements.extend((0..d).map(|m| MeshElement::PhaseShifter {
        mode: m,
        phase: w[m * d + m].arg(),
    }));
    Ok(BeamsplitterMesh { d, elements })
}
