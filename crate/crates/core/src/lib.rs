//! Simulation and linear-optics compilation of the universal d-dimensional
//! quantum sorter.
//!
//! The sorter is a `d`-path interferometer acting on two qudits: the
//! observable being sorted (polarization, orbital angular momentum,
//! wavelength) and the spatial mode. Ideally it implements
//! `C(X_d) |s, k> = |s, k + s mod d>`, routing a particle with observable
//! value `s` from port 0 to port `s` with unit probability.
//!
//! Two-qudit indices follow `(s, k) -> s * d + k` throughout.

pub mod devices;
pub mod error;
pub mod gates;
pub mod matrix;
pub mod mesh;
pub mod phase;
pub mod sorter;
pub mod state;
pub mod sweep;

pub use devices::{
    awg_design, awg_module, awg_phase, dove_phase, oam_module, pbs_module, AwgDesign, OamBasisMap,
};
pub use error::{Error, Result};
pub use gates::{controlled, fourier, pauli_x, pauli_z, random_unitary, tensor};
pub use matrix::UnitaryMatrix;
pub use mesh::{decompose, reconstruct, BeamsplitterMesh, MeshElement};
pub use phase::PhaseModule;
pub use sorter::{
    build, build_michelson, build_mzi, efficiency, simulate, sorting_matrix, Architecture,
    Efficiency, OutputGate, Reflector, SorterSpec, SortingMatrix,
};
pub use state::{apply, CompositeState};
pub use sweep::{sweep_perturbations, SweepResult};

pub use num_complex::Complex64;
