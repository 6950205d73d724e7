//! Pure states of the observable qudit together with the spatial-mode qudit.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;

pub const NORM_TOL: f64 = 1e-12;

/// Normalized amplitude vector of length `d^2`; amplitude of `|s>|k>` sits at `s * d + k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeState {
    d: usize,
    amplitudes: Vec<Complex64>,
}

impl CompositeState {
    pub fn new(d: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if amplitudes.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
        if norm_sqr.is_nan() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { d, amplitudes })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(d: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Self::new(d, amplitudes)
    }

    /// The product state `|s>|k>`.
    pub fn basis(d: usize, s: usize, k: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if s >= d || k >= d {
            return Err(Error::ModeOutOfRange { mode: s.max(k), d });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
        amplitudes[s * d + k] = Complex64::new(1.0, 0.0);
        Ok(Self { d, amplitudes })
    }

    /// `sum_s a_s |s>|port>`, normalising the coefficients.
    pub fn observable_superposition(coefficients: &[Complex64], port: usize) -> Result<Self> {
        let d = coefficients.len();
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        if port >= d {
            return Err(Error::ModeOutOfRange { mode: port, d });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
        for (s, &a) in coefficients.iter().enumerate() {
            amplitudes[s * d + port] = a;
        }
        Self::normalized(d, amplitudes)
    }

    /// Random superposition of observable values entering on port 0.
    pub fn random_observable_input<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Self> {
        let coefficients: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::observable_superposition(&coefficients, 0)
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, s: usize, k: usize) -> Complex64 {
        self.amplitudes[s * self.d + k]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        self.inner(other).map(|z| z.norm_sqr())
    }

    /// Probability of finding the particle on spatial mode `k`.
    pub fn port_probability(&self, k: usize) -> f64 {
        (0..self.d).map(|s| self.amplitude(s, k).norm_sqr()).sum()
    }
}

/// `u |psi>`, renormalised against rounding.
pub fn apply(u: &UnitaryMatrix, psi: &CompositeState) -> Result<CompositeState> {
    if u.dim() != psi.amplitudes.len() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: psi.amplitudes.len(),
        });
    }
    CompositeState::normalized(psi.d, u.apply_vec(&psi.amplitudes))
}
