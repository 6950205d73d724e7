//! Dense complex unitary matrices.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max-entry tolerance applied by the checked constructors.
pub const UNITARITY_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A dense `dim x dim` complex matrix, stored row-major, known to be unitary.
///
/// Generic constructors verify `U^dag U = I` to within a max-entry tolerance.
/// Named gates are exact by formula and are built without the check.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    /// Builds a matrix from row-major entries, checking unitarity at [`UNITARITY_TOL`].
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(dim, entries, UNITARITY_TOL)
    }

    /// Same as [`UnitaryMatrix::new`] with a caller-chosen tolerance.
    pub fn with_tolerance(dim: usize, entries: Vec<Complex64>, tolerance: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let m = Self { dim, entries };
        let deviation = m.unitarity_deviation();
        if deviation.is_nan() || deviation > tolerance {
            return Err(Error::NotUnitary {
                deviation,
                tolerance,
            });
        }
        Ok(m)
    }

    /// Builds a matrix from a list of rows, checking unitarity at [`UNITARITY_TOL`].
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        Self::from_rows_with_tolerance(rows, UNITARITY_TOL)
    }

    pub fn from_rows_with_tolerance(rows: Vec<Vec<Complex64>>, tolerance: f64) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    row,
                    len: r.len(),
                });
            }
            entries.extend(r);
        }
        Self::with_tolerance(dim, entries, tolerance)
    }

    /// Wraps entries that are unitary by construction.
    pub(crate) fn from_raw(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert!(dim > 0);
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim > 0, "identity of dimension 0");
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = ONE;
        }
        Self { dim, entries }
    }

    /// Diagonal matrix `diag(e^{i phases[0]}, ...)`.
    pub fn diagonal_phases(phases: &[f64]) -> Self {
        let dim = phases.len();
        assert!(dim > 0, "diagonal of dimension 0");
        let mut entries = vec![ZERO; dim * dim];
        for (i, &p) in phases.iter().enumerate() {
            entries[i * dim + i] = Complex64::from_polar(1.0, p);
        }
        Self { dim, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        Self { dim: n, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[c * n + r] = self.entries[r * n + c];
            }
        }
        Self { dim: n, entries }
    }

    /// Matrix product `self * rhs`; panics if the dimensions differ.
    ///
    /// Zero entries of `self` are skipped, so products with block-diagonal,
    /// diagonal or permutation factors cost far less than a dense product.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &rhs.entries[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, entries: out }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// Matrix-vector product; panics on length mismatch.
    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "apply_vec length mismatch");
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `max |U^dag U - I|` over all entries.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        gram.max_abs_diff(&Self::identity(self.dim))
    }

    /// Max-entry distance; infinite when the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, |m, x| if x.is_nan() || x > m { x } else { m })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Max-entry distance after removing the global phase of each matrix,
    /// taken from its largest-modulus entry (first such entry in row-major order).
    pub fn max_abs_diff_up_to_phase(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        let a = self.phase_normalized();
        let b = other.phase_normalized();
        a.max_abs_diff(&b)
    }

    fn phase_normalized(&self) -> Self {
        let (idx, _) = self
            .entries
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, bn), (i, z)| {
                let n = z.norm();
                if n > bn + 1e-12 {
                    (i, n)
                } else {
                    (bi, bn)
                }
            });
        let pivot = self.entries[idx];
        let rot = if pivot.norm() > 0.0 {
            pivot.conj() / pivot.norm()
        } else {
            ONE
        };
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * rot).collect(),
        }
    }

    /// If every column holds exactly one entry of modulus 1 (within `tol`) and
    /// all others vanish, returns the permutation `col -> row`.
    pub fn as_permutation(&self, tol: f64) -> Option<Vec<usize>> {
        let n = self.dim;
        let mut perm = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for c in 0..n {
            let mut target = None;
            for r in 0..n {
                let m = self.get(r, c).norm();
                if (m - 1.0).abs() <= tol {
                    if target.is_some() {
                        return None;
                    }
                    target = Some(r);
                } else if m > tol {
                    return None;
                }
            }
            let r = target?;
            if seen[r] {
                return None;
            }
            seen[r] = true;
            perm.push(r);
        }
        Some(perm)
    }
}

impl Mul for &UnitaryMatrix {
    type Output = UnitaryMatrix;

    fn mul(self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UnitaryMatrix({}x{})", self.dim, self.dim)?;
        if self.dim <= 8 {
            for row in self.entries.chunks(self.dim) {
                let cells: Vec<String> = row
                    .iter()
                    .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                    .collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}
