//! Generalized Pauli operators, the discrete Fourier gate, controlled gates
//! and Kronecker products.
//!
//! Two-qudit operators use the index convention `(s, k) -> s * d + k`: the
//! first (observable) qudit is the most significant factor and the second
//! (spatial mode) qudit the least significant.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `omega^m` with `omega = e^{2 pi i / d}`, evaluated from `m mod d`.
pub fn omega_pow(m: i64, d: usize) -> Complex64 {
    let r = m.rem_euclid(d as i64);
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / d as f64)
}

/// Shift operator `X_d |k> = |k + 1 mod d>`.
pub fn pauli_x(d: usize) -> Result<UnitaryMatrix> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut entries = vec![ZERO; d * d];
    for k in 0..d {
        entries[((k + 1) % d) * d + k] = ONE;
    }
    Ok(UnitaryMatrix::from_raw(d, entries))
}

/// Clock operator `Z_d = diag(1, omega, ..., omega^{d-1})`.
pub fn pauli_z(d: usize) -> Result<UnitaryMatrix> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut entries = vec![ZERO; d * d];
    for k in 0..d {
        entries[k * d + k] = omega_pow(k as i64, d);
    }
    Ok(UnitaryMatrix::from_raw(d, entries))
}

/// Discrete Fourier gate `F[j][k] = omega^{jk} / sqrt(d)`.
pub fn fourier(d: usize) -> Result<UnitaryMatrix> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let norm = 1.0 / (d as f64).sqrt();
    let mut entries = Vec::with_capacity(d * d);
    for j in 0..d {
        for k in 0..d {
            entries.push(omega_pow((j * k % d) as i64, d) * norm);
        }
    }
    Ok(UnitaryMatrix::from_raw(d, entries))
}

/// Controlled gate `C(U) |s, k> = |s> U^s |k>`, a `d^2 x d^2` block-diagonal
/// matrix whose `s`-th block is `U^s`.
pub fn controlled(u: &UnitaryMatrix) -> UnitaryMatrix {
    let d = u.dim();
    let n = d * d;
    let mut entries = vec![ZERO; n * n];
    let mut power = UnitaryMatrix::identity(d);
    for s in 0..d {
        for r in 0..d {
            let row = (s * d + r) * n + s * d;
            entries[row..row + d].copy_from_slice(power.row(r));
        }
        power = u.matmul(&power);
    }
    UnitaryMatrix::from_raw(n, entries)
}

/// Kronecker product `a (x) b`: `(a (x) b)[i*p + r][j*p + c] = a[i][j] * b[r][c]`
/// where `p = dim(b)`.
pub fn tensor(a: &UnitaryMatrix, b: &UnitaryMatrix) -> UnitaryMatrix {
    let (m, p) = (a.dim(), b.dim());
    let n = m * p;
    let mut entries = vec![ZERO; n * n];
    for i in 0..m {
        for j in 0..m {
            let aij = a.get(i, j);
            if aij == ZERO {
                continue;
            }
            for r in 0..p {
                for c in 0..p {
                    entries[(i * p + r) * n + j * p + c] = aij * b.get(r, c);
                }
            }
        }
    }
    UnitaryMatrix::from_raw(n, entries)
}

/// Draws a random unitary by Gram-Schmidt orthonormalisation of a matrix of
/// i.i.d. complex Gaussian entries.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for j in 0..d {
        // two passes of modified Gram-Schmidt keep the loss of orthogonality at rounding level
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: Complex64 = done[i].iter().zip(&rest[0]).map(|(q, v)| q.conj() * v).sum();
                for (v, q) in rest[0].iter_mut().zip(&done[i]) {
                    *v -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        for v in cols[j].iter_mut() {
            *v /= norm;
        }
    }
    let mut entries = vec![ZERO; d * d];
    for (c, col) in cols.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            entries[r * d + c] = v;
        }
    }
    UnitaryMatrix::new(d, entries)
}
