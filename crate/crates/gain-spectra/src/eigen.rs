//! Real spectra of Hermitian matrices via cyclic complex Jacobi rotations,
//! plus spectrum-level predicates.
//!
//! Each rotation annihilates one off-diagonal pair: the pivot's phase is
//! absorbed into the rotation so the 2x2 subproblem reduces to the classical
//! real symmetric case. Unconditionally stable and plenty fast at n <= 64.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// Default tolerance for spectrum comparisons, two orders above the Jacobi
/// convergence threshold.
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-8;

/// Off-diagonal Frobenius norm below `JACOBI_TOL * ||M||_F` counts as
/// converged.
const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

/// Sorted (ascending) real eigenvalues with a comparison tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    /// Sorts the values ascending; comparison tolerance defaults to
    /// [`DEFAULT_SPECTRUM_TOL`].
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Spectrum {
            values,
            tol: DEFAULT_SPECTRUM_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |r, &v| r.max(v.abs()))
    }

    /// Sorted-sequence comparison within `tol`.
    pub fn equals_with(&self, other: &Spectrum, tol: f64) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| (a - b).abs() <= tol))
    }

    /// Comparison at this spectrum's own tolerance.
    pub fn equals(&self, other: &Spectrum) -> Result<bool> {
        self.equals_with(other, self.tol)
    }

    /// Number of eigenvalues within `tol` of `lambda`.
    pub fn multiplicity(&self, lambda: f64, tol: f64) -> usize {
        self.values
            .iter()
            .filter(|&&v| (v - lambda).abs() <= tol)
            .count()
    }

    /// True when the multiset is invariant under `v -> 2*center - v`, i.e.
    /// symmetric about `center` including multiplicities. Sorted values make
    /// this a paired-ends check.
    pub fn symmetric_about(&self, center: f64, tol: f64) -> bool {
        let n = self.values.len();
        (0..n).all(|i| (self.values[i] + self.values[n - 1 - i] - 2.0 * center).abs() <= tol)
    }
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver
// ---------------------------------------------------------------------------

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn eigenvalues(m: &HermitianMatrix) -> Result<Spectrum> {
    let (values, _) = jacobi_decompose(m)?;
    Ok(Spectrum::new(values))
}

/// Maximum eigenvalue modulus.
pub fn spectral_radius(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.spectral_radius())
}

/// Full decomposition: unsorted eigenvalues and the accumulated unitary with
/// eigenvectors as columns (column-major). Kept crate-private; eigenvectors
/// exist only to validate residuals.
pub(crate) fn jacobi_decompose(m: &HermitianMatrix) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let n = m.dim();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if n == 1 {
        return Ok((vec![m.get(0, 0).re], vec![Complex64::new(1.0, 0.0)]));
    }

    // Private working copy.
    let mut a: Vec<Complex64> = m.entries().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let norm = m.frobenius_norm();
    let threshold = JACOBI_TOL * norm;

    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += 2.0 * a[p * n + q].norm_sqr();
                }
            }
            s.sqrt()
        };
        if off <= threshold {
            let values = (0..n).map(|i| a[i * n + i].re).collect();
            return Ok((values, v));
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let abs_apq = apq.norm();
                if abs_apq < f64::MIN_POSITIVE {
                    continue;
                }
                // Phase factor carrying the pivot's argument; the remaining
                // 2x2 problem is real symmetric with off-diagonal |apq|.
                let phase = apq / abs_apq;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * abs_apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sigma = phase * (t * c);

                // A <- R* A R with R[p][p] = c, R[p][q] = sigma,
                // R[q][p] = -conj(sigma), R[q][q] = c.
                for j in 0..n {
                    let ajp = a[j * n + p];
                    let ajq = a[j * n + q];
                    a[j * n + p] = ajp * c - ajq * sigma.conj();
                    a[j * n + q] = ajp * sigma + ajq * c;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = apj * c - aqj * sigma;
                    a[q * n + j] = apj * sigma.conj() + aqj * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

                // Accumulate V <- V R.
                for j in 0..n {
                    let vjp = v[j * n + p];
                    let vjq = v[j * n + q];
                    v[j * n + p] = vjp * c - vjq * sigma.conj();
                    v[j * n + q] = vjp * sigma + vjq * c;
                }
            }
        }
    }

    Err(Error::NoConvergence(MAX_SWEEPS))
}
