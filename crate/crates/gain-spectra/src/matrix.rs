//! Dense Hermitian matrices attached to a gain graph: adjacency `A`, degree
//! `D`, Laplacian `L = D - A`, normalized adjacency `NA = D^-1/2 A D^-1/2`,
//! and normalized Laplacian `NL = I - NA`.
//!
//! Storage is dense row-major; the intended scale (n <= 64) is dominated by
//! subgraph enumeration long before density matters.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::GainGraph;

/// Hermiticity slack asserted at construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense complex square matrix certified Hermitian at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] and stores the matrix
    /// with the symmetry made exact: off-diagonal pairs are averaged and the
    /// diagonal imaginary part dropped.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let mut m = HermitianMatrix { dim, entries };
        for i in 0..dim {
            for j in i..dim {
                let a = m.entries[i * dim + j];
                let b = m.entries[j * dim + i];
                let delta = (a - b.conj()).norm();
                if delta > HERMITIAN_TOL {
                    return Err(Error::NotHermitian { i, j, delta });
                }
                if i == j {
                    m.entries[i * dim + i] = Complex64::new(a.re, 0.0);
                } else {
                    let avg = (a + b.conj()) / 2.0;
                    m.entries[i * dim + j] = avg;
                    m.entries[j * dim + i] = avg.conj();
                }
            }
        }
        Ok(m)
    }

    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Diagonal matrix from real values.
    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut m = Self::zeros(dim);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim + i].re)
            .sum()
    }

    /// Entrywise sum.
    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HermitianMatrix {
            dim: self.dim,
            entries,
        })
    }

    /// `M x` for a complex vector.
    pub fn mul_vec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let y = self
            .entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        Ok(y)
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.entries[i * self.dim + j] = z;
    }
}

// ---------------------------------------------------------------------------
// Matrix builders
// ---------------------------------------------------------------------------

/// Adjacency matrix: `a[s][t] = gain(s -> t)` for adjacent pairs, 0 otherwise.
pub fn adjacency(g: &GainGraph) -> HermitianMatrix {
    let n = g.vertex_count();
    let mut m = HermitianMatrix::zeros(n);
    for e in g.edges() {
        m.set(e.u, e.v, e.gain.value());
        m.set(e.v, e.u, e.gain.conj().value());
    }
    m
}

/// Diagonal matrix of underlying-graph degrees.
pub fn degree_matrix(g: &GainGraph) -> HermitianMatrix {
    let degrees: Vec<f64> = g.degrees().iter().map(|&d| d as f64).collect();
    HermitianMatrix::diagonal(&degrees)
}

/// Combinatorial Laplacian `L = D - A`.
pub fn laplacian(g: &GainGraph) -> HermitianMatrix {
    let n = g.vertex_count();
    let mut m = degree_matrix(g);
    for e in g.edges() {
        m.set(e.u, e.v, -e.gain.value());
        m.set(e.v, e.u, -e.gain.conj().value());
    }
    debug_assert_eq!(m.dim(), n);
    m
}

fn inv_sqrt_degrees(g: &GainGraph) -> Result<Vec<f64>> {
    g.degrees()
        .iter()
        .enumerate()
        .map(|(v, &d)| {
            if d == 0 {
                Err(Error::IsolatedVertex(v))
            } else {
                Ok(1.0 / (d as f64).sqrt())
            }
        })
        .collect()
}

/// Normalized adjacency `D^-1/2 A D^-1/2`. Undefined on graphs with isolated
/// vertices.
pub fn norm_adjacency(g: &GainGraph) -> Result<HermitianMatrix> {
    let n = g.vertex_count();
    let inv_sqrt = inv_sqrt_degrees(g)?;
    let mut m = HermitianMatrix::zeros(n);
    for e in g.edges() {
        let scale = inv_sqrt[e.u] * inv_sqrt[e.v];
        m.set(e.u, e.v, e.gain.value() * scale);
        m.set(e.v, e.u, e.gain.conj().value() * scale);
    }
    Ok(m)
}

/// Normalized Laplacian `NL = I - D^-1/2 A D^-1/2`: unit diagonal and
/// `-gain(u -> v) / sqrt(d_u d_v)` on adjacent pairs. In this model both
/// orientations of an edge are always present with conjugate gains, so the
/// one-sided adjacency cases cannot occur.
pub fn norm_laplacian(g: &GainGraph) -> Result<HermitianMatrix> {
    let n = g.vertex_count();
    let inv_sqrt = inv_sqrt_degrees(g)?;
    let mut m = HermitianMatrix::identity(n);
    for e in g.edges() {
        let scale = inv_sqrt[e.u] * inv_sqrt[e.v];
        m.set(e.u, e.v, -e.gain.value() * scale);
        m.set(e.v, e.u, -e.gain.conj().value() * scale);
    }
    Ok(m)
}

/// Hermitian quadratic form `x* M x`, which is real. The imaginary residue
/// must stay below 1e-10.
pub fn quadratic_form(m: &HermitianMatrix, x: &[Complex64]) -> Result<f64> {
    let mx = m.mul_vec(x)?;
    let value: Complex64 = x.iter().zip(&mx).map(|(xi, yi)| xi.conj() * yi).sum();
    if value.im.abs() > 1e-10 {
        return Err(Error::NonRealForm(value.im.abs()));
    }
    Ok(value.re)
}
