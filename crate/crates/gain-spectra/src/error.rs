//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by graph construction, matrix building, eigensolving,
/// and the combinatorial formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("gain has modulus {0}, expected 1 within 1e-6")]
    NonUnitGain(f64),
    #[error("vertex index {index} out of range for {n} vertices")]
    BadIndex { index: usize, n: usize },
    #[error("switching function defined on {got} vertices, graph has {expected}")]
    MissingVertexValue { expected: usize, got: usize },
    #[error("graphs have different underlying graphs")]
    DifferentUnderlyingGraph,
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("vertex {0} is isolated; normalized matrices are undefined")]
    IsolatedVertex(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("quadratic form has imaginary residue {0:e}, expected < 1e-10")]
    NonRealForm(f64),
    #[error("matrix is not Hermitian: |m[{i}][{j}] - conj(m[{j}][{i}])| = {delta:e}")]
    NotHermitian { i: usize, j: usize, delta: f64 },
    #[error("Jacobi eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("spectra have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("characteristic polynomial coefficient {k} has imaginary residue {imag:e}")]
    NonRealCoefficient { k: usize, imag: f64 },
    #[error("edge ({0}, {1}) is not present")]
    EdgeNotPresent(usize, usize),
    #[error("not a spanning subgraph: {0}")]
    NotSubgraph(String),
    #[error("bad fuzz configuration: {0}")]
    BadConfig(String),
    #[error("graph has {n} vertices; subgraph enumeration is limited to {max}")]
    GraphTooLarge { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
