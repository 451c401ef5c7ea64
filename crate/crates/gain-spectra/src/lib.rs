//! Spectra of complex-unit gain graphs.
//!
//! A gain graph attaches a unit-complex number to each oriented edge of a
//! simple undirected graph, with the reverse orientation carrying the
//! conjugate. This crate builds the associated Hermitian matrices (adjacency,
//! Laplacian, and their degree-normalized forms), decides balance,
//! bipartiteness and switching equivalence, computes spectra with a complex
//! Jacobi eigensolver, evaluates the combinatorial characteristic-polynomial
//! formulas driven by elementary- and dissection-subgraph enumeration, and
//! runs a battery of spectral checks (bounds, symmetry, interlacing, radius
//! coincidences) over given or randomly generated graphs.
//!
//! Fuzz campaigns are data-parallel over trials; the `parallel` feature
//! (enabled by default) runs them on rayon, and disabling it falls back to
//! the identical sequential path.

pub mod eigen;
pub mod error;
pub mod fuzz;
pub mod graph;
pub mod matrix;
pub mod poly;
pub mod subgraphs;
pub mod theorems;

pub use eigen::{eigenvalues, spectral_radius, Spectrum, DEFAULT_SPECTRUM_TOL};
pub use error::{Error, Result};
pub use fuzz::{
    conjecture_search, conjecture_search_bipartite, run_fuzz_campaign, run_interlace_campaign,
    ConjectureOutcome, FuzzConfig, FuzzSummary, GainMode, InterlaceSummary,
};
pub use graph::{Balance, Cycle, Edge, Gain, GainGraph, SwitchingFunction};
pub use matrix::{
    adjacency, degree_matrix, laplacian, norm_adjacency, norm_laplacian, quadratic_form,
    HermitianMatrix,
};
pub use poly::{basis_convert, charpoly_oracle, CharPolyCoeffs, PolyBasis};
pub use subgraphs::{
    adjacency_coeffs, det_adjacency, enumerate_cycles, enumerate_dissection, enumerate_elementary,
    norm_lap_b_coeffs, norm_lap_c_coeffs, DissectionSubgraph, ElementarySubgraph,
};
pub use theorems::{
    interlace_check, multi_edge_interlace, theorem_suite, CheckResult, CheckStatus,
    InterlaceOutcome, VerificationReport,
};
