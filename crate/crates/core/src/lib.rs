//! Heat-flow correlations of Laplacian eigenvectors on graphs and flat tori.
//!
//! The pipeline is: build a [`Graph`] (from an edge list or a named family in
//! the [`GraphRegistry`]), diagonalize its Laplacian with an [`Eigensolver`]
//! picked from the [`SolverRegistry`], then study how the heat semigroup acts
//! on pointwise products of eigenvectors at the characteristic time
//! [`solve_time_scale`]. The [`torus`] module repeats the analysis exactly in
//! Fourier space.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlation;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod report;
pub mod spectral;
pub mod timescale;
pub mod tol;
pub mod torus;

pub use correlation::{
    check_corollaries, global_correlation, identity_suite, local_correlation, pair_scan,
    verify_identity, CorrelationReport, PairScanReport,
};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, random_graph, Graph, GraphFamily, GraphRegistry};
pub use matrix::SymmetricMatrix;
pub use report::ReportFormat;
pub use spectral::{
    eigendecompose, eigendecompose_with, Eigensolver, ProductSpectrum, SolverRegistry,
    SpectralDecomposition,
};
pub use timescale::{solve_time_scale, TimeScale};
pub use torus::{random_wave, torus_global_correlation, torus_product_spectrum, TrigPolynomial};
