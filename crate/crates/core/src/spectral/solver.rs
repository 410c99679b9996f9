//! Dense symmetric eigensolvers behind a common trait.
//!
//! Solvers return raw eigenpairs in whatever order they produce them;
//! [`crate::spectral::SpectralDecomposition`] sorts, sign-normalizes and
//! validates the result, so any correct solver is interchangeable.

use std::collections::BTreeMap;

use super::{jacobi::CyclicJacobi, tridiagonal::TridiagonalQl};
use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Raw output of a solver. `vectors` is column-major: column `k` occupies
/// `vectors[k * n..(k + 1) * n]` and pairs with `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

pub trait Eigensolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn solve(&self, matrix: &SymmetricMatrix) -> Result<Eigenpairs>;
}

pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Box<dyn Eigensolver>>,
}

pub const DEFAULT_SOLVER: &str = "jacobi";

impl SolverRegistry {
    pub fn empty() -> Self {
        Self {
            solvers: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, solver: Box<dyn Eigensolver>) {
        self.solvers.insert(solver.name(), solver);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Eigensolver> {
        self.solvers
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.solvers.keys().copied()
    }
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(CyclicJacobi::default()));
        reg.register(Box::new(TridiagonalQl::default()));
        reg
    }
}
