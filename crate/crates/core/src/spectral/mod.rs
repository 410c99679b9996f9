//! Eigendecomposition of graph Laplacians and everything built on it: heat
//! kernels, heat evolution, eigenbasis expansion and the spectrum of
//! pointwise products of eigenvectors.
//!
//! Eigenvector indices in the public API are 1-based, so `eigenvector(1)` is
//! the constant vector with eigenvalue 0.

mod jacobi;
mod solver;
mod tridiagonal;

pub use jacobi::CyclicJacobi;
pub use solver::{Eigenpairs, Eigensolver, SolverRegistry, DEFAULT_SOLVER};
pub use tridiagonal::TridiagonalQl;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{dot, SymmetricMatrix};
use crate::tol;

/// A maximal run of numerically equal eigenvalues, `first..=last` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    pub first: usize,
    pub last: usize,
    /// Mean of the eigenvalues in the run.
    pub eigenvalue: f64,
}

impl Cluster {
    pub fn len(&self) -> usize {
        self.last + 1 - self.first
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.first..=self.last).contains(&index)
    }
}

/// Ascending eigenvalues and orthonormal eigenvectors of a Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    n: usize,
    eigenvalues: Vec<f64>,
    /// Column-major: eigenvector `k` (0-based) is `columns[k*n..(k+1)*n]`.
    columns: Vec<f64>,
    /// Row-major copy, `rows[u*n + k] = phi_k(u)`.
    rows: Vec<f64>,
    clusters: Vec<Cluster>,
    solver: &'static str,
}

/// Decomposes `laplacian` with the default solver.
pub fn eigendecompose(laplacian: &SymmetricMatrix) -> Result<SpectralDecomposition> {
    eigendecompose_with(laplacian, &CyclicJacobi::default())
}

pub fn eigendecompose_with(
    laplacian: &SymmetricMatrix,
    solver: &dyn Eigensolver,
) -> Result<SpectralDecomposition> {
    let n = laplacian.n();
    let raw = solver.solve(laplacian)?;
    if raw.values.len() != n || raw.vectors.len() != n * n {
        return Err(Error::SpectrumCheck(format!(
            "solver {} returned {} values for dimension {n}",
            solver.name(),
            raw.values.len()
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| raw.values[a].total_cmp(&raw.values[b]).then(a.cmp(&b)));

    let eigenvalues: Vec<f64> = order.iter().map(|&k| raw.values[k]).collect();
    let mut columns = Vec::with_capacity(n * n);
    for &k in &order {
        let col = &raw.vectors[k * n..(k + 1) * n];
        let flip = col
            .iter()
            .find(|x| x.abs() > tol::SIGN_TOL)
            .is_some_and(|&x| x < 0.0);
        columns.extend(col.iter().map(|&x| if flip { -x } else { x }));
    }
    let mut rows = vec![0.0; n * n];
    for k in 0..n {
        for u in 0..n {
            rows[u * n + k] = columns[k * n + u];
        }
    }

    let scale = eigenvalues.last().copied().unwrap_or(0.0).max(1.0);
    let clusters = cluster(&eigenvalues, tol::CLUSTER_TOL * scale);

    let dec = SpectralDecomposition {
        n,
        eigenvalues,
        columns,
        rows,
        clusters,
        solver: solver.name(),
    };
    dec.validate(laplacian)?;
    Ok(dec)
}

fn cluster(values: &[f64], gap: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || values[k] - values[k - 1] > gap {
            let run = &values[start..k];
            let mean = run.iter().sum::<f64>() / run.len() as f64;
            out.push(Cluster {
                first: start + 1,
                last: k,
                eigenvalue: mean,
            });
            start = k;
        }
    }
    out
}

impl SpectralDecomposition {
    fn validate(&self, laplacian: &SymmetricMatrix) -> Result<()> {
        let n = self.n;
        let scale = self.lambda_max().max(1.0);
        let residual = self.max_residual(laplacian);
        if residual > tol::RESIDUAL_TOL * scale {
            return Err(Error::SpectrumCheck(format!("eigen-residual {residual:e}")));
        }
        let ortho = self.max_orthogonality_error();
        if ortho > tol::ORTHO_TOL {
            return Err(Error::SpectrumCheck(format!(
                "orthonormality error {ortho:e}"
            )));
        }
        if self.eigenvalues[0].abs() > tol::RESIDUAL_TOL * scale {
            return Err(Error::SpectrumCheck(format!(
                "smallest eigenvalue {:e} is not zero",
                self.eigenvalues[0]
            )));
        }
        if n > 1 && self.clusters[0].len() > 1 {
            return Err(Error::SpectrumCheck(
                "eigenvalue 0 is repeated (disconnected graph)".into(),
            ));
        }
        Ok(())
    }

    /// `max_k ||L phi_k - lambda_k phi_k||_2`.
    pub fn max_residual(&self, laplacian: &SymmetricMatrix) -> f64 {
        (1..=self.n)
            .map(|k| {
                let phi = self.eigenvector(k);
                let lphi = laplacian.mul_vec(phi);
                let lam = self.eigenvalue(k);
                lphi.iter()
                    .zip(phi)
                    .map(|(a, b)| (a - lam * b).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{i,j} |<phi_i, phi_j> - delta_ij|`.
    pub fn max_orthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..=self.n {
            for j in i..=self.n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(self.eigenvector(i), self.eigenvector(j)) - target).abs());
            }
        }
        worst
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solver(&self) -> &'static str {
        self.solver
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvalue `k` (1-based). Panics if out of range.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k - 1]
    }

    /// Eigenvector `k` (1-based). Panics if out of range.
    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.columns[(k - 1) * self.n..k * self.n]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    /// Cluster containing eigen-index `k` (1-based).
    pub fn cluster_of(&self, k: usize) -> &Cluster {
        let pos = self.clusters.partition_point(|c| c.last < k);
        &self.clusters[pos]
    }

    pub fn check_index(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        Ok(())
    }

    fn check_len(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: f.len(),
            });
        }
        Ok(())
    }

    /// `p(t, u, v) = sum_k exp(-lambda_k t) phi_k(u) phi_k(v)`.
    pub fn heat_kernel(&self, t: f64) -> Result<SymmetricMatrix> {
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        let n = self.n;
        let decay: Vec<f64> = self.eigenvalues.iter().map(|l| (-l * t).exp()).collect();
        let mut scaled = self.rows.clone();
        for row in scaled.chunks_mut(n) {
            for (x, d) in row.iter_mut().zip(&decay) {
                *x *= d;
            }
        }
        Ok(SymmetricMatrix::from_upper(n, |u, v| {
            dot(&scaled[u * n..(u + 1) * n], &self.rows[v * n..(v + 1) * n])
        }))
    }

    /// `sum_k exp(-lambda_k t) <f, phi_k> phi_k`.
    pub fn heat_evolve(&self, f: &[f64], t: f64) -> Result<Vec<f64>> {
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        let coeffs = self.expand(f)?;
        let weighted: Vec<f64> = coeffs
            .iter()
            .zip(&self.eigenvalues)
            .map(|(c, l)| c * (-l * t).exp())
            .collect();
        Ok(self.synthesize(&weighted))
    }

    /// Coefficients `<f, phi_k>` for `k = 1..=n`.
    pub fn expand(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_len(f)?;
        Ok(self.columns.chunks(self.n).map(|phi| dot(phi, f)).collect())
    }

    /// `sum_k coeffs[k] phi_k`.
    pub fn synthesize(&self, coeffs: &[f64]) -> Vec<f64> {
        assert_eq!(coeffs.len(), self.n);
        (0..self.n)
            .map(|u| dot(&self.rows[u * self.n..(u + 1) * self.n], coeffs))
            .collect()
    }

    /// Pointwise product `phi_i * phi_j`.
    pub fn hadamard(&self, i: usize, j: usize) -> Result<Vec<f64>> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self
            .eigenvector(i)
            .iter()
            .zip(self.eigenvector(j))
            .map(|(a, b)| a * b)
            .collect())
    }

    pub fn product_spectrum(&self, i: usize, j: usize) -> Result<ProductSpectrum> {
        let product = self.hadamard(i, j)?;
        let coefficients = self.expand(&product)?;
        let total_mass = dot(&product, &product);
        let cluster_mass = self
            .clusters
            .iter()
            .map(|c| ClusterMass {
                eigenvalue: c.eigenvalue,
                first: c.first,
                last: c.last,
                mass: coefficients[c.first - 1..c.last]
                    .iter()
                    .map(|x| x * x)
                    .sum(),
            })
            .collect();
        Ok(ProductSpectrum {
            source: (i, j),
            eigenvalues: self.eigenvalues.clone(),
            coefficients,
            cluster_mass,
            total_mass,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterMass {
    pub eigenvalue: f64,
    pub mass: f64,
    pub first: usize,
    pub last: usize,
}

/// Expansion of `phi_i * phi_j` in the eigenbasis.
///
/// Individual `coefficients` inside a repeated eigenvalue depend on the basis
/// the solver picked; `cluster_mass` does not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductSpectrum {
    pub source: (usize, usize),
    pub eigenvalues: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub cluster_mass: Vec<ClusterMass>,
    /// `||phi_i * phi_j||^2`.
    pub total_mass: f64,
}

impl ProductSpectrum {
    pub fn check_nonempty(&self) -> Result<()> {
        if self.total_mass < tol::MASS_TOL {
            return Err(Error::EmptyProduct(self.total_mass));
        }
        Ok(())
    }

    /// Fraction of mass on clusters whose eigenvalue is `<= cutoff`.
    ///
    /// Normalized by the summed cluster masses (not `total_mass`), so a
    /// cutoff above the spectrum gives exactly 1.
    pub fn mass_below(&self, cutoff: f64) -> Result<f64> {
        let below = self.absolute_mass_below(cutoff)?;
        let all: f64 = self.cluster_mass.iter().map(|c| c.mass).sum();
        Ok((below / all).clamp(0.0, 1.0))
    }

    /// Like [`Self::mass_below`] but not divided by `total_mass`.
    pub fn absolute_mass_below(&self, cutoff: f64) -> Result<f64> {
        if !(cutoff >= 0.0) {
            return Err(Error::InvalidCutoff(cutoff));
        }
        self.check_nonempty()?;
        Ok(self
            .cluster_mass
            .iter()
            .filter(|c| c.eigenvalue <= cutoff)
            .map(|c| c.mass)
            .sum())
    }

    /// Fraction of mass on the `count` lowest clusters.
    pub fn mass_on_lowest_clusters(&self, count: usize) -> Result<f64> {
        self.check_nonempty()?;
        let low: f64 = self.cluster_mass.iter().take(count).map(|c| c.mass).sum();
        Ok((low / self.total_mass).clamp(0.0, 1.0))
    }

    /// Fraction of mass on the cluster containing eigen-index `k`.
    pub fn mass_on_cluster_of(&self, k: usize) -> Result<f64> {
        self.check_nonempty()?;
        let c = self
            .cluster_mass
            .iter()
            .find(|c| (c.first..=c.last).contains(&k))
            .ok_or(Error::IndexOutOfRange {
                index: k,
                n: self.coefficients.len(),
            })?;
        Ok(c.mass / self.total_mass)
    }

    /// `sum_k c_k^2`, which should equal `total_mass`.
    pub fn coefficient_mass(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, GraphRegistry};

    fn dec(source: &str) -> SpectralDecomposition {
        let g = GraphRegistry::default().resolve(source).unwrap();
        eigendecompose(&g.laplacian()).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn small_spectra() {
        // Closed forms: cycle 2 - 2cos(2 pi k / n); P3 roots of
        // x (x - 1)(x - 3); complete graph {0, n^(n-1)}.
        assert_close(dec("cycle:4").eigenvalues(), &[0.0, 2.0, 2.0, 4.0], 1e-12);
        let p3 = eigendecompose(&parse_edge_list("0 1\n1 2").unwrap().laplacian()).unwrap();
        assert_close(p3.eigenvalues(), &[0.0, 1.0, 3.0], 1e-12);
        assert_close(dec("complete:3").eigenvalues(), &[0.0, 3.0, 3.0], 1e-12);
    }

    #[test]
    fn clusters_group_degenerate_eigenvalues() {
        let c4 = dec("cycle:4");
        let runs: Vec<_> = c4.clusters().iter().map(|c| (c.first, c.last)).collect();
        assert_eq!(runs, vec![(1, 1), (2, 3), (4, 4)]);
        assert_eq!(c4.cluster_of(3).first, 2);
    }

    #[test]
    fn sign_normalization() {
        let d = dec("grid:3:4");
        for k in 1..=d.n() {
            let first = d
                .eigenvector(k)
                .iter()
                .find(|x| x.abs() > tol::SIGN_TOL)
                .unwrap();
            assert!(*first > 0.0);
        }
    }

    #[test]
    fn heat_kernel_limits() {
        let d = dec("cycle:4");
        let p0 = d.heat_kernel(0.0).unwrap();
        assert!(p0.max_abs_diff(SymmetricMatrix::identity(4).as_slice()) <= tol::KERNEL_TOL);

        let t_big = 1e3 / d.eigenvalue(2);
        let p = d.heat_kernel(t_big).unwrap();
        assert!(p
            .as_slice()
            .iter()
            .all(|x| (x - 0.25).abs() <= tol::KERNEL_TOL));

        for t in [0.1, 1.0, 7.3] {
            let p = d.heat_kernel(t).unwrap();
            assert!(p
                .row_sums()
                .iter()
                .all(|s| (s - 1.0).abs() <= tol::KERNEL_TOL));
        }
        assert!(matches!(d.heat_kernel(-1.0), Err(Error::NegativeTime(_))));
    }

    #[test]
    fn heat_evolve_cases() {
        let d = dec("path:6");
        let t = 0.37;
        for k in 1..=6 {
            let out = d.heat_evolve(d.eigenvector(k), t).unwrap();
            let expected: Vec<f64> = d
                .eigenvector(k)
                .iter()
                .map(|x| x * (-d.eigenvalue(k) * t).exp())
                .collect();
            assert_close(&out, &expected, tol::KERNEL_TOL);
        }
        assert_close(
            &d.heat_evolve(&[1.0; 6], 3.0).unwrap(),
            &[1.0; 6],
            tol::KERNEL_TOL,
        );

        let p = d.heat_kernel(t).unwrap();
        for u in 0..6 {
            let mut delta = vec![0.0; 6];
            delta[u] = 1.0;
            assert_close(
                &d.heat_evolve(&delta, t).unwrap(),
                p.row(u),
                tol::KERNEL_TOL,
            );
        }
        assert!(matches!(
            d.heat_evolve(&[1.0; 5], t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn expand_cases() {
        let d = dec("grid:2:3");
        let c = d.expand(d.eigenvector(3)).unwrap();
        for (k, x) in c.iter().enumerate() {
            let target = if k == 2 { 1.0 } else { 0.0 };
            assert!((x - target).abs() <= tol::ORTHO_TOL);
        }
        assert_eq!(d.expand(&[0.0; 6]).unwrap(), vec![0.0; 6]);
        assert!(matches!(
            d.expand(&[0.0; 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn product_with_constant_lands_on_one_index() {
        let d = dec("path:7");
        for j in 1..=7 {
            let ps = d.product_spectrum(1, j).unwrap();
            let frac = ps.coefficients[j - 1].powi(2) / ps.total_mass;
            assert!((frac - 1.0).abs() < 1e-10, "j = {j}");
        }
    }

    #[test]
    fn c4_top_eigenvector_squares_to_constant() {
        let d = dec("cycle:4");
        let ps = d.product_spectrum(4, 4).unwrap();
        assert!((ps.coefficients[0].powi(2) / ps.total_mass - 1.0).abs() < 1e-12);
        assert!((ps.mass_below(1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((ps.mass_below(0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((ps.mass_below(100.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mass_below_cases() {
        let d = dec("grid:3:3");
        let ps = d.product_spectrum(2, 5).unwrap();
        assert_eq!(ps.mass_below(d.lambda_max()).unwrap(), 1.0);
        let at_zero = ps.coefficients[0].powi(2) / ps.total_mass;
        assert!((ps.mass_below(0.0).unwrap() - at_zero).abs() < 1e-12);
        assert!(matches!(ps.mass_below(-0.5), Err(Error::InvalidCutoff(_))));
        assert!(matches!(
            d.product_spectrum(0, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            d.product_spectrum(2, 10),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn empty_product_is_reported() {
        // On P2 nothing vanishes, so fake an empty product directly.
        let ps = ProductSpectrum {
            source: (2, 3),
            eigenvalues: vec![0.0, 1.0],
            coefficients: vec![0.0, 0.0],
            cluster_mass: vec![],
            total_mass: 0.0,
        };
        assert!(matches!(ps.mass_below(1.0), Err(Error::EmptyProduct(_))));
    }

    #[test]
    fn solvers_agree() {
        let g = GraphRegistry::default().resolve("random:40:90:2").unwrap();
        let l = g.laplacian();
        let a = eigendecompose_with(&l, &CyclicJacobi::default()).unwrap();
        let b = eigendecompose_with(&l, &TridiagonalQl::default()).unwrap();
        assert_close(a.eigenvalues(), b.eigenvalues(), 1e-11);
        assert_eq!(b.solver(), "tridiagonal-ql");
    }

    #[test]
    fn registry_lookup() {
        let reg = SolverRegistry::default();
        assert_eq!(
            reg.names().collect::<Vec<_>>(),
            vec!["jacobi", "tridiagonal-ql"]
        );
        assert!(matches!(reg.get("lanczos"), Err(Error::UnknownSolver(_))));
    }
}
