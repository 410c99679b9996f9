use super::solver::{Eigenpairs, Eigensolver};
use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Cyclic Jacobi rotations (row-by-row sweeps over the upper triangle).
///
/// Slower than tridiagonalization but very accurate on the small, well
/// separated Laplacians used here, and the eigenvectors come out orthogonal
/// to working precision.
#[derive(Debug, Clone)]
pub struct CyclicJacobi {
    pub max_sweeps: usize,
    /// Stop once the off-diagonal Frobenius norm drops below
    /// `rel_tol * ||A||_F`.
    pub rel_tol: f64,
}

impl Default for CyclicJacobi {
    fn default() -> Self {
        Self {
            max_sweeps: 100,
            rel_tol: 1e-15,
        }
    }
}

impl Eigensolver for CyclicJacobi {
    fn name(&self) -> &'static str {
        "jacobi"
    }

    fn solve(&self, matrix: &SymmetricMatrix) -> Result<Eigenpairs> {
        let n = matrix.n();
        let mut a = matrix.as_slice().to_vec();
        // v[r * n + k]: component r of eigenvector k.
        let mut v = SymmetricMatrix::identity(n).as_slice().to_vec();

        let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let target = self.rel_tol * frob;

        let off = |a: &[f64]| -> f64 {
            let mut s = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    s += a[p * n + q] * a[p * n + q];
                }
            }
            (2.0 * s).sqrt()
        };

        let mut sweeps = 0;
        while off(&a) > target {
            if sweeps == self.max_sweeps {
                return Err(Error::ConvergenceFailure {
                    solver: "jacobi",
                    iterations: sweeps,
                });
            }
            sweeps += 1;
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq.abs() < f64::MIN_POSITIVE {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let theta = (aqq - app) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                    let c = 1.0 / t.hypot(1.0);
                    let s = t * c;
                    let tau = s / (1.0 + c);

                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    for r in 0..n {
                        if r == p || r == q {
                            continue;
                        }
                        let g = a[r * n + p];
                        let h = a[r * n + q];
                        let new_p = g - s * (h + g * tau);
                        let new_q = h + s * (g - h * tau);
                        a[r * n + p] = new_p;
                        a[p * n + r] = new_p;
                        a[r * n + q] = new_q;
                        a[q * n + r] = new_q;
                    }
                    for r in 0..n {
                        let g = v[r * n + p];
                        let h = v[r * n + q];
                        v[r * n + p] = g - s * (h + g * tau);
                        v[r * n + q] = h + s * (g - h * tau);
                    }
                }
            }
        }

        let values = (0..n).map(|k| a[k * n + k]).collect();
        let mut vectors = vec![0.0; n * n];
        for k in 0..n {
            for r in 0..n {
                vectors[k * n + r] = v[r * n + k];
            }
        }
        Ok(Eigenpairs { values, vectors })
    }
}
