//! Numerical tolerances shared across modules.

/// `||L phi_k - lambda_k phi_k||_2`, scaled by `max(1, lambda_n)`.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// `|<phi_i, phi_j> - delta_ij|`.
pub const ORTHO_TOL: f64 = 1e-10;
/// Heat kernel row sums and kernel-vs-evolution agreement.
pub const KERNEL_TOL: f64 = 1e-10;
pub const PARSEVAL_TOL: f64 = 1e-10;
pub const SEMIGROUP_TOL: f64 = 1e-9;
/// Eigenvalues closer than `CLUSTER_TOL * max(1, lambda_n)` share a cluster.
pub const CLUSTER_TOL: f64 = 1e-9;
pub const SIGN_TOL: f64 = 1e-12;
/// Squared norms below this count as zero.
pub const MASS_TOL: f64 = 1e-24;
pub const ROOT_TOL: f64 = 1e-12;
/// Fundamental identity residual, scaled by `1 + ||phi_i phi_j||`.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Fourier coefficients below this magnitude are pruned.
pub const COEFF_TOL: f64 = 1e-14;
pub const FFT_CHECK_TOL: f64 = 1e-9;
/// Pair-scan outliers lie more than this many standard deviations from the
/// mean.
pub const OUTLIER_SIGMAS: f64 = 2.0;
